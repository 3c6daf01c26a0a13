"""Deterministic generators for test and demo systems.

Random systems use ``numpy.random.Generator(PCG64(seed))`` and only
uniform draws, so a given seed produces the same system on every
platform.
"""
from __future__ import annotations

import numpy as np

from .controlled import ControlledSystem
from .frames import FrameFamily
from .linalg import adjoint
from .riesz import ControlledRieszSpec

MODES = ("general", "commuting_positive", "riesz_spec")


def gen_example24(blocks: int) -> ControlledSystem:
    """Finite section of the alternating-sign example on l^2 with ``d = 2 * blocks``.

    ``f_{2k+1} = e_{2k+1} - e_{2k+2}``, ``f_{2k+2} = e_{2k+1} + e_{2k+2}``,
    ``C = diag(-1, 1, -1, 1, ...)`` and ``U = diag(1, -1, 1, -1, ...)``.
    The operators are block diagonal, so the section is exact.
    """
    if blocks < 1:
        raise ValueError("blocks must be >= 1")
    d = 2 * blocks
    vecs = np.zeros((d, d))
    for k in range(blocks):
        vecs[2 * k, 2 * k], vecs[2 * k, 2 * k + 1] = 1.0, -1.0
        vecs[2 * k + 1, 2 * k], vecs[2 * k + 1, 2 * k + 1] = 1.0, 1.0
    signs = np.where(np.arange(d) % 2 == 0, 1.0, -1.0)
    return ControlledSystem(FrameFamily(vecs), U=np.diag(signs), C=np.diag(-signs))


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _cplx(rng, shape) -> np.ndarray:
    return rng.uniform(-1.0, 1.0, shape) + 1j * rng.uniform(-1.0, 1.0, shape)


def random_unitary(rng, d: int) -> np.ndarray:
    q, r = np.linalg.qr(_cplx(rng, (d, d)))
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def random_well_conditioned(rng, d: int, smin: float = 0.5, smax: float = 2.0) -> np.ndarray:
    s = rng.uniform(smin, smax, d)
    return (random_unitary(rng, d) * s) @ random_unitary(rng, d)


def commuting_positive_pair(rng, d: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Positive ``U = exp(0.6 H)``, ``C = 1.5 + H + 0.5 H^2`` for one random Hermitian ``H``.

    Returns ``(U, C, V)`` where ``V`` is the shared eigenbasis.
    """
    v = random_unitary(rng, d)
    h = rng.uniform(-1.0, 1.0, d)
    u = (v * np.exp(0.6 * h)) @ adjoint(v)
    c = (v * (1.5 + h + 0.5 * h**2)) @ adjoint(v)
    return 0.5 * (u + adjoint(u)), 0.5 * (c + adjoint(c)), v


def random_riesz_spec(d: int, seed: int) -> ControlledRieszSpec:
    rng = rng_for(seed)
    u, c, _ = commuting_positive_pair(rng, d)
    return ControlledRieszSpec(u, c, random_well_conditioned(rng, d))


def gen_random_system(d: int, n: int, seed: int, mode: str = "general") -> ControlledSystem:
    """Random controlled system.

    ``general``
        uniform random family, independent well-conditioned ``U`` and ``C``.
    ``commuting_positive``
        ``U, C`` in GL+ built from one Hermitian matrix. For ``n >= d`` the
        family is a random frame whose frame operator shares their
        eigenbasis, so ``S_UC = C S_F U`` is positive.
    ``riesz_spec``
        ``n`` is forced to ``d``; family ``U^-1 C M e_k`` for a random
        bijective ``M`` and a commuting positive pair.
    """
    if d < 1 or n < 1:
        raise ValueError("d and n must be positive")
    if mode == "riesz_spec":
        return random_riesz_spec(d, seed).system()
    rng = rng_for(seed)
    if mode == "general":
        fam = FrameFamily(_cplx(rng, (n, d)))
        u = random_well_conditioned(rng, d)
        c = random_well_conditioned(rng, d)
        return ControlledSystem(fam, u, c)
    if mode == "commuting_positive":
        u, c, v = commuting_positive_pair(rng, d)
        if n >= d:
            y = random_unitary(rng, n)[:d, :]
            spread = rng.uniform(0.5, 2.0, d)
            cols = (v * np.sqrt(spread)) @ y
            fam = FrameFamily.from_columns(cols)
        else:
            fam = FrameFamily(_cplx(rng, (n, d)))
        return ControlledSystem(fam, u, c)
    raise ValueError(f"unknown mode {mode!r}, expected one of {MODES}")


def gen_rank_deficient(d: int, seed: int) -> ControlledSystem:
    """Square system (``n = d``) whose family spans only a ``d - 1`` dimensional subspace."""
    rng = rng_for(seed)
    u, c, _ = commuting_positive_pair(rng, d)
    base = _cplx(rng, (max(d - 1, 1), d)) if d > 1 else np.zeros((1, 1))
    if d > 1:
        mix = _cplx(rng, (1, d - 1))
        vecs = np.vstack([base, mix @ base])
        vecs = vecs[rng.permutation(d)]
    else:
        vecs = base
    return ControlledSystem(FrameFamily(vecs), u, c)
