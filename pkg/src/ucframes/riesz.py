"""(U, C)-controlled Riesz bases.

A controlled Riesz basis is a family ``f_k = U^-1 C M e_k`` where ``M``
is bijective and ``{e_k}`` is an orthonormal basis. This module builds
such families, their two canonical duals, and diagnoses whether a given
family is of this form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import linalg
from .controlled import ControlledSystem, controlled_gram
from .errors import DimensionMismatchError, FrameError, LengthMismatchError, NotBijectiveError
from .frames import FrameFamily, classify, is_complete
from .linalg import TOL_POS, LinearOperatorRep, adjoint

FORM_SAMPLES = 10_000


@dataclass(frozen=True, eq=False)
class ControlledRieszSpec:
    U: LinearOperatorRep
    C: LinearOperatorRep
    M: LinearOperatorRep
    basis: np.ndarray = None

    def __post_init__(self):
        m = LinearOperatorRep.coerce(self.M)
        if not m.is_invertible:
            raise NotBijectiveError(f"M is not bijective (cond={m.condition_number:.3g})")
        object.__setattr__(self, "M", m)
        d = m.dim
        for name in ("U", "C"):
            op = LinearOperatorRep.coerce(getattr(self, name))
            if op.dim != d:
                raise DimensionMismatchError(f"{name} is {op.dim}x{op.dim}, M is {d}x{d}")
            if not op.is_invertible:
                raise linalg.NotInvertibleError(f"{name} is not invertible")
            object.__setattr__(self, name, op)
        e = np.eye(d, dtype=np.complex128) if self.basis is None else linalg.as_matrix(self.basis, "basis")
        if e.shape != (d, d) or np.max(np.abs(adjoint(e) @ e - np.eye(d))) > 1e-10:
            raise FrameError("basis must be a unitary d x d matrix (columns e_k)")
        e.setflags(write=False)
        object.__setattr__(self, "basis", e)

    @property
    def dim(self) -> int:
        return self.M.dim

    def system(self) -> ControlledSystem:
        return ControlledSystem(build_controlled_riesz(self), self.U, self.C)


def build_controlled_riesz(spec: ControlledRieszSpec) -> FrameFamily:
    """The family ``f_k = U^-1 C M e_k``."""
    return FrameFamily.from_columns(spec.U.inv @ spec.C.matrix @ spec.M.matrix @ spec.basis)


def _inv_h(op: LinearOperatorRep) -> np.ndarray:
    return adjoint(op.inv)


def dual_type1(spec: ControlledRieszSpec) -> FrameFamily:
    """``g_k = U* (C^-1)* (M^-1)* e_k``, so ``f = sum <f, g_k> f_k = sum <f, f_k> g_k``."""
    g = spec.U.H @ _inv_h(spec.C) @ _inv_h(spec.M) @ spec.basis
    return FrameFamily.from_columns(g)


def dual_type2(spec: ControlledRieszSpec) -> FrameFamily:
    """``g_k = U^-1 (C^-1)* U* (C^-1)* (M^-1)* e_k``.

    Dual in the controlled pairing: ``f = sum <f, U g_k> C f_k = sum <f, C f_k> U g_k``.
    """
    c_ih = _inv_h(spec.C)
    g = spec.U.inv @ c_ih @ spec.U.H @ c_ih @ _inv_h(spec.M) @ spec.basis
    return FrameFamily.from_columns(g)


def biorthogonality_defect(f: FrameFamily, g: FrameFamily, U, C) -> float:
    """``max_{k,j} |<C f_k, U g_j> - delta_kj|``."""
    if f.n != g.n or f.dim != g.dim:
        raise LengthMismatchError(f"families differ in shape: {f.vectors.shape} vs {g.vectors.shape}")
    u, c = np.asarray(LinearOperatorRep.coerce(U)), np.asarray(LinearOperatorRep.coerce(C))
    # x[j, k] = <C f_k, U g_j>
    x = adjoint(u @ g.synthesis_matrix) @ (c @ f.synthesis_matrix)
    return float(np.max(np.abs(x - np.eye(f.n))))


class FormBounds(NamedTuple):
    L: float
    P: float
    hermitian_residual: float
    sign_definite: bool
    sampled: bool
    Q: np.ndarray


def form_matrix(sys: ControlledSystem) -> np.ndarray:
    """``Q[j, k] = <U f_k, C f_j>``, so ``<sum c_k U f_k, sum c_k C f_k> = <Qc, c>``."""
    return adjoint(sys.c_images) @ sys.u_images


def quadratic_form_bounds(
    sys: ControlledSystem,
    tol: float = 1e-10,
    samples: int = FORM_SAMPLES,
    seed: int = 0,
) -> FormBounds:
    """Constants ``L, P`` with ``L ||c||^2 <= |<Qc, c>| <= P ||c||^2``.

    When ``Q`` is Hermitian (relative residual below ``tol``) the bounds come
    from its spectrum and are exact; ``L`` is zero unless ``Q`` is
    sign-definite. Otherwise they are estimated from ``samples`` random unit
    vectors and ``sampled`` is set.
    """
    q = form_matrix(sys)
    resid = linalg.self_adjoint_residual(q)
    if resid <= tol:
        lam = linalg.eigvalsh(0.5 * (q + adjoint(q)), tol_sym=max(tol, linalg.TOL_SYM))
        mags = np.abs(lam)
        floor = tol * max(1.0, float(mags.max()))
        definite = bool(np.all(lam > floor) or np.all(lam < -floor))
        low = float(mags.min()) if definite else 0.0
        return FormBounds(low, float(mags.max()), resid, definite, False, q)

    rng = np.random.Generator(np.random.PCG64(seed))
    n = q.shape[0]
    c = rng.uniform(-1, 1, (samples, n)) + 1j * rng.uniform(-1, 1, (samples, n))
    c /= np.linalg.norm(c, axis=1, keepdims=True)
    vals = np.abs(np.einsum("si,ij,sj->s", np.conj(c), q, c))
    return FormBounds(float(vals.min()), float(vals.max()), resid, False, True, q)


def recover_m(sys: ControlledSystem) -> np.ndarray:
    """Columns ``M e_k = C^-1 U f_k`` (canonical basis); needs ``n == d``."""
    if sys.n != sys.dim:
        raise LengthMismatchError(f"M recovery needs n == d, got n={sys.n}, d={sys.dim}")
    return sys.C.inv @ sys.u_images


@dataclass(frozen=True)
class RieszDiagnosis:
    L: float
    P: float
    complete: bool
    gram_invertible: bool
    is_controlled_riesz: bool
    recovered_M: np.ndarray | None
    recovery_invertible: bool
    biorthogonality_defect: float
    form_sampled: bool
    tolerance: float


def riesz_diagnose(sys: ControlledSystem, tol: float = TOL_POS) -> RieszDiagnosis:
    complete = is_complete(sys.family)
    g = controlled_gram(sys)
    gram_inv = bool(g.singular_values[0] > 0 and g.min_singular > tol * g.op_norm)
    verdict = complete and gram_inv

    m_rec, rec_inv = None, False
    if sys.n == sys.dim:
        m_rec = recover_m(sys)
        rec_inv = linalg.is_invertible(m_rec)

    defect = math.nan
    if verdict and rec_inv:
        spec = ControlledRieszSpec(sys.U, sys.C, m_rec)
        defect = biorthogonality_defect(sys.family, dual_type2(spec), sys.U, sys.C)
    form = quadratic_form_bounds(sys)
    return RieszDiagnosis(
        L=form.L,
        P=form.P,
        complete=complete,
        gram_invertible=gram_inv,
        is_controlled_riesz=verdict,
        recovered_M=m_rec if verdict else None,
        recovery_invertible=rec_inv,
        biorthogonality_defect=defect,
        form_sampled=form.sampled,
        tolerance=tol,
    )


def riesz_round_trip(sys: ControlledSystem, rtol: float = 1e-9) -> bool:
    """Rebuild the family from the recovered ``M`` and compare.

    True when ``M`` can be recovered as a bijection and ``U^-1 C M e_k``
    reproduces every ``f_k`` and forms a Riesz basis.
    """
    if sys.n != sys.dim:
        return False
    try:
        spec = ControlledRieszSpec(sys.U, sys.C, recover_m(sys))
    except NotBijectiveError:
        return False
    rebuilt = build_controlled_riesz(spec)
    scale = max(1.0, linalg.op_norm(sys.family.vectors))
    if np.max(np.abs(rebuilt.vectors - sys.family.vectors)) > rtol * scale:
        return False
    return classify(rebuilt).is_riesz_basis
