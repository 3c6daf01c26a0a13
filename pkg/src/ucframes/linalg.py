"""Dense linear-algebra kernel over complex double precision.

Everything downstream (frame bounds, controlled operators, Riesz
diagnostics) goes through the handful of primitives defined here, so
they are deliberately small and deterministic.

Conventions
-----------
The inner product is linear in the first argument and conjugate-linear
in the second: ``inner(x, y) = sum(x * conj(y))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .errors import (
    ConvergenceError,
    FrameError,
    NonSquareError,
    NotHermitianError,
    NotInvertibleError,
    NotPositiveError,
)

TOL_SYM = 1e-9
TOL_POS = 1e-9
INVERTIBILITY_RTOL = 1e-10
JACOBI_RTOL = 1e-13
MAX_SWEEPS = 60


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Return ``a`` as a 2-D complex128 array, rejecting NaN/Inf."""
    m = np.array(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise FrameError(f"{name} must be a non-empty 2-D array, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise FrameError(f"{name} has non-finite entries")
    return m


def _square(a, name: str = "matrix") -> np.ndarray:
    m = as_matrix(a, name)
    if m.shape[0] != m.shape[1]:
        raise NonSquareError(f"{name} is {m.shape[0]}x{m.shape[1]}, expected square")
    return m


def adjoint(a: np.ndarray) -> np.ndarray:
    return np.conj(np.transpose(a))


def inner(x, y) -> complex:
    """``<x, y>``, linear in ``x`` and conjugate-linear in ``y``."""
    return complex(np.vdot(y, x))


def singular_values(a) -> np.ndarray:
    """Singular values of ``a`` in descending order.

    Backed by LAPACK's divide-and-conquer SVD, which keeps tiny singular
    values accurate to machine precision relative to the largest one.
    """
    m = as_matrix(a)
    return np.linalg.svd(m, compute_uv=False)


def op_norm(a) -> float:
    return float(singular_values(a)[0])


def hs_norm(a) -> float:
    """Hilbert-Schmidt (Frobenius) norm."""
    return float(np.sqrt(np.sum(singular_values(a) ** 2)))


def trace_norm(a) -> float:
    """Trace-class (nuclear) norm, the sum of singular values."""
    return float(np.sum(singular_values(a)))


def self_adjoint_residual(a) -> float:
    """``||A - A*||_op / max(1, ||A||_op)``."""
    m = _square(a)
    return op_norm(m - adjoint(m)) / max(1.0, op_norm(m))


def condition_number(a) -> float:
    s = singular_values(a)
    return float(s[0] / s[-1]) if s[-1] > 0 else math.inf


def is_invertible(a, rtol: float = INVERTIBILITY_RTOL) -> bool:
    """Smallest singular value exceeds ``rtol`` times the largest."""
    m = _square(a)
    s = singular_values(m)
    return bool(s[0] > 0 and s[-1] > rtol * s[0])


def numerical_rank(a, rtol: float = INVERTIBILITY_RTOL) -> int:
    s = singular_values(a)
    if s[0] == 0:
        return 0
    return int(np.count_nonzero(s > rtol * s[0]))


def inverse(a, rtol: float = INVERTIBILITY_RTOL) -> np.ndarray:
    m = _square(a)
    if not is_invertible(m, rtol):
        raise NotInvertibleError(
            f"matrix is singular to working tolerance (cond={condition_number(m):.3g})"
        )
    return np.linalg.solve(m, np.eye(m.shape[0], dtype=np.complex128))


def hermitian_eig(h, tol_sym: float = TOL_SYM) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    h : array_like, shape (n, n)
        Hermitian up to ``tol_sym`` (relative, operator norm). The matrix
        is replaced by its Hermitian part before rotating.
    tol_sym : float
        Allowed relative self-adjointness defect.

    Returns
    -------
    eigenvalues : ndarray, shape (n,)
        Real eigenvalues in ascending order.
    eigenvectors : ndarray, shape (n, n)
        Unitary matrix whose columns are the matching eigenvectors.

    Raises
    ------
    NonSquareError, NotHermitianError, ConvergenceError
    """
    a = _square(h, "H")
    resid = self_adjoint_residual(a)
    if resid > tol_sym:
        raise NotHermitianError(f"self-adjoint residual {resid:.3e} exceeds {tol_sym:.1e}")
    a = 0.5 * (a + adjoint(a))
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    target = JACOBI_RTOL * np.linalg.norm(a)
    skip = target / n
    diag_mask = np.eye(n, dtype=bool)

    for _ in range(MAX_SWEEPS):
        off = np.linalg.norm(a[~diag_mask])
        if off <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= skip:
                    continue
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                ph = np.conj(apq) / mag
                # unitary J = diag(1, e^{-i phi}) @ [[c, s], [-s, c]] on (p, q)
                j2 = np.array([[c, s], [-s * ph, c * ph]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ j2
                a[idx, :] = adjoint(j2) @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ j2
    else:
        raise ConvergenceError(f"Jacobi did not converge in {MAX_SWEEPS} sweeps")

    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def eigvalsh(h, tol_sym: float = TOL_SYM) -> np.ndarray:
    return hermitian_eig(h, tol_sym)[0]


@dataclass(frozen=True)
class SpectralSummary:
    eigenvalues: np.ndarray
    self_adjoint_residual: float

    @property
    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def max_eigenvalue(self) -> float:
        return float(self.eigenvalues[-1])


def spectral_summary(h, tol_sym: float = TOL_SYM) -> SpectralSummary:
    resid = self_adjoint_residual(h)
    return SpectralSummary(eigvalsh(h, tol_sym), resid)


def polar(v) -> tuple[np.ndarray, np.ndarray]:
    """Polar decomposition ``V = W @ P``.

    ``P = |V| = (V* V)^(1/2)`` is positive semidefinite and ``W`` is the
    partial isometry with ``ker W = ker V`` (unitary when ``V`` is
    invertible), so that also ``W* V = P``.
    """
    m = _square(v, "V")
    x, s, yh = np.linalg.svd(m)
    r = int(np.count_nonzero(s > INVERTIBILITY_RTOL * s[0])) if s[0] > 0 else 0
    w = x[:, :r] @ yh[:r, :]
    p = adjoint(yh) @ (s[:, None] * yh)
    p = 0.5 * (p + adjoint(p))
    return w, p


def hermitian_sqrt(t, tol_sym: float = TOL_SYM, tol_pos: float = TOL_POS) -> np.ndarray:
    """Positive square root of a positive semidefinite matrix."""
    w, v = hermitian_eig(t, tol_sym)
    if w[0] < -tol_pos:
        raise NotPositiveError(f"smallest eigenvalue {w[0]:.3e} is negative")
    r = (v * np.sqrt(np.clip(w, 0.0, None))) @ adjoint(v)
    return 0.5 * (r + adjoint(r))


class Positivity(NamedTuple):
    self_adjoint: bool
    lambda_min: float
    in_gl_plus: bool


def positivity_check(t, tol: float = TOL_POS, tol_sym: float = TOL_SYM) -> Positivity:
    """Decide membership in GL+ (self-adjoint with spectrum bounded away from 0).

    ``lambda_min`` is NaN when the matrix is not self-adjoint.
    """
    m = _square(t, "T")
    if self_adjoint_residual(m) > tol_sym:
        return Positivity(False, math.nan, False)
    lam = float(eigvalsh(m, tol_sym)[0])
    return Positivity(True, lam, lam > tol)


def sandwich_bounds(t, c, tol: float = TOL_POS, tol_sym: float = TOL_SYM) -> tuple[float, float]:
    """Optimal ``A, B`` with ``A*C <= T <= B*C`` for ``C`` in GL+.

    These are the extremal eigenvalues of ``C^(-1/2) T C^(-1/2)``.
    """
    tm, cm = _square(t, "T"), _square(c, "C")
    if tm.shape != cm.shape:
        raise NonSquareError(f"shape mismatch {tm.shape} vs {cm.shape}")
    pos = positivity_check(cm, tol, tol_sym)
    if not pos.in_gl_plus:
        raise NotPositiveError("C is not in GL+")
    if self_adjoint_residual(tm) > tol_sym:
        raise NotHermitianError("T is not self-adjoint")
    w, v = hermitian_eig(cm, tol_sym)
    c_isqrt = (v / np.sqrt(w)) @ adjoint(v)
    lam = eigvalsh(c_isqrt @ tm @ c_isqrt, tol_sym=max(tol_sym, 1e-8))
    return float(lam[0]), float(lam[-1])


def commutator_norm(a, b) -> float:
    a, b = as_matrix(a), as_matrix(b)
    return op_norm(a @ b - b @ a)


@dataclass(frozen=True, eq=False)
class LinearOperatorRep:
    """Square complex matrix with lazily cached structural flags."""

    matrix: np.ndarray
    tol: float = field(default=TOL_POS)

    def __post_init__(self):
        m = _square(self.matrix, "operator")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def coerce(cls, a) -> "LinearOperatorRep":
        return a if isinstance(a, cls) else cls(a)

    @classmethod
    def identity(cls, d: int) -> "LinearOperatorRep":
        return cls(np.eye(d, dtype=np.complex128))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def H(self) -> np.ndarray:
        return adjoint(self.matrix)

    @cached_property
    def singular_values(self) -> np.ndarray:
        return singular_values(self.matrix)

    @cached_property
    def self_adjoint_residual(self) -> float:
        return self_adjoint_residual(self.matrix)

    @property
    def is_self_adjoint(self) -> bool:
        return self.self_adjoint_residual <= TOL_SYM

    @cached_property
    def positivity(self) -> Positivity:
        return positivity_check(self.matrix, self.tol)

    @property
    def is_positive(self) -> bool:
        return self.positivity.in_gl_plus

    @property
    def is_invertible(self) -> bool:
        s = self.singular_values
        return bool(s[0] > 0 and s[-1] > INVERTIBILITY_RTOL * s[0])

    @property
    def condition_number(self) -> float:
        s = self.singular_values
        return float(s[0] / s[-1]) if s[-1] > 0 else math.inf

    @cached_property
    def inv(self) -> np.ndarray:
        return inverse(self.matrix)

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)
