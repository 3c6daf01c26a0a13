"""Ordinary (uncontrolled) frames in C^d.

A family ``{f_k}`` of ``n`` vectors is stored row-wise in an ``(n, d)``
array. The synthesis operator ``T c = sum_k c_k f_k`` is then the
``(d, n)`` matrix ``vectors.T``, and the analysis operator is its adjoint.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import FrameError, LengthMismatchError
from .linalg import TOL_POS, adjoint


@dataclass(frozen=True, eq=False)
class FrameFamily:
    vectors: np.ndarray

    def __post_init__(self):
        v = np.array(self.vectors, dtype=np.complex128)
        if v.ndim == 1:
            v = v[None, :]
        if v.ndim != 2 or v.shape[0] < 1 or v.shape[1] < 1:
            raise FrameError(f"expected an (n, d) array of vectors, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise FrameError("frame vectors have non-finite entries")
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)

    @classmethod
    def from_columns(cls, m) -> "FrameFamily":
        """Family of the columns of a ``(d, n)`` matrix."""
        return cls(np.transpose(np.asarray(m)))

    @classmethod
    def canonical(cls, d: int) -> "FrameFamily":
        return cls(np.eye(d))

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    def __len__(self) -> int:
        return self.n

    @property
    def synthesis_matrix(self) -> np.ndarray:
        """``(d, n)`` matrix with the f_k as columns."""
        return np.transpose(self.vectors)

    def transformed(self, op) -> "FrameFamily":
        """The family ``{op f_k}``."""
        return FrameFamily.from_columns(np.asarray(op) @ self.synthesis_matrix)


def synthesis(family: FrameFamily, c) -> np.ndarray:
    c = np.asarray(c, dtype=np.complex128)
    if c.shape != (family.n,):
        raise LengthMismatchError(f"expected {family.n} coefficients, got shape {c.shape}")
    return family.synthesis_matrix @ c


def analysis(family: FrameFamily, f) -> np.ndarray:
    """Coefficients ``<f, f_k>``."""
    f = np.asarray(f, dtype=np.complex128)
    if f.shape != (family.dim,):
        raise LengthMismatchError(f"expected a {family.dim}-vector, got shape {f.shape}")
    return np.conj(family.vectors) @ f


def frame_operator(family: FrameFamily) -> linalg.LinearOperatorRep:
    t = family.synthesis_matrix
    s = t @ adjoint(t)
    return linalg.LinearOperatorRep(0.5 * (s + adjoint(s)))


def gram(family: FrameFamily) -> np.ndarray:
    """Gram matrix with entry ``(j, k) = <f_k, f_j>``."""
    t = family.synthesis_matrix
    g = adjoint(t) @ t
    return 0.5 * (g + adjoint(g))


def frame_bounds(family: FrameFamily) -> tuple[float, float]:
    """Optimal lower and upper frame bounds (extreme eigenvalues of S)."""
    lam = linalg.eigvalsh(frame_operator(family).matrix)
    return max(float(lam[0]), 0.0), float(lam[-1])


def is_complete(family: FrameFamily) -> bool:
    return linalg.numerical_rank(family.vectors) == family.dim


@dataclass(frozen=True)
class FrameClassification:
    lower_bound: float
    upper_bound: float
    is_bessel: bool
    is_frame: bool
    is_tight: bool
    is_complete: bool
    is_riesz_basis: bool
    tolerance: float


def classify(family: FrameFamily, tol: float = TOL_POS) -> FrameClassification:
    a, b = frame_bounds(family)
    complete = is_complete(family)
    is_frame = a > tol and complete
    return FrameClassification(
        lower_bound=a,
        upper_bound=b,
        is_bessel=bool(np.isfinite(b)),
        is_frame=is_frame,
        is_tight=is_frame and abs(a - b) <= tol * max(1.0, b),
        is_complete=complete,
        is_riesz_basis=is_frame and family.n == family.dim,
        tolerance=tol,
    )
