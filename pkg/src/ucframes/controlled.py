"""(U, C)-controlled frames: operators, Gram matrix and diagnostics.

For invertible ``U`` and ``C`` the family ``{f_k}`` gives rise to the
controlled frame operator

    S_UC f = sum_k <f, U f_k> C f_k  =  C S_F U*,

and to the controlled Gram matrix ``G[k, j] = <C f_j, U f_k>``, i.e. the
composition of the U-analysis with the C-synthesis operator. A family is
called a controlled frame when ``A ||f||^2 <= <S_UC f, f> <= B ||f||^2``
with ``A > 0``; this forces the quadratic form to be real, so a
non-self-adjoint ``S_UC`` is reported instead of bounded.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import linalg
from .errors import DimensionMismatchError, LengthMismatchError, NotControlledFrameError, NotInvertibleError
from .frames import FrameFamily, frame_bounds, frame_operator
from .linalg import TOL_POS, LinearOperatorRep, adjoint

NON_SELF_ADJOINT = "NonSelfAdjointForm"
NEGATIVE_DEFINITE = "NegativeDefiniteForm"
INDEFINITE = "IndefiniteForm"


@dataclass(frozen=True, eq=False)
class ControlledSystem:
    """A frame family together with its controller operators ``U`` and ``C``."""

    family: FrameFamily
    U: LinearOperatorRep = None
    C: LinearOperatorRep = None

    def __post_init__(self):
        fam = self.family if isinstance(self.family, FrameFamily) else FrameFamily(self.family)
        object.__setattr__(self, "family", fam)
        d = fam.dim
        for name in ("U", "C"):
            op = getattr(self, name)
            op = LinearOperatorRep.identity(d) if op is None else LinearOperatorRep.coerce(op)
            if op.dim != d:
                raise DimensionMismatchError(f"{name} is {op.dim}x{op.dim} but the family lives in C^{d}")
            if not op.is_invertible:
                raise NotInvertibleError(f"{name} is not invertible (cond={op.condition_number:.3g})")
            object.__setattr__(self, name, op)

    @property
    def dim(self) -> int:
        return self.family.dim

    @property
    def n(self) -> int:
        return self.family.n

    @property
    def u_images(self) -> np.ndarray:
        """``(d, n)`` matrix with columns ``U f_k``."""
        return self.U.matrix @ self.family.synthesis_matrix

    @property
    def c_images(self) -> np.ndarray:
        return self.C.matrix @ self.family.synthesis_matrix


def controlled_frame_operator(sys: ControlledSystem) -> LinearOperatorRep:
    """``S_UC = sum_k C f_k (U f_k)^*`` as a d x d matrix (not symmetrized)."""
    return LinearOperatorRep(sys.c_images @ adjoint(sys.u_images))


def controlled_quadratic_form(sys: ControlledSystem, f) -> complex:
    """``sum_k <f, U f_k> <C f_k, f>`` evaluated term by term."""
    f = np.asarray(f, dtype=np.complex128)
    a = np.conj(sys.u_images).T @ f
    b = np.conj(f) @ sys.c_images
    return complex(np.sum(a * b))


@dataclass(frozen=True, eq=False)
class GramData:
    G: np.ndarray
    singular_values: np.ndarray

    @property
    def op_norm(self) -> float:
        return float(self.singular_values[0])

    @property
    def hs_norm(self) -> float:
        return float(np.sqrt(np.sum(self.singular_values ** 2)))

    @property
    def trace_norm(self) -> float:
        return float(np.sum(self.singular_values))

    @property
    def min_singular(self) -> float:
        return float(self.singular_values[-1])

    def rank(self, rtol: float = linalg.INVERTIBILITY_RTOL) -> int:
        s = self.singular_values
        return 0 if s[0] == 0 else int(np.count_nonzero(s > rtol * s[0]))


def gram_data(g) -> GramData:
    g = linalg.as_matrix(g, "Gram matrix")
    return GramData(g, linalg.singular_values(g))


def controlled_gram(sys: ControlledSystem) -> GramData:
    """Controlled Gram matrix ``G[k, j] = <C f_j, U f_k>`` with norm summaries."""
    return gram_data(adjoint(sys.u_images) @ sys.c_images)


@dataclass(frozen=True)
class ControlledDiagnosis:
    A_UC: float
    B_UC: float
    self_adjoint_residual: float
    is_controlled_bessel: bool
    is_controlled_frame: bool
    is_controlled_tight: bool
    magnitude_tight: bool
    positivity_of_CSU: bool
    spectrum: tuple[float, ...] | None
    findings: tuple[str, ...]
    tolerance: float

    @property
    def sign_discrepancy(self) -> bool:
        return NEGATIVE_DEFINITE in self.findings


def diagnose_controlled(sys: ControlledSystem, tol: float = TOL_POS) -> ControlledDiagnosis:
    s_uc = controlled_frame_operator(sys).matrix
    resid = linalg.self_adjoint_residual(s_uc)
    csu = sys.C.matrix @ frame_operator(sys.family).matrix @ sys.U.H
    csu_pos = linalg.positivity_check(csu, tol, tol_sym=tol).in_gl_plus

    if resid > tol:
        return ControlledDiagnosis(
            A_UC=math.nan,
            B_UC=math.nan,
            self_adjoint_residual=resid,
            is_controlled_bessel=False,
            is_controlled_frame=False,
            is_controlled_tight=False,
            magnitude_tight=False,
            positivity_of_CSU=csu_pos,
            spectrum=None,
            findings=(NON_SELF_ADJOINT,),
            tolerance=tol,
        )

    lam = linalg.eigvalsh(0.5 * (s_uc + adjoint(s_uc)))
    a, b = float(lam[0]), float(lam[-1])
    mags = np.abs(lam)
    scale = max(1.0, float(mags.max()))
    is_frame = a > tol
    findings = []
    if b < -tol:
        findings.append(NEGATIVE_DEFINITE)
    elif a < -tol:
        findings.append(INDEFINITE)
    return ControlledDiagnosis(
        A_UC=a,
        B_UC=b,
        self_adjoint_residual=resid,
        is_controlled_bessel=True,
        is_controlled_frame=is_frame,
        is_controlled_tight=is_frame and abs(a - b) <= tol * max(1.0, b),
        magnitude_tight=bool(mags.min() > tol and mags.max() - mags.min() <= tol * scale),
        positivity_of_CSU=csu_pos,
        spectrum=tuple(float(x) for x in lam),
        findings=tuple(findings),
        tolerance=tol,
    )


class Reconstruction(NamedTuple):
    f1: np.ndarray
    f2: np.ndarray
    residuals: tuple[float, float]


def controlled_reconstruct(sys: ControlledSystem, f, tol: float = TOL_POS) -> Reconstruction:
    """Recover ``f`` with both controlled reconstruction formulas.

    ``f1 = sum <f, U f_i> S_UC^-1 C f_i`` and
    ``f2 = sum <f, S_UC^-1 U f_i> C f_i``.
    """
    f = np.asarray(f, dtype=np.complex128)
    if f.shape != (sys.dim,):
        raise LengthMismatchError(f"expected a {sys.dim}-vector, got shape {f.shape}")
    diag = diagnose_controlled(sys, tol)
    if not diag.is_controlled_frame:
        raise NotControlledFrameError(
            f"S_UC is not a positive invertible operator (findings: {', '.join(diag.findings) or 'A_UC <= tol'})"
        )
    s_inv = linalg.inverse(controlled_frame_operator(sys).matrix)
    uf, cf = sys.u_images, sys.c_images

    f1 = s_inv @ (cf @ (adjoint(uf) @ f))
    f2 = cf @ (adjoint(s_inv @ uf) @ f)

    norm = np.linalg.norm(f)
    if norm == 0:
        res = (float(np.linalg.norm(f1)), float(np.linalg.norm(f2)))
    else:
        res = (float(np.linalg.norm(f - f1) / norm), float(np.linalg.norm(f - f2) / norm))
    return Reconstruction(f1, f2, res)


def gram_row_bound(g: GramData) -> float:
    """``max_J sum_k |G[k, J]|^2``; never exceeds ``op_norm**2``."""
    return float(np.max(np.sum(np.abs(g.G) ** 2, axis=0)))


def standard_operator_from_controlled(sys: ControlledSystem) -> LinearOperatorRep:
    """Recover ``S_F = C^-1 S_UC (U*)^-1`` from the controlled operator."""
    s_uc = controlled_frame_operator(sys).matrix
    return LinearOperatorRep(sys.C.inv @ s_uc @ adjoint(sys.U.inv))


@dataclass(frozen=True)
class SchattenReport:
    hs: float
    trace: float
    op: float
    upper_chain: float
    lower_chain: float
    frame_lower: float
    frame_upper: float
    is_frame: bool

    @property
    def chain_holds(self) -> bool:
        h2 = self.hs ** 2
        slack = 1e-9 * max(1.0, self.upper_chain)
        return self.lower_chain - slack <= h2 <= self.upper_chain + slack


def schatten_report(sys: ControlledSystem, tol: float = TOL_POS) -> SchattenReport:
    """Hilbert-Schmidt / trace norms of the controlled Gram matrix plus the
    two-sided estimate of ``||G||_HS^2`` through the frame bounds."""
    g = controlled_gram(sys)
    a, b = frame_bounds(sys.family)
    total = float(np.sum(np.abs(sys.family.vectors) ** 2))
    cu = sys.C.H @ sys.U.matrix
    upper = b * linalg.op_norm(sys.C.H) ** 2 * sys.U.singular_values[0] ** 2 * total
    lower = a * linalg.singular_values(cu)[-1] ** 2 * total
    return SchattenReport(
        hs=g.hs_norm,
        trace=g.trace_norm,
        op=g.op_norm,
        upper_chain=float(upper),
        lower_chain=float(lower),
        frame_lower=a,
        frame_upper=b,
        is_frame=a > tol,
    )


class L1LinfImage(NamedTuple):
    image: np.ndarray
    sup_norm: float
    bound: float


def l1_linf_apply(g: GramData, c) -> L1LinfImage:
    """Apply the Gram matrix to ``c`` and report ``||Gc||_inf``.

    ``bound`` is ``sqrt(max_k sum_j |G[k, j]|^2)``, which satisfies
    ``||Gc||_inf <= bound * ||c||_2 <= bound * ||c||_1``.
    """
    c = np.asarray(c, dtype=np.complex128)
    if c.shape != (g.G.shape[1],):
        raise LengthMismatchError(f"expected {g.G.shape[1]} coefficients, got shape {c.shape}")
    image = g.G @ c
    bound = float(np.sqrt(np.max(np.sum(np.abs(g.G) ** 2, axis=1))))
    return L1LinfImage(image, float(np.max(np.abs(image))), bound)
