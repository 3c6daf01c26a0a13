"""Controlled frames and controlled Riesz bases in finite-dimensional Hilbert spaces."""

__version__ = "0.1.0"

from .controlled import (
    ControlledDiagnosis,
    ControlledSystem,
    GramData,
    controlled_frame_operator,
    controlled_gram,
    controlled_reconstruct,
    diagnose_controlled,
    gram_row_bound,
    l1_linf_apply,
    schatten_report,
    standard_operator_from_controlled,
)
from .frames import FrameClassification, FrameFamily, analysis, classify, frame_bounds, frame_operator, gram, synthesis
from .generators import gen_example24, gen_random_system
from .linalg import (
    LinearOperatorRep,
    hermitian_eig,
    hermitian_sqrt,
    polar,
    positivity_check,
    sandwich_bounds,
    singular_values,
)
from .riesz import (
    ControlledRieszSpec,
    RieszDiagnosis,
    biorthogonality_defect,
    build_controlled_riesz,
    dual_type1,
    dual_type2,
    quadratic_form_bounds,
    riesz_diagnose,
)
