"""Full diagnostic battery and its report document."""
from __future__ import annotations

import csv
import io as _io
import math
from dataclasses import asdict

import numpy as np

from . import __version__, linalg
from .controlled import (
    NEGATIVE_DEFINITE,
    ControlledSystem,
    controlled_frame_operator,
    controlled_gram,
    diagnose_controlled,
    gram_row_bound,
    schatten_report,
)
from .frames import classify, frame_operator
from .io import digest, encode_complex, system_to_document
from .riesz import riesz_diagnose

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2

SIGN_NOTE = (
    "S_UC is negative definite: the controlled quadratic form is -|A| ||f||^2, "
    "so the family is tight only in magnitude; reported as is, sign not flipped"
)


def _clean(x):
    """JSON-safe copy: NaN/inf become None, arrays become lists."""
    if isinstance(x, dict):
        return {k: _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, np.ndarray):
        return _clean(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None
    if isinstance(x, complex):
        return [x.real, x.imag]
    return x


def run_battery(sys: ControlledSystem, tol: float = linalg.TOL_POS, seed: int | None = None) -> dict:
    """Run every diagnostic on ``sys`` and return the report as a plain dict.

    The report is a pure function of the system, ``tol`` and ``seed``;
    ``exit_status`` is 0 when the family is a frame, a controlled frame and
    a controlled Riesz basis, and 1 otherwise.
    """
    cls = classify(sys.family, tol)
    ctrl = diagnose_controlled(sys, tol)
    g = controlled_gram(sys)
    sch = schatten_report(sys, tol)
    rz = riesz_diagnose(sys, tol)

    findings = list(ctrl.findings)
    notes = []
    if NEGATIVE_DEFINITE in ctrl.findings:
        notes.append(SIGN_NOTE)

    negatives = [
        name
        for name, ok in (
            ("frame", cls.is_frame),
            ("controlled_frame", ctrl.is_controlled_frame),
            ("controlled_riesz", rz.is_controlled_riesz),
        )
        if not ok
    ]

    rz_dict = asdict(rz)
    rz_dict["recovered_M"] = None if rz.recovered_M is None else encode_complex(rz.recovered_M)

    ctrl_dict = asdict(ctrl)
    ctrl_dict["sign_discrepancy"] = ctrl.sign_discrepancy

    report = {
        "tool": {"name": "ucframes", "version": __version__},
        "input_digest": digest(system_to_document(sys, {"tol": tol}, seed)),
        "dim": sys.dim,
        "count": sys.n,
        "tolerance": tol,
        "classification": asdict(cls),
        "controlled": ctrl_dict,
        "gram": {
            "op_norm": g.op_norm,
            "hs_norm": g.hs_norm,
            "trace_norm": g.trace_norm,
            "min_singular": g.min_singular,
            "row_bound": gram_row_bound(g),
            "rank": g.rank(),
            "singular_values": g.singular_values,
            "tolerance": tol,
        },
        "schatten": dict(asdict(sch), chain_holds=sch.chain_holds, tolerance=tol),
        "riesz": rz_dict,
        "findings": findings,
        "notes": notes,
        "verdict": {
            "negative": negatives,
            "exit_status": EXIT_NEGATIVE if negatives else EXIT_OK,
        },
    }
    return _clean(report)


def spectrum_rows(sys: ControlledSystem) -> list[tuple[str, int, float]]:
    rows = []
    for i, lam in enumerate(linalg.eigvalsh(frame_operator(sys.family).matrix)):
        rows.append(("frame_operator_eigenvalue", i, float(lam)))
    s_uc = controlled_frame_operator(sys).matrix
    herm = 0.5 * (s_uc + linalg.adjoint(s_uc))
    for i, lam in enumerate(linalg.eigvalsh(herm)):
        rows.append(("controlled_operator_hermitian_part_eigenvalue", i, float(lam)))
    for i, s in enumerate(controlled_gram(sys).singular_values):
        rows.append(("controlled_gram_singular_value", i, float(s)))
    return rows


def spectrum_csv(sys: ControlledSystem) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("quantity", "index", "value"))
    for q, i, v in spectrum_rows(sys):
        w.writerow((q, i, repr(v)))
    return buf.getvalue()
