"""JSON system documents.

A system document looks like::

    {
      "dim": 2,
      "vectors": [[1, 0], [0, 1]],
      "U": [[[2.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
      "C": null,
      "tolerances": {"tol": 1e-9},
      "seed": 0
    }

``vectors`` is ``n x d`` (one frame vector per row) and ``U``/``C`` are
``d x d`` row-major. Every entry is either a real number or a
``[re, im]`` pair. ``U`` and ``C`` default to the identity.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .controlled import ControlledSystem
from .errors import ParseError, ShapeError
from .frames import FrameFamily


@dataclass
class SystemDocument:
    system: ControlledSystem
    tolerances: dict = field(default_factory=dict)
    seed: int | None = None

    @property
    def tol(self) -> float | None:
        t = self.tolerances.get("tol")
        return None if t is None else float(t)


def _complex_array(raw, name: str, ndim: int) -> np.ndarray:
    try:
        a = np.array(raw, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{name}: entries must all be numbers or all [re, im] pairs") from exc
    if a.ndim == ndim + 1 and a.shape[-1] == 2:
        a = a[..., 0] + 1j * a[..., 1]
    elif a.ndim != ndim:
        raise ParseError(f"{name}: expected a {ndim}-D array of numbers or [re, im] pairs, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ParseError(f"{name}: non-finite entries")
    return a.astype(np.complex128)


def encode_complex(a) -> list:
    """Nested lists of ``[re, im]`` pairs."""
    a = np.asarray(a, dtype=np.complex128)
    return np.stack([a.real, a.imag], axis=-1).tolist()


def parse_document(doc: dict) -> SystemDocument:
    if not isinstance(doc, dict):
        raise ParseError("system document must be a JSON object")
    if "vectors" not in doc:
        raise ParseError("system document needs a 'vectors' field")
    vecs = _complex_array(doc["vectors"], "vectors", 2)
    dim = doc.get("dim", vecs.shape[1])
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError(f"dim must be a positive integer, got {dim!r}")
    if vecs.shape[1] != dim:
        raise ShapeError(f"vectors have {vecs.shape[1]} components but dim is {dim}")
    ops = {}
    for name in ("U", "C"):
        raw = doc.get(name)
        if raw is None:
            continue
        m = _complex_array(raw, name, 2)
        if m.shape != (dim, dim):
            raise ShapeError(f"{name} has shape {m.shape}, expected ({dim}, {dim})")
        ops[name] = m
    tols = doc.get("tolerances") or {}
    if not isinstance(tols, dict) or not all(isinstance(v, (int, float)) for v in tols.values()):
        raise ParseError("tolerances must map names to numbers")
    seed = doc.get("seed")
    if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool)):
        raise ParseError(f"seed must be an integer, got {seed!r}")
    sys = ControlledSystem(FrameFamily(vecs), ops.get("U"), ops.get("C"))
    return SystemDocument(sys, dict(tols), seed)


def read_document(path) -> SystemDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
    return parse_document(doc)


def load_system(path) -> ControlledSystem:
    return read_document(path).system


def system_to_document(sys: ControlledSystem, tolerances: dict | None = None, seed: int | None = None) -> dict:
    doc = {
        "dim": sys.dim,
        "vectors": encode_complex(sys.family.vectors),
        "U": encode_complex(sys.U.matrix),
        "C": encode_complex(sys.C.matrix),
    }
    if tolerances:
        doc["tolerances"] = dict(tolerances)
    if seed is not None:
        doc["seed"] = seed
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def save_system(sys: ControlledSystem, path, tolerances: dict | None = None, seed: int | None = None) -> None:
    Path(path).write_text(dumps(system_to_document(sys, tolerances, seed)), encoding="utf-8")


def digest(doc: dict) -> str:
    """SHA-256 of the canonical (sorted, compact) JSON form of ``doc``."""
    canon = json.dumps(doc, sort_keys=True, separators=(",", ":"), allow_nan=False)
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()
