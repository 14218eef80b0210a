"""Search kernels: compiled core with a pure-Python fallback.

The compiled backend (`lrcforge._kernels._fastcore`, Cython) is selected at
import when present; set LRCFORGE_KERNEL=python|compiled to force a backend.
Both implement identical semantics (see `_pycore`), and the compiled one
additionally requires the field's q*q addition table (q <= ADD_TABLE_CAP),
falling back per-call to Python otherwise.
"""

from __future__ import annotations

import os

import numpy as np

from ..galois import ADD_TABLE_CAP, FieldSpec
from . import _pycore

_requested = os.environ.get("LRCFORGE_KERNEL", "").strip().lower()
_fastcore = None
if _requested in ("", "compiled"):
    try:
        import importlib

        _fastcore = importlib.import_module("._fastcore", __package__)
    except ImportError:
        _fastcore = None
        if _requested == "compiled":
            raise

BACKEND = "compiled" if _fastcore is not None else "python"


def available_backends() -> tuple[str, ...]:
    return ("compiled", "python") if _fastcore is not None else ("python",)


def _use_compiled(field: FieldSpec, backend: str | None) -> bool:
    name = backend or BACKEND
    return name == "compiled" and _fastcore is not None and field.q <= ADD_TABLE_CAP


def enum_min_weight(gen, field: FieldSpec, known_lower: int = 1, budget=None, backend=None):
    """(status, weight, message, codeword, ops); see `_pycore.enum_min_weight`."""
    gen = np.ascontiguousarray(gen, dtype=np.uint16)
    if _use_compiled(field, backend):
        t = field.kernel_tables()
        return _fastcore.enum_min_weight(
            gen, t.exp2, t.log, t.add, int(field.q), int(known_lower),
            int(budget) if budget is not None else (1 << 62),
        )
    return _pycore.enum_min_weight(gen, field, known_lower, budget)


def dependent_dfs(
    cols_t,
    w: int,
    field: FieldSpec,
    class_ids=None,
    band_masks=None,
    band_mins=None,
    require_all: bool = False,
    budget=None,
    backend=None,
):
    """(status, witness, ops); see `_pycore.dependent_dfs`."""
    cols_t = np.ascontiguousarray(cols_t, dtype=np.uint16)
    if _use_compiled(field, backend):
        t = field.kernel_tables()
        cid = (
            np.ascontiguousarray(class_ids, dtype=np.int64)
            if class_ids is not None
            else None
        )
        bm = np.ascontiguousarray(
            band_masks if band_masks is not None else (), dtype=np.int64
        )
        bmin = np.ascontiguousarray(
            band_mins if band_mins is not None else (), dtype=np.int64
        )
        return _fastcore.dependent_dfs(
            cols_t, int(w), t.exp2, t.log, t.neg, t.add, int(field.q),
            cid, bm, bmin, bool(require_all),
            int(budget) if budget is not None else (1 << 62),
        )
    return _pycore.dependent_dfs(
        cols_t, w, field, class_ids, band_masks, band_mins, require_all, budget
    )
