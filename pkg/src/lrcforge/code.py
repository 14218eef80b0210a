"""Linear codes over a FieldSpec: duals, containment, puncturing and exact
minimum distance.

Distance strategies
-------------------
``enumeration``  full codeword enumeration (one representative per projective
                 class) when q^k is small enough;
``column``       certified dependent-column search on a parity-check matrix:
                 d is the smallest w such that some w columns are linearly
                 dependent, found by lexicographic DFS over independent
                 column prefixes with iterative deepening;
``block-split``  exact divide-and-conquer for codes whose coordinates split
                 into disjoint blocks (verified, never assumed): single-block
                 codewords are searched in shortened codes, multi-block ones
                 are bounded below by punctured-code distances;
``band-split``   exact search for codes with a banded parity structure
                 (disjoint column classes, row bands that see only some
                 classes): sub-pattern codewords come from shortened codes,
                 full-pattern ones from a windowed column search whose
                 pruning constraints are themselves certified by small
                 searches first.

Every strategy returns either an exact value with a verifiable witness or an
explicit bracket flagged as capped; nothing is ever estimated.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from . import _kernels as kernels
from .errors import (
    DistanceUnresolved,
    InvalidParameters,
    NotQuadraticExtension,
    PostconditionFailed,
)
from .galois import FieldSpec
from .matrix import Mat, kernel_basis, matmul, rank, rref, transpose, vstack

ENUM_CAP = 2 * 10**7
DEFAULT_BUDGET = 10**8

EUCLIDEAN = "euclidean"
HERMITIAN = "hermitian"


def _default_budget(budget: Optional[int]) -> int:
    if budget is not None:
        return int(budget)
    env = os.environ.get("LRCFORGE_BUDGET")
    if env:
        return int(env)
    return DEFAULT_BUDGET


class LinearCode:
    """A linear [n, k] code, canonicalised by the RREF of its generator.

    Two codes are equal iff their canonical generators coincide, so equality
    and containment reduce to rank arithmetic.
    """

    __slots__ = ("field", "n", "generator", "_parity")

    def __init__(self, field: FieldSpec, n: int, canonical_generator: Mat):
        self.field = field
        self.n = n
        self.generator = canonical_generator
        self._parity: Optional[Mat] = None

    @property
    def dim(self) -> int:
        return self.generator.nrows

    @property
    def is_zero(self) -> bool:
        """Flag for the rank-0 (empty) code."""
        return self.dim == 0

    @property
    def parity_check(self) -> Mat:
        if self._parity is None:
            self._parity = kernel_basis(self.generator)
        return self._parity

    def __eq__(self, other):
        return (
            isinstance(other, LinearCode)
            and other.field is self.field
            and other.n == self.n
            and other.generator == self.generator
        )

    def __hash__(self):
        return hash((id(self.field), self.n, self.generator))

    def __repr__(self):
        return f"LinearCode[{self.n},{self.dim}]_GF({self.field.q})"

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "n": self.n,
            "generator": self.generator.to_json(),
        }


def from_generator(G: Mat) -> LinearCode:
    R, r, _ = rref(G)
    gen = Mat(G.field, R.arr[:r].copy())
    return LinearCode(G.field, G.ncols, gen)


def from_parity_check(H: Mat) -> LinearCode:
    return from_generator(kernel_basis(H))


def dual(C: LinearCode, kind: str = EUCLIDEAN) -> LinearCode:
    if kind == EUCLIDEAN:
        return from_generator(C.parity_check)
    if kind == HERMITIAN:
        if C.field.e % 2 != 0:
            raise NotQuadraticExtension(
                f"Hermitian dual needs a quadratic extension, got GF({C.field.q})"
            )
        q0 = C.field.p ** (C.field.e // 2)
        conjugated = Mat(C.field, C.field.powv(C.generator.arr, q0))
        return from_generator(kernel_basis(conjugated))
    raise InvalidParameters(f"unknown duality kind {kind!r}")


def contains(C: LinearCode, D: LinearCode) -> bool:
    """True iff D is a subcode of C."""
    if C.field is not D.field or C.n != D.n:
        raise InvalidParameters("codes live in different ambient spaces")
    if D.is_zero:
        return True
    stacked = vstack([C.generator, D.generator])
    return rank(stacked) == C.dim


def sum_code(C: LinearCode, D: LinearCode) -> LinearCode:
    if C.field is not D.field or C.n != D.n:
        raise InvalidParameters("codes live in different ambient spaces")
    return from_generator(vstack([C.generator, D.generator]))


def in_code(C: LinearCode, vec: Sequence[int]) -> bool:
    v = Mat(C.field, [list(vec)])
    return rank(vstack([C.generator, v])) == C.dim


def _coord_array(C_n: int, coords: Sequence[int]) -> list[int]:
    S = sorted(set(int(c) for c in coords))
    if not S:
        raise InvalidParameters("coordinate set must be nonempty")
    if S[0] < 1 or S[-1] > C_n:
        raise InvalidParameters(f"coordinates out of range 1..{C_n}")
    return S

def puncture(C: LinearCode, coords: Sequence[int]) -> LinearCode:
    """Code of length |coords| keeping the 1-based coordinates, ascending."""
    S = _coord_array(C.n, coords)
    idx = [c - 1 for c in S]
    return from_generator(Mat(C.field, C.generator.arr[:, idx].copy()))


def shorten(C: LinearCode, coords: Sequence[int]) -> LinearCode:
    """Restriction to codewords supported inside coords, then punctured there."""
    S = _coord_array(C.n, coords)
    keep = [c - 1 for c in S]
    comp = [c for c in range(C.n) if (c + 1) not in set(S)]
    if not comp:
        return C
    if C.is_zero:
        return from_generator(Mat(C.field, np.zeros((1, len(keep)), dtype=np.uint16)))
    M = Mat(C.field, C.generator.arr[:, comp].copy())
    L = kernel_basis(transpose(M))
    if L.nrows == 0:
        return from_generator(Mat(C.field, np.zeros((1, len(keep)), dtype=np.uint16)))
    restricted = matmul(L, Mat(C.field, C.generator.arr[:, keep].copy()))
    return from_generator(restricted)


# -- distance ----------------------------------------------------------------


@dataclass(frozen=True)
class DistanceResult:
    """Outcome of a minimum-distance computation.

    Exact results carry value == lower == upper and a witness (a weight-d
    codeword or d dependent parity-check columns, 1-based).  Capped results
    carry the bracket only.
    """

    value: Optional[int]
    exact: bool
    lower: int
    upper: Optional[int]
    capped: bool
    witness_codeword: Optional[tuple[int, ...]]
    witness_columns: Optional[tuple[int, ...]]
    method: str
    ops: int

    @staticmethod
    def exact_result(value, method, ops, codeword=None, columns=None) -> "DistanceResult":
        return DistanceResult(value, True, value, value, False, codeword, columns, method, ops)

    @staticmethod
    def bracket(lower, upper, method, ops) -> "DistanceResult":
        return DistanceResult(None, False, lower, upper, True, None, None, method, ops)

    def require_exact(self) -> int:
        if not self.exact or self.value is None:
            raise DistanceUnresolved(
                f"exact distance required, got bracket [{self.lower}, {self.upper}]"
            )
        return self.value


@dataclass(frozen=True)
class BandHint:
    """Certified-structure hint for the band-split distance strategy.

    ``matrix`` is a parity-check matrix of the code (row space checked at
    use), ``classes`` a partition of the coordinates (1-based), ``bands`` a
    list of (row_indices, visible_class_indices) pairs: the named rows must
    vanish on every column outside the named classes (checked at use).
    """

    matrix: Mat
    classes: tuple[tuple[int, ...], ...]
    bands: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]


def _codeword_from_columns(C: LinearCode, parity: Mat, cols_1based: Sequence[int]) -> tuple[int, ...]:
    """A codeword of C supported on the given dependent parity columns."""
    idx = [c - 1 for c in cols_1based]
    sub = Mat(C.field, parity.arr[:, idx].copy())
    ker = kernel_basis(sub)
    if ker.nrows == 0:
        raise PostconditionFailed("claimed dependent columns are independent")
    coeff = ker.arr[0]
    full = np.zeros(C.n, dtype=np.uint16)
    full[idx] = coeff
    if not in_code(C, full):
        raise PostconditionFailed("witness vector is not a codeword")
    return tuple(int(x) for x in full)


def _column_rounds(cols_t, field, w_from, w_to, budget, backend,
                   class_ids=None, band_masks=None, band_mins=None, require_all=False):
    """Iterative deepening over subset sizes; returns (kind, payload, ops)."""
    ops_total = 0
    for w in range(max(1, w_from), w_to + 1):
        status, wit, ops = kernels.dependent_dfs(
            cols_t, w, field,
            class_ids=class_ids, band_masks=band_masks, band_mins=band_mins,
            require_all=require_all,
            budget=budget - ops_total, backend=backend,
        )
        ops_total += ops
        if status == 1:
            return ("found", wit, ops_total)
        if status == 2:
            return ("budget", w, ops_total)
    return ("none", w_to, ops_total)


def _column_search(C, budget, known_lower, backend, matrix=None) -> DistanceResult:
    H = matrix if matrix is not None else C.parity_check
    n = C.n
    k = C.dim
    wmax = n - k
    cols_t = np.ascontiguousarray(H.arr.T, dtype=np.uint16)
    kind, payload, ops = _column_rounds(cols_t, C.field, known_lower, wmax, budget, backend)
    if kind == "found":
        wit = tuple(sorted(c + 1 for c in payload))
        if len(wit) < known_lower:
            raise PostconditionFailed(
                f"dependent set of size {len(wit)} contradicts lower bound {known_lower}"
            )
        cw = _codeword_from_columns(C, H, wit)
        return DistanceResult.exact_result(len(wit), "column-search", ops, codeword=cw, columns=wit)
    if kind == "budget":
        return DistanceResult.bracket(payload, n - k + 1, "column-search", ops)
    # every subset of size <= n-k is independent; any n-k+1 columns are dependent
    wit = tuple(range(1, n - k + 2))
    cw = _codeword_from_columns(C, H, wit)
    return DistanceResult.exact_result(n - k + 1, "column-search", ops, codeword=cw, columns=wit)


def _enumeration(C, budget, known_lower, backend) -> DistanceResult:
    status, w, msg, cw, ops = kernels.enum_min_weight(
        C.generator.arr, C.field, known_lower=known_lower, budget=budget, backend=backend
    )
    if status == 2:
        return DistanceResult.bracket(1, None, "enumeration", ops)
    if w is None:
        raise PostconditionFailed("enumeration of a nonzero code found no codeword")
    return DistanceResult.exact_result(
        w, "enumeration", ops, codeword=tuple(int(x) for x in cw)
    )


def _embed_witness(sub: DistanceResult, subcode: LinearCode, coords: list[int], C: LinearCode):
    """Map a shortened-code witness back into C's coordinates."""
    if sub.witness_codeword is not None:
        cw = sub.witness_codeword
    else:
        cw = _codeword_from_columns(subcode, subcode.parity_check, sub.witness_columns)
    full = np.zeros(C.n, dtype=np.uint16)
    for local, val in enumerate(cw):
        full[coords[local] - 1] = val
    if not in_code(C, full):
        raise PostconditionFailed("embedded witness is not a codeword of the parent")
    return tuple(int(x) for x in full)


def _block_split(C, blocks, budget, known_lower, backend) -> DistanceResult:
    n = C.n
    blocks = [sorted(set(int(c) for c in b)) for b in blocks]
    flat = [c for b in blocks for c in b]
    if sorted(flat) != list(range(1, n + 1)):
        raise InvalidParameters("blocks must partition the coordinate set")
    ops = 0
    punct_vals = []
    for b in blocks:
        P = puncture(C, b)
        if P.is_zero:
            continue
        r = min_distance(P, budget=budget, strategy="auto", backend=backend)
        ops += r.ops
        if not r.exact:
            return _column_search(C, budget, known_lower, backend)
        punct_vals.append(r.value)
    best_single = None
    best_embed = None
    for b in blocks:
        K = shorten(C, b)
        if K.is_zero:
            continue
        r = min_distance(K, budget=budget, strategy="auto", backend=backend)
        ops += r.ops
        if not r.exact:
            return _column_search(C, budget, known_lower, backend)
        if best_single is None or r.value < best_single:
            best_single = r.value
            best_embed = _embed_witness(r, K, b, C)
    cross = sum(sorted(punct_vals)[:2]) if len(punct_vals) >= 2 else None
    if best_single is None:
        if cross is None:
            raise PostconditionFailed("nonzero code with no codewords found by split")
        res = _column_search_window(C, budget, max(known_lower, cross), None, backend)
        return res
    if cross is None or best_single <= cross:
        return DistanceResult.exact_result(best_single, "block-split", ops, codeword=best_embed)
    # multi-block codewords might still be shorter: certify the gap
    res = _column_search_window(C, budget, max(known_lower, cross), best_single, backend)
    if res is not None:
        return res
    return DistanceResult.exact_result(best_single, "block-split", ops, codeword=best_embed)


def _column_search_window(C, budget, w_from, stop_before, backend) -> Optional[DistanceResult]:
    """Column rounds w_from .. stop_before-1 (or n-k if None).

    Returns an exact/capped result if the search found something or ran out
    of budget; None when the window is certified empty.
    """
    H = C.parity_check
    n, k = C.n, C.dim
    w_to = n - k if stop_before is None else min(stop_before - 1, n - k)
    cols_t = np.ascontiguousarray(H.arr.T, dtype=np.uint16)
    kind, payload, ops = _column_rounds(cols_t, C.field, w_from, w_to, budget, backend)
    if kind == "found":
        wit = tuple(sorted(c + 1 for c in payload))
        cw = _codeword_from_columns(C, H, wit)
        return DistanceResult.exact_result(len(wit), "column-search", ops, codeword=cw, columns=wit)
    if kind == "budget":
        upper = stop_before if stop_before is not None else n - k + 1
        return DistanceResult.bracket(payload, upper, "column-search", ops)
    if stop_before is None:
        wit = tuple(range(1, n - k + 2))
        cw = _codeword_from_columns(C, H, wit)
        return DistanceResult.exact_result(n - k + 1, "column-search", ops, codeword=cw, columns=wit)
    return None


def _validate_band_hint(C: LinearCode, hint: BandHint) -> None:
    M = hint.matrix
    if M.field is not C.field or M.ncols != C.n:
        raise InvalidParameters("hint matrix has the wrong shape or field")
    if rank(M) != C.n - C.dim:
        raise InvalidParameters("hint matrix rank does not match the code redundancy")
    prod = matmul(C.generator, transpose(M))
    if np.count_nonzero(prod.arr):
        raise InvalidParameters("hint matrix does not annihilate the code")
    flat = sorted(c for cls in hint.classes for c in cls)
    if flat != list(range(1, C.n + 1)):
        raise InvalidParameters("hint classes must partition the coordinates")
    for rows, visible in hint.bands:
        invisible = [
            c - 1
            for ci, cls in enumerate(hint.classes)
            if ci not in set(visible)
            for c in cls
        ]
        if invisible:
            sub = M.arr[np.ix_([r - 1 for r in rows], invisible)]
            if np.count_nonzero(sub):
                raise InvalidParameters(
                    "band rows are nonzero on a class declared invisible"
                )


def _band_split(C, hint, budget, known_lower, backend) -> DistanceResult:
    _validate_band_hint(C, hint)
    ncls = len(hint.classes)
    if not 2 <= ncls <= 4:
        raise InvalidParameters("band-split supports 2..4 classes")
    ops = 0
    # exact minima per proper nonempty class pattern, via shortened codes
    best_sub = None
    best_embed = None
    all_ids = tuple(range(ncls))
    for size in range(1, ncls):
        for pattern in combinations(all_ids, size):
            coords = sorted(c for ci in pattern for c in hint.classes[ci])
            K = shorten(C, coords)
            if K.is_zero:
                continue
            r = min_distance(K, budget=budget, strategy="auto", backend=backend)
            ops += r.ops
            if not r.exact:
                return _column_search(C, budget, known_lower, backend)
            if best_sub is None or r.value < best_sub:
                best_sub = r.value
                best_embed = _embed_witness(r, K, coords, C)
    w_cut = best_sub - 1 if best_sub is not None else C.n - C.dim
    # band minima (lower bounds certified by search up to the cutoff)
    band_masks = []
    band_mins = []
    M = hint.matrix
    for rows, visible in hint.bands:
        vis_cols = sorted(c for ci in visible for c in hint.classes[ci])
        sub = M.arr[np.ix_([r - 1 for r in rows], [c - 1 for c in vis_cols])]
        cols_t = np.ascontiguousarray(sub.T, dtype=np.uint16)
        kind, payload, o = _column_rounds(cols_t, C.field, 1, min(w_cut, len(vis_cols)), budget, backend)
        ops += o
        if kind == "budget":
            return _column_search(C, budget, known_lower, backend)
        m_b = len(payload) if kind == "found" else w_cut + 1
        mask = 0
        for ci in visible:
            mask |= 1 << ci
        band_masks.append(mask)
        band_mins.append(m_b)
    # windowed search for full-pattern circuits below the sub-pattern optimum
    class_ids = np.zeros(C.n, dtype=np.int64)
    for ci, cls in enumerate(hint.classes):
        for c in cls:
            class_ids[c - 1] = ci
    cols_t = np.ascontiguousarray(M.arr.T, dtype=np.uint16)
    kind, payload, o = _column_rounds(
        cols_t, C.field, known_lower, w_cut, budget, backend,
        class_ids=class_ids, band_masks=band_masks, band_mins=band_mins, require_all=True,
    )
    ops += o
    if kind == "found":
        wit = tuple(sorted(c + 1 for c in payload))
        cw = _codeword_from_columns(C, M, wit)
        return DistanceResult.exact_result(len(wit), "band-split", ops, codeword=cw, columns=wit)
    if kind == "budget":
        return DistanceResult.bracket(payload, best_sub, "band-split", ops)
    if best_sub is None:
        return DistanceResult.exact_result(C.n - C.dim + 1, "band-split", ops)
    return DistanceResult.exact_result(best_sub, "band-split", ops, codeword=best_embed)


def min_distance(
    C: LinearCode,
    *,
    budget: Optional[int] = None,
    strategy: str = "auto",
    blocks: Optional[Sequence[Sequence[int]]] = None,
    band_hint: Optional[BandHint] = None,
    known_lower: int = 1,
    enum_cap: int = ENUM_CAP,
    backend: Optional[str] = None,
) -> DistanceResult:
    """Exact minimum distance, or an explicit bracket when the budget caps out.

    ``known_lower`` is an externally certified lower bound (for example from
    verified locality); certificate rounds below it are skipped.  The zero
    code reports value 0 ("no nonzero codewords").
    """
    budget = _default_budget(budget)
    if C.is_zero:
        return DistanceResult.exact_result(0, "void", 0)
    if strategy == "auto":
        if C.field.q**C.dim <= enum_cap:
            strategy = "enumeration"
        elif blocks is not None:
            strategy = "block-split"
        elif band_hint is not None:
            strategy = "band-split"
        else:
            strategy = "column"
    if strategy == "enumeration":
        return _enumeration(C, budget, known_lower, backend)
    if strategy == "column":
        return _column_search(C, budget, known_lower, backend)
    if strategy == "block-split":
        if blocks is None:
            raise InvalidParameters("block-split requires blocks")
        return _block_split(C, blocks, budget, known_lower, backend)
    if strategy == "band-split":
        if band_hint is None:
            raise InvalidParameters("band-split requires a hint")
        return _band_split(C, band_hint, budget, known_lower, backend)
    raise InvalidParameters(f"unknown strategy {strategy!r}")


def distance_at_least(
    C: LinearCode, d_low: int, *, budget: Optional[int] = None, backend: Optional[str] = None
) -> tuple[Optional[bool], int]:
    """Certify d(C) >= d_low; returns (verdict, ops).

    Verdict None means the budget ran out before the certificate finished.
    """
    budget = _default_budget(budget)
    if C.is_zero:
        return (True, 0)
    if d_low <= 1:
        return (True, 0)
    H = C.parity_check
    cols_t = np.ascontiguousarray(H.arr.T, dtype=np.uint16)
    w_to = min(d_low - 1, C.n - C.dim)
    kind, payload, ops = _column_rounds(cols_t, C.field, 1, w_to, budget, backend)
    if kind == "found":
        return (False, ops)
    if kind == "budget":
        return (None, ops)
    if d_low - 1 > C.n - C.dim:
        # all proper certificates passed but d <= n-k+1 < d_low
        return (C.n - C.dim + 1 >= d_low, ops)
    return (True, ops)


def weight(vec: Sequence[int]) -> int:
    return sum(1 for x in vec if x)


def is_mds(C: LinearCode, *, budget: Optional[int] = None) -> bool:
    return singleton_defect(C, budget=budget) == 0


def singleton_defect(C: LinearCode, *, budget: Optional[int] = None) -> int:
    """(n - k + 1) - d >= 0; requires the exact distance."""
    if C.is_zero:
        raise InvalidParameters("singleton defect undefined for the zero code")
    d = min_distance(C, budget=budget).require_exact()
    return (C.n - C.dim + 1) - d
