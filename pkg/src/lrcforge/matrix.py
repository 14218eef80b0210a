"""Exact dense linear algebra over a FieldSpec.

Matrices are immutable numpy uint16 arrays of canonical field integers.
Public index-taking operations (minor, permutations) are 1-based to match
the usual coding-theory conventions; internal numpy indexing is 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import InvalidParameters, NotQuadraticExtension, ShapeMismatch
from .galois import FieldSpec


class Mat:
    """Immutable dense matrix over a FieldSpec."""

    __slots__ = ("field", "arr")

    def __init__(self, field: FieldSpec, rows: Iterable[Iterable[int]] | np.ndarray):
        arr = np.array(rows, dtype=np.uint16)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if arr.ndim != 2:
            raise ShapeMismatch("matrix data must be two-dimensional")
        if arr.size and int(arr.max()) >= field.q:
            raise InvalidParameters("entry out of range for the field")
        arr.flags.writeable = False
        self.field = field
        self.arr = arr

    @property
    def nrows(self) -> int:
        return self.arr.shape[0]

    @property
    def ncols(self) -> int:
        return self.arr.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.arr.shape

    def entry(self, i: int, j: int) -> int:
        """Entry at 1-based position (i, j)."""
        return int(self.arr[i - 1, j - 1])

    def row(self, i: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.arr[i - 1])

    def rows(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in r) for r in self.arr]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and other.field is self.field
            and other.arr.shape == self.arr.shape
            and bool(np.array_equal(other.arr, self.arr))
        )

    def __hash__(self):
        return hash((id(self.field), self.arr.shape, self.arr.tobytes()))

    def __repr__(self):
        return f"Mat(GF({self.field.q}), {self.nrows}x{self.ncols})"

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "rows": self.nrows,
            "cols": self.ncols,
            "entries": [int(x) for x in self.arr.ravel()],
        }


def mat_from_json(obj: dict, field: FieldSpec) -> Mat:
    arr = np.array(obj["entries"], dtype=np.uint16).reshape(obj["rows"], obj["cols"])
    return Mat(field, arr)


def zeros(field: FieldSpec, m: int, n: int) -> Mat:
    return Mat(field, np.zeros((m, n), dtype=np.uint16))


def identity(field: FieldSpec, n: int) -> Mat:
    a = np.zeros((n, n), dtype=np.uint16)
    np.fill_diagonal(a, 1)
    return Mat(field, a)


def hstack(mats: Sequence[Mat]) -> Mat:
    field = mats[0].field
    return Mat(field, np.hstack([m.arr for m in mats]))


def vstack(mats: Sequence[Mat]) -> Mat:
    field = mats[0].field
    return Mat(field, np.vstack([m.arr for m in mats]))


def transpose(M: Mat) -> Mat:
    return Mat(M.field, M.arr.T.copy())


def conj_transpose(M: Mat, q0: int) -> Mat:
    """Conjugate transpose (b_ij) -> (b_ji^q0) over GF(q0^2)."""
    if M.field.q != q0 * q0:
        raise NotQuadraticExtension(f"GF({M.field.q}) is not GF({q0}^2)")
    return Mat(M.field, M.field.powv(M.arr.T.copy(), q0))


def scale(c: int, M: Mat) -> Mat:
    return Mat(M.field, M.field.scalev(c, M.arr))


def matmul(A: Mat, B: Mat) -> Mat:
    if A.field is not B.field:
        raise InvalidParameters("matmul requires a common field")
    if A.ncols != B.nrows:
        raise ShapeMismatch(f"{A.shape} @ {B.shape}")
    f = A.field
    out = np.zeros((A.nrows, B.ncols), dtype=np.uint16)
    for i in range(A.nrows):
        acc = np.zeros(B.ncols, dtype=np.uint16)
        for k in range(A.ncols):
            c = int(A.arr[i, k])
            if c:
                acc = f.addv(acc, f.scalev(c, B.arr[k]))
        out[i] = acc
    return Mat(f, out)


def _rref_arr(field: FieldSpec, arr: np.ndarray) -> tuple[np.ndarray, int, tuple[int, ...]]:
    """RREF of a copy of ``arr``; returns (array, rank, 0-based pivot cols)."""
    A = arr.astype(np.uint16).copy()
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            A[[r, pr]] = A[[pr, r]]
        pv = int(A[r, c])
        if pv != 1:
            A[r] = field.scalev(field.inv(pv), A[r])
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        if others.size:
            coeffs = A[others, c].astype(np.uint16)
            prod = field.mulv(coeffs[:, None], A[r][None, :])
            A[others] = field.addv(A[others], field.negv(prod))
        pivots.append(c)
        r += 1
    return A, r, tuple(pivots)


def rref(M: Mat) -> tuple[Mat, int, tuple[int, ...]]:
    """Reduced row-echelon form, rank and 1-based pivot columns."""
    A, r, piv = _rref_arr(M.field, M.arr)
    return Mat(M.field, A), r, tuple(p + 1 for p in piv)


def rank(M: Mat) -> int:
    return _rref_arr(M.field, M.arr)[1]


def kernel_basis(M: Mat) -> Mat:
    """Canonical (RREF) basis of the right kernel {x : M x^T = 0}, as rows."""
    f = M.field
    R, r, piv = _rref_arr(f, M.arr)
    n = M.ncols
    free = [c for c in range(n) if c not in set(piv)]
    if not free:
        return Mat(f, np.zeros((0, n), dtype=np.uint16))
    B = np.zeros((len(free), n), dtype=np.uint16)
    for i, fc in enumerate(free):
        B[i, fc] = 1
        for rr, pc in enumerate(piv):
            B[i, pc] = f.neg(int(R[rr, fc]))
    B, _, _ = _rref_arr(f, B)
    return Mat(f, B)


def det(M: Mat) -> int:
    """Determinant by Gaussian elimination (exact over the field)."""
    if M.nrows != M.ncols:
        raise ShapeMismatch("determinant of a non-square matrix")
    f = M.field
    A = M.arr.astype(np.uint16).copy()
    n = M.nrows
    d = 1
    for c in range(n):
        nz = np.nonzero(A[c:, c])[0]
        if nz.size == 0:
            return 0
        pr = c + int(nz[0])
        if pr != c:
            A[[c, pr]] = A[[pr, c]]
            d = f.neg(d)
        pv = int(A[c, c])
        d = f.mul(d, pv)
        inv = f.inv(pv)
        below = np.nonzero(A[c + 1 :, c])[0]
        if below.size:
            rows = below + c + 1
            coeffs = f.mulv(A[rows, c].astype(np.uint16), np.uint16(inv))
            prod = f.mulv(coeffs[:, None], A[c][None, :])
            A[rows] = f.addv(A[rows], f.negv(prod))
    return d


def minor(M: Mat, row_idx: Sequence[int], col_idx: Sequence[int]) -> int:
    """Determinant of the submatrix on the given 1-based index sets.

    Index lists are sorted ascending before extraction, so only the
    underlying sets matter (no permutation sign).
    """
    if len(row_idx) != len(col_idx):
        raise ShapeMismatch("row and column index lists must have equal size")
    rs = sorted(set(row_idx))
    cs = sorted(set(col_idx))
    if len(rs) != len(row_idx) or len(cs) != len(col_idx):
        raise ShapeMismatch("indices within a list must be distinct")
    if not rs:
        return 1
    if rs[0] < 1 or rs[-1] > M.nrows or cs[0] < 1 or cs[-1] > M.ncols:
        raise ShapeMismatch("index out of range")
    sub = M.arr[np.ix_([r - 1 for r in rs], [c - 1 for c in cs])]
    return det(Mat(M.field, sub))


@dataclass(frozen=True)
class Permutation:
    """A permutation of [N] stored as its 1-based image array."""

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise InvalidParameters(f"not a bijection of [{n}]: {self.images}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, im in enumerate(self.images, start=1):
            inv[im - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(im == i for i, im in enumerate(self.images, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each rotated to start at its minimum."""
        seen = [False] * self.n
        out = []
        for s in range(1, self.n + 1):
            if seen[s - 1]:
                continue
            cyc = [s]
            seen[s - 1] = True
            j = self(s)
            while j != s:
                cyc.append(j)
                seen[j - 1] = True
                j = self(j)
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def __str__(self):
        cyc = self.cycles()
        if not cyc:
            return "id"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)


def identity_permutation(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def transposition_product(n: int, pairs: Iterable[tuple[int, int]]) -> Permutation:
    """Product of disjoint 2-cycles (a, b) acting on [n]."""
    img = list(range(1, n + 1))
    for a, b in pairs:
        if a == b:
            continue
        img[a - 1], img[b - 1] = img[b - 1], img[a - 1]
    return Permutation(tuple(img))


def monomial_pattern(M: Mat) -> Optional[Permutation]:
    """The permutation tau if M is tau-monomial, otherwise None.

    tau-monomial: every row i has exactly one nonzero entry, at column
    tau(i), and tau is a bijection.
    """
    if M.nrows != M.ncols:
        return None
    images = []
    for i in range(M.nrows):
        nz = np.nonzero(M.arr[i])[0]
        if nz.size != 1:
            return None
        images.append(int(nz[0]) + 1)
    if sorted(images) != list(range(1, M.nrows + 1)):
        return None
    return Permutation(tuple(images))


def is_invertible(M: Mat) -> bool:
    return M.nrows == M.ncols and rank(M) == M.nrows
