"""Matrix-product code assembly and defining-matrix theory.

Covers: the block generator of [C_1,...,C_N].A, prefix distances D_i(A),
the non-singular-by-columns test, monomial Gram recognition, the greedy
permutation rule, unit-lower-triangular transforms making a Gram matrix
monomial, the two infinite defining-matrix families, and the
necessary-and-sufficient optimality criterion for MP codes built from
optimal locally repairable constituents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .code import (
    DistanceResult,
    LinearCode,
    contains,
    from_generator,
    min_distance,
)
from .errors import (
    FieldMismatch,
    HypothesisUnmet,
    InvalidParameters,
    LengthMismatch,
    NotDerivable,
    PostconditionFailed,
)
from .galois import FieldSpec, root_of_unity
from .locality import OptimalityResult, RepairProfile, is_optimal_lrc
from .matrix import (
    Mat,
    Permutation,
    conj_transpose,
    identity_permutation,
    is_invertible,
    matmul,
    minor,
    monomial_pattern,
    rank,
    transpose,
    transposition_product,
)

EUCLIDEAN = "euclidean"
HERMITIAN = "hermitian"


@dataclass(frozen=True)
class MPSpec:
    """Defining matrix A (N x M, N <= M) plus N constituent codes of a
    common length over a common field."""

    A: Mat
    constituents: tuple[LinearCode, ...]

    def __post_init__(self):
        N, M = self.A.shape
        if N > M:
            raise InvalidParameters("defining matrix needs N <= M")
        if len(self.constituents) != N:
            raise InvalidParameters("need one constituent per row of A")
        field = self.A.field
        n = self.constituents[0].n
        for C in self.constituents:
            if C.field is not field:
                raise FieldMismatch("constituents must share the defining matrix field")
            if C.n != n:
                raise LengthMismatch("constituents must share a common length")

    @property
    def N(self) -> int:
        return self.A.nrows

    @property
    def M(self) -> int:
        return self.A.ncols

    @property
    def inner_length(self) -> int:
        return self.constituents[0].n

    def segments(self) -> tuple[tuple[int, ...], ...]:
        """The M coordinate blocks of the long code, 1-based."""
        n = self.inner_length
        return tuple(
            tuple(range(j * n + 1, (j + 1) * n + 1)) for j in range(self.M)
        )

    def to_json(self) -> dict:
        return {
            "A": self.A.to_json(),
            "constituents": [C.to_json() for C in self.constituents],
        }


def mp_generator(spec: MPSpec) -> Mat:
    """Block generator with (i, j) block a_ij * G_i."""
    f = spec.A.field
    blocks = []
    for i, C in enumerate(spec.constituents):
        Gi = C.generator.arr
        row = [
            f.scalev(spec.A.entry(i + 1, j + 1), Gi) for j in range(spec.M)
        ]
        blocks.append(np.hstack(row) if row else Gi)
    data = np.vstack(blocks)
    return Mat(f, data)


def mp_code(spec: MPSpec) -> LinearCode:
    return from_generator(mp_generator(spec))


@dataclass(frozen=True)
class PrefixDistanceProfile:
    """Exact distances D_i of the codes spanned by the first i rows of A."""

    values: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        """1-based D_i."""
        return self.values[i - 1]


def prefix_distances(A: Mat) -> PrefixDistanceProfile:
    out = []
    for i in range(1, A.nrows + 1):
        C = from_generator(Mat(A.field, A.arr[:i].copy()))
        if C.is_zero:
            raise InvalidParameters("prefix rows span the zero code")
        out.append(min_distance(C).require_exact())
    return PrefixDistanceProfile(tuple(out))


def is_nsc(A: Mat) -> bool:
    """Non-singular by columns: every i-subset of columns of the first i
    rows forms an invertible submatrix, for every i."""
    N, M = A.shape
    if N > M:
        return False
    for i in range(1, N + 1):
        rows = list(range(1, i + 1))
        for cols in combinations(range(1, M + 1), i):
            if minor(A, rows, list(cols)) == 0:
                return False
    return True


def derive_tau(gram: Mat) -> Permutation:
    """Greedy permutation from a Gram matrix: tau(1) is the first column
    with a nonzero entry in row 1; tau(i) the least unused column making the
    leading minor on rows 1..i and columns tau(1..i-1) + {s} nonzero."""
    N = gram.nrows
    if gram.ncols != N:
        raise InvalidParameters("Gram matrix must be square")
    images: list[int] = []
    used: set[int] = set()
    for i in range(1, N + 1):
        found = None
        for s in range(1, N + 1):
            if s in used:
                continue
            if i == 1:
                ok = gram.entry(1, s) != 0
            else:
                ok = minor(gram, list(range(1, i + 1)), images + [s]) != 0
            if ok:
                found = s
                break
        if found is None:
            raise NotDerivable(f"no valid image for position {i}")
        images.append(found)
        used.add(found)
    return Permutation(tuple(images))


@dataclass(frozen=True)
class TriangularTransform:
    """Unit lower triangular L with tau-monomial B = L . Gram(A) . L^adj."""

    L: Mat
    tau: Permutation
    B: Mat


def gram_matrix(A: Mat, duality: str) -> Mat:
    if duality == HERMITIAN:
        if A.field.e % 2 != 0:
            raise HypothesisUnmet("hermitian Gram needs a quadratic extension field")
        q0 = A.field.p ** (A.field.e // 2)
        return matmul(A, conj_transpose(A, q0))
    if duality == EUCLIDEAN:
        return matmul(A, transpose(A))
    raise InvalidParameters(f"unknown duality {duality!r}")


def _adjoint(M: Mat, duality: str) -> Mat:
    if duality == HERMITIAN:
        q0 = M.field.p ** (M.field.e // 2)
        return conj_transpose(M, q0)
    return transpose(M)


def build_unit_lower_L(A: Mat, duality: str) -> TriangularTransform:
    """Construct the unit lower triangular L with L.Gram(A).L^adj tau-monomial.

    Symmetric Bruhat elimination on the Gram matrix: pick the smallest
    unfinished row i, pair it with the first column j carrying a nonzero
    entry, remove the (j, j) self-pairing with a hyperbolic correction
    (this is where odd characteristic enters), clear the rest of column j
    with row i and the rest of row i with row j.  Every operation adds a
    multiple of an earlier row to a later one, with the adjoint column
    operation applied alongside, so the accumulated transform is unit lower
    triangular.  The monomial pattern is verified at the end, never assumed.
    """
    if A.nrows != A.ncols:
        raise InvalidParameters("square matrix required")
    if A.field.p == 2:
        raise HypothesisUnmet("odd characteristic required")
    if not is_invertible(A):
        raise InvalidParameters("invertible matrix required")
    f = A.field
    N = A.nrows
    M = gram_matrix(A, duality)
    tau = derive_tau(M)
    q0 = f.p ** (f.e // 2) if duality == HERMITIAN else None

    def conj(x: int) -> int:
        return f.pow(x, q0) if q0 is not None else x

    W = M.arr.astype(np.uint16).copy()
    L = np.zeros((N, N), dtype=np.uint16)
    np.fill_diagonal(L, 1)

    def row_op(b: int, a: int, c: int) -> None:
        # row_b += c * row_a with the adjoint column op col_b += conj(c) * col_a
        if c == 0:
            return
        if a >= b:
            raise PostconditionFailed("illegal elimination order")
        W[b] = f.addv(W[b], f.scalev(c, W[a]))
        L[b] = f.addv(L[b], f.scalev(c, L[a]))
        cc = conj(c)
        W[:, b] = f.addv(W[:, b], f.scalev(cc, W[:, a]))

    inv2 = f.inv(f.add(1, 1))
    finished = [False] * N
    for _ in range(N):
        try:
            i = finished.index(False)
        except ValueError:
            break
        nz = [j for j in range(N) if W[i, j] != 0]
        if not nz:
            raise NotDerivable("singular Gram matrix")
        j = nz[0]
        if finished[j]:
            raise PostconditionFailed("pivot column already finished")
        beta = int(W[i, j])
        if j == i:
            for m in range(N):
                if m != i and not finished[m] and W[m, i] != 0:
                    row_op(m, i, f.neg(f.div(int(W[m, i]), beta)))
        else:
            # hyperbolic pair (i, j), i < j: W[i, i] == 0 by first-nonzero choice
            if W[j, j] != 0:
                row_op(j, i, f.neg(f.mul(int(W[j, j]), f.mul(inv2, f.inv(beta)))))
            for m in range(N):
                if m not in (i, j) and not finished[m] and W[m, j] != 0:
                    row_op(m, i, f.neg(f.div(int(W[m, j]), beta)))
            for m in range(N):
                if m not in (i, j) and not finished[m] and W[i, m] != 0:
                    row_op(m, j, f.neg(conj(f.div(int(W[i, m]), beta))))
        finished[i] = True
        finished[j] = True
    Lm = Mat(f, L)
    B = matmul(matmul(Lm, M), _adjoint(Lm, duality))
    pat = monomial_pattern(B)
    if pat is None or pat.images != tau.images:
        raise PostconditionFailed("L.Gram.L^adj is not tau-monomial")
    return TriangularTransform(Lm, tau, B)


@dataclass(frozen=True)
class TauODResult:
    ok: bool
    tau: Optional[Permutation]
    reason: Optional[str]


def is_tau_od(A: Mat, duality: str) -> TauODResult:
    """tau-OD: NSC with a tau-monomial Gram matrix (type I Euclidean over
    GF(q), type II Hermitian over GF(q^2))."""
    if A.nrows != A.ncols:
        return TauODResult(False, None, "not square")
    if not is_nsc(A):
        return TauODResult(False, None, "not NSC")
    pat = monomial_pattern(gram_matrix(A, duality))
    if pat is None:
        return TauODResult(False, None, "Gram matrix is not monomial")
    return TauODResult(True, pat, None)


# -- the two infinite defining-matrix families --------------------------------


def fourier_matrix(field: FieldSpec, N: int) -> Mat:
    """N x N matrix (omega^{(i-1)(j-1)}) on a primitive N-th root of unity."""
    omega = root_of_unity(field, N)
    data = np.zeros((N, N), dtype=np.uint16)
    for i in range(N):
        for j in range(N):
            data[i, j] = field.pow(omega, i * j)
    return Mat(field, data)


def fourier_tau(N: int, q0: int) -> Permutation:
    """Closed-form tau of the Fourier Gram: position j+1 maps to t_j + 1
    where j + q0 * t_j = 0 (mod N)."""
    images = []
    for j in range(N):
        t = next(t for t in range(N) if (j + q0 * t) % N == 0)
        images.append(t + 1)
    return Permutation(tuple(images))


def type1_seed_matrix(field: FieldSpec, N: int) -> Mat:
    """Seed matrix for the type-I family: first row all ones, rows 2..N a
    bordered Vandermonde on powers of g^s where q - 1 = (N - 1) s, s >= 2."""
    q = field.q
    if field.p == 2:
        raise HypothesisUnmet("odd characteristic required")
    if N < 3:
        raise HypothesisUnmet("N >= 3 required")
    if (q - 1) % (N - 1) != 0:
        raise HypothesisUnmet("(N - 1) must divide q - 1")
    s = (q - 1) // (N - 1)
    if s < 2:
        raise HypothesisUnmet("step s = (q - 1) / (N - 1) must be >= 2")
    data = np.zeros((N, N), dtype=np.uint16)
    data[0, :] = 1
    gs = field.pow(field.g, s)
    for i in range(2, N + 1):
        data[i - 1, 0] = 0
        for j in range(2, N + 1):
            data[i - 1, j - 1] = field.pow(gs, (i - 1) * (j - 2))
    return Mat(field, data)


def type1_tau(N: int, p: int) -> Permutation:
    """Closed-form tau for the type-I family: the coordinate reversal, fixing
    1 and N when the characteristic does not divide N."""
    if p is not None and N % p == 0:
        pairs = [(i, N + 1 - i) for i in range(1, N // 2 + 1)]
    else:
        pairs = [(i, N + 1 - i) for i in range(2, (N + 1) // 2 + 1)]
    return transposition_product(N, pairs)


@dataclass(frozen=True)
class TauODMatrix:
    matrix: Mat
    tau: Permutation
    kind: str  # "I" | "II"
    seed: Optional[Mat]
    L: Optional[Mat]


def build_tau_od(field: FieldSpec, kind: str, N: int) -> TauODMatrix:
    """Construct and verify an N x N tau-OD matrix of the requested type.

    Type II is the Fourier matrix over GF(q0^2) (requires N | q^2-1 and
    N not dividing q+1); type I applies the unit-lower-triangular transform
    to the bordered-Vandermonde seed.  In both cases is_tau_od must pass.
    """
    if kind == "II":
        if field.e % 2 != 0:
            raise HypothesisUnmet("type II needs a field of square order")
        q0 = field.p ** (field.e // 2)
        if (q0 * q0 - 1) % N != 0:
            raise HypothesisUnmet(f"N = {N} does not divide q^2 - 1 = {q0 * q0 - 1}")
        if (q0 + 1) % N == 0:
            raise HypothesisUnmet(f"N = {N} divides q + 1 = {q0 + 1}")
        A = fourier_matrix(field, N)
        res = is_tau_od(A, HERMITIAN)
        if not res.ok:
            raise PostconditionFailed(f"Fourier matrix not tau-OD: {res.reason}")
        expected = fourier_tau(N, q0)
        if res.tau.images != expected.images:
            raise PostconditionFailed("Fourier tau differs from its closed form")
        return TauODMatrix(A, res.tau, "II", None, None)
    if kind == "I":
        seed = type1_seed_matrix(field, N)
        if not is_nsc(seed):
            raise PostconditionFailed("type-I seed matrix is not NSC")
        tr = build_unit_lower_L(seed, EUCLIDEAN)
        B = matmul(tr.L, seed)
        res = is_tau_od(B, EUCLIDEAN)
        if not res.ok:
            raise PostconditionFailed(f"transformed seed not tau-OD: {res.reason}")
        if res.tau.images != tr.tau.images:
            raise PostconditionFailed("tau mismatch between transform and product")
        return TauODMatrix(B, res.tau, "I", seed, tr.L)
    raise InvalidParameters(f"unknown tau-OD type {kind!r}")


# -- distance and optimality of MP codes --------------------------------------


@dataclass(frozen=True)
class MPDistanceReport:
    lower_bound: int
    nested: bool
    distance: DistanceResult
    constituent_distances: tuple[int, ...]
    prefix: PrefixDistanceProfile


def mp_distance_check(
    spec: MPSpec, *, budget: Optional[int] = None, strategy: str = "auto"
) -> MPDistanceReport:
    """Compute min_i D_i(A) d_i, detect nestedness, and compute the exact
    distance; for nested constituents exact equality with the bound is
    asserted (it is a theorem, so a mismatch means a computation bug)."""
    prefix = prefix_distances(spec.A)
    d_consts = tuple(
        min_distance(C, budget=budget).require_exact() for C in spec.constituents
    )
    bound = min(prefix[i + 1] * d_consts[i] for i in range(spec.N))
    nested = all(
        contains(spec.constituents[i], spec.constituents[i + 1])
        for i in range(spec.N - 1)
    )
    C = mp_code(spec)
    blocks = spec.segments() if strategy == "auto" else None
    dres = min_distance(
        C,
        budget=budget,
        strategy="block-split" if blocks else strategy,
        blocks=blocks,
        known_lower=bound if nested else 1,
    )
    if nested and dres.exact and dres.value != bound:
        raise PostconditionFailed(
            f"nested MP distance {dres.value} != min D_i d_i = {bound}"
        )
    return MPDistanceReport(bound, nested, dres, d_consts, prefix)


@dataclass(frozen=True)
class CriterionVerdict:
    """Outcome of the optimality criterion against direct verification."""

    j0: int
    condition_distances: bool
    condition_ceilings: bool
    predicted_optimal: bool
    case: Optional[str]  # "I" | "II" | None
    direct: OptimalityResult
    agree: bool


def optimality_criterion(
    spec: MPSpec,
    r: int,
    delta: int,
    mp_profile: RepairProfile,
    constituent_profiles: Sequence[RepairProfile],
    *,
    budget: Optional[int] = None,
) -> CriterionVerdict:
    """Evaluate the two-condition optimality criterion for an MP code whose
    constituents are verified optimal (r, delta)-LRCs, and cross-check the
    predicted verdict against direct verification.

    Preconditions (checked, HypothesisUnmet otherwise): every constituent is
    a verified optimal (r, delta)-LRC; d(C(A)) <= d_j0 for some j0 (j0 = N
    for nested constituents); the MP code is a verified (r, delta)-LRC.
    """
    from .locality import verify_locality

    for i, (C, prof) in enumerate(zip(spec.constituents, constituent_profiles)):
        if prof.r != r or prof.delta != delta:
            raise HypothesisUnmet(f"constituent {i + 1} profile is not for (r, delta)")
        res = is_optimal_lrc(C, prof, budget=budget)
        if not res.optimal:
            raise HypothesisUnmet(f"constituent {i + 1} is not a verified optimal LRC")
    report = mp_distance_check(spec, budget=budget)
    d_mp = report.distance.require_exact()
    d_consts = report.constituent_distances
    if report.nested:
        j0 = spec.N
        if d_mp > d_consts[j0 - 1]:
            raise HypothesisUnmet("nested input violates d(C(A)) <= d_N")
    else:
        j0 = next((i + 1 for i in range(spec.N) if d_mp <= d_consts[i]), 0)
        if j0 == 0:
            raise HypothesisUnmet("no j0 with d(C(A)) <= d_j0")
    C = mp_code(spec)
    loc = verify_locality(C, mp_profile, budget=budget)
    if not loc.verified:
        raise HypothesisUnmet("MP code locality did not verify")
    cond1 = d_mp == d_consts[j0 - 1] and all(
        d_consts[i] == delta for i in range(spec.N) if i != j0 - 1
    )
    ks = [C2.dim for C2 in spec.constituents]
    cond2 = math.ceil(sum(ks) / r) == sum(math.ceil(k / r) for k in ks)
    predicted = cond1 and cond2
    case = None
    if report.nested and spec.A.nrows == spec.A.ncols and is_invertible(spec.A):
        dN1 = report.prefix[spec.N - 1] if spec.N >= 2 else None
        case = {1: "I", 2: "II"}.get(dN1)
    direct = is_optimal_lrc(C, mp_profile, budget=budget)
    return CriterionVerdict(
        j0, cond1, cond2, predicted, case, direct, predicted == direct.optimal
    )
