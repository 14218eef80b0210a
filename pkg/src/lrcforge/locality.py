"""(r, delta)-locality: certification, the Singleton-type bound and the
optimal-LRC predicate.

A repair profile is a proposed cover of the coordinates by groups; nothing
is ever trusted from a construction's derivation alone -- every group is
checked by computing the punctured code's exact distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .code import (
    BandHint,
    DistanceResult,
    LinearCode,
    min_distance,
    puncture,
)
from .errors import InvalidParameters

def rd_bound(n: int, k: int, r: int, delta: int) -> int:
    """Singleton-type bound n - k + 1 - (ceil(k/r) - 1)(delta - 1).

    Returns the raw formula value even when it is non-positive (vacuous
    parameter mixes); optimality certification separately requires d >= delta.
    """
    if n < 1 or k < 1 or k > n or r < 1 or delta < 2:
        raise InvalidParameters(f"invalid (n, k, r, delta) = ({n}, {k}, {r}, {delta})")
    return n - k + 1 - (math.ceil(k / r) - 1) * (delta - 1)


@dataclass(frozen=True)
class RepairProfile:
    """Locality groups S_1..S_m (1-based coordinates) for parameters (r, delta)."""

    r: int
    delta: int
    groups: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.delta < 2 or self.r < 1:
            raise InvalidParameters("need r >= 1 and delta >= 2")
        object.__setattr__(
            self, "groups", tuple(tuple(sorted(set(g))) for g in self.groups)
        )
        for g in self.groups:
            if len(g) > self.r + self.delta - 1:
                raise InvalidParameters(
                    f"group of size {len(g)} exceeds r + delta - 1 = {self.r + self.delta - 1}"
                )

    def covers(self, n: int) -> bool:
        seen = set()
        for g in self.groups:
            seen.update(g)
        return seen == set(range(1, n + 1))

    def to_json(self) -> dict:
        return {"r": self.r, "delta": self.delta, "groups": [list(g) for g in self.groups]}


def profile_from_json(obj: dict) -> RepairProfile:
    return RepairProfile(
        int(obj["r"]), int(obj["delta"]), tuple(tuple(g) for g in obj["groups"])
    )


@dataclass(frozen=True)
class LocalityVerdict:
    verified: bool
    group_distances: tuple[Optional[int], ...]
    failing_group: Optional[tuple[int, ...]]
    method: str  # "certificate" | "search" | "unverified"

    def to_json(self) -> dict:
        return {
            "verified": self.verified,
            "group_distances": list(self.group_distances),
            "failing_group": list(self.failing_group) if self.failing_group else None,
            "method": self.method,
        }


def verify_locality(
    C: LinearCode, profile: RepairProfile, *, budget: Optional[int] = None
) -> LocalityVerdict:
    """Check that every group's punctured code has distance >= delta and the
    groups cover all coordinates."""
    for g in profile.groups:
        if g and (g[0] < 1 or g[-1] > C.n):
            raise InvalidParameters("group coordinate out of range")
    if not profile.covers(C.n):
        return LocalityVerdict(False, (), None, "certificate")
    dists: list[Optional[int]] = []
    for g in profile.groups:
        res = min_distance(puncture(C, g), budget=budget)
        if not res.exact:
            return LocalityVerdict(False, tuple(dists) + (None,), g, "unverified")
        dists.append(res.value)
        if res.value < profile.delta:
            return LocalityVerdict(False, tuple(dists), g, "certificate")
    return LocalityVerdict(True, tuple(dists), None, "certificate")


@dataclass(frozen=True)
class OptimalityResult:
    optimal: bool
    distance: DistanceResult
    bound: int
    locality: LocalityVerdict

    def to_json(self) -> dict:
        return {
            "optimal": self.optimal,
            "d": self.distance.value,
            "d_exact": self.distance.exact,
            "bound": self.bound,
            "locality": self.locality.to_json(),
        }


def is_optimal_lrc(
    C: LinearCode,
    profile: RepairProfile,
    *,
    budget: Optional[int] = None,
    distance_hint: Optional[BandHint] = None,
) -> OptimalityResult:
    """Optimal iff locality verifies and the exact distance meets rd_bound.

    Verified locality yields the certified lower bound d >= delta, which the
    distance search may skip below; disjoint covering groups double as the
    block partition for the split strategy.
    """
    verdict = verify_locality(C, profile, budget=budget)
    known_lower = profile.delta if verdict.verified else 1
    blocks = None
    if verdict.verified and distance_hint is None:
        flat = [c for g in profile.groups for c in g]
        if len(flat) == len(set(flat)) == C.n:
            blocks = profile.groups
    dres = min_distance(
        C,
        budget=budget,
        blocks=blocks,
        band_hint=distance_hint,
        known_lower=known_lower,
        strategy="auto"
        if (blocks is None and distance_hint is None)
        else ("block-split" if blocks is not None else "band-split"),
    )
    if C.is_zero:
        return OptimalityResult(False, dres, 0, verdict)
    bound = rd_bound(C.n, C.dim, profile.r, profile.delta)
    optimal = (
        verdict.verified
        and dres.exact
        and dres.value == bound
        and dres.value >= profile.delta
    )
    return OptimalityResult(optimal, dres, bound, verdict)


def search_locality(
    C: LinearCode,
    r: int,
    delta: int,
    *,
    cap: int = 10**6,
    budget: Optional[int] = None,
) -> Optional[RepairProfile]:
    """Exhaustively search covering locality groups (oracle; n <= 20).

    Per uncovered coordinate, candidate groups containing it are tried in
    lexicographic order over sorted tuples; the first group whose punctured
    distance reaches delta is kept.  Returns None ("unverified") when no
    cover exists within the size cap or the step cap is exhausted.
    """
    n = C.n
    if n > 20:
        raise InvalidParameters("search_locality is an oracle for n <= 20")
    max_size = min(r + delta - 1, n)
    qualified: dict[tuple[int, ...], bool] = {}
    steps = 0

    def qualifies(S: tuple[int, ...]) -> Optional[bool]:
        nonlocal steps
        if S in qualified:
            return qualified[S]
        steps += 1
        if steps > cap:
            return None
        res = min_distance(puncture(C, S), budget=budget)
        ok = res.exact and res.value >= delta
        qualified[S] = ok
        return ok

    groups: list[tuple[int, ...]] = []
    covered: set[int] = set()
    for i in range(1, n + 1):
        if i in covered:
            continue
        found = None
        # lexicographic DFS over sorted subsets containing i
        stack: list[tuple[int, ...]] = [(j,) for j in range(min(i, n), 0, -1)]
        while stack:
            S = stack.pop()
            if len(S) > max_size:
                continue
            if i in S and len(S) >= delta:
                ok = qualifies(S)
                if ok is None:
                    return None
                if ok:
                    found = S
                    break
            if len(S) < max_size and (i in S or S[-1] < i):
                for j in range(n, S[-1], -1):
                    stack.append(S + (j,))
        if found is None:
            return None
        groups.append(found)
        covered.update(found)
    return RepairProfile(r, delta, tuple(groups))
