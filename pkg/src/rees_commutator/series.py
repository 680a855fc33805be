"""Nilpotency and solvability series, and the decision procedure for regular semigroups."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .commutator import commutator, theta_normal
from .core import FiniteSemigroup, Partition, greens_relations, idempotents, is_regular, is_simple
from .errors import NotRegular
from .groups import (
    FiniteGroup,
    NormalSubgroup,
    congruence_of_normal,
    group_commutator,
    group_from_semigroup,
    group_nilpotency_degree,
    group_solvability_degree,
    join_normal,
    whole_group,
)
from .rees import MAX_REES, ReesMatrixSemigroup, rees_decompose
from .triples import full_triple, triple_of_congruence

KINDS = ("nilpotent", "solvable")
DEFAULT_MAX_K = 12


@dataclass(frozen=True)
class SeriesTrace:
    kind: str  # "lower-central" or "derived"
    entries: tuple[Partition, ...]
    stabilized: bool
    degree: Optional[int]


def _order(X) -> int:
    return X.order if isinstance(X, ReesMatrixSemigroup) else X.order


def _step(X, kind: str, prev: Partition, full: Partition, method: str, side: str, limit):
    if kind == "derived":
        return commutator(X, prev, prev, method, limit=limit)
    if side == "right":
        return commutator(X, prev, full, method, limit=limit)
    return commutator(X, full, prev, method, limit=limit)


def _run(X, kind: str, method: str, max_k: int, side: str = "left", limit=None) -> SeriesTrace:
    full = Partition.full(_order(X))
    prev = full
    entries = []
    for k in range(1, max_k + 1):
        cur = _step(X, kind, prev, full, method, side, limit)
        entries.append(cur)
        if cur.is_zero():
            return SeriesTrace(kind, tuple(entries), False, k)
        if cur == prev:
            return SeriesTrace(kind, tuple(entries), True, None)
        prev = cur
    return SeriesTrace(kind, tuple(entries), False, None)


def lower_central_series(X, method: str = "auto", max_k: int = DEFAULT_MAX_K, *, side: str = "left", limit=None) -> SeriesTrace:
    """(1,1]^(1) = [1,1], (1,1]^(k) = [1, (1,1]^(k-1)] until 0 or a repeat.

    ``side="right"`` iterates [previous, 1] instead.
    """
    return _run(X, "lower-central", method, max_k, side, limit)


def derived_series(X, method: str = "auto", max_k: int = DEFAULT_MAX_K, *, limit=None) -> SeriesTrace:
    return _run(X, "derived", method, max_k, limit=limit)


def series_for(X, kind: str, method: str = "auto", max_k: int = DEFAULT_MAX_K, *, limit=None) -> SeriesTrace:
    if kind == "nilpotent":
        return lower_central_series(X, method, max_k, limit=limit)
    if kind == "solvable":
        return derived_series(X, method, max_k, limit=limit)
    raise ValueError(f"kind must be one of {KINDS}")


def nilpotency_degree(X, method: str = "auto", max_k: int = DEFAULT_MAX_K) -> Optional[int]:
    return lower_central_series(X, method, max_k).degree


def solvability_degree(X, method: str = "auto", max_k: int = DEFAULT_MAX_K) -> Optional[int]:
    return derived_series(X, method, max_k).degree


def series_terms(X, kind: str, k: int, method: str = "auto", *, limit=None) -> list[Partition]:
    """Exactly ``k`` terms of the series, without stopping at 0 or a repeat."""
    full = Partition.full(_order(X))
    step_kind = "derived" if kind == "solvable" else "lower-central"
    prev, out = full, []
    for _ in range(k):
        prev = _step(X, step_kind, prev, full, method, "left", limit)
        out.append(prev)
    return out


# group side ---------------------------------------------------------------------


def theta_full(RS: ReesMatrixSemigroup) -> NormalSubgroup:
    T = full_triple(RS)
    return theta_normal(RS, T, T)


def seeded_group_series(G: FiniteGroup, seed: NormalSubgroup, kind: str, length: int) -> NormalSubgroup:
    """(1_G, seed]^(length) or [seed]^(length) computed with group commutators."""
    full = whole_group(G)
    cur = seed
    for _ in range(length):
        cur = group_commutator(G, full, cur) if kind == "nilpotent" else group_commutator(G, cur, cur)
    return cur


def series_projection(RS: ReesMatrixSemigroup, k: int, kind: str = "nilpotent", method: str = "auto"):
    """Group part of the k-th semigroup series term vs the seeded group series.

    Left: k-th term on the semigroup, projected to G through its linked
    triple.  Right: the group series of length k-1 started from
    [1_G,1_G] joined with Theta_{1,1}.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    G = RS.group
    term = series_terms(RS, kind, k, method)[-1]
    left = triple_of_congruence(RS, term, check=False).rho_G
    full = whole_group(G)
    seed = join_normal(G, group_commutator(G, full, full), theta_full(RS))
    right = congruence_of_normal(G, seeded_group_series(G, seed, kind, k - 1))
    return left, right, left == right


# regular semigroups -----------------------------------------------------------------


@dataclass
class RegularVerdict:
    kind: str
    status: str  # not_simple | h_class_not_group | group_degree_fails | yes
    holds: bool
    group_degree: Optional[int] = None
    degree_bounds: Optional[tuple[int, int]] = None
    degree: Optional[int] = None
    witness: object = None
    profile: Optional[tuple[int, int, int]] = None
    details: dict = field(default_factory=dict)


def _h_class_is_group(S: FiniteSemigroup, members: list[int]) -> bool:
    rows = S.rows
    block = set(members)
    if not any(rows[x][x] == x for x in members):
        return False
    return all(rows[x][y] in block for x in members for y in members)


def maximal_subgroup(S: FiniteSemigroup, e: int) -> FiniteGroup:
    H = greens_relations(S).H
    members = H.blocks()[H.block_id[e]]
    index = {x: k for k, x in enumerate(members)}
    rows = S.rows
    table = [[index[rows[x][y]] for y in members] for x in members]
    return group_from_semigroup(FiniteSemigroup(table, "H"))


def regular_nilpotency_check(S: FiniteSemigroup, kind: str = "nilpotent", *, exact_limit: int = MAX_REES) -> RegularVerdict:
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    reg = is_regular(S)
    if not reg:
        raise NotRegular(f"element {reg.witness} has no x with axa = a", reg.witness)
    simple = is_simple(S)
    if not simple:
        return RegularVerdict(kind, "not_simple", False, witness=simple.witness)
    H = greens_relations(S).H
    for members in H.blocks():
        if not _h_class_is_group(S, members):
            return RegularVerdict(kind, "h_class_not_group", False, witness=members)
    G = maximal_subgroup(S, idempotents(S)[0])
    deg_G = group_nilpotency_degree(G) if kind == "nilpotent" else group_solvability_degree(G)
    if deg_G is None:
        return RegularVerdict(kind, "group_degree_fails", False, group_degree=None)
    verdict = RegularVerdict(kind, "yes", True, group_degree=deg_G, degree_bounds=(deg_G, deg_G + 1))
    if S.order <= exact_limit:
        RS, _ = rees_decompose(S)
        verdict.profile = RS.profile
        verdict.degree = series_for(RS, kind, "fast", max_k=deg_G + 2).degree
    return verdict
