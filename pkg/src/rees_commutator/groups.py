"""Finite groups by Cayley table: normal subgroups, commutators, series."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .core import FiniteSemigroup, Partition, make_semigroup
from .errors import AlgebraError, NotAGroup, NotNormal, ShapeMismatch, TooLarge

MAX_NORMAL_ENUM = 512


class FiniteGroup:
    def __init__(self, base: FiniteSemigroup, identity: int, inverse: tuple[int, ...]):
        self.base = base
        self.identity = identity
        self.inverse = inverse

    @property
    def order(self) -> int:
        return self.base.order

    @property
    def table(self):
        return self.base.table

    @property
    def rows(self):
        return self.base.rows

    @property
    def name(self):
        return self.base.name

    def mul(self, a: int, b: int) -> int:
        return self.base.rows[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        rows = self.base.rows
        return rows[rows[g][x]][self.inverse[g]]

    def commutator_element(self, m: int, n: int) -> int:
        """m^-1 n^-1 m n"""
        return self.base.product(self.inverse[m], self.inverse[n], m, n)

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.base == other.base

    def __hash__(self):
        return hash(self.base)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<FiniteGroup{label} order={self.order}>"


def make_group(table, name: str | None = None) -> FiniteGroup:
    try:
        S = make_semigroup(table, name)
    except AlgebraError as exc:
        raise NotAGroup(f"not a group: {exc}", exc.witness) from exc
    return group_from_semigroup(S)


def group_from_semigroup(S: FiniteSemigroup) -> FiniteGroup:
    rows, n = S.rows, S.order
    ident = next(
        (e for e in range(n) if all(rows[e][a] == a and rows[a][e] == a for a in range(n))),
        None,
    )
    if ident is None:
        raise NotAGroup("no two-sided identity")
    inverse = []
    for a in range(n):
        b = next((b for b in range(n) if rows[a][b] == ident and rows[b][a] == ident), None)
        if b is None:
            raise NotAGroup(f"element {a} has no inverse", a)
        inverse.append(b)
    return FiniteGroup(S, ident, tuple(inverse))


# catalog ------------------------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    return make_group([[(a + b) % n for b in range(n)] for a in range(n)], f"Z{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n; element k + n*f is r^k s^f."""

    def mul(x, y):
        a, f = x % n, x // n
        b, g = y % n, y // n
        return (a + (-b if f else b)) % n + n * ((f + g) % 2)

    m = 2 * n
    return make_group([[mul(x, y) for y in range(m)] for x in range(m)], f"D{n}")


_UNIT = {
    # (u, v) -> (sign, w) for the units 1, i, j, k encoded 0..3
    (1, 2): (0, 3), (2, 3): (0, 1), (3, 1): (0, 2),
    (2, 1): (1, 3), (3, 2): (1, 1), (1, 3): (1, 2),
}


def quaternion8() -> FiniteGroup:
    """Elements 2*u + s: unit u in (1, i, j, k), sign s in (+, -)."""

    def mul(x, y):
        u, s = divmod(x, 2)
        v, t = divmod(y, 2)
        if u == 0:
            sign, w = 0, v
        elif v == 0:
            sign, w = 0, u
        elif u == v:
            sign, w = 1, 0
        else:
            sign, w = _UNIT[(u, v)]
        return 2 * w + (s + t + sign) % 2

    return make_group([[mul(x, y) for y in range(8)] for x in range(8)], "Q8")


def symmetric(n: int) -> FiniteGroup:
    """Permutations of n points in lexicographic order; x*y applies x first."""
    if n > 4:
        raise TooLarge("catalog symmetric groups stop at n = 4")
    perms = list(itertools.permutations(range(n)))
    index = {p: k for k, p in enumerate(perms)}
    table = [[index[tuple(q[p[x]] for x in range(n))] for q in perms] for p in perms]
    return make_group(table, f"S{n}")


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """Element (g, h) is encoded g * |H| + h."""
    m = H.order
    table = [
        [G.mul(x // m, y // m) * m + H.mul(x % m, y % m) for y in range(G.order * m)]
        for x in range(G.order * m)
    ]
    return make_group(table, f"{G.name}x{H.name}")


def named_group(name: str, param=None) -> FiniteGroup:
    name = name.lower()
    if name in ("cyclic", "z"):
        return cyclic(int(param))
    if name in ("dihedral", "d"):
        return dihedral(int(param))
    if name in ("quaternion", "quaternion8", "q8"):
        return quaternion8()
    if name in ("symmetric", "s"):
        return symmetric(int(param))
    if name == "trivial":
        return cyclic(1)
    if name in ("klein", "v4"):
        return direct_product(cyclic(2), cyclic(2))
    raise KeyError(f"unknown group {name!r}")


# normal subgroups -----------------------------------------------------------


@dataclass(frozen=True)
class NormalSubgroup:
    group: FiniteGroup = field(compare=False, repr=False)
    members: frozenset

    @property
    def order(self) -> int:
        return len(self.members)

    def __le__(self, other: "NormalSubgroup") -> bool:
        return self.members <= other.members

    def sorted(self) -> list[int]:
        return sorted(self.members)


def is_normal_subgroup(G: FiniteGroup, members: Iterable[int]) -> bool:
    members = set(members)
    if G.identity not in members:
        return False
    for x in members:
        if G.inv(x) not in members:
            return False
        if any(G.mul(x, y) not in members for y in members):
            return False
        if any(G.conj(g, x) not in members for g in range(G.order)):
            return False
    return True


def as_normal(G: FiniteGroup, members: Iterable[int]) -> NormalSubgroup:
    members = frozenset(int(x) for x in members)
    if any(not 0 <= x < G.order for x in members):
        raise ShapeMismatch("subgroup member out of range")
    if not is_normal_subgroup(G, members):
        raise NotNormal(f"{sorted(members)} is not a normal subgroup")
    return NormalSubgroup(G, members)


def normal_closure(G: FiniteGroup, seed: Iterable[int]) -> NormalSubgroup:
    """Least normal subgroup containing ``seed`` (worklist closure)."""
    members = {G.identity}
    work = [G.identity]
    rows, n = G.rows, G.order

    def add(x):
        if x not in members:
            members.add(x)
            work.append(x)

    for x in seed:
        add(x)
    while work:
        x = work.pop()
        add(G.inv(x))
        for g in range(n):
            add(G.conj(g, x))
        for y in list(members):
            add(rows[x][y])
            add(rows[y][x])
    return NormalSubgroup(G, frozenset(members))


def trivial_subgroup(G: FiniteGroup) -> NormalSubgroup:
    return NormalSubgroup(G, frozenset([G.identity]))


def whole_group(G: FiniteGroup) -> NormalSubgroup:
    return NormalSubgroup(G, frozenset(range(G.order)))


def join_normal(G: FiniteGroup, *subs: NormalSubgroup) -> NormalSubgroup:
    seed = set()
    for s in subs:
        seed |= s.members
    return normal_closure(G, seed)


def meet_normal(G: FiniteGroup, *subs: NormalSubgroup) -> NormalSubgroup:
    return NormalSubgroup(G, frozenset.intersection(*(s.members for s in subs)))


def normal_subgroups(G: FiniteGroup, limit: int | None = MAX_NORMAL_ENUM) -> list[NormalSubgroup]:
    if limit is not None and G.order > limit:
        raise TooLarge(f"normal subgroup enumeration refused for order {G.order}")
    principal = {normal_closure(G, [x]) for x in range(G.order)}
    found = set(principal)
    frontier = list(principal)
    while frontier:
        fresh = []
        for a in frontier:
            for b in principal:
                j = join_normal(G, a, b)
                if j not in found:
                    found.add(j)
                    fresh.append(j)
        frontier = fresh
    return sorted(found, key=lambda s: (s.order, s.sorted()))


def congruence_of_normal(G: FiniteGroup, N: NormalSubgroup) -> Partition:
    """Coset partition: a ~ b iff a b^-1 in N."""
    label = {}
    out = []
    for a in range(G.order):
        coset = frozenset(G.mul(x, a) for x in N.members)
        out.append(label.setdefault(coset, len(label)))
    return Partition(out)


def normal_of_congruence(G: FiniteGroup, theta: Partition) -> NormalSubgroup:
    if theta.size != G.order:
        raise ShapeMismatch("congruence and group sizes differ")
    members = [x for x in range(G.order) if theta.related(x, G.identity)]
    return as_normal(G, members)


def group_commutator(G: FiniteGroup, M: NormalSubgroup, N: NormalSubgroup) -> NormalSubgroup:
    for X in (M, N):
        if not is_normal_subgroup(G, X.members):
            raise NotNormal(f"{X.sorted()} is not normal")
    return normal_closure(G, {G.commutator_element(m, n) for m in M.members for n in N.members})


def commutator_of_congruences(G: FiniteGroup, alpha: Partition, beta: Partition) -> Partition:
    """[alpha, beta] for group congruences, computed through normal subgroups."""
    M = normal_of_congruence(G, alpha)
    N = normal_of_congruence(G, beta)
    return congruence_of_normal(G, group_commutator(G, M, N))


def lower_central_series(G: FiniteGroup, start: Optional[NormalSubgroup] = None, max_k: int = 64):
    """[G, X], [G, [G, X]], ... with X = G unless ``start`` is given."""
    full = whole_group(G)
    current = start if start is not None else full
    out = []
    for _ in range(max_k):
        current = group_commutator(G, full, current)
        out.append(current)
        if current.order == 1 or (len(out) > 1 and out[-2] == current):
            break
    return out


def derived_series(G: FiniteGroup, start: Optional[NormalSubgroup] = None, max_k: int = 64):
    """[X, X], [[X, X], [X, X]], ... with X = G unless ``start`` is given."""
    current = start if start is not None else whole_group(G)
    out = []
    for _ in range(max_k):
        current = group_commutator(G, current, current)
        out.append(current)
        if current.order == 1 or (len(out) > 1 and out[-2] == current):
            break
    return out


def _degree(series) -> Optional[int]:
    return len(series) if series and series[-1].order == 1 else None


def group_nilpotency_degree(G: FiniteGroup) -> Optional[int]:
    return _degree(lower_central_series(G))


def group_solvability_degree(G: FiniteGroup) -> Optional[int]:
    return _degree(derived_series(G))
