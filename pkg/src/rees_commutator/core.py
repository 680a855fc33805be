"""Finite semigroups given by Cayley tables, partitions and congruences.

Elements are the integers ``0..n-1``.  Everything here is table driven and
exhaustive; the size guards keep runtimes predictable at desk scale.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import (
    MalformedTable,
    NoUniqueInverse,
    NotACongruence,
    NotAssociative,
    NotCompletelySimple,
    NotIdempotent,
    OutOfRange,
    ShapeMismatch,
    TooLarge,
)

MAX_LATTICE = 64
MAX_CLOSURE = 256


class Verdict(NamedTuple):
    """A boolean answer together with the evidence behind a negative one."""

    holds: bool
    witness: object = None

    def __bool__(self):
        return self.holds


def _canonical(labels: Iterable) -> tuple[int, ...]:
    seen: dict = {}
    out = []
    for x in labels:
        if x not in seen:
            seen[x] = len(seen)
        out.append(seen[x])
    return tuple(out)


class Partition:
    """A partition of ``{0..n-1}`` stored as canonical block labels.

    Block indices are numbered in order of each block's least element, so two
    partitions are equal exactly when their ``block_id`` tuples are equal.
    """

    __slots__ = ("block_id", "_hash", "_array")

    def __init__(self, labels: Iterable):
        self.block_id = _canonical(labels)
        self._hash = hash(self.block_id)
        self._array = None

    @classmethod
    def zero(cls, n: int) -> "Partition":
        return cls(range(n))

    @classmethod
    def full(cls, n: int) -> "Partition":
        return cls([0] * n)

    @classmethod
    def from_blocks(cls, n: int, blocks: Iterable[Iterable[int]]) -> "Partition":
        labels = [None] * n
        for k, block in enumerate(blocks):
            for x in block:
                if not 0 <= x < n:
                    raise OutOfRange(f"element {x} outside 0..{n - 1}")
                if labels[x] is not None:
                    raise ShapeMismatch(f"element {x} appears in two blocks")
                labels[x] = k
        # unlisted elements become singletons
        fresh = itertools.count(len(labels) + 1)
        return cls(lab if lab is not None else ("s", next(fresh)) for lab in labels)

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Partition":
        """Equivalence closure only; see ``congruence_from_pairs`` for congruences."""
        uf = _UnionFind(n)
        for a, b in pairs:
            uf.union(a, b)
        return uf.partition()

    @property
    def size(self) -> int:
        return len(self.block_id)

    @property
    def num_blocks(self) -> int:
        return max(self.block_id, default=-1) + 1

    @property
    def array(self) -> np.ndarray:
        if self._array is None:
            arr = np.array(self.block_id, dtype=np.int64)
            arr.setflags(write=False)
            self._array = arr
        return self._array

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_blocks)]
        for x, k in enumerate(self.block_id):
            out[k].append(x)
        return out

    def representatives(self) -> tuple[int, ...]:
        """Least element of the block of each element."""
        first: dict[int, int] = {}
        for x, k in enumerate(self.block_id):
            first.setdefault(k, x)
        return tuple(first[k] for k in self.block_id)

    def related(self, a: int, b: int) -> bool:
        return self.block_id[a] == self.block_id[b]

    def pairs(self) -> list[tuple[int, int]]:
        """All ordered related pairs, diagonal included, in lexicographic order."""
        blocks = self.blocks()
        return [(a, b) for a in range(self.size) for b in blocks[self.block_id[a]]]

    def is_zero(self) -> bool:
        return self.num_blocks == self.size

    def is_full(self) -> bool:
        return self.num_blocks <= 1

    def leq(self, other: "Partition") -> bool:
        """True when ``self`` refines ``other``."""
        _same_size(self, other)
        image: dict[int, int] = {}
        for k, l in zip(self.block_id, other.block_id):
            if image.setdefault(k, l) != l:
                return False
        return True

    __le__ = leq

    def meet(self, other: "Partition") -> "Partition":
        _same_size(self, other)
        return Partition(zip(self.block_id, other.block_id))

    def join(self, other: "Partition") -> "Partition":
        """Join as equivalence relations (which is also the join of congruences)."""
        _same_size(self, other)
        uf = _UnionFind(self.size)
        for part in (self, other):
            for block in part.blocks():
                for x in block[1:]:
                    uf.union(block[0], x)
        return uf.partition()

    def linking_pairs(self) -> list[tuple[int, int]]:
        """A spanning set of pairs: each element tied to its block's minimum."""
        return [(r, x) for x, r in enumerate(self.representatives()) if r != x]

    def __eq__(self, other):
        return isinstance(other, Partition) and self.block_id == other.block_id

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Partition({self.blocks()})"


Congruence = Partition


def _same_size(p: Partition, q: Partition):
    if p.size != q.size:
        raise ShapeMismatch(f"partitions over {p.size} and {q.size} elements")


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb
        return True

    def partition(self) -> Partition:
        return Partition(self.find(x) for x in range(len(self.parent)))


class FiniteSemigroup:
    """Carrier ``{0..n-1}`` with an associative Cayley table.

    Use :func:`make_semigroup` for validated construction.
    """

    def __init__(self, table, name: str | None = None):
        arr = np.array(table, dtype=np.int64)
        arr.setflags(write=False)
        self.table = arr
        self.name = name

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @cached_property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(v) for v in row) for row in self.table)

    @cached_property
    def cols(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(v) for v in col) for col in self.table.T)

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def product(self, *xs: int) -> int:
        rows = self.rows
        acc = xs[0]
        for x in xs[1:]:
            acc = rows[acc][x]
        return acc

    @cached_property
    def _key(self) -> bytes:
        return self.table.tobytes()

    def __eq__(self, other):
        return (
            isinstance(other, FiniteSemigroup)
            and self.order == other.order
            and self._key == other._key
        )

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<FiniteSemigroup{label} order={self.order}>"


@dataclass(frozen=True)
class UnaryOp:
    carrier_size: int
    map: tuple[int, ...]

    def __post_init__(self):
        if len(self.map) != self.carrier_size:
            raise ShapeMismatch("unary map length differs from carrier size")
        if any(not 0 <= v < self.carrier_size for v in self.map):
            raise OutOfRange("unary map value out of range")

    def __call__(self, a: int) -> int:
        return self.map[a]


def _as_table(table) -> np.ndarray:
    try:
        arr = np.asarray(table)
    except (TypeError, ValueError) as exc:  # ragged input
        raise MalformedTable(f"table is not a rectangular matrix: {exc}") from exc
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise MalformedTable(f"table must be a non-empty square matrix, got shape {arr.shape}")
    if arr.dtype == object or not np.issubdtype(arr.dtype, np.integer):
        if arr.size and not all(float(v).is_integer() for v in arr.ravel()):
            raise MalformedTable("table entries must be integers")
        arr = arr.astype(np.int64)
    n = arr.shape[0]
    bad = np.argwhere((arr < 0) | (arr >= n))
    if len(bad):
        r, c = (int(v) for v in bad[0])
        raise MalformedTable(f"entry ({r},{c}) = {int(arr[r, c])} outside 0..{n - 1}", (r, c))
    return arr.astype(np.int64)


def associativity_witness(table: np.ndarray):
    """First triple (a,b,c) with (ab)c != a(bc), or None."""
    n = table.shape[0]
    for a in range(n):
        left = table[table[a]]  # left[b, c] = (a*b)*c
        right = table[a][table]  # right[b, c] = a*(b*c)
        bad = np.argwhere(left != right)
        if len(bad):
            b, c = (int(v) for v in bad[0])
            return a, b, c
    return None


def make_semigroup(table, name: str | None = None) -> FiniteSemigroup:
    arr = _as_table(table)
    triple = associativity_witness(arr)
    if triple is not None:
        a, b, c = triple
        raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})", triple)
    return FiniteSemigroup(arr, name)


def is_regular(S: FiniteSemigroup) -> Verdict:
    t = S.table
    for a in range(S.order):
        # a*x*a for every x
        if not np.any(t[t[a], a] == a):
            return Verdict(False, a)
    return Verdict(True)


def idempotents(S: FiniteSemigroup) -> list[int]:
    return [a for a in range(S.order) if S.rows[a][a] == a]


def is_primitive_idempotent(S: FiniteSemigroup, e: int) -> bool:
    rows = S.rows
    if rows[e][e] != e:
        raise NotIdempotent(f"{e} is not idempotent", e)
    return all(f == e for f in idempotents(S) if rows[e][f] == f and rows[f][e] == f)


def principal_ideal(S: FiniteSemigroup, a: int) -> frozenset[int]:
    """The two-sided ideal S¹aS¹."""
    t = S.table
    members = {a}
    members.update(t[a].tolist())
    col = t[:, a]
    members.update(col.tolist())
    members.update(np.unique(t[col]).tolist())
    return frozenset(int(x) for x in members)


def is_simple(S: FiniteSemigroup) -> Verdict:
    for a in range(S.order):
        ideal = principal_ideal(S, a)
        if len(ideal) < S.order:
            return Verdict(False, (a, sorted(ideal)))
    return Verdict(True)


def is_completely_simple(S: FiniteSemigroup) -> bool:
    if not is_simple(S):
        return False
    return any(is_primitive_idempotent(S, e) for e in idempotents(S))


class Greens(NamedTuple):
    R: Partition
    L: Partition
    H: Partition


def greens_relations(S: FiniteSemigroup) -> Greens:
    rows, cols = S.rows, S.cols
    right = [frozenset(rows[a]) | {a} for a in range(S.order)]
    left = [frozenset(cols[a]) | {a} for a in range(S.order)]
    R = Partition(right)
    L = Partition(left)
    return Greens(R, L, R.meet(L))


def congruence_from_pairs(
    S: FiniteSemigroup, pairs: Iterable[tuple[int, int]], limit: int | None = MAX_CLOSURE
) -> Partition:
    """Least congruence containing ``pairs`` (union-find plus translation worklist)."""
    n = S.order
    if limit is not None and n > limit:
        raise TooLarge(f"closure refused for order {n} > {limit}")
    uf = _UnionFind(n)
    rows, cols = S.rows, S.cols
    work = []
    for a, b in pairs:
        if not (0 <= a < n and 0 <= b < n):
            raise OutOfRange(f"pair ({a},{b}) outside 0..{n - 1}")
        if uf.union(a, b):
            work.append((a, b))
    union = uf.union
    while work:
        a, b = work.pop()
        for row_a, row_b in ((rows[a], rows[b]), (cols[a], cols[b])):
            for x, y in zip(row_a, row_b):
                if x != y and union(x, y):
                    work.append((x, y))
    return uf.partition()


def is_congruence(S: FiniteSemigroup, part: Partition) -> Verdict:
    """Compatibility check; the witness is (a, b, c, d, ac, bd)."""
    if part.size != S.order:
        raise ShapeMismatch(f"partition over {part.size} elements, semigroup of order {S.order}")
    blk = part.array
    rep = np.array(part.representatives())
    labelled = blk[S.table]
    # right translations: a ~ rep(a) must give a*c ~ rep(a)*c
    bad = np.argwhere(labelled != labelled[rep])
    if len(bad):
        b, c = (int(v) for v in bad[0])
        a = int(rep[b])
        return Verdict(False, (a, b, c, c, S.rows[a][c], S.rows[b][c]))
    bad = np.argwhere(labelled.T != labelled.T[rep])
    if len(bad):
        b, c = (int(v) for v in bad[0])
        a = int(rep[b])
        return Verdict(False, (c, c, a, b, S.rows[c][a], S.rows[c][b]))
    return Verdict(True)


def join_congruences(S: FiniteSemigroup, congruences: Iterable[Partition]) -> Partition:
    pairs = []
    for c in congruences:
        pairs.extend(c.linking_pairs())
    return congruence_from_pairs(S, pairs)


def lattice_order_key(c: Partition):
    return (-c.num_blocks, c.block_id)


def enumerate_congruences(S: FiniteSemigroup, limit: int | None = MAX_LATTICE) -> list[Partition]:
    """The whole congruence lattice, closed from principal congruences under join."""
    n = S.order
    if limit is not None and n > limit:
        raise TooLarge(f"lattice enumeration refused for order {n} > {limit}")
    principal = {congruence_from_pairs(S, [(a, b)], limit=None) for a in range(n) for b in range(a + 1, n)}
    found = {Partition.zero(n)} | principal
    frontier = list(principal)
    while frontier:
        fresh = []
        for c in frontier:
            for d in principal:
                j = c.join(d)
                if j not in found:
                    found.add(j)
                    fresh.append(j)
        frontier = fresh
    return sorted(found, key=lattice_order_key)


def inversion_map(S: FiniteSemigroup) -> UnaryOp:
    if not is_completely_simple(S):
        raise NotCompletelySimple("inversion map needs a completely simple semigroup")
    rows = S.rows
    H = greens_relations(S).H
    blocks = H.blocks()
    inv = []
    for a in range(S.order):
        cands = [
            x
            for x in blocks[H.block_id[a]]
            if rows[rows[a][x]][a] == a and rows[rows[x][a]][x] == x and rows[a][x] == rows[x][a]
        ]
        if len(cands) != 1:
            raise NoUniqueInverse(f"element {a} has {len(cands)} inverse candidates", a)
        inv.append(cands[0])
    return UnaryOp(S.order, tuple(inv))


def unary_preserves_congruences(
    S: FiniteSemigroup, u: UnaryOp, congruences: Sequence[Partition]
) -> Verdict:
    """Witness is (congruence index, a, b) with a θ b but u(a), u(b) unrelated."""
    if u.carrier_size != S.order:
        raise ShapeMismatch("unary map and semigroup sizes differ")
    for k, theta in enumerate(congruences):
        if theta.size != S.order:
            raise ShapeMismatch(f"congruence {k} has the wrong size")
        blk = theta.block_id
        for b, a in enumerate(theta.representatives()):
            if blk[u.map[a]] != blk[u.map[b]]:
                return Verdict(False, (k, a, b))
    return Verdict(True)


def quotient(S: FiniteSemigroup, eta: Partition) -> FiniteSemigroup:
    """S/eta, whose element k is the k-th block of ``eta``."""
    if not is_congruence(S, eta):
        raise NotACongruence("quotient needs a congruence")
    reps = [block[0] for block in eta.blocks()]
    blk = eta.array
    table = blk[S.table[np.ix_(reps, reps)]]
    return FiniteSemigroup(table, f"{S.name or 'S'}/eta")


def project(c: Partition, eta: Partition) -> Partition:
    """c/eta for eta <= c, as a partition of the blocks of eta."""
    return Partition(c.block_id[block[0]] for block in eta.blocks())


def lift(c: Partition, eta: Partition) -> Partition:
    """Inverse of :func:`project`: a partition of S/eta pulled back to S."""
    return Partition(c.block_id[k] for k in eta.block_id)
