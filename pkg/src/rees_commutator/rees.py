"""Rees matrix semigroups M[G; I, Lambda; P] over finite groups.

Index 0 of both I and Lambda plays the role of the distinguished shared
index, so a normalized sandwich matrix has identity entries in row 0 and
column 0.  ``P`` is stored as ``P[lam][i]``.
"""

from __future__ import annotations

from functools import cached_property
from typing import Sequence

import numpy as np

from .core import FiniteSemigroup, associativity_witness, greens_relations, idempotents, is_completely_simple
from .errors import NotAssociative, NotCompletelySimple, NotNormalized, OutOfRange, ShapeMismatch, TooLarge
from .groups import FiniteGroup, group_from_semigroup

MAX_REES = 4096


class ReesMatrixSemigroup:
    def __init__(self, group: FiniteGroup, I_size: int, Lambda_size: int, P, name: str | None = None):
        self.group = group
        self.I_size = I_size
        self.Lambda_size = Lambda_size
        self.P = tuple(tuple(int(v) for v in row) for row in P)
        self.name = name
        self.semigroup = FiniteSemigroup(self._flat_table(), name)

    @property
    def order(self) -> int:
        return self.I_size * self.group.order * self.Lambda_size

    @property
    def profile(self) -> tuple[int, int, int]:
        return (self.I_size, self.group.order, self.Lambda_size)

    def encode(self, i: int, g: int, lam: int) -> int:
        if not (0 <= i < self.I_size and 0 <= g < self.group.order and 0 <= lam < self.Lambda_size):
            raise OutOfRange(f"({i},{g},{lam}) outside {self.profile}")
        return (i * self.group.order + g) * self.Lambda_size + lam

    def decode(self, x: int) -> tuple[int, int, int]:
        if not 0 <= x < self.order:
            raise OutOfRange(f"element {x} outside 0..{self.order - 1}")
        rest, lam = divmod(x, self.Lambda_size)
        i, g = divmod(rest, self.group.order)
        return i, g, lam

    @cached_property
    def coordinates(self) -> np.ndarray:
        """Array of shape (n, 3) holding (i, g, lambda) for every element."""
        x = np.arange(self.order)
        rest, lam = np.divmod(x, self.Lambda_size)
        i, g = np.divmod(rest, self.group.order)
        return np.stack([i, g, lam], axis=1)

    def _flat_table(self) -> np.ndarray:
        coords = self.coordinates
        i, g, lam = coords[:, 0], coords[:, 1], coords[:, 2]
        gt = self.group.table
        P = np.array(self.P, dtype=np.int64)
        # (i,g,lam)(j,h,mu) = (i, g p[lam][j] h, mu)
        mid = gt[g[:, None], P[lam[:, None], i[None, :]]]
        prod = gt[mid, g[None, :]]
        G, L = self.group.order, self.Lambda_size
        return (i[:, None] * G + prod) * L + lam[None, :]

    def mul(self, x: int, y: int) -> int:
        return self.semigroup.rows[x][y]

    def __repr__(self):
        return f"<ReesMatrixSemigroup {self.group.name} I={self.I_size} Lambda={self.Lambda_size} P={self.P}>"


def _check_matrix(G: FiniteGroup, I_size: int, Lambda_size: int, P) -> None:
    if I_size < 1 or Lambda_size < 1:
        raise ShapeMismatch("index sets must be non-empty")
    if len(P) != Lambda_size or any(len(row) != I_size for row in P):
        raise ShapeMismatch(f"P must have {Lambda_size} rows of length {I_size}")
    for lam, row in enumerate(P):
        for i, v in enumerate(row):
            if not 0 <= v < G.order:
                raise OutOfRange(f"P[{lam}][{i}] = {v} is not a group element", (lam, i))


def first_unnormalized(G: FiniteGroup, P) -> tuple[int, int] | None:
    for i, v in enumerate(P[0]):
        if v != G.identity:
            return (0, i)
    for lam, row in enumerate(P):
        if row[0] != G.identity:
            return (lam, 0)
    return None


def build_rees(
    G: FiniteGroup, I_size: int, Lambda_size: int, P: Sequence[Sequence[int]], name: str | None = None,
    *, limit: int | None = MAX_REES,
) -> ReesMatrixSemigroup:
    _check_matrix(G, I_size, Lambda_size, P)
    bad = first_unnormalized(G, P)
    if bad is not None:
        lam, i = bad
        raise NotNormalized(f"P[{lam}][{i}] = {P[lam][i]} but the border must be the identity", bad)
    n = I_size * G.order * Lambda_size
    if limit is not None and n > limit:
        raise TooLarge(f"Rees semigroup of order {n} exceeds {limit}")
    return ReesMatrixSemigroup(G, I_size, Lambda_size, P, name)


def _raw_rees(G: FiniteGroup, P) -> ReesMatrixSemigroup:
    return ReesMatrixSemigroup(G, len(P[0]), len(P), P)


def _is_isomorphism(A: FiniteSemigroup, B: FiniteSemigroup, phi: Sequence[int]) -> bool:
    phi = np.asarray(phi)
    if len(np.unique(phi)) != A.order or A.order != B.order:
        return False
    return bool(np.array_equal(phi[A.table], B.table[phi[:, None], phi[None, :]]))


def normalize(G: FiniteGroup, P_raw):
    """Normalize a sandwich matrix.

    Returns ``(P', carrier_map)`` where ``carrier_map[x]`` is the image in
    M[G;I,Lambda;P'] of element ``x`` of M[G;I,Lambda;P_raw]; the map is checked
    to be an isomorphism before returning.
    """
    Lambda_size = len(P_raw)
    I_size = len(P_raw[0]) if Lambda_size else 0
    _check_matrix(G, I_size, Lambda_size, P_raw)
    inv, m = G.inv, G.mul
    p11 = P_raw[0][0]
    P_new = [
        [m(m(m(inv(P_raw[lam][0]), P_raw[lam][i]), inv(P_raw[0][i])), p11) for i in range(I_size)]
        for lam in range(Lambda_size)
    ]
    raw = _raw_rees(G, P_raw)
    new = _raw_rees(G, P_new)
    carrier = []
    for x in range(raw.order):
        i, g, lam = raw.decode(x)
        h = m(m(m(inv(p11), P_raw[0][i]), g), P_raw[lam][0])
        carrier.append(new.encode(i, h, lam))
    if not _is_isomorphism(raw.semigroup, new.semigroup, carrier):
        raise AssertionError("normalization map failed the isomorphism check")
    return P_new, tuple(carrier)


def rees_decompose(S: FiniteSemigroup):
    """Rees coordinates for an abstract completely simple semigroup.

    Returns ``(RS, iso)`` with ``iso[x]`` the element of ``RS.semigroup``
    corresponding to ``x``; ``iso`` is verified to be an isomorphism.
    """
    if not is_completely_simple(S):
        raise NotCompletelySimple("decomposition needs a completely simple semigroup")
    rows = S.rows
    R, L, H = greens_relations(S)
    e0 = idempotents(S)[0]
    h_members = H.blocks()[H.block_id[e0]]
    g_index = {x: k for k, x in enumerate(h_members)}
    G = group_from_semigroup(
        FiniteSemigroup([[g_index[rows[x][y]] for y in h_members] for x in h_members], "H")
    )

    def ordered_classes(part):
        blocks = part.blocks()
        first = part.block_id[e0]
        return [blocks[first]] + [b for k, b in enumerate(blocks) if k != first]

    r_classes = ordered_classes(R)
    l_classes = ordered_classes(L)
    i_of = {x: i for i, block in enumerate(r_classes) for x in block}
    l_of = {x: k for k, block in enumerate(l_classes) for x in block}
    L0 = set(l_classes[0])
    R0 = set(r_classes[0])
    reps_r = [e0] + [min(set(block) & L0) for block in r_classes[1:]]
    reps_q = [e0] + [min(set(block) & R0) for block in l_classes[1:]]
    P_raw = [[g_index[rows[q][r]] for r in reps_r] for q in reps_q]
    raw = _raw_rees(G, P_raw)

    to_raw = []
    for x in range(S.order):
        i, lam = i_of[x], l_of[x]
        r, q = reps_r[i], reps_q[lam]
        g = next(h for h in h_members if rows[rows[r][h]][q] == x)
        to_raw.append(raw.encode(i, g_index[g], lam))

    P_new, carrier = normalize(G, P_raw)
    RS = ReesMatrixSemigroup(G, raw.I_size, raw.Lambda_size, P_new, S.name)
    iso = tuple(carrier[y] for y in to_raw)
    if not _is_isomorphism(S, RS.semigroup, iso):
        raise AssertionError("Rees decomposition failed the isomorphism check")
    return RS, iso


def verify_associative(RS: ReesMatrixSemigroup) -> None:
    triple = associativity_witness(RS.semigroup.table)
    if triple is not None:
        raise NotAssociative("flattened Rees table is not associative", triple)
