"""Linked triples: congruences of M[G;I,Lambda;P] in coordinates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .core import Partition, congruence_from_pairs, is_congruence, lattice_order_key
from .errors import NotACongruence, NotLinked, ShapeMismatch, TooLarge
from .groups import NormalSubgroup, congruence_of_normal, normal_of_congruence, normal_subgroups
from .rees import ReesMatrixSemigroup

MAX_INDEX_ENUM = 6


@dataclass(frozen=True)
class LinkedTriple:
    rho_I: Partition
    rho_G: Partition
    rho_Lambda: Partition

    def leq(self, other: "LinkedTriple") -> bool:
        return (
            self.rho_I.leq(other.rho_I)
            and self.rho_G.leq(other.rho_G)
            and self.rho_Lambda.leq(other.rho_Lambda)
        )

    __le__ = leq

    def normal_subgroup(self, RS: ReesMatrixSemigroup) -> NormalSubgroup:
        return normal_of_congruence(RS.group, self.rho_G)

    def shape(self) -> tuple[str, str, str]:
        """Coarse label per component: '0', '1', or '*' for anything in between."""

        def tag(p: Partition):
            if p.is_zero():
                return "0"
            if p.is_full():
                return "1"
            return "*"

        return tag(self.rho_I), tag(self.rho_G), tag(self.rho_Lambda)


def zero_triple(RS: ReesMatrixSemigroup) -> LinkedTriple:
    return LinkedTriple(
        Partition.zero(RS.I_size), Partition.zero(RS.group.order), Partition.zero(RS.Lambda_size)
    )


def full_triple(RS: ReesMatrixSemigroup) -> LinkedTriple:
    return LinkedTriple(
        Partition.full(RS.I_size), Partition.full(RS.group.order), Partition.full(RS.Lambda_size)
    )


def triple_of_congruence(RS: ReesMatrixSemigroup, rho: Partition, *, check: bool = True) -> LinkedTriple:
    if rho.size != RS.order:
        raise ShapeMismatch("congruence size differs from the Rees semigroup order")
    if check and not is_congruence(RS.semigroup, rho):
        raise NotACongruence("not a congruence of the Rees semigroup")
    G, enc, blk = RS.group, RS.encode, rho.block_id
    P = RS.P
    # i ~ j iff (i, p_{lam i}^-1, lam) rho (j, p_{lam j}^-1, lam) for every lam
    rho_I = Partition(
        tuple(blk[enc(i, G.inv(P[lam][i]), lam)] for lam in range(RS.Lambda_size))
        for i in range(RS.I_size)
    )
    rho_Lambda = Partition(
        tuple(blk[enc(i, G.inv(P[lam][i]), lam)] for i in range(RS.I_size))
        for lam in range(RS.Lambda_size)
    )
    rho_G = Partition(blk[enc(0, a, 0)] for a in range(G.order))
    return LinkedTriple(rho_I, rho_G, rho_Lambda)


def _componentwise(RS: ReesMatrixSemigroup, T: LinkedTriple) -> Partition:
    if (T.rho_I.size, T.rho_G.size, T.rho_Lambda.size) != RS.profile:
        raise ShapeMismatch(f"triple components do not match profile {RS.profile}")
    coords = RS.coordinates
    bi, bg, bl = T.rho_I.block_id, T.rho_G.block_id, T.rho_Lambda.block_id
    return Partition((bi[i], bg[g], bl[lam]) for i, g, lam in coords.tolist())


def congruence_of_triple(RS: ReesMatrixSemigroup, T: LinkedTriple) -> Partition:
    rel = _componentwise(RS, T)
    verdict = is_congruence(RS.semigroup, rel)
    if not verdict:
        raise NotLinked("componentwise relation is not a congruence", verdict.witness)
    return rel


def is_linked_triple(RS: ReesMatrixSemigroup, eq_I: Partition, theta_G: Partition, eq_Lambda: Partition) -> bool:
    return bool(is_congruence(RS.semigroup, _componentwise(RS, LinkedTriple(eq_I, theta_G, eq_Lambda))))


def triple_leq(T1: LinkedTriple, T2: LinkedTriple) -> bool:
    return T1.leq(T2)


def triple_meet(RS: ReesMatrixSemigroup, T1: LinkedTriple, T2: LinkedTriple) -> LinkedTriple:
    T = LinkedTriple(T1.rho_I.meet(T2.rho_I), T1.rho_G.meet(T2.rho_G), T1.rho_Lambda.meet(T2.rho_Lambda))
    congruence_of_triple(RS, T)
    return T


def triple_join(RS: ReesMatrixSemigroup, T1: LinkedTriple, T2: LinkedTriple) -> LinkedTriple:
    c1 = congruence_of_triple(RS, T1)
    c2 = congruence_of_triple(RS, T2)
    joined = congruence_from_pairs(RS.semigroup, c1.linking_pairs() + c2.linking_pairs(), limit=None)
    return triple_of_congruence(RS, joined, check=False)


def set_partitions(n: int) -> Iterator[Partition]:
    """Every partition of {0..n-1} via restricted growth strings."""

    def grow(prefix, top):
        if len(prefix) == n:
            yield Partition(prefix)
            return
        for k in range(top + 2):
            yield from grow(prefix + [k], max(top, k))

    if n == 0:
        yield Partition([])
        return
    yield from grow([0], 0)


def enumerate_triples(RS: ReesMatrixSemigroup, limit: int = MAX_INDEX_ENUM) -> list[LinkedTriple]:
    if RS.I_size > limit or RS.Lambda_size > limit:
        raise TooLarge(f"index sets larger than {limit} are not enumerated")
    G = RS.group
    group_congs = [congruence_of_normal(G, N) for N in normal_subgroups(G)]
    out = []
    for eq_I in set_partitions(RS.I_size):
        for theta in group_congs:
            for eq_L in set_partitions(RS.Lambda_size):
                if is_linked_triple(RS, eq_I, theta, eq_L):
                    out.append(LinkedTriple(eq_I, theta, eq_L))
    return out


def enumerate_congruences_via_triples(RS: ReesMatrixSemigroup) -> list[Partition]:
    return sorted((_componentwise(RS, T) for T in enumerate_triples(RS)), key=lattice_order_key)


def greens_triples(RS: ReesMatrixSemigroup) -> dict[str, LinkedTriple]:
    I, G, L = RS.profile
    zi, fi = Partition.zero(I), Partition.full(I)
    zl, fl = Partition.zero(L), Partition.full(L)
    fg = Partition.full(G)
    return {
        "H": LinkedTriple(zi, fg, zl),
        "L": LinkedTriple(fi, fg, zl),
        "R": LinkedTriple(zi, fg, fl),
    }
