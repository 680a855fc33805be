import pytest

from rees_commutator.core import Partition, enumerate_congruences, greens_relations
from rees_commutator.errors import NotLinked
from rees_commutator.groups import congruence_of_normal, cyclic, dihedral, normal_subgroups
from rees_commutator.rees import build_rees
from rees_commutator.triples import (
    LinkedTriple,
    congruence_of_triple,
    enumerate_congruences_via_triples,
    enumerate_triples,
    full_triple,
    greens_triples,
    is_linked_triple,
    triple_join,
    triple_meet,
    triple_of_congruence,
    zero_triple,
)

TWISTED = build_rees(cyclic(4), 2, 2, [[0, 0], [0, 1]])
S3_RS = build_rees(dihedral(3), 2, 2, [[0, 0], [0, 3]])


def test_extraction_examples():
    RS = TWISTED
    n = RS.order
    assert triple_of_congruence(RS, Partition.zero(n)) == zero_triple(RS)
    assert triple_of_congruence(RS, Partition.full(n)) == full_triple(RS)
    H = greens_relations(RS.semigroup).H
    assert triple_of_congruence(RS, H).shape() == ("0", "1", "0")


def test_reconstruction_examples():
    RS = S3_RS
    g = greens_relations(RS.semigroup)
    for N in normal_subgroups(RS.group):
        T = LinkedTriple(Partition.zero(2), congruence_of_normal(RS.group, N), Partition.zero(2))
        assert is_linked_triple(RS, T.rho_I, T.rho_G, T.rho_Lambda)
        congruence_of_triple(RS, T)
    gt = greens_triples(RS)
    assert congruence_of_triple(RS, gt["L"]) == g.L
    assert congruence_of_triple(RS, gt["R"]) == g.R
    assert congruence_of_triple(RS, gt["H"]) == g.H
    assert congruence_of_triple(RS, zero_triple(RS)).is_zero()


def test_unlinked_triple():
    RS = TWISTED
    T = LinkedTriple(Partition.full(2), Partition.zero(4), Partition.full(2))
    assert not is_linked_triple(RS, T.rho_I, T.rho_G, T.rho_Lambda)
    with pytest.raises(NotLinked):
        congruence_of_triple(RS, T)
    assert is_linked_triple(RS, Partition.full(2), Partition.full(4), Partition.full(2))


def test_lattice_operations():
    RS = S3_RS
    gt = greens_triples(RS)
    for T in enumerate_triples(RS):
        assert triple_join(RS, T, T) == T
        assert triple_meet(RS, T, T) == T
    assert triple_join(RS, gt["H"], gt["L"]) == gt["L"]
    assert triple_join(RS, gt["L"], gt["R"]) == full_triple(RS)


def test_group_case_counts():
    G = dihedral(3)
    RS = build_rees(G, 1, 1, [[0]])
    assert len(enumerate_triples(RS)) == len(normal_subgroups(G))


def test_rectangular_band_triples():
    RS = build_rees(cyclic(1), 2, 2, [[0, 0], [0, 0]])
    assert len(enumerate_triples(RS)) == 4


@pytest.mark.parametrize(
    "RS",
    [TWISTED, S3_RS, build_rees(cyclic(2), 3, 2, [[0, 0, 0], [0, 1, 0]]), build_rees(cyclic(3), 1, 3, [[0], [0], [0]])],
    ids=["z4", "s3", "z2-3x2", "z3-1x3"],
)
def test_bijection(RS):
    generic = enumerate_congruences(RS.semigroup)
    assert enumerate_congruences_via_triples(RS) == generic
    for c in generic:
        T = triple_of_congruence(RS, c)
        assert congruence_of_triple(RS, T) == c
    for a in generic:
        for b in generic:
            assert a.leq(b) == triple_of_congruence(RS, a).leq(triple_of_congruence(RS, b))
