import itertools

import numpy as np
import pytest

from rees_commutator.core import (
    Partition,
    UnaryOp,
    congruence_from_pairs,
    enumerate_congruences,
    greens_relations,
    idempotents,
    inversion_map,
    is_completely_simple,
    is_congruence,
    is_primitive_idempotent,
    is_regular,
    is_simple,
    make_semigroup,
    quotient,
    unary_preserves_congruences,
)
from rees_commutator.errors import MalformedTable, NotAssociative, OutOfRange
from rees_commutator.groups import cyclic, dihedral
from rees_commutator.rees import build_rees
from rees_commutator.verification import left_zero, rectangular_band, semilattice2

Z4 = cyclic(4).base


def test_trivial_semigroup():
    S = make_semigroup([[0]])
    assert S.order == 1
    assert enumerate_congruences(S) == [Partition.zero(1)]
    assert Partition.zero(1) == Partition.full(1)


def test_semilattice_tables_are_associative():
    assert make_semigroup([[0, 0], [0, 1]]).order == 2
    # join semilattice: checked exhaustively, associative
    assert make_semigroup([[0, 1], [1, 1]]).order == 2


def test_rejects_bad_tables():
    with pytest.raises(MalformedTable):
        make_semigroup([[0, 1]])
    with pytest.raises(MalformedTable):
        make_semigroup([[0, 2], [1, 0]])
    # x*y = y+1 mod 2 is not associative
    with pytest.raises(NotAssociative) as err:
        make_semigroup([[1, 0], [1, 0]])
    assert err.value.witness is not None


def test_table_is_read_only():
    S = semilattice2()
    with pytest.raises(ValueError):
        S.table[0, 0] = 1


def test_regular():
    assert is_regular(Z4)
    assert is_regular(semilattice2())
    v = is_regular(make_semigroup([[0, 0], [0, 0]]))
    assert not v and v.witness == 1


def test_idempotents():
    assert idempotents(dihedral(3).base) == [0]
    assert idempotents(semilattice2()) == [0, 1]
    assert idempotents(rectangular_band(2, 2)) == [0, 1, 2, 3]


def test_primitive_idempotents():
    assert is_primitive_idempotent(Z4, 0)
    assert not is_primitive_idempotent(semilattice2(), 1)
    assert is_primitive_idempotent(semilattice2(), 0)


def test_simple():
    v = is_simple(semilattice2())
    assert not v
    assert v.witness[1] == [0]
    assert is_simple(left_zero(2))
    assert is_simple(dihedral(3).base)


def test_completely_simple():
    assert is_completely_simple(rectangular_band(2, 2))
    assert not is_completely_simple(semilattice2())
    assert is_completely_simple(Z4)


def test_greens_group_is_single_class():
    g = greens_relations(dihedral(3).base)
    assert g.R.is_full() and g.L.is_full() and g.H.is_full()


def test_greens_left_zero():
    g = greens_relations(left_zero(2))
    assert g.L.is_full()
    assert g.R.is_zero()
    assert g.H.is_zero()


def test_greens_rectangular_band():
    g = greens_relations(rectangular_band(2, 2))
    assert g.R.blocks() == [[0, 1], [2, 3]]
    assert g.L.blocks() == [[0, 2], [1, 3]]
    assert g.H.is_zero()


def test_closure_examples():
    assert congruence_from_pairs(Z4, []).is_zero()
    assert congruence_from_pairs(Z4, [(0, 2)]).blocks() == [[0, 2], [1, 3]]
    assert congruence_from_pairs(Z4, [(0, 1), (1, 2), (2, 3)]).is_full()
    with pytest.raises(OutOfRange):
        congruence_from_pairs(Z4, [(0, 4)])


def test_closure_is_least():
    S = rectangular_band(2, 3)
    congs = enumerate_congruences(S)
    for a, b in itertools.combinations(range(S.order), 2):
        c = congruence_from_pairs(S, [(a, b)])
        assert is_congruence(S, c)
        assert c.related(a, b)
        for d in congs:
            if d.related(a, b):
                assert c.leq(d)


def test_is_congruence_examples():
    assert is_congruence(Z4, Partition.zero(4))
    assert is_congruence(Z4, Partition.full(4))
    v = is_congruence(Z4, Partition.from_blocks(4, [[0, 1], [2, 3]]))
    assert not v
    # 0 ~ 1 but 0+1 = 1 and 1+1 = 2 land in different blocks
    a, b, c, d, ac, bd = v.witness
    assert (a, b) == (0, 1) and (ac, bd) == (1, 2)


def test_enumerate_examples():
    assert [c.blocks() for c in enumerate_congruences(Z4)] == [
        [[0], [1], [2], [3]],
        [[0, 2], [1, 3]],
        [[0, 1, 2, 3]],
    ]
    assert enumerate_congruences(semilattice2()) == [Partition.zero(2), Partition.full(2)]


def test_inversion_map():
    G = dihedral(3)
    assert inversion_map(G.base).map == tuple(G.inv(g) for g in range(G.order))
    assert inversion_map(rectangular_band(2, 2)).map == (0, 1, 2, 3)
    RS = build_rees(cyclic(3), 1, 1, [[0]])
    assert inversion_map(RS.semigroup).map == (0, 2, 1)


def test_unary_compatibility():
    ident = UnaryOp(4, (0, 1, 2, 3))
    assert unary_preserves_congruences(Z4, ident, enumerate_congruences(Z4))
    RS = build_rees(cyclic(2), 2, 2, [[0, 0], [0, 1]])
    assert unary_preserves_congruences(RS.semigroup, inversion_map(RS.semigroup), enumerate_congruences(RS.semigroup))
    # swapping 1 and 2 breaks {0,2},{1,3}
    swap = UnaryOp(4, (0, 2, 1, 3))
    v = unary_preserves_congruences(Z4, swap, [Partition.from_blocks(4, [[0, 2], [1, 3]])])
    assert not v


def test_partition_lattice_ops():
    p = Partition.from_blocks(4, [[0, 1]])
    q = Partition.from_blocks(4, [[1, 2]])
    assert p.join(q).blocks() == [[0, 1, 2], [3]]
    assert p.meet(q).is_zero()
    assert p <= p.join(q)
    assert Partition([5, 5, 7]).blocks() == [[0, 1], [2]]
    assert p.pairs()[:3] == [(0, 0), (0, 1), (1, 0)]


def test_quotient_of_z4():
    Q = quotient(Z4, Partition.from_blocks(4, [[0, 2], [1, 3]]))
    assert np.array_equal(Q.table, [[0, 1], [1, 0]])
