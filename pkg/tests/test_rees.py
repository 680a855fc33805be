import numpy as np
import pytest

from rees_commutator.core import greens_relations, is_completely_simple, is_regular, is_simple
from rees_commutator.errors import NotCompletelySimple, NotNormalized, ShapeMismatch, TooLarge
from rees_commutator.groups import cyclic, dihedral, quaternion8
from rees_commutator.rees import build_rees, normalize, rees_decompose, verify_associative
from rees_commutator.verification import left_zero, listing_sandwich, rectangular_band, semilattice2


def test_one_by_one_is_the_group():
    RS = build_rees(cyclic(2), 1, 1, [[0]])
    assert np.array_equal(RS.semigroup.table, cyclic(2).table)


def test_trivial_group_gives_rectangular_band():
    RS = build_rees(cyclic(1), 2, 2, [[0, 0], [0, 0]])
    # (i,lam) coded as 2i + lam, same numbering as the band
    assert np.array_equal(RS.semigroup.table, rectangular_band(2, 2).table)


def test_z4_twisted():
    RS = build_rees(cyclic(4), 2, 2, [[0, 0], [0, 1]])
    assert RS.order == 16
    verify_associative(RS)
    assert is_completely_simple(RS.semigroup)


def test_codec():
    RS = build_rees(cyclic(4), 2, 2, [[0, 0], [0, 1]])
    assert RS.encode(0, 0, 0) == 0
    assert RS.encode(1, 3, 1) == 15
    assert all(RS.encode(*RS.decode(x)) == x for x in range(RS.order))


def test_multiplication_rule():
    RS = build_rees(dihedral(3), 2, 3, [[0, 0], [0, 3], [0, 4]])
    G = RS.group
    for x in range(RS.order):
        i, g, lam = RS.decode(x)
        for y in range(RS.order):
            j, h, mu = RS.decode(y)
            assert RS.mul(x, y) == RS.encode(i, G.mul(G.mul(g, RS.P[lam][j]), h), mu)


def test_build_errors():
    with pytest.raises(NotNormalized):
        build_rees(cyclic(2), 2, 2, [[1, 0], [0, 0]])
    with pytest.raises(ShapeMismatch):
        build_rees(cyclic(2), 2, 2, [[0, 0]])
    with pytest.raises(TooLarge):
        build_rees(cyclic(2), 2, 2, [[0, 0], [0, 0]], limit=4)


def test_structure_of_build_output():
    RS = build_rees(quaternion8(), 3, 2, [[0, 0, 0], [0, 3, 5]])
    S = RS.semigroup
    assert is_simple(S) and is_regular(S) and is_completely_simple(S)
    g = greens_relations(S)
    coords = RS.coordinates
    assert g.R.blocks() == [list(np.flatnonzero(coords[:, 0] == i)) for i in range(3)]
    assert sorted(g.L.blocks()) == sorted(list(np.flatnonzero(coords[:, 2] == k)) for k in range(2))
    assert g.H.num_blocks == 6


def test_normalize_examples():
    P = [[0, 0], [0, 1]]
    assert normalize(cyclic(2), P) == (P, tuple(range(8)))
    P_new, carrier = normalize(cyclic(2), [[1, 1], [1, 0]])
    assert P_new == [[0, 0], [0, 1]]
    assert sorted(carrier) == list(range(8))
    assert normalize(cyclic(3), [[2]])[0] == [[0]]


def test_decompose_examples():
    RS, iso = rees_decompose(dihedral(3).base)
    assert RS.profile == (1, 6, 1)
    RS, _ = rees_decompose(left_zero(2))
    assert RS.profile == (2, 1, 1)
    RS, _ = rees_decompose(rectangular_band(2, 2))
    assert RS.profile == (2, 1, 2)
    with pytest.raises(NotCompletelySimple):
        rees_decompose(semilattice2())


@pytest.mark.parametrize(
    "G, I, L, P",
    [
        (cyclic(4), 2, 2, [[0, 0], [0, 1]]),
        (dihedral(3), 3, 2, [[0, 0, 0], [0, 3, 1]]),
        (dihedral(3), 4, 4, listing_sandwich(dihedral(3))),
        (quaternion8(), 4, 4, listing_sandwich(quaternion8())),
    ],
)
def test_decompose_round_trip(G, I, L, P):
    RS = build_rees(G, I, L, P)
    D, iso = rees_decompose(RS.semigroup)
    assert D.profile == RS.profile
    t = RS.semigroup.table
    phi = np.asarray(iso)
    assert np.array_equal(phi[t], D.semigroup.table[phi[:, None], phi[None, :]])


def test_listing_sandwich_layout():
    P = listing_sandwich(dihedral(3))
    assert P[0] == [0, 0, 0, 0]
    assert [row[0] for row in P] == [0, 0, 0, 0]
    assert [P[r][c] for r in range(1, 4) for c in range(1, 4)] == [0, 1, 2, 3, 4, 5, 0, 0, 0]
