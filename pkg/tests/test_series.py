import pytest

from rees_commutator.core import Partition, greens_relations, make_semigroup
from rees_commutator.errors import NotRegular
from rees_commutator.groups import (
    as_normal,
    congruence_of_normal,
    cyclic,
    dihedral,
    group_commutator,
    symmetric,
    whole_group,
)
from rees_commutator.rees import build_rees
from rees_commutator.series import (
    derived_series,
    lower_central_series,
    nilpotency_degree,
    regular_nilpotency_check,
    series_projection,
    series_terms,
    solvability_degree,
)
from rees_commutator.triples import triple_of_congruence
from rees_commutator.verification import builtin, full_transformation_monoid2, rectangular_band, semilattice2

TWISTED = build_rees(cyclic(4), 2, 2, [[0, 0], [0, 1]])


@pytest.fixture(scope="module")
def d3_builtin():
    return builtin("d3-paper")


@pytest.fixture(scope="module")
def q8_builtin():
    return builtin("q8-paper")


def test_abelian_group_series():
    RS = build_rees(cyclic(2), 1, 1, [[0]])
    assert nilpotency_degree(RS) == 1
    assert solvability_degree(RS) == 1
    assert lower_central_series(RS, "oracle").entries == (Partition.zero(2),)


def test_d3_builtin_is_three_solvable(d3_builtin):
    trace = derived_series(d3_builtin, "fast")
    assert trace.degree == 3
    assert not trace.entries[1].is_zero()
    assert nilpotency_degree(d3_builtin, "fast") is None


def test_q8_builtin_is_three_nilpotent(q8_builtin):
    trace = lower_central_series(q8_builtin, "fast")
    assert trace.degree == 3
    assert not trace.entries[1].is_zero()


def test_semilattice_series_stabilizes():
    trace = derived_series(semilattice2(), "oracle")
    assert trace.stabilized and trace.degree is None
    assert trace.entries[-1].is_full()


def test_twisted_nilpotency_degree():
    trace = lower_central_series(TWISTED, "fast")
    assert trace.degree == 2
    assert trace.entries[0] == greens_relations(TWISTED.semigroup).H
    assert lower_central_series(TWISTED, "oracle") == trace


def test_right_sided_lower_central_agrees():
    for X in (TWISTED, builtin("d3-paper")):
        assert lower_central_series(X, "fast", side="right") == lower_central_series(X, "fast")


def test_series_terms_do_not_stop():
    terms = series_terms(TWISTED, "nilpotent", 4, "fast")
    assert len(terms) == 4 and all(t.is_zero() for t in terms[1:])


def test_projection_on_twisted():
    left, right, equal = series_projection(TWISTED, 2, "nilpotent", "oracle")
    assert equal and left.is_zero() and right.is_zero()


def test_projection_on_d3_builtin(d3_builtin):
    left, right, equal = series_projection(d3_builtin, 2, "solvable", "fast")
    G = d3_builtin.group
    rotations = congruence_of_normal(G, group_commutator(G, whole_group(G), whole_group(G)))
    assert equal and left == rotations
    assert right == congruence_of_normal(G, as_normal(G, [0, 1, 2]))


def test_projection_rejects_small_k():
    with pytest.raises(ValueError):
        series_projection(TWISTED, 1)


def test_regular_check_negative_cases():
    v = regular_nilpotency_check(semilattice2(), "nilpotent")
    assert v.status == "not_simple" and not v.holds
    v = regular_nilpotency_check(semilattice2(), "solvable")
    assert v.status == "not_simple"
    v = regular_nilpotency_check(full_transformation_monoid2(), "nilpotent")
    assert v.status == "not_simple" and not v.holds


def test_regular_check_requires_regular():
    with pytest.raises(NotRegular) as err:
        regular_nilpotency_check(make_semigroup([[0, 0], [0, 0]]))
    assert err.value.witness == 1


def test_regular_check_d3(d3_builtin):
    v = regular_nilpotency_check(d3_builtin.semigroup, "solvable")
    assert v.holds and v.group_degree == 2 and v.degree_bounds == (2, 3) and v.degree == 3
    v = regular_nilpotency_check(d3_builtin.semigroup, "nilpotent")
    assert v.status == "group_degree_fails" and not v.holds


def test_regular_check_band_and_group():
    v = regular_nilpotency_check(rectangular_band(2, 2), "nilpotent")
    assert v.holds and v.degree == 1
    v = regular_nilpotency_check(symmetric(3).base, "solvable")
    assert v.holds and v.degree == 2


def test_trace_triples_are_h_like(d3_builtin):
    for c in derived_series(d3_builtin, "fast").entries:
        T = triple_of_congruence(d3_builtin, c, check=False)
        assert T.rho_I.is_zero() and T.rho_Lambda.is_zero()


def test_d3_group_is_not_nilpotent():
    assert regular_nilpotency_check(dihedral(3).base, "nilpotent").status == "group_degree_fails"
