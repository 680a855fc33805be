"""Commutators of finite completely simple semigroups via Rees coordinates."""

from .commutator import (
    CentralizerReport,
    centralizes_cs,
    centralizes_general,
    commutator,
    commutator_bruteforce,
    commutator_fast,
    commutator_triple,
    theta_congruence,
)
from .core import (
    Congruence,
    FiniteSemigroup,
    Partition,
    UnaryOp,
    congruence_from_pairs,
    enumerate_congruences,
    greens_relations,
    inversion_map,
    is_completely_simple,
    is_congruence,
    is_regular,
    is_simple,
    make_semigroup,
)
from .errors import AlgebraError
from .groups import FiniteGroup, NormalSubgroup, cyclic, dihedral, direct_product, named_group, quaternion8, symmetric
from .rees import ReesMatrixSemigroup, build_rees, normalize, rees_decompose
from .series import (
    derived_series,
    lower_central_series,
    nilpotency_degree,
    regular_nilpotency_check,
    series_projection,
    solvability_degree,
)
from .triples import LinkedTriple, congruence_of_triple, enumerate_triples, triple_of_congruence

__all__ = [name for name in dir() if not name.startswith("_")]
