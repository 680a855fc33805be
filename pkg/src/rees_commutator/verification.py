"""Built-in instances and the cross-checking battery behind ``verify``.

Every check returns a list of violations (empty means pass).  The oracle
commutator only ever sees the flattened Cayley table, so comparing it with
the Rees-coordinate formula is a genuine two-route check.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Optional

from .commutator import (
    centralizes_cs,
    centralizes_general,
    commutator_bruteforce,
    commutator_fast,
    theta_normal,
)
from .core import (
    FiniteSemigroup,
    Partition,
    enumerate_congruences,
    greens_relations,
    inversion_map,
    is_completely_simple,
    lift,
    make_semigroup,
    project,
    quotient,
    unary_preserves_congruences,
)
from .groups import (
    FiniteGroup,
    congruence_of_normal,
    cyclic,
    dihedral,
    direct_product,
    group_commutator,
    group_nilpotency_degree,
    group_solvability_degree,
    normal_of_congruence,
    quaternion8,
    symmetric,
    whole_group,
)
from .rees import ReesMatrixSemigroup, build_rees, rees_decompose
from .series import derived_series, lower_central_series, series_projection, theta_full
from .triples import (
    LinkedTriple,
    congruence_of_triple,
    enumerate_triples,
    greens_triples,
    triple_of_congruence,
)

# instances ---------------------------------------------------------------------------


def listing_sandwich(G: FiniteGroup, size: int = 4) -> list[list[int]]:
    """Identity border; inner block lists the group row-major, padded with e."""
    e = G.identity
    inner = size - 1
    slots = [g for g in range(G.order)] + [e] * (inner * inner)
    if G.order > inner * inner:
        raise ValueError("inner block too small to cover the group")
    slots = slots[: inner * inner]
    return [[e] * size] + [[e] + slots[r * inner:(r + 1) * inner] for r in range(inner)]


def random_covering_sandwich(G: FiniteGroup, rng: random.Random, size: int = 4) -> list[list[int]]:
    """Random normalized sandwich matrix whose inner block contains every element."""
    inner = size - 1
    slots = list(range(G.order)) + [rng.randrange(G.order) for _ in range(inner * inner - G.order)]
    rng.shuffle(slots)
    e = G.identity
    return [[e] * size] + [[e] + slots[r * inner:(r + 1) * inner] for r in range(inner)]


def semilattice2() -> FiniteSemigroup:
    return make_semigroup([[0, 0], [0, 1]], "semilattice2")


def full_transformation_monoid2() -> FiniteSemigroup:
    """T_2: maps of {0,1} written as image tuples; x*y applies x first."""
    maps = [(0, 1), (1, 0), (0, 0), (1, 1)]
    index = {f: k for k, f in enumerate(maps)}
    table = [[index[tuple(g[f[p]] for p in range(2))] for g in maps] for f in maps]
    return make_semigroup(table, "T2")


def rectangular_band(rows: int, cols: int) -> FiniteSemigroup:
    """Element r*cols + c; (r,c)(r',c') = (r,c')."""
    n = rows * cols
    return make_semigroup([[(x // cols) * cols + y % cols for y in range(n)] for x in range(n)], f"B{rows}x{cols}")


def left_zero(n: int) -> FiniteSemigroup:
    return make_semigroup([[x] * n for x in range(n)], f"LZ{n}")


def builtin(name: str):
    """Named instances: a ReesMatrixSemigroup or a FiniteSemigroup."""
    if name == "d3-paper":
        G = dihedral(3)
        return build_rees(G, 4, 4, listing_sandwich(G), "d3-paper")
    if name == "q8-paper":
        G = quaternion8()
        return build_rees(G, 4, 4, listing_sandwich(G), "q8-paper")
    if name == "semilattice2":
        return semilattice2()
    if name == "t2":
        return full_transformation_monoid2()
    if name == "band2x2":
        return rectangular_band(2, 2)
    if name == "z4-twisted":
        return build_rees(cyclic(4), 2, 2, [[0, 0], [0, 1]], "z4-twisted")
    raise KeyError(f"unknown builtin {name!r}")


BUILTINS = ("d3-paper", "q8-paper", "semilattice2", "t2", "band2x2", "z4-twisted")


SUITE_GROUPS: tuple[tuple[str, Callable[[], FiniteGroup]], ...] = (
    ("Z2", lambda: cyclic(2)),
    ("Z3", lambda: cyclic(3)),
    ("Z4", lambda: cyclic(4)),
    ("Z2xZ2", lambda: direct_product(cyclic(2), cyclic(2))),
    ("S3", lambda: symmetric(3)),
)
SUITE_SHAPES = ((1, 1), (2, 1), (1, 2), (2, 2))
# free entry p_{22} for the 2x2 shape: identity first, then a generator of G
# (normal generator for S3) where one exists, then another element
FREE_ENTRIES = {"Z2": (0, 1), "Z3": (0, 1, 2), "Z4": (0, 1, 2), "Z2xZ2": (0, 1, 3), "S3": (0, 1, 3)}


@dataclass(frozen=True)
class SuiteInstance:
    label: str
    rees: ReesMatrixSemigroup


def small_suite() -> list[SuiteInstance]:
    out = []
    for gname, make in SUITE_GROUPS:
        G = make()
        for I, L in SUITE_SHAPES:
            if (I, L) == (2, 2):
                for p in FREE_ENTRIES[gname]:
                    P = [[G.identity, G.identity], [G.identity, p]]
                    out.append(SuiteInstance(f"{gname}-2x2-p{p}", build_rees(G, 2, 2, P, f"{gname}-2x2-p{p}")))
            else:
                P = [[G.identity] * I for _ in range(L)]
                out.append(SuiteInstance(f"{gname}-{I}x{L}", build_rees(G, I, L, P, f"{gname}-{I}x{L}")))
    return out


# battery ---------------------------------------------------------------------------------


class InstanceChecks:
    """Cross-checks for one Rees matrix semigroup; oracle results are memoized."""

    def __init__(self, RS: ReesMatrixSemigroup, label: Optional[str] = None):
        self.RS = RS
        self.S = RS.semigroup
        self.label = label or RS.name or repr(RS)
        self._oracle: dict = {}
        self._fast: dict = {}

    @cached_property
    def triples(self) -> list[LinkedTriple]:
        return enumerate_triples(self.RS)

    @cached_property
    def congruences(self) -> list[Partition]:
        return [congruence_of_triple(self.RS, T) for T in self.triples]

    def oracle(self, a: Partition, b: Partition) -> Partition:
        key = (a, b)
        if key not in self._oracle:
            self._oracle[key] = commutator_bruteforce(self.S, a, b, check=False)
        return self._oracle[key]

    def fast(self, a: Partition, b: Partition) -> Partition:
        key = (a, b)
        if key not in self._fast:
            self._fast[key] = commutator_fast(self.RS, a, b, check=False)
        return self._fast[key]

    def pairs(self):
        return itertools.product(self.congruences, repeat=2)

    # fast route vs oracle, Green's relations -----------------------------------------------

    def fast_vs_oracle(self) -> list:
        return [
            ("fast_vs_oracle", a.blocks(), b.blocks())
            for a, b in self.pairs()
            if self.fast(a, b) != self.oracle(a, b)
        ]

    def greens_commutators(self) -> list:
        RS, G = self.RS, self.RS.group
        full_G = whole_group(G)
        expected = LinkedTriple(
            Partition.zero(RS.I_size),
            congruence_of_normal(G, group_commutator(G, full_G, full_G)),
            Partition.zero(RS.Lambda_size),
        )
        named = {k: congruence_of_triple(RS, T) for k, T in greens_triples(RS).items()}
        bad = []
        for k in ("H", "L", "R"):
            got = triple_of_congruence(RS, self.oracle(named[k], named[k]))
            if got != expected:
                bad.append(("greens_commutators", f"[{k},{k}]"))
        full = Partition.full(self.S.order)
        if self.oracle(named["L"], named["R"]) != self.oracle(full, full):
            bad.append(("greens_commutators", "[L,R] != [1,1]"))
        return bad

    # property battery --------------------------------------------------------------------

    def symmetry(self) -> list:
        return [("symmetry", a.blocks(), b.blocks()) for a, b in self.pairs() if self.oracle(a, b) != self.oracle(b, a)]

    def join_distributivity(self, max_subset: int = 3) -> list:
        bad = []
        congs = self.congruences
        for size in range(1, max_subset + 1):
            for subset in itertools.combinations(congs, size):
                joined = subset[0]
                for s in subset[1:]:
                    joined = joined.join(s)
                for rho in congs:
                    rhs = self.oracle(rho, subset[0])
                    for s in subset[1:]:
                        rhs = rhs.join(self.oracle(rho, s))
                    if self.oracle(rho, joined) != rhs:
                        bad.append(("join", rho.blocks(), [s.blocks() for s in subset]))
        return bad

    def characterization(self) -> list:
        """C(rho, sigma; delta) iff [rho, sigma] <= delta over the whole lattice."""
        bad = []
        for rho, sigma in self.pairs():
            comm = self.fast(rho, sigma)
            for delta in self.congruences:
                holds = centralizes_general(self.S, rho, sigma, delta, check=False).holds
                if holds != comm.leq(delta):
                    bad.append(("characterization", rho.blocks(), sigma.blocks(), delta.blocks()))
        return bad

    def factor_identity(self) -> list:
        bad = []
        cache: dict = {}
        for rho, sigma in self.pairs():
            meet = rho.meet(sigma)
            comm = self.oracle(rho, sigma)
            for eta in self.congruences:
                if not eta.leq(meet):
                    continue
                if eta not in cache:
                    cache[eta] = (quotient(self.S, eta), {})
                Q, memo = cache[eta]
                key = (project(rho, eta), project(sigma, eta))
                if key not in memo:
                    memo[key] = commutator_bruteforce(Q, *key, check=False)
                if lift(memo[key], eta) != comm.join(eta):
                    bad.append(("factor", rho.blocks(), sigma.blocks(), eta.blocks()))
        return bad

    def below_h(self) -> list:
        H = greens_relations(self.S).H
        return [("below-H", a.blocks(), b.blocks()) for a, b in self.pairs() if not self.oracle(a, b).leq(H)]

    def trivial_components(self) -> list:
        """Group part equals [rho_G, sigma_G] whenever one of the four conditions holds."""
        RS, G = self.RS, self.RS.group
        bad = []
        for a, b in self.pairs():
            Ta, Tb = triple_of_congruence(RS, a, check=False), triple_of_congruence(RS, b, check=False)
            cases = (
                Ta.rho_I.is_zero() and Tb.rho_I.is_zero(),
                Ta.rho_Lambda.is_zero() and Tb.rho_Lambda.is_zero(),
                Ta.rho_I.is_zero() and Ta.rho_Lambda.is_zero(),
                Tb.rho_I.is_zero() and Tb.rho_Lambda.is_zero(),
            )
            if not any(cases):
                continue
            group_side = congruence_of_normal(
                G, group_commutator(G, normal_of_congruence(G, Ta.rho_G), normal_of_congruence(G, Tb.rho_G))
            )
            got = triple_of_congruence(RS, self.oracle(a, b), check=False).rho_G
            if got != group_side:
                bad.append(("trivial_components", a.blocks(), b.blocks()))
        return bad

    def group_sandwich(self) -> list:
        """[rho_G, sigma_G] <= [rho,sigma]_G, and Theta joined with it is equal."""
        RS, G = self.RS, self.RS.group
        bad = []
        for a, b in self.pairs():
            Ta, Tb = triple_of_congruence(RS, a, check=False), triple_of_congruence(RS, b, check=False)
            comm_G = triple_of_congruence(RS, self.oracle(a, b), check=False).rho_G
            M = group_commutator(G, normal_of_congruence(G, Ta.rho_G), normal_of_congruence(G, Tb.rho_G))
            lower = congruence_of_normal(G, M)
            theta = congruence_of_normal(G, theta_normal(RS, Ta, Tb))
            if not lower.leq(comm_G) or lower.join(theta) != comm_G:
                bad.append(("group-sandwich", a.blocks(), b.blocks()))
        return bad

    def bijection(self) -> list:
        RS = self.RS
        bad = []
        generic = enumerate_congruences(self.S)
        if len(generic) != len(self.triples):
            bad.append(("count", len(generic), len(self.triples)))
        for c in generic:
            if congruence_of_triple(RS, triple_of_congruence(RS, c)) != c:
                bad.append(("roundtrip-congruence", c.blocks()))
        for T in self.triples:
            if triple_of_congruence(RS, congruence_of_triple(RS, T)) != T:
                bad.append(("roundtrip-triple", T))
        for a, b in itertools.product(generic, repeat=2):
            if a.leq(b) != triple_of_congruence(RS, a).leq(triple_of_congruence(RS, b)):
                bad.append(("order", a.blocks(), b.blocks()))
        return bad

    def projection_identity(self, ks=(2, 3), method: str = "oracle") -> list:
        bad = []
        for k in ks:
            for kind in ("nilpotent", "solvable"):
                left, right, equal = series_projection(self.RS, k, kind, method)
                if not equal:
                    bad.append(("projection_identity", k, kind, left.blocks(), right.blocks()))
        return bad

    def degree_transfer(self, method: str = "oracle") -> list:
        """deg_G <= deg_S <= deg_G + 1 for deg_G >= 2, equality when Theta_{1,1} <= [1_G,1_G]."""
        RS, G = self.RS, self.RS.group
        full_G = whole_group(G)
        theta_small = theta_full(RS).members <= group_commutator(G, full_G, full_G).members
        bad = []
        for kind, group_deg, series in (
            ("nilpotent", group_nilpotency_degree, lower_central_series),
            ("solvable", group_solvability_degree, derived_series),
        ):
            dG = group_deg(G)
            dS = series(RS, method).degree
            if (dG is None) != (dS is None):
                bad.append(("equivalence", kind, dG, dS))
                continue
            if dG is None or dG < 2:
                continue
            if not dG <= dS <= dG + 1:
                bad.append(("bounds", kind, dG, dS))
            if theta_small and dS != dG:
                bad.append(("equal-degree", kind, dG, dS))
        return bad

    def structural(self) -> list:
        bad = []
        if not is_completely_simple(self.S):
            bad.append(("not-completely-simple",))
        D, _ = rees_decompose(self.S)
        if D.profile != self.RS.profile:
            bad.append(("profile", D.profile, self.RS.profile))
        if not unary_preserves_congruences(self.S, inversion_map(self.S), self.congruences):
            bad.append(("inversion",))
        return bad

    def battery(self) -> dict[str, list]:
        """The property set run by the ``verify`` command."""
        return {
            "fast_vs_oracle": self.fast_vs_oracle(),
            "symmetry": self.symmetry(),
            "join_distributivity": self.join_distributivity(),
            "characterization": self.characterization(),
            "projection_identity": self.projection_identity(method="fast"),
        }


def sample_checker_agreement(instances, samples: int, seed: int = 0):
    """Compare the three centralizer checkers on random (rho, sigma, delta).

    Returns ``(checked, disagreements, positives)``.
    """
    rng = random.Random(seed)
    checks = [inst if isinstance(inst, InstanceChecks) else InstanceChecks(inst) for inst in instances]
    per = -(-samples // len(checks))
    checked, positives, bad = 0, 0, []
    for chk in checks:
        congs = chk.congruences
        for _ in range(per):
            rho, sigma, delta = (rng.choice(congs) for _ in range(3))
            g = centralizes_general(chk.S, rho, sigma, delta, check=False).holds
            c3 = centralizes_cs(chk.RS, rho, sigma, delta, "C3", check=False).holds
            split = centralizes_cs(chk.RS, rho, sigma, delta, "C3.1-3.3", check=False).holds
            checked += 1
            positives += g
            if not g == c3 == split:
                bad.append((chk.label, rho.blocks(), sigma.blocks(), delta.blocks(), g, c3, split))
    return checked, bad, positives
