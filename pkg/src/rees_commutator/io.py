"""JSON formats for algebras, congruences and linked triples."""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .core import FiniteSemigroup, Partition, congruence_from_pairs, greens_relations, is_congruence, make_semigroup
from .errors import MalformedTable, NotACongruence, NotNormalized, ShapeMismatch
from .groups import FiniteGroup, as_normal, congruence_of_normal, direct_product, make_group, named_group, normal_of_congruence
from .rees import ReesMatrixSemigroup, build_rees, first_unnormalized, normalize
from .triples import LinkedTriple, congruence_of_triple


class NormalizationWarning(UserWarning):
    pass


@dataclass
class Algebra:
    """A parsed algebra file.

    ``raw_map`` is set when a Rees file carried an unnormalized sandwich
    matrix: element ``x`` as numbered by the file corresponds to
    ``raw_map[x]`` in ``rees``.  Congruences read from or written to files
    use the file's numbering.
    """

    kind: str
    semigroup: FiniteSemigroup
    group: Optional[FiniteGroup] = None
    rees: Optional[ReesMatrixSemigroup] = None
    raw_map: Optional[tuple[int, ...]] = None

    @property
    def order(self) -> int:
        return self.semigroup.order

    @property
    def structure(self):
        """What the commutator dispatcher should receive."""
        return self.rees if self.rees is not None else self.semigroup

    def to_internal(self, c: Partition) -> Partition:
        if self.raw_map is None:
            return c
        labels = [0] * len(self.raw_map)
        for x, y in enumerate(self.raw_map):
            labels[y] = c.block_id[x]
        return Partition(labels)

    def to_external(self, c: Partition) -> Partition:
        if self.raw_map is None:
            return c
        return Partition(c.block_id[y] for y in self.raw_map)


def parse_group(obj: dict) -> FiniteGroup:
    if "table" in obj:
        return make_group(obj["table"], obj.get("name"))
    name = obj.get("name")
    if name is None:
        raise MalformedTable("group needs either a table or a name")
    if name in ("product", "direct_product"):
        factors = [parse_group(f) for f in obj["factors"]]
        G = factors[0]
        for H in factors[1:]:
            G = direct_product(G, H)
        return G
    return named_group(name, obj.get("param"))


def parse_algebra(obj: dict, *, strict_normalized: bool = False) -> Algebra:
    kind = obj.get("kind")
    if kind == "semigroup":
        S = make_semigroup(obj["table"], obj.get("name"))
        if "order" in obj and obj["order"] != S.order:
            raise ShapeMismatch(f"declared order {obj['order']} but table has {S.order} rows")
        return Algebra("semigroup", S)
    if kind == "group":
        G = parse_group(obj)
        if "order" in obj and obj["order"] != G.order:
            raise ShapeMismatch(f"declared order {obj['order']} but group has {G.order} elements")
        return Algebra("group", G.base, group=G)
    if kind == "rees":
        G = parse_group(obj["group"])
        I, L, P = int(obj["I"]), int(obj["Lambda"]), obj["P"]
        raw_map = None
        bad = first_unnormalized(G, P) if len(P) == L and all(len(r) == I for r in P) else None
        if bad is not None:
            if strict_normalized:
                raise NotNormalized(f"P[{bad[0]}][{bad[1]}] is not the identity", bad)
            warnings.warn("sandwich matrix was not normalized; normalizing", NormalizationWarning)
            P, raw_map = normalize(G, P)
        RS = build_rees(G, I, L, P, obj.get("name"))
        return Algebra("rees", RS.semigroup, group=G, rees=RS, raw_map=raw_map)
    raise MalformedTable(f"unknown algebra kind {kind!r}")


def load_json(path) -> dict:
    return json.loads(Path(path).read_text())


def algebra_to_json(A: Algebra) -> dict:
    if A.kind == "rees":
        RS = A.rees
        return {
            "kind": "rees",
            "group": {"kind": "group", "order": RS.group.order, "table": RS.group.table.tolist(), "name": RS.group.name},
            "I": RS.I_size,
            "Lambda": RS.Lambda_size,
            "P": [list(r) for r in RS.P],
        }
    out = {"kind": A.kind, "order": A.order, "table": A.semigroup.table.tolist()}
    if A.semigroup.name:
        out["name"] = A.semigroup.name
    return out


def semigroup_json(S: FiniteSemigroup) -> dict:
    out = {"kind": "semigroup", "order": S.order, "table": S.table.tolist()}
    if S.name:
        out["name"] = S.name
    return out


# congruences ---------------------------------------------------------------------

NAMED_CONGRUENCES = ("0", "1", "H", "L", "R")


def named_congruence(A: Algebra, name: str) -> Partition:
    n = A.order
    if name == "0":
        return Partition.zero(n)
    if name == "1":
        return Partition.full(n)
    if name in ("H", "L", "R"):
        c = getattr(greens_relations(A.semigroup), name)
        if not is_congruence(A.semigroup, c):
            raise NotACongruence(f"Green's relation {name} is not a congruence here")
        return A.to_external(c)
    raise KeyError(name)


def parse_congruence(obj: dict, A: Algebra, notices: Optional[list] = None) -> Partition:
    """File numbering in, file numbering out; validated against the algebra."""
    n = A.order
    if "blocks" in obj:
        c = Partition.from_blocks(n, obj["blocks"])
        if not is_congruence(A.semigroup, A.to_internal(c)):
            raise NotACongruence("listed blocks do not form a congruence")
        return c
    if "pairs" in obj:
        pairs = [tuple(p) for p in obj["pairs"]]
        internal = [(A.raw_map[a], A.raw_map[b]) if A.raw_map else (a, b) for a, b in pairs]
        c = A.to_external(congruence_from_pairs(A.semigroup, internal))
        if notices is not None:
            notices.append(f"closed {len(pairs)} pairs to a congruence with {c.num_blocks} blocks")
        return c
    raise MalformedTable("congruence JSON needs 'blocks' or 'pairs'")


def congruence_to_json(c: Partition) -> dict:
    return {"blocks": c.blocks()}


# triples -------------------------------------------------------------------------


def triple_to_json(RS: ReesMatrixSemigroup, T: LinkedTriple) -> dict:
    return {
        "I_blocks": T.rho_I.blocks(),
        "G_normal": normal_of_congruence(RS.group, T.rho_G).sorted(),
        "Lambda_blocks": T.rho_Lambda.blocks(),
    }


def parse_triple(obj: dict, RS: ReesMatrixSemigroup) -> LinkedTriple:
    N = as_normal(RS.group, obj["G_normal"])
    return LinkedTriple(
        Partition.from_blocks(RS.I_size, obj["I_blocks"]),
        congruence_of_normal(RS.group, N),
        Partition.from_blocks(RS.Lambda_size, obj["Lambda_blocks"]),
    )


def triple_congruence(obj: dict, RS: ReesMatrixSemigroup) -> Partition:
    return congruence_of_triple(RS, parse_triple(obj, RS))


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def element_list(xs: Sequence[int]) -> list[int]:
    return [int(x) for x in xs]
