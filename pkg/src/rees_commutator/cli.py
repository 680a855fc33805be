"""Command-line entry point.  Output is JSON by default, ``--pretty`` for people."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
import warnings
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .commutator import commutator, commutator_triple
from .core import (
    Partition,
    enumerate_congruences,
    greens_relations,
    idempotents,
    is_completely_simple,
    is_regular,
    is_simple,
)
from .errors import AlgebraError, Mismatch
from .io import (
    Algebra,
    NAMED_CONGRUENCES,
    NormalizationWarning,
    congruence_to_json,
    load_json,
    named_congruence,
    parse_algebra,
    parse_congruence,
    parse_triple,
    triple_to_json,
)
from .rees import ReesMatrixSemigroup, rees_decompose
from .series import regular_nilpotency_check, series_for
from .triples import congruence_of_triple, triple_of_congruence
from .verification import BUILTINS, InstanceChecks, builtin, small_suite

EXIT = {"ok": 0, "property_violation": 1, "invalid_input": 2}


@dataclass
class RunReport:
    command: str
    inputs: dict = field(default_factory=dict)
    result: object = None
    timing_ms: float = 0.0
    status: str = "ok"
    notices: list = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT[self.status]


class InvalidInput(Exception):
    pass


def _digest(path: str) -> str:
    return "sha256:" + hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _algebra_from_builtin(name: str) -> Algebra:
    X = builtin(name)
    if isinstance(X, ReesMatrixSemigroup):
        return Algebra("rees", X.semigroup, group=X.group, rees=X)
    return Algebra("semigroup", X)


def _load_algebra(args, report: RunReport) -> Algebra:
    if getattr(args, "builtin", None):
        report.inputs["algebra"] = f"builtin:{args.builtin}"
        return _algebra_from_builtin(args.builtin)
    if not args.file:
        raise InvalidInput("an algebra file or --builtin is required")
    report.inputs["algebra"] = _digest(args.file)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", NormalizationWarning)
        A = parse_algebra(load_json(args.file), strict_normalized=args.strict_normalized)
    report.notices.extend(str(w.message) for w in caught)
    return A


def _load_congruence(arg: str, A: Algebra, report: RunReport, key: str) -> Partition:
    if arg in NAMED_CONGRUENCES:
        report.inputs[key] = f"named:{arg}"
        return named_congruence(A, arg)
    report.inputs[key] = _digest(arg)
    return parse_congruence(load_json(arg), A, report.notices)


def _triple_json(A: Algebra, c: Partition):
    """Triple of an externally numbered congruence, when the algebra is Rees-structured."""
    if A.rees is None:
        return None
    return triple_to_json(A.rees, triple_of_congruence(A.rees, A.to_internal(c), check=False))


# commands ---------------------------------------------------------------------------------


def cmd_classify(args, report: RunReport):
    A = _load_algebra(args, report)
    S = A.semigroup
    g = greens_relations(S)
    cs = is_completely_simple(S)
    out = {
        "order": S.order,
        "regular": bool(is_regular(S)),
        "simple": bool(is_simple(S)),
        "completely_simple": cs,
        "idempotents": len(idempotents(S)),
        "green_classes": {"R": g.R.num_blocks, "L": g.L.num_blocks, "H": g.H.num_blocks},
        "profile": None,
    }
    if A.rees is not None:
        out["profile"] = list(A.rees.profile)
    elif cs:
        out["profile"] = list(rees_decompose(S)[0].profile)
    return out


def _verify_one(label: str, RS: ReesMatrixSemigroup) -> dict:
    chk = InstanceChecks(RS, label)
    props = chk.battery()
    mismatches = props["fast_vs_oracle"]
    return {
        "instance": label,
        "profile": list(RS.profile),
        "congruences": len(chk.congruences),
        "pairs": len(chk.congruences) ** 2,
        "mismatches": len(mismatches),
        "first_mismatch": mismatches[0] if mismatches else None,
        "violations": {k: len(v) for k, v in props.items() if k != "fast_vs_oracle"},
        "passed": not any(props.values()),
    }


def cmd_verify(args, report: RunReport):
    report.inputs["seed"] = args.seed
    if args.suite:
        if args.suite != "small":
            raise InvalidInput(f"unknown suite {args.suite!r}")
        report.inputs["suite"] = args.suite
        instances = [(inst.label, inst.rees) for inst in small_suite()]
    else:
        A = _load_algebra(args, report)
        if A.rees is None:
            if not is_completely_simple(A.semigroup):
                raise InvalidInput("verify needs a completely simple algebra")
            RS = rees_decompose(A.semigroup)[0]
        else:
            RS = A.rees
        instances = [(args.builtin or Path(args.file).name, RS)]
    rows = [_verify_one(label, RS) for label, RS in instances]
    failed = [r["instance"] for r in rows if not r["passed"]]
    if failed:
        report.status = "property_violation"
    return {
        "instances": rows,
        "passed": len(rows) - len(failed),
        "failed": len(failed),
        "first_failure": failed[0] if failed else None,
    }


def cmd_commutator(args, report: RunReport):
    A = _load_algebra(args, report)
    rho = _load_congruence(args.rho, A, report, "rho")
    sigma = _load_congruence(args.sigma, A, report, "sigma")
    try:
        internal = commutator(A.structure, A.to_internal(rho), A.to_internal(sigma), args.method)
    except Mismatch as exc:
        report.status = "property_violation"
        return {
            "method": args.method,
            "fast": congruence_to_json(A.to_external(exc.witness["fast"])),
            "oracle": congruence_to_json(A.to_external(exc.witness["oracle"])),
        }
    out = {"method": args.method, "commutator": congruence_to_json(A.to_external(internal))}
    if A.rees is not None:
        out["triple"] = triple_to_json(A.rees, commutator_triple(A.rees, A.to_internal(rho), A.to_internal(sigma)))
    return out


def cmd_series(args, report: RunReport):
    A = _load_algebra(args, report)
    trace = series_for(A.structure, args.kind, args.method, args.max_k)
    entries = []
    for k, c in enumerate(trace.entries, 1):
        ext = A.to_external(c)
        row = {"k": k, "blocks": ext.blocks()}
        if A.rees is not None:
            row["triple"] = _triple_json(A, ext)
        entries.append(row)
    return {
        "kind": args.kind,
        "series": trace.kind,
        "method": args.method,
        "degree": trace.degree,
        "holds": trace.degree is not None,
        "stabilized": trace.stabilized,
        "entries": entries,
    }


def cmd_check_regular(args, report: RunReport):
    A = _load_algebra(args, report)
    v = regular_nilpotency_check(A.semigroup, args.kind)
    out = asdict(v)
    out["degree_bounds"] = list(v.degree_bounds) if v.degree_bounds else None
    out["profile"] = list(v.profile) if v.profile else None
    return out


def cmd_triple(args, report: RunReport):
    A = _load_algebra(args, report)
    if A.rees is None:
        raise InvalidInput("triple needs a Rees-structured algebra file")
    if args.from_congruence:
        c = _load_congruence(args.from_congruence, A, report, "congruence")
        T = triple_of_congruence(A.rees, A.to_internal(c))
        return {"triple": triple_to_json(A.rees, T), "shape": list(T.shape())}
    if args.from_triple:
        report.inputs["triple"] = _digest(args.from_triple)
        T = parse_triple(load_json(args.from_triple), A.rees)
        return {"congruence": congruence_to_json(A.to_external(congruence_of_triple(A.rees, T)))}
    raise InvalidInput("give --from-congruence or --from-triple")


def cmd_decompose(args, report: RunReport):
    A = _load_algebra(args, report)
    RS, iso = rees_decompose(A.semigroup)
    if A.raw_map is not None:
        iso = tuple(iso[y] for y in A.raw_map)
    return {
        "profile": list(RS.profile),
        "group_table": RS.group.table.tolist(),
        "P": [list(r) for r in RS.P],
        "isomorphism": [int(x) for x in iso],
    }


def cmd_congruences(args, report: RunReport):
    A = _load_algebra(args, report)
    out = []
    for c in enumerate_congruences(A.semigroup):
        ext = A.to_external(c)
        row = {"blocks": ext.blocks()}
        if A.rees is not None:
            row["triple"] = _triple_json(A, ext)
        out.append(row)
    return {"count": len(out), "congruences": out}


# output -----------------------------------------------------------------------------------


def _pretty(report: RunReport) -> str:
    lines = [f"{report.command}: {report.status} ({report.timing_ms:.0f} ms)"]
    for k, v in report.inputs.items():
        lines.append(f"  input {k}: {v}")
    for n in report.notices:
        lines.append(f"  notice: {n}")
    result = report.result
    if report.command == "verify" and isinstance(result, dict) and "instances" in result:
        lines.append(f"  {'instance':<22}{'profile':<14}{'pairs':>7}{'mismatch':>10}  passed")
        for r in result["instances"]:
            prof = "x".join(map(str, r["profile"]))
            lines.append(f"  {r['instance']:<22}{prof:<14}{r['pairs']:>7}{r['mismatches']:>10}  {r['passed']}")
    elif isinstance(result, dict):
        for k, v in result.items():
            if isinstance(v, list) and v and isinstance(v[0], dict):
                lines.append(f"  {k}:")
                lines.extend(f"    {json.dumps(row, sort_keys=True)}" for row in v)
            else:
                lines.append(f"  {k}: {json.dumps(v, sort_keys=True)}")
    else:
        lines.append(f"  {json.dumps(result)}")
    return "\n".join(lines)


def _add_input(p: argparse.ArgumentParser):
    p.add_argument("file", nargs="?", help="algebra JSON file")
    p.add_argument("--builtin", choices=BUILTINS)
    p.add_argument("--strict-normalized", action="store_true", help="reject unnormalized sandwich matrices")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rees-commutator", description="Commutators of finite completely simple semigroups.")
    out = argparse.ArgumentParser(add_help=False)
    fmt = out.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="pretty", action="store_false", default=False, help="machine-readable output (default)")
    fmt.add_argument("--pretty", dest="pretty", action="store_true", help="human-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[out])
    _add_input(p)

    p = sub.add_parser("verify", parents=[out])
    _add_input(p)
    p.add_argument("--suite", help="built-in suite name (small)")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("commutator", parents=[out])
    _add_input(p)
    p.add_argument("--rho", required=True, help="congruence file or one of 0, 1, H, L, R")
    p.add_argument("--sigma", required=True, help="congruence file or one of 0, 1, H, L, R")
    p.add_argument("--method", choices=("auto", "fast", "oracle", "both"), default="auto")

    p = sub.add_parser("series", parents=[out])
    _add_input(p)
    p.add_argument("--kind", choices=("nilpotent", "solvable"), required=True)
    p.add_argument("--method", choices=("auto", "fast", "oracle"), default="auto")
    p.add_argument("--max-k", type=int, default=12)

    p = sub.add_parser("check-regular", parents=[out])
    _add_input(p)
    p.add_argument("--kind", choices=("nilpotent", "solvable"), required=True)

    p = sub.add_parser("triple", parents=[out])
    _add_input(p)
    way = p.add_mutually_exclusive_group(required=True)
    way.add_argument("--from-congruence", metavar="CONG", help="congruence file or one of 0, 1, H, L, R")
    way.add_argument("--from-triple", metavar="FILE")

    p = sub.add_parser("decompose", parents=[out])
    _add_input(p)

    p = sub.add_parser("congruences", parents=[out])
    _add_input(p)
    return parser


COMMANDS = {
    "classify": cmd_classify,
    "verify": cmd_verify,
    "commutator": cmd_commutator,
    "series": cmd_series,
    "check-regular": cmd_check_regular,
    "triple": cmd_triple,
    "decompose": cmd_decompose,
    "congruences": cmd_congruences,
}


def run(args: argparse.Namespace) -> RunReport:
    report = RunReport(args.command)
    start = time.perf_counter()
    try:
        report.result = COMMANDS[args.command](args, report)
    except (AlgebraError, InvalidInput, OSError, ValueError, KeyError) as exc:
        # json.JSONDecodeError is a ValueError
        report.status = "invalid_input"
        report.result = {"error": type(exc).__name__, "message": str(exc)}
        witness = getattr(exc, "witness", None)
        if witness is not None:
            report.result["witness"] = _jsonable(witness)
    report.timing_ms = round((time.perf_counter() - start) * 1000, 3)
    report.result = _jsonable(report.result)
    return report


def _jsonable(obj):
    if isinstance(obj, Partition):
        return obj.blocks()
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_jsonable(v) for v in items]
    if hasattr(obj, "item"):
        return obj.item()
    return obj


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    report = run(args)
    if args.pretty:
        print(_pretty(report))
    else:
        print(json.dumps(asdict(report), sort_keys=True))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
