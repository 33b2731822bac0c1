"""Command-line surface: JSON in, JSON/text out, fully seed-deterministic.

Exit codes: 0 success, 1 precondition or input failure, 2 a mathematical
discrepancy (an unclassified stratum, an oracle mismatch, a failed
cross-check).  Code 2 is not a crash: a falsifier of the classification is
the most valuable output the tool can produce, so it is printed in full and
flagged, never swallowed.

Same command, same seed: byte-identical output, on any machine (all
randomness flows from the splitmix64-v1 generator in rng.py).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import acceptance
from .arrangement import arrangement_from_json, arrangement_to_json, random_generic
from .discriminantal import (
    OTHER,
    census_to_json,
    codim2_census,
    construct_dependent,
)
from .gale import (
    concurrent_partition_exists,
    essential_normals_via_gale,
    gale_transform,
    random_concurrent_sextuple,
    random_generic_sextuple,
)
from .monodromy import (
    braid_monodromy,
    braids_to_json,
    nilpotent_relations,
    presentation,
    presentation_to_text,
    random_section,
    singular_points,
)
from .planar import verify_independence

OK, PRECONDITION, DISCREPANCY = 0, 1, 2


def _emit(payload, output: str | None) -> None:
    if isinstance(payload, str):
        text = payload
    else:
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_arrangement(path: str):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SystemExit(f"{path}: {exc}")
    except json.JSONDecodeError as exc:
        raise SystemExit(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}")
    try:
        return arrangement_from_json(doc)
    except ValueError as exc:
        raise SystemExit(f"{path}: {exc}")


def _cmd_gen(args) -> int:
    arr = random_generic(args.n, args.k, seed=args.seed, bound=args.bound or max(args.n, 10))
    _emit(arrangement_to_json(arr), args.output)
    return OK


def _cmd_census(args) -> int:
    arr = _load_arrangement(args.input)
    records = codim2_census(arr)
    _emit(census_to_json(records, arr.k), args.output)
    if any(r.kind == OTHER for r in records):
        bad = [r for r in records if r.kind == OTHER]
        print(f"UNCLASSIFIED codimension-2 strata found: {bad}", file=sys.stderr)
        return DISCREPANCY
    return OK


def _cmd_dependent_construct(args) -> int:
    arr = construct_dependent(args.s, args.t, seed=args.seed)
    _emit(arrangement_to_json(arr), args.output)
    return OK


def _cmd_gale(args) -> int:
    arr = _load_arrangement(args.input)
    try:
        normals = essential_normals_via_gale(arr)
    except AssertionError as exc:
        print(f"gale cross-check failed: {exc}", file=sys.stderr)
        return DISCREPANCY
    _emit(
        {
            "n": arr.n,
            "k": arr.k,
            "verified_proportional": True,
            "normals": [{"K": list(subset), "normal": list(vec)} for subset, vec in normals],
        },
        args.output,
    )
    return OK


def _cmd_gale_invariance(args) -> int:
    disagreements = []
    for i in range(args.trials):
        config = random_concurrent_sextuple(seed=args.seed + i)
        a, _ = concurrent_partition_exists(config)
        b, _ = concurrent_partition_exists(gale_transform(config))
        if a != b or not a:
            disagreements.append({"kind": "positive", "index": i, "direct": a, "gale": b})
    for i in range(args.trials):
        config = random_generic_sextuple(seed=args.seed + i)
        a, _ = concurrent_partition_exists(config)
        b, _ = concurrent_partition_exists(gale_transform(config))
        if a != b or a:
            disagreements.append({"kind": "negative", "index": i, "direct": a, "gale": b})
    _emit(
        {
            "trials_each": args.trials,
            "disagreements": disagreements,
        },
        args.output,
    )
    return DISCREPANCY if disagreements else OK


def _cmd_planar_verify(args) -> int:
    report = verify_independence(
        args.n, args.cap, trials=args.trials, seed=args.seed, jobs=args.jobs
    )
    _emit(report, args.output)
    return DISCREPANCY if report["discrepancies"] else OK


def _frac(x) -> str:
    return f"{x.numerator}/{x.denominator}"


def _cmd_section(args) -> int:
    arr = _load_arrangement(args.input)
    plane, lines = random_section(arr, seed=args.seed)
    points = singular_points(lines)
    _emit(
        {
            "plane": {
                "t_coeffs": [_frac(x) for x in plane.t_coeffs],
                "s_coeffs": [_frac(x) for x in plane.s_coeffs],
                "consts": [_frac(x) for x in plane.consts],
            },
            "lines": [
                {"K": list(l.subset), "u": _frac(l.u), "v": _frac(l.v), "w": _frac(l.w)}
                for l in lines
            ],
            "singular_points": [
                {"s": _frac(p.s), "t": _frac(p.t), "lines": list(p.block)}
                for p in points
            ],
        },
        args.output,
    )
    return OK


def _section_records(args):
    arr = _load_arrangement(args.input)
    _, lines = random_section(arr, seed=args.seed)
    base = min(p.s for p in singular_points(lines)) - 1
    return lines, braid_monodromy(lines, base)


def _cmd_monodromy(args) -> int:
    lines, records = _section_records(args)
    _emit(braids_to_json(records, len(lines)), args.output)
    return OK


def _cmd_presentation(args) -> int:
    lines, records = _section_records(args)
    pres = presentation(records, len(lines), reduce_relators=args.reduce)
    _emit(presentation_to_text(pres), args.output)
    return OK


def _cmd_relations(args) -> int:
    arr = _load_arrangement(args.input)
    try:
        families = nilpotent_relations(arr)
    except AssertionError as exc:
        print(f"census cross-check failed: {exc}", file=sys.stderr)
        return DISCREPANCY
    _emit(
        {
            "full_sets": [
                {"J": list(j), "K": list(k)} for j, k in families.full_sets
            ],
            "dependents": [
                {"J": list(j), "triple": [list(m) for m in triple]}
                for j, triple in families.dependents
            ],
            "commuting": [
                {"J": list(j), "K": list(k)} for j, k in families.commuting
            ],
            "counts": {
                "full_sets": len(families.full_sets),
                "dependents": len(families.dependents),
                "commuting": len(families.commuting),
            },
        },
        args.output,
    )
    return OK


def _cmd_accept(args) -> int:
    results = acceptance.run_all()
    rows = []
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"{status}  {res.name:22s} {res.elapsed:7.2f}s / {res.budget:5.0f}s  {res.detail}")
        rows.append(
            {
                "name": res.name,
                "passed": res.passed,
                "elapsed_s": round(res.elapsed, 3),
                "budget_s": res.budget,
                "detail": res.detail,
            }
        )
    if args.output:
        _emit({"results": rows}, args.output)
    return OK if all(r.passed for r in results) else DISCREPANCY


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="discarr",
        description="Exact toolkit for discriminantal arrangements of generic traces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--output", metavar="FILE")
        p.add_argument("--jobs", type=int, default=1)
        return p

    p = add("gen", _cmd_gen, help="sample a trace-generic arrangement")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--bound", type=int)

    p = add("census", _cmd_census, help="codimension-2 stratum census")
    p.add_argument("--input", required=True, metavar="FILE")

    p = add("dependent-construct", _cmd_dependent_construct,
            help="build an arrangement with a dependent triple")
    p.add_argument("--s", type=int, required=True, help="group size (>= 2)")
    p.add_argument("--t", type=int, default=0, help="shared hyperplane count (>= 0)")

    p = add("gale", _cmd_gale, help="essential normals via the Gale transform")
    p.add_argument("--input", required=True, metavar="FILE")

    p = add("gale-invariance", _cmd_gale_invariance,
            help="concurrent-partition invariance under Gale transform")
    p.add_argument("--trials", type=int, default=20)

    p = add("planar-verify", _cmd_planar_verify,
            help="k=2 rank oracle vs combinatorial dimension formula")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cap", type=int, default=4)
    p.add_argument("--trials", type=int, default=5)

    p = add("section", _cmd_section, help="generic plane section: lines and singular points")
    p.add_argument("--input", required=True, metavar="FILE")

    p = add("monodromy", _cmd_monodromy, help="braid monodromy of a generic section")
    p.add_argument("--input", required=True, metavar="FILE")

    p = add("presentation", _cmd_presentation, help="fundamental group presentation")
    p.add_argument("--input", required=True, metavar="FILE")
    p.add_argument("--reduce", action="store_true",
                   help="drop the dependent relator of each singular point")

    p = add("relations", _cmd_relations, help="nilpotent completion relation families")
    p.add_argument("--input", required=True, metavar="FILE")

    add("accept", _cmd_accept, help="run the acceptance suite")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
