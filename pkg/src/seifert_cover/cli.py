"""Command-line front end.

Every command writes a single JSON document ``{"status": ..., "payload": ...}``
to stdout with sorted keys.  Exit codes: 0 for exists/verified, 1 for
not_exists/failed, 2 for error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .covering_geometry import (
    InvalidCoverSpecError,
    UCPoint,
    branching_data,
    build_cover_spec,
    canonical_rep,
    cover_spec_from_json,
    divisibility_check,
    preimages,
    quotient_map_apply,
    sample_points,
    verify_cover,
)
from .exact_arith import parse_rational
from .torus_homology import (
    InvalidInvariantError,
    SeifertInvariant,
    decide_cover,
    enumerate_sources,
    ratio_condition,
    violated_identity,
)

EXIT_CODES = {"exists": 0, "verified": 0, "not_exists": 1, "failed": 1, "error": 2}


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    status: str
    payload: dict

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def render(self, pretty: bool = False) -> str:
        doc = {"status": self.status, "payload": self.payload}
        if pretty:
            return json.dumps(doc, sort_keys=True, indent=2)
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _error(message: str) -> CommandResult:
    return CommandResult("error", {"message": message})


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _invariant(text: str) -> SeifertInvariant:
    return SeifertInvariant.parse(text)


def _degree(args) -> int:
    if args.degree < 1:
        raise UsageError(f"k must be >= 1, got k={args.degree}")
    return args.degree


def _load_spec(path: str, validate: bool = True):
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read spec file {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"spec file {path} is not valid JSON: {exc}") from None
    return cover_spec_from_json(data, validate=validate)


def _point_arg(args) -> UCPoint:
    try:
        return UCPoint(parse_rational(args.r), parse_rational(args.theta), parse_rational(args.t))
    except ValueError as exc:
        raise UsageError(f"bad point: {exc}") from None


def cmd_decide(args) -> CommandResult:
    inv1, inv2, k = _invariant(args.inv1), _invariant(args.inv2), _degree(args)
    decision = decide_cover(inv1, inv2, k, search_sections=args.search_sections)
    payload = {"decision": decision.to_json(), "search_sections": args.search_sections}
    if not decision.exists:
        payload["violated_identity"] = violated_identity(inv1, inv2, k)
    return CommandResult("exists" if decision.exists else "not_exists", payload)


def cmd_enumerate(args) -> CommandResult:
    inv2, k = _invariant(args.inv2), _degree(args)
    sources = enumerate_sources(inv2, k)
    return CommandResult(
        "exists" if sources else "not_exists",
        {"inv2": inv2.to_json(), "k": k, "sources": [s.to_json() for s in sources]},
    )


def cmd_construct(args) -> CommandResult:
    inv1, inv2, k = _invariant(args.inv1), _invariant(args.inv2), _degree(args)
    if not ratio_condition(inv1, inv2, k):
        return CommandResult("not_exists", {"violated_identity": violated_identity(inv1, inv2, k)})
    spec = build_cover_spec(inv1, inv2, k)
    try:
        Path(args.out).write_text(json.dumps(spec.to_json(), sort_keys=True, indent=2) + "\n",
                                  encoding="utf-8")
    except OSError as exc:
        return _error(f"cannot write {args.out}: {exc.strerror}")
    return CommandResult(
        "exists",
        {
            "spec": spec.to_json(),
            "divisibility_quotient": divisibility_check(spec),
            "branching": branching_data(spec).to_json(),
        },
    )


def cmd_verify(args) -> CommandResult:
    if args.samples < 1:
        raise UsageError(f"--samples must be >= 1, got {args.samples}")
    if args.denominator_bound < 2:
        raise UsageError(f"--denominator-bound must be >= 2, got {args.denominator_bound}")
    spec = _load_spec(args.spec, validate=not args.no_validate)
    samples = sample_points(args.seed, args.samples, args.denominator_bound)
    report = verify_cover(spec, samples)
    return CommandResult("verified" if report.passed else "failed", report.to_json())


def cmd_map_point(args) -> CommandResult:
    spec = _load_spec(args.spec)
    x = canonical_rep(spec.deck1, _point_arg(args))
    y = quotient_map_apply(spec, x)
    return CommandResult("exists", {"source": x.to_json(), "image": y.to_json()})


def cmd_preimages(args) -> CommandResult:
    spec = _load_spec(args.spec)
    y = canonical_rep(spec.deck2, _point_arg(args))
    pts = preimages(spec, y)
    return CommandResult(
        "exists",
        {"target": y.to_json(), "count": len(pts), "preimages": [x.to_json() for x in pts]},
    )


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="indent the JSON output")

    parser = _Parser(
        prog="seifert-cover",
        description="Branched coverings between Seifert fibered solid tori.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func)
        return p

    def degree(p):
        p.add_argument("-k", "--degree", type=int, required=True, help="covering degree k")

    p = add("decide", cmd_decide, "decide whether a k-fold cover inv1 -> inv2 exists")
    p.add_argument("--inv1", required=True, help="source invariant ALPHA,BETA")
    p.add_argument("--inv2", required=True, help="target invariant ALPHA,BETA")
    degree(p)
    p.add_argument("--search-sections", action="store_true",
                   help="allow changing the cross section of the source")

    p = add("enumerate", cmd_enumerate, "list source invariants covering inv2 with degree k")
    p.add_argument("--inv2", required=True)
    degree(p)

    p = add("construct", cmd_construct, "build the covering and write its spec JSON")
    p.add_argument("--inv1", required=True)
    p.add_argument("--inv2", required=True)
    degree(p)
    p.add_argument("-o", "--out", required=True, help="output spec path")

    p = add("verify", cmd_verify, "check a spec's identities on sampled points")
    p.add_argument("spec")
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--denominator-bound", type=int, default=1000)
    p.add_argument("--no-validate", action="store_true",
                   help="skip invariant re-validation on load (negative controls)")

    for name, func, help in (
        ("map-point", cmd_map_point, "image of a source point"),
        ("preimages", cmd_preimages, "all preimages of a target point"),
    ):
        p = add(name, func, help)
        p.add_argument("spec")
        p.add_argument("--r", required=True)
        p.add_argument("--theta", required=True)
        p.add_argument("--t", required=True, help="use --t=-1/2 for negative values")

    return parser


def run(argv=None) -> tuple[CommandResult, bool]:
    pretty = False
    try:
        args = build_parser().parse_args(argv)
        pretty = args.pretty
        result = args.func(args)
    except UsageError as exc:
        result = _error(str(exc))
    except (InvalidInvariantError, InvalidCoverSpecError) as exc:
        result = _error(f"{type(exc).__name__}: {exc}")
    except ValueError as exc:
        result = _error(str(exc))
    return result, pretty


def main(argv=None) -> int:
    result, pretty = run(argv)
    if result.status == "error":
        print(result.payload["message"], file=sys.stderr)
    print(result.render(pretty))
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
