"""Batch front end: run one job per invocation, emit a deterministic report.

A job is a JSON document naming a command plus its inputs; fixtures can
stand in for a job file.  Exit codes encode classification verdicts for
scripting: 0 for an affine quotient (or plain success), 10 for strictly
quasi-affine, 20 for not everywhere stable, 30 for unknown, 1 for any
input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Dict, List, Optional, Sequence, Tuple

from .classify import (
    Bounds,
    FamilyMember,
    Verdict,
    classify,
    compare_family,
)
from .derivations import (
    GraphPresentation,
    graded_kernel_generators,
    restrict_to_graph,
    slice_search,
)
from .errors import GaquotError, JobError
from .expr import parse
from .fixtures import (
    NAMED_FIXTURES,
    all_named_fixtures,
    fixture,
    job_for,
    verify_winkelmann_relation,
)
from .reps import RepSpec, build_derivation, spec_from_blocks
from .transfer import extend

SCHEMA = "gaquot-report/1"

COMMANDS = ("classify", "invariants", "transfer", "slice", "family-compare", "selftest")

_EXIT_BY_VERDICT = {
    Verdict.AFFINE: 0,
    Verdict.STRICTLY_QUASI_AFFINE: 10,
    Verdict.NOT_EVERYWHERE_STABLE: 20,
    Verdict.UNKNOWN: 30,
}


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise JobError(message)


def _spec_from_job(job: Dict) -> RepSpec:
    _require("representation" in job, "job is missing 'representation'")
    return spec_from_blocks(job["representation"])


def _graph_from_job(data: Dict) -> GraphPresentation:
    for key in ("zvars", "free", "dependent"):
        _require(key in data, f"graph is missing {key!r}")
    zvars = tuple(data["zvars"])
    dependent = {name: parse(text, zvars) for name, text in data["dependent"].items()}
    return GraphPresentation(zvars=zvars, free=dict(data["free"]), dependent=dependent)


def _bounds_from(job: Dict, args: argparse.Namespace) -> Bounds:
    raw = dict(job.get("bounds") or {})
    kmax = args.kmax if args.kmax is not None else int(raw.get("kmax", 3))
    slice_degree = (
        args.slice_deg if args.slice_deg is not None else int(raw.get("sliceDeg", 3))
    )
    invariant_degree = (
        args.inv_deg if args.inv_deg is not None else int(raw.get("invariantDeg", 2))
    )
    return Bounds(kmax=kmax, slice_degree=slice_degree, invariant_degree=invariant_degree)


# ----------------------------------------------------------------------
# command handlers: each returns (payload, text lines, exit code)

Handled = Tuple[Dict, List[str], int]


def _run_classify(job: Dict, bounds: Bounds) -> Handled:
    spec = _spec_from_job(job)
    f = parse(job["polynomial"], spec.coord_names) if "polynomial" in job else None
    graph = _graph_from_job(job["graph"]) if "graph" in job else None
    report = classify(spec, f, graph, bounds)
    payload = report.to_dict()
    lines = [f"verdict: {payload['verdict']}"]
    bounds_echo = payload["bounds"]
    lines.append(
        "bounds: kmax={kmax} sliceDeg={sliceDeg} invariantDeg={invariantDeg}".format(
            **bounds_echo
        )
    )
    if "certificate" in payload:
        status = "certified" if payload["certificate"]["certified"] else "not certified"
        lines.append(
            f"certificate restriction: {payload['certificate']['restriction']} ({status})"
        )
    if "transfer" in payload:
        lines.append(f"boundary class: {payload['transfer']['boundary']}")
        lines.append(f"F00: {payload['transfer']['f00']}")
        lines.append(f"boundary part: {payload['transfer']['boundaryPart']}")
    if "slice" in payload:
        found = payload["slice"]["found"]
        bound = payload["slice"]["degreeBound"]
        lines.append(
            f"slice: {found}" if found is not None else f"slice: none up to degree {bound}"
        )
    if "witness" in payload:
        subspace = ", ".join(f"{name} = 0" for name in payload["witness"]["subspace"])
        point = ", ".join(
            f"{name}={value}" for name, value in sorted(payload["witness"]["point"].items())
        )
        lines.append(f"unstable witness subspace: {subspace}")
        lines.append(f"unstable witness point: {point}")
    if "smoothness" in payload:
        lines.append(f"boundary polynomial smoothness: {payload['smoothness']['outcome']}")
    for name, ok in payload["crosschecks"]:
        lines.append(f"crosscheck {name}: {'pass' if ok else 'fail'}")
    for note in payload["notes"]:
        lines.append(f"note: {note}")
    return payload, lines, _EXIT_BY_VERDICT[report.verdict]


def _run_invariants(job: Dict, bounds: Bounds) -> Handled:
    spec = _spec_from_job(job)
    generators = graded_kernel_generators(
        build_derivation(spec), bounds.invariant_degree
    )
    payload = {
        "bounds": bounds.as_dict(),
        "generators": [str(g) for g in generators],
    }
    lines = [f"kernel generators up to degree {bounds.invariant_degree}:"]
    lines.extend(f"  {g}" for g in payload["generators"])
    return payload, lines, 0


def _run_transfer(job: Dict, bounds: Bounds) -> Handled:
    spec = _spec_from_job(job)
    _require("polynomial" in job, "transfer needs 'polynomial'")
    f = parse(job["polynomial"], spec.coord_names)
    result = extend(spec, f)
    payload = {
        "bounds": bounds.as_dict(),
        "extension": str(result.extension),
        "f00": str(result.f00),
        "boundaryPart": str(result.boundary_part),
        "boundary": result.boundary.value,
    }
    lines = [
        f"extension: {payload['extension']}",
        f"F00: {payload['f00']}",
        f"boundary part: {payload['boundaryPart']}",
        f"boundary class: {payload['boundary']}",
    ]
    return payload, lines, 0


def _run_slice(job: Dict, bounds: Bounds) -> Handled:
    spec = _spec_from_job(job)
    derivation = build_derivation(spec)
    if "graph" in job:
        derivation = restrict_to_graph(derivation, _graph_from_job(job["graph"]))
    result = slice_search(derivation, bounds.slice_degree)
    payload = {
        "bounds": bounds.as_dict(),
        "found": None if result.found is None else str(result.found),
        "degreeBound": result.degree_bound,
    }
    lines = [
        f"slice: {payload['found']}"
        if payload["found"] is not None
        else f"slice: none up to degree {result.degree_bound}"
    ]
    return payload, lines, 0


def _run_family_compare(job: Dict, bounds: Bounds) -> Handled:
    spec = _spec_from_job(job)
    _require("delta" in job, "family comparison needs 'delta' (a catalog label)")
    _require(
        isinstance(job.get("parameters"), list) and len(job["parameters"]) == 2,
        "family comparison needs 'parameters': a list of two expressions in t",
    )
    members = [
        FamilyMember(spec, parse(text, ("t",)), job["delta"])
        for text in job["parameters"]
    ]
    comparison = compare_family(members[0], members[1])
    payload = {
        "bounds": bounds.as_dict(),
        "outcome": comparison.outcome.value,
        "counts": list(comparison.counts),
    }
    lines = [
        f"outcome: {payload['outcome']}",
        f"boundary component counts: {comparison.counts[0]} vs {comparison.counts[1]}",
    ]
    return payload, lines, 0


def _run_selftest(job: Dict, bounds: Bounds) -> Handled:
    checks: List[Tuple[str, bool]] = []
    for fx in all_named_fixtures():
        report = classify(fx.spec, fx.f, fx.graph, bounds)
        checks.append((f"{fx.name}: verdict {fx.expected_verdict.value}",
                       report.verdict is fx.expected_verdict))
        if fx.expected_witness_subspace:
            checks.append(
                (
                    f"{fx.name}: witness subspace {' = '.join(fx.expected_witness_subspace)} = 0",
                    report.witness is not None
                    and report.witness.subspace == fx.expected_witness_subspace,
                )
            )
        if report.crosschecks:
            checks.append(
                (f"{fx.name}: all crosschecks", all(ok for _, ok in report.crosschecks))
            )
    checks.append(("quadric relation reduces to zero", verify_winkelmann_relation().is_zero))
    control = verify_winkelmann_relation(
        parse("x1*x4 - x2*x3 - x5*(x5 + 2)", ("x1", "x2", "x3", "x4", "x5"))
    )
    checks.append(("perturbed quadric relation is non-zero", not control.is_zero))
    spec = fixture("winkelmann").spec
    comparison = compare_family(
        FamilyMember(spec, parse("t", ("t",)), "minor[1,2]"),
        FamilyMember(spec, parse("t^2 - 1", ("t",)), "minor[1,2]"),
    )
    checks.append(("family counts distinguish t from t^2 - 1", comparison.counts == (1, 2)))
    passed = all(ok for _, ok in checks)
    payload = {
        "bounds": bounds.as_dict(),
        "checks": [[name, ok] for name, ok in checks],
        "passed": passed,
    }
    lines = [f"{'PASS' if ok else 'FAIL'}  {name}" for name, ok in checks]
    lines.append(f"selftest: {'pass' if passed else 'FAIL'}")
    return payload, lines, 0 if passed else 1


_HANDLERS = {
    "classify": _run_classify,
    "invariants": _run_invariants,
    "transfer": _run_transfer,
    "slice": _run_slice,
    "family-compare": _run_family_compare,
    "selftest": _run_selftest,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaquot",
        description="Exact classification of additive-group quotients of invariant hypersurfaces.",
    )
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--job", metavar="FILE", help="path to a JSON job document")
    source.add_argument(
        "--fixture",
        metavar="NAME",
        help=f"run a packaged example ({', '.join(NAMED_FIXTURES)}, family-phi(<expr>))",
    )
    parser.add_argument("--kmax", type=int, default=None, help="power bound for image membership")
    parser.add_argument("--slice-deg", type=int, default=None, help="degree bound for slice search")
    parser.add_argument("--inv-deg", type=int, default=None, help="degree bound for kernel generators")
    parser.add_argument(
        "--format", choices=("text", "structured"), default=None, help="report format"
    )
    parser.add_argument(
        "--command",
        choices=COMMANDS,
        default=None,
        help="override the job command (fixtures default to classify)",
    )
    parser.add_argument(
        "--export-job",
        action="store_true",
        help="print the fixture as a job document instead of running it",
    )
    return parser


def _load_job(args: argparse.Namespace) -> Dict:
    if args.job is not None:
        with open(args.job, "r", encoding="utf-8") as handle:
            job = json.load(handle)
        _require(isinstance(job, dict), "job document must be a JSON object")
        return job
    if args.fixture is not None:
        fx = fixture(args.fixture)
        job = job_for(fx)
        job["citations"] = list(fx.citations)
        return job
    _require(args.command == "selftest", "need --job or --fixture (or --command selftest)")
    return {"command": "selftest"}


def run(job: Dict, bounds: Bounds) -> Handled:
    """Dispatch one job; the payload is the structured report body."""
    command = job.get("command", "classify")
    _require(command in _HANDLERS, f"unknown command {command!r}; known: {', '.join(COMMANDS)}")
    payload, lines, code = _HANDLERS[command](job, bounds)
    payload["schema"] = SCHEMA
    payload["command"] = command
    if "citations" in job:
        payload["citations"] = list(job["citations"])
        lines.extend(f"citation: {text}" for text in job["citations"])
    return payload, lines, code


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        job = _load_job(args)
        if args.command is not None:
            job["command"] = args.command
        if args.export_job:
            print(json.dumps(job, indent=2, sort_keys=True))
            return 0
        bounds = _bounds_from(job, args)
        payload, lines, code = run(job, bounds)
    except (GaquotError, ValueError, KeyError, OSError, json.JSONDecodeError) as error:
        print(f"error: {error}", file=sys.stderr)
        return 1
    output = args.format if args.format is not None else job.get("output", "text")
    if output == "structured":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
