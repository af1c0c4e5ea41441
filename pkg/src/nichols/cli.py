"""The ``nichols`` command line.

Exit codes: 0 success or agreement, 1 usage error, 2 a disagreement or a
failed invariant.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .braiding import DiagonalBraiding, MultiDegree, TwistClass, twist_class
from .classifier import classify_theorem
from .conditions import ConditionLimits, NoTermination, evaluate_conditions
from .cyclo import ConductorCeilingExceeded, ParseError, RootOfUnity
from .harness import DEFAULT_PIPELINE_CONDUCTOR, JobConfig, ReportDocument, literal_sweep, parse_scalar_literal, pipeline_sweep, run_verify
from .pipeline import classify_pipeline
from .root_vectors import RootVectorContext
from .subquotients import (
    DEFAULT_MAX_STEPS,
    DEFAULT_SKEW_CUTOFF,
    DescentFamily,
    SubquotientStep,
    UnrecognizedFamily,
    descent_chain,
    family_braiding,
    subquotient_braiding,
    validate_subquotient,
)
from .tensor import CutoffExceeded, hilbert_report

EXIT_OK, EXIT_USAGE, EXIT_ALARM = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _literal(text: str):
    # parsed after --conductor-ceiling has been applied
    try:
        return parse_scalar_literal(text)
    except (ParseError, ConductorCeilingExceeded) as exc:
        raise UsageError(f"{text!r}: {exc}") from exc


def _degree(text: str) -> MultiDegree:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"degree must look like 2,1: {text!r}") from exc
    if a < 0 or b < 0 or a + b == 0:
        raise argparse.ArgumentTypeError("degree must be nonnegative and nonzero")
    return MultiDegree(a, b)


def _add_braiding_args(p: argparse.ArgumentParser, twist: bool = True) -> None:
    g = p.add_argument_group("braiding (entries use the zN:k / r/s / cycN[...] grammar)")
    g.add_argument("--q11")
    g.add_argument("--q12")
    g.add_argument("--q21")
    g.add_argument("--q22")
    if twist:
        g.add_argument("--q12q21", help="the product q12 q21 instead of --q12/--q21")
    g.add_argument("--braiding", metavar="FILE", help="JSON braiding document")


def _braiding(args) -> DiagonalBraiding:
    if args.braiding:
        try:
            with open(args.braiding) as fh:
                return DiagonalBraiding.from_json(json.load(fh))
        except (OSError, json.JSONDecodeError, ParseError) as exc:
            raise UsageError(f"cannot read braiding document: {exc}") from exc
    if args.q11 is None or args.q22 is None:
        raise UsageError("give --q11 and --q22 (or --braiding)")
    product = getattr(args, "q12q21", None)
    if product is not None:
        if args.q12 is not None or args.q21 is not None:
            raise UsageError("--q12q21 excludes --q12/--q21")
        return TwistClass(_literal(args.q11), _literal(product), _literal(args.q22)).representative()
    if args.q12 is None or args.q21 is None:
        raise UsageError("give --q12 and --q21, or --q12q21")
    return DiagonalBraiding(*(_literal(x) for x in (args.q11, args.q12, args.q21, args.q22)))


def _config(args) -> JobConfig:
    overrides = {
        k: getattr(args, k)
        for k in ("max_degree", "max_index", "max_order", "conductor_ceiling", "workers", "seed")
        if getattr(args, k, None) is not None
    }
    try:
        return JobConfig.from_env(**overrides)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


# --------------------------------------------------------------------------
# commands; each returns (results, alarm)


def cmd_classify(args, config: JobConfig):
    br = _braiding(args)
    tc = twist_class(br)
    theorem = classify_theorem(tc)
    piped = classify_pipeline(br, ConditionLimits(config.max_index))
    agree = theorem.outcome == piped.outcome and theorem.canonical_label == piped.canonical_label
    results = {
        "braiding": br.to_json(),
        "twist_class": tc.to_json(),
        "theorem": theorem.to_json(),
        "pipeline": piped.to_json(),
        "canonical_label": None if theorem.canonical_label is None else str(theorem.canonical_label),
        "agreement": agree,
    }
    return results, not agree


def cmd_conditions(args, config: JobConfig):
    br = _braiding(args)
    report = evaluate_conditions(br, ConditionLimits(config.max_index))
    return {"braiding": br.to_json(), "conditions": report.to_json()}, False


def cmd_dims(args, config: JobConfig):
    br = _braiding(args)
    top = args.max if args.max is not None else config.max_degree
    try:
        report = hilbert_report(br, top, cutoff=config.max_degree)
    except CutoffExceeded as exc:
        raise UsageError(f"{exc}; raise --max-degree") from exc
    doc = report.to_json()
    doc["total_dimension"] = report.total_dimension
    return doc, False


_ELEMENTS = {"z": "z_elem", "u": "u_elem", "w": "w_elem", "z1": "z1_elem", "z2": "z2_elem", "s": "s_elem", "t": "t_elem"}


def _element(ctx: RootVectorContext, spec: str):
    name, _, index = spec.partition(":")
    if name not in _ELEMENTS or not index.isdigit():
        raise UsageError(f"element must be one of {sorted(_ELEMENTS)} followed by :i, got {spec!r}")
    return getattr(ctx, _ELEMENTS[name])(int(index))


def cmd_subquotient(args, config: JobConfig):
    br = _braiding(args)
    step = SubquotientStep(br, (args.d1, args.d2), subquotient_braiding(br, args.d1, args.d2))
    results: dict = {"step": step.to_json()}
    alarm = False
    if args.validate:
        ctx = RootVectorContext(br, config.max_index)
        gens = (_element(ctx, args.validate[0]), _element(ctx, args.validate[1]))
        degrees = tuple(g.multidegree for g in gens)
        if degrees != (args.d1, args.d2):
            raise UsageError(f"validated elements have degrees {degrees}, not {(args.d1, args.d2)}")
        validation = validate_subquotient(ctx, gens, args.cutoff)
        results["validation"] = validation.to_json()
        alarm = not validation.ok
    return results, alarm


def cmd_descent(args, config: JobConfig):
    if args.family:
        if args.q is None:
            raise UsageError("--family needs --q")
        root = RootOfUnity.from_cyclotomic(_literal(args.q))
        if root is None:
            raise UsageError("--q must be a root of unity")
        br = family_braiding(DescentFamily(args.family), root)
    else:
        br = _braiding(args)
    try:
        outcome = descent_chain(br, args.max_steps, args.continue_past_contradictions)
    except UnrecognizedFamily as exc:
        raise UsageError(str(exc)) from exc
    return {"braiding": br.to_json(), "descent": outcome.to_json()}, False


def cmd_enumerate(args, config: JobConfig):
    results: dict = {}
    if not args.skip_literal:
        sweep = literal_sweep(config.max_order, config.workers, keep_records=args.records)
        results["theorem_sweep"] = sweep
    if not args.skip_pipeline:
        results["cross_validation"] = pipeline_sweep(
            args.pipeline_conductor, config.max_index, config.workers, orbits=not args.all_triples
        )
    alarm = bool(results.get("cross_validation", {}).get("disagreement_count"))
    return results, alarm


def cmd_verify(args, config: JobConfig):
    results = run_verify(config.seed, args.samples)
    return results, results["failed"] > 0


COMMANDS = {
    "classify": cmd_classify,
    "conditions": cmd_conditions,
    "dims": cmd_dims,
    "subquotient": cmd_subquotient,
    "descent": cmd_descent,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    c = common.add_argument_group("job configuration")
    c.add_argument("--max-degree", type=int, help="oracle degree cutoff (default 10)")
    c.add_argument("--max-index", type=int, help="root-vector index cap (default 16)")
    c.add_argument("--max-order", type=int, help="largest root order in enumerations (default 30)")
    c.add_argument("--conductor-ceiling", type=int, help="largest conductor for exact arithmetic (default 360)")
    c.add_argument("--workers", type=int, help="worker processes (env NICHOLS_WORKERS overrides)")
    c.add_argument("--seed", type=int, help="seed for sampled checks")
    c.add_argument("--out", metavar="PATH", help="write the JSON report here instead of standard output")

    parser = _Parser(prog="nichols", description="Rank-two Nichols algebras of diagonal type.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", parents=[common], help="both classifiers on one braiding")
    _add_braiding_args(p)
    p = sub.add_parser("conditions", parents=[common], help="the necessary conditions A1-A8")
    _add_braiding_args(p)
    p = sub.add_parser("dims", parents=[common], help="graded dimensions of B(V)")
    _add_braiding_args(p, twist=False)
    p.add_argument("--max", type=int, help="largest total degree (default: --max-degree)")
    p = sub.add_parser("subquotient", parents=[common], help="braiding of a two-dimensional subquotient")
    _add_braiding_args(p, twist=False)
    p.add_argument("--d1", type=_degree, required=True, help="degree of the first generator, e.g. 2,2")
    p.add_argument("--d2", type=_degree, required=True)
    p.add_argument("--validate", nargs=2, metavar="ELEM", help="root vectors to validate, e.g. w:1 z:1")
    p.add_argument("--cutoff", type=int, default=DEFAULT_SKEW_CUTOFF, help="degree bound of the skew-primitivity check")
    p = sub.add_parser("descent", parents=[common], help="follow the subquotient descent")
    _add_braiding_args(p, twist=False)
    p.add_argument("--family", choices=[f.value for f in DescentFamily])
    p.add_argument("--q", help="family parameter (a root of unity)")
    p.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    p.add_argument("--continue-past-contradictions", action="store_true")
    p = sub.add_parser("enumerate", parents=[common], help="sweep roots of unity through both classifiers")
    p.add_argument("--pipeline-conductor", type=int, default=DEFAULT_PIPELINE_CONDUCTOR)
    p.add_argument("--all-triples", action="store_true", help="compare every triple, not one per Galois orbit")
    p.add_argument("--skip-literal", action="store_true")
    p.add_argument("--skip-pipeline", action="store_true")
    p.add_argument("--no-records", dest="records", action="store_false", help="omit per-triple Finite records")
    p = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    p.add_argument("--samples", type=int, default=20)
    return parser


def run(command: str, args, config: JobConfig) -> tuple[ReportDocument, int]:
    config.apply()
    start = time.perf_counter()
    results, alarm = COMMANDS[command](args, config)
    doc = ReportDocument(command, config, results, time.perf_counter() - start, alarm)
    return doc, EXIT_ALARM if alarm else EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config(args)
        doc, code = run(args.command, args, config)
    except UsageError as exc:
        print(f"nichols: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConductorCeilingExceeded, NoTermination, ValueError) as exc:
        print(f"nichols: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = json.dumps(doc.to_json(), indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
