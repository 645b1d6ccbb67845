"""Command-line front end.

Subcommands: construct, classify, schur, search, verify.  Exit codes: 0 on
success, 1 when a verification counterexample turned up, 2 for usage and
config errors.  All output is deterministic for identical inputs, including
--seed and --jobs, so runs can be diffed byte for byte.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .gf import Field, FieldError, parse_field
from .linalg import Matrix
from .codes import (
    LinearCode,
    classification_json,
    classify,
    grs_code,
    grs_consistency_test,
)
from .construction import (
    EvalConfig,
    amds_criterion,
    criteria_class,
    dual_amds_criterion,
    family_code,
    gapped_grs_code,
    gapped_grs_one_column_code,
    grs_three_column_code,
    grs_two_column_code,
    mds_criterion,
    nmds_criterion,
    parity_check_matrix,
)
from .search import (
    BudgetExceededError,
    CODE_CLASSES,
    DEFAULT_BUDGET,
    SearchJob,
    SearchMismatchError,
    records_to_csv,
    records_to_json,
    records_to_text,
    run_search,
)
from .verify import SUITE_NAMES, run_suites


class UsageError(ValueError):
    """Bad flag combination or malformed value; exits with status 2."""


# ---------------------------------------------------------------------------
# shared plumbing
# ---------------------------------------------------------------------------

def _emit(text: str, args) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _require_field(args) -> Field:
    if not args.field:
        raise UsageError("missing --field")
    return parse_field(args.field)


def _element_list(field: Field, text: str, what: str) -> tuple[int, ...]:
    toks = [t.strip() for t in text.split(",")]
    if any(not t for t in toks):
        raise UsageError(f"empty entry in {what}: {text!r}")
    return tuple(field.parse_element(t) for t in toks)


def _config_from_args(args) -> EvalConfig:
    if args.config:
        if args.points:
            raise UsageError("give either --config or --points, not both")
        with open(args.config) as fh:
            return EvalConfig.from_json(json.load(fh))
    field = _require_field(args)
    if not args.points:
        raise UsageError("missing --points (or --config)")
    if args.k is None:
        raise UsageError("missing --k")
    if args.delta is None:
        raise UsageError("missing --delta")
    alphas = _element_list(field, args.points, "--points")
    v = (1,) * len(alphas)
    if getattr(args, "v", None):
        v = _element_list(field, args.v, "--v")
    return EvalConfig(field, alphas, v, args.k, field.parse_element(args.delta))


def _no_csv(args) -> None:
    if args.format == "csv":
        raise UsageError("format csv applies to the search subcommand only")


def _criteria_reports(cfg: EvalConfig) -> dict:
    return {
        "mds": mds_criterion(cfg),
        "amds": amds_criterion(cfg),
        "dual_amds": dual_amds_criterion(cfg),
        "nmds": nmds_criterion(cfg),
    }


def _report_line(name: str, rep) -> str:
    line = f"{name}: {'holds' if rep.holds else 'fails'}"
    if rep.witness is not None:
        line += " witness=" + rep.clause + ":" + "+".join(map(str, rep.witness))
    return line


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_construct(args) -> int:
    _no_csv(args)
    which = args.which
    if args.parity_check and which != "gk":
        raise UsageError("--parity-check only applies to the gk family")
    if which == "gk":
        cfg = _config_from_args(args)
        gen = family_code(cfg).generator
        out = {"generator": gen.format()}
        if args.parity_check:
            out["parity_check"] = parity_check_matrix(cfg).format()
    else:
        if args.config:
            obj = json.loads(Path(args.config).read_text())
            cfg_like = EvalConfig.from_json(obj)
            field, pts, k = cfg_like.field, cfg_like.alphas, cfg_like.k
            delta, v = cfg_like.delta, cfg_like.v
        else:
            field = _require_field(args)
            if not args.points:
                raise UsageError("missing --points (or --config)")
            if args.k is None:
                raise UsageError("missing --k")
            pts = _element_list(field, args.points, "--points")
            k = args.k
            delta = field.parse_element(args.delta) if args.delta is not None else None
            v = (_element_list(field, args.v, "--v")
                 if getattr(args, "v", None) else (1,) * len(pts))
        if which == "g1":
            if delta is None:
                raise UsageError("missing --delta")
            code = grs_two_column_code(field, pts, k, delta)
        elif which == "g2":
            if delta is None:
                raise UsageError("missing --delta")
            if args.tau is None or args.pi is None:
                raise UsageError("g2 needs --tau and --pi")
            code = grs_three_column_code(field, pts, k, delta,
                                         field.parse_element(args.tau),
                                         field.parse_element(args.pi))
        elif which == "g3":
            code = gapped_grs_code(field, pts, k)
        elif which == "g4":
            code = gapped_grs_one_column_code(field, pts, k)
        else:
            code = grs_code(field, pts, v, k)
        out = {"generator": code.generator.format()}
    if args.format == "json":
        _emit(json.dumps(out, indent=2), args)
    elif args.parity_check:
        _emit(f"generator: {out['generator']}\n"
              f"parity_check: {out['parity_check']}", args)
    else:
        _emit(out["generator"], args)
    return 0


def cmd_classify(args) -> int:
    _no_csv(args)
    if args.matrix:
        if args.config or args.points:
            raise UsageError("--matrix excludes --config and --points")
        field = _require_field(args)
        code = LinearCode(Matrix.parse(field, args.matrix))
        cls = classify(code)
        payload = classification_json(code, cls)
        reports = None
    else:
        cfg = _config_from_args(args)
        code = family_code(cfg)
        cls = classify(code)
        payload = classification_json(code, cls)
        reports = _criteria_reports(cfg)
        predicted = criteria_class(cfg)
        payload["criteria_class"] = predicted
        payload["criteria"] = {k: r.to_json() for k, r in reports.items()}
        if predicted != cls.kind:
            print("counterexample: criteria disagree with brute force\n"
                  + json.dumps(cfg.to_json()), file=sys.stderr)
            return 1
    if args.format == "json":
        _emit(json.dumps(payload, indent=2), args)
    else:
        lines = [f"{key}: {payload[key]}" for key in
                 ("length", "dimension", "min_distance", "dual_min_distance",
                  "singleton_defect", "dual_defect", "class")]
        if reports is not None:
            lines.append(f"criteria_class: {payload['criteria_class']}")
            lines += [_report_line(name, rep) for name, rep in reports.items()]
        _emit("\n".join(lines), args)
    return 0


def cmd_schur(args) -> int:
    _no_csv(args)
    if args.matrix:
        if args.config or args.points:
            raise UsageError("--matrix excludes --config and --points")
        field = _require_field(args)
        code = LinearCode(Matrix.parse(field, args.matrix))
    else:
        code = family_code(_config_from_args(args))
    rep = grs_consistency_test(code)
    if args.format == "json":
        _emit(json.dumps(rep.to_json(), indent=2), args)
    else:
        evidence = "none" if rep.evidence is None else rep.evidence
        _emit(f"method: {rep.method}\nevidence: {evidence}\n"
              f"verdict: {rep.verdict}", args)
    return 0


def _parse_k_spec(spec: str, n: int) -> tuple[int, ...]:
    if spec == "all":
        return tuple(range(3, n + 1))
    if "-" in spec:
        lo, _, hi = spec.partition("-")
        try:
            return tuple(range(int(lo), int(hi) + 1))
        except ValueError:
            raise UsageError(f"bad --k range {spec!r}")
    try:
        return (int(spec),)
    except ValueError:
        raise UsageError(f"bad --k value {spec!r}")


def cmd_search(args) -> int:
    field = _require_field(args)
    if args.delta == "all":
        deltas = None
    else:
        deltas = _element_list(field, args.delta, "--delta")
    subsets = None
    if args.points:
        subsets = tuple(_element_list(field, p, "--points") for p in args.points)
    target = None if args.filter == "any" else args.filter
    job = SearchJob(
        field=field, n=args.n, k_values=_parse_k_spec(args.k, args.n),
        deltas=deltas, subsets=subsets, sample=args.sample, seed=args.seed,
        target=target, budget=args.budget, jobs=args.jobs)
    records = run_search(job)
    if args.format == "csv":
        _emit(records_to_csv(records), args)
    elif args.format == "json":
        _emit(records_to_json(records), args)
    else:
        _emit(records_to_text(records), args)
    return 0


def cmd_verify(args) -> int:
    names = SUITE_NAMES if args.suite == "all" else (args.suite,)
    fields = None
    if args.orders:
        fields = tuple(Field.from_order(int(tok))
                       for tok in args.orders.split(","))
    results = run_suites(names, fields=fields, max_n=args.max_n,
                         quick=args.quick)
    failed = [r for r in results if not r.passed]
    if args.format == "json":
        _emit(json.dumps([r.to_json() for r in results], indent=2), args)
    else:
        lines = []
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            lines.append(f"{r.suite}: {status} ({r.checked} checks)")
            if r.counterexample is not None:
                lines.append("counterexample: " + json.dumps(r.counterexample))
        _emit("\n".join(lines), args)
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="field spec, e.g. gf(7) or gf(2^3):1,1,0,1")
    common.add_argument("--format", choices=("text", "json", "csv"),
                        default="text")
    common.add_argument("--out", help="write output to this path instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common.add_argument("--jobs", type=int, default=1)

    src = argparse.ArgumentParser(add_help=False)
    src.add_argument("--config", help="EvalConfig JSON file")
    src.add_argument("--points", help="comma-separated node list, e.g. 0,1,g^2")
    src.add_argument("--v", help="comma-separated column multipliers")
    src.add_argument("--k", type=int)
    src.add_argument("--delta")

    p = argparse.ArgumentParser(
        prog="mdslab",
        description="Build, classify, and search a family of gapped "
                    "evaluation codes over small finite fields.")
    sub = p.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("construct", parents=[common, src],
                        help="print a generator matrix")
    pc.add_argument("--which", choices=("gk", "g1", "g2", "g3", "g4", "grs"),
                    default="gk")
    pc.add_argument("--tau", help="g2 only")
    pc.add_argument("--pi", help="g2 only")
    pc.add_argument("--parity-check", action="store_true",
                    help="also print the parity-check matrix (gk only)")
    pc.set_defaults(func=cmd_construct)

    pl = sub.add_parser("classify", parents=[common, src],
                        help="distances, defects, and class of a code")
    pl.add_argument("--matrix", help="raw generator, rows ';' entries ','")
    pl.set_defaults(func=cmd_classify)

    ps = sub.add_parser("schur", parents=[common, src],
                        help="GRS consistency screen via Schur squares")
    ps.add_argument("--matrix", help="raw generator, rows ';' entries ','")
    ps.set_defaults(func=cmd_schur)

    pr = sub.add_parser("search", parents=[common],
                        help="sweep (A, k, delta) space and report classes")
    pr.add_argument("--n", type=int, required=True)
    pr.add_argument("--k", default="all", help="single value or range a-b")
    pr.add_argument("--delta", default="all", help="'all' or explicit list")
    pr.add_argument("--points", action="append",
                    help="explicit node set; repeatable")
    pr.add_argument("--sample", type=int,
                    help="random node-set sample of this size (seeded)")
    pr.add_argument("--filter", default="any",
                    choices=("any",) + CODE_CLASSES)
    pr.set_defaults(func=cmd_search)

    pv = sub.add_parser("verify", parents=[common],
                        help="run invariant sweeps")
    pv.add_argument("suite", choices=SUITE_NAMES + ("all",))
    pv.add_argument("--quick", action="store_true")
    pv.add_argument("--max-n", type=int, default=None)
    pv.add_argument("--orders", help="field orders for the sweep, e.g. 4,5,7")
    pv.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SearchMismatchError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except BudgetExceededError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (FieldError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
