"""Command-line interface: ``kemeny-stats {corr,test,simulate,bootstrap,oracle}``.

JSON output is an envelope ``{"schema_version", "command", "results", ...}``
whose ``results`` records carry the fixed keys ``method, estimate, statistic,
df, p_value, n, correction_c, variant``.  CSV output writes the records as
rows.  Exit codes: 0 success, 1 usage error, 2 data error, 3 degenerate input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import estimators, inference, oracle, simulation
from .data import Dataset, embedded_sleep, parse_csv, records_to_csv
from .errors import DataError, DegenerateInputError, DimensionError, KemenyError

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_DEGENERATE = 3

RECORD_KEYS = ("method", "estimate", "statistic", "df", "p_value", "n", "correction_c", "variant")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad arguments, which is the data-error code here
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _record(**values) -> dict:
    rec = {k: None for k in RECORD_KEYS}
    rec.update(values)
    return rec


def _variant(flag: str) -> str:
    return flag.replace("-", "_")


def _load(args) -> tuple[Dataset, str, str]:
    if args.csv is not None:
        ds = parse_csv(args.csv)
        names = ds.names
        x = args.x or (names[0] if names else None)
        y = args.y or (names[1] if len(names) > 1 else None)
    else:
        ds = embedded_sleep()
        x, y = args.x or "extra", args.y or "group"
    if x is None:
        raise DataError("input has no columns")
    return ds, x, y


def _need_y(ds: Dataset, y: Optional[str]):
    if y is None:
        raise DataError("a second column is required (--y)")
    return ds[y]


def _cmd_corr(args) -> dict:
    ds, xn, yn = _load(args)
    x, y = ds[xn], _need_y(ds, yn)
    est = estimators.all_estimates(x, y)
    results = [_record(method=m, estimate=e.value, n=e.n) for m, e in est.items()]
    return {
        "results": results,
        "columns": [xn, yn],
        "sin_transform_tau_kappa": estimators.sin_transform(est["tau_kappa"].value),
    }


def _policy(args) -> inference.CorrectionPolicy:
    variant = _variant(args.variant)
    base = inference.EXAMPLE_CONSISTENT if variant == "example_consistent" else inference.EQUATION_LITERAL
    if args.continuity is None:
        return base
    return inference.CorrectionPolicy(variant, apply_continuity=args.continuity)


def _test_record(res: inference.TestResult) -> dict:
    return res.as_dict()


def _cmd_test(args) -> dict:
    ds, xn, yn = _load(args)
    x = ds[xn]
    if args.kind == "two-sample":
        y = _need_y(ds, yn)
        if args.method == "tau":
            res = inference.tau_wald_test(x, y, _policy(args))
        elif args.method == "rho":
            res = inference.rho_t_test(x, y)
        else:
            res = inference.pearson_t_test(x, y)
        columns = [xn, yn]
    else:
        # one-sample: x against a reference column, or the identity ordering 1..n
        mu = ds[args.reference] if args.reference else None
        if args.method == "tau":
            res = inference.one_sample_tau_test(x, mu, _policy(args))
        elif args.method == "rho":
            res = inference.one_sample_rho_test(x, mu)
        else:
            raise UsageError("the pearson test is two-sample only")
        columns = [xn] + ([args.reference] if args.reference else [])
    out = {"results": [_test_record(res)], "columns": columns}
    if res.extras:
        out["details"] = res.extras
    return out


def _cmd_simulate(args) -> dict:
    config = simulation.SimulationConfig(
        n=args.n, replicates=args.replicates, seed=args.seed, dgp=args.dgp,
        test=args.test.replace("-", "_"), policy=_policy(args),
        ks_block=args.ks_block if args.ks_block > 0 else None,
    )
    summary, stream = simulation.run_simulation(config, workers=args.threads, return_stream=True)
    if args.histogram:
        hist = simulation.histogram(stream, bins=args.bins)
        with open(args.histogram, "w", encoding="utf-8") as fh:
            fh.write(records_to_csv(hist, ["bin_left", "bin_right", "count"]))
    return {"results": [summary.as_dict()], "rows": [summary.as_row()]}


def _cmd_bootstrap(args) -> dict:
    ds, xn, yn = _load(args)
    res = simulation.bootstrap_correlations(ds[xn], _need_y(ds, yn), args.replicates, args.seed,
                                            workers=args.threads)
    rows = [r.as_dict() for r in res]
    return {"results": rows, "rows": rows, "columns": [xn, yn], "seed": args.seed}


def _cmd_oracle(args) -> dict:
    dist = oracle.exact_distance_distribution(args.n, allow_large=args.allow_large)
    out = {"results": [dist.as_dict()]}
    rows = [{"n": args.n, "distance": int(d), "mass": float(p), "mass_exact": f"{p.numerator}/{p.denominator}"}
            for d, p in dist.mass.items()]
    if not args.no_variance:
        out["variance_audit"] = oracle.verify_variance_formula(args.n).as_dict()
    if args.axioms:
        out["metric_axioms"] = oracle.verify_metric_axioms(args.n, sampled_triples=args.triples,
                                                           seed=args.seed or 0).as_dict()
    out["rows"] = rows
    return out


def _add_data(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--data", choices=["sleep"], default="sleep",
                     help="embedded dataset (default: sleep)")
    src.add_argument("--csv", metavar="PATH", help="CSV file with a header row")
    p.add_argument("--x", metavar="COL", help="first column (default: extra, or the first CSV column)")
    p.add_argument("--y", metavar="COL", help="second column (default: group, or the second CSV column)")


def _add_policy(p: argparse.ArgumentParser) -> None:
    p.add_argument("--variant", choices=["example-consistent", "equation-literal"],
                   default="example-consistent")
    p.add_argument("--continuity", action=argparse.BooleanOptionalAction, default=None,
                   help="override the variant's continuity-correction default")


def _threads(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("threads must be at least 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--output", metavar="PATH", help="write to a file instead of stdout")

    parser = _Parser(prog="kemeny-stats", description="Kemeny rank correlation toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("corr", parents=[common], help="all five correlation estimators")
    _add_data(p)

    p = sub.add_parser("test", parents=[common], help="one- or two-sample Wald / t tests")
    p.add_argument("kind", choices=["one-sample", "two-sample"])
    p.add_argument("--method", choices=["tau", "rho", "pearson"], default="tau")
    p.add_argument("--reference", metavar="COL", help="one-sample reference column (default 1..n)")
    _add_data(p)
    _add_policy(p)

    p = sub.add_parser("simulate", parents=[common], help="null distribution of a test statistic")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--replicates", type=int, default=5000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--dgp", choices=list(simulation.DGPS), default="uniform_labels")
    p.add_argument("--test", choices=[t.replace("_", "-") for t in simulation.TESTS],
                   default="one-sample-rho")
    p.add_argument("--ks-block", type=int, default=550, help="statistics per KS block (0: one block)")
    p.add_argument("--histogram", metavar="PATH", help="also write a histogram CSV of the statistics")
    p.add_argument("--bins", type=int, default=50)
    p.add_argument("--threads", type=_threads, default=None,
                   help=f"worker processes (default: ${simulation.THREADS_ENV} or 1)")
    _add_policy(p)

    p = sub.add_parser("bootstrap", parents=[common], help="pair bootstrap of all estimators")
    _add_data(p)
    p.add_argument("--replicates", type=int, default=15_500)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--threads", type=_threads, default=None,
                   help=f"worker processes (default: ${simulation.THREADS_ENV} or 1)")

    p = sub.add_parser("oracle", parents=[common], help="exact small-n enumeration reports")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--axioms", action="store_true", help="also check the metric axioms")
    p.add_argument("--triples", type=int, default=0, help="sampled triples for the axiom check")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--no-variance", action="store_true", help="skip the variance-formula audit")
    p.add_argument("--allow-large", action="store_true", help=f"permit n > {oracle.MAX_ENUMERATION_N}")
    return parser


_COMMANDS = {
    "corr": _cmd_corr,
    "test": _cmd_test,
    "simulate": _cmd_simulate,
    "bootstrap": _cmd_bootstrap,
    "oracle": _cmd_oracle,
}


def _render(args, payload: dict) -> str:
    if args.format == "json":
        envelope = {"schema_version": SCHEMA_VERSION, "command": args.command}
        envelope.update({k: v for k, v in payload.items() if k != "rows"})
        return json.dumps(envelope, indent=2) + "\n"
    rows = payload.get("rows", payload["results"])
    return records_to_csv(rows, list(rows[0]) if rows else list(RECORD_KEYS))


def run_cli(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    """Run one command; returns the process exit code."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        text = _render(args, _COMMANDS[args.command](args))
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_USAGE
    except (DataError, DimensionError) as exc:
        print(f"data error: {exc}", file=stderr)
        return EXIT_DATA
    except DegenerateInputError as exc:
        print(f"degenerate input: {exc}", file=stderr)
        return EXIT_DEGENERATE
    except KemenyError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"data error: {exc}", file=stderr)
        return EXIT_DATA
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return EXIT_OK


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
