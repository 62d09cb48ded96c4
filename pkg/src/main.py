"""Command-line entry point: python -m src.main <subcommand> [options].

Every subcommand prints JSON (or plain text for single polynomials) on stdout;
logs go to stderr. Exit codes: 0 on success, 1 on a failed verification or
a computation error, 2 on usage errors.
"""

import argparse
import json
import logging
import sys
from typing import Optional

from src import config
from src.algebra import check_su2, check_su11, fg_table
from src.errors import SpectralModelError
from src.export import ExportConfig, export_samples, sample_frame
from src.genhermite import gh, gh_table
from src.model import ModelParams, describe, sample_grid
from src.numverify import run_suite
from src.painleve4 import make_w, make_w_ratio, piv_residual
from src.ppoly import ode_residual, ppoly, ppoly_sequence, raise_oracle, table_form
from src.tables import write_tables

logger = logging.getLogger(__name__)


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_gh(args) -> int:
    if args.table:
        grid = gh_table(args.pmax, args.qmax)
        _emit([{"p": p, "q": q, "coefficients": poly.to_json()} for (p, q), poly in grid.items()])
        return 0
    poly = gh(args.p, args.q)
    if args.json:
        _emit(poly.to_json())
    elif args.latex:
        print(poly.to_latex())
    else:
        print(poly)
    return 0


def cmd_piv(args) -> int:
    solution = make_w(args.family, args.p, args.q)
    ratio = make_w_ratio(args.family, args.p, args.q)
    payload = {
        "family": args.family,
        "p": args.p,
        "q": args.q,
        "alpha": str(solution.params.alpha),
        "beta": str(solution.params.beta),
        "w": solution.w.to_json(),
        "wRatio": ratio.to_json(),
        "formsAgree": solution.w == ratio,
    }
    if args.check:
        payload["residualZero"] = (
            None if solution.w.is_zero else piv_residual(solution.w, solution.params).is_zero
        )
    _emit(payload)
    return 0 if not args.check or payload["residualZero"] in (True, None) else 1


def cmd_model(args) -> int:
    params = ModelParams(args.p, args.q)
    xs = sample_grid(args.xmin, args.xmax, args.samples)
    _emit(describe(params, args.nmax, xs))
    return 0


def cmd_ppoly(args) -> int:
    rows = []
    ok = True
    for n, poly in enumerate(ppoly_sequence(args.p, args.q, args.j, args.nmax)):
        shown = table_form(poly) if args.table_form else poly
        row = {"n": n, "coefficients": shown.to_json()}
        if args.verify:
            row["odeResidualZero"] = ode_residual(args.p, args.q, args.j, n).is_zero
            row["oracleMatch"] = raise_oracle(args.p, args.q, args.j, n) == ppoly(
                args.p, args.q, args.j, n + 1
            )
            ok = ok and row["odeResidualZero"] and row["oracleMatch"]
        rows.append(row)
    _emit(rows)
    return 0 if ok else 1


def cmd_algebra(args) -> int:
    params = ModelParams(args.p, args.q)
    su2 = check_su2(params)
    su11 = check_su11(params, args.dim)
    _emit(
        {
            "fgTable": fg_table(params, args.dim - 1),
            "su2": su2.to_dict(),
            "su11": su11.to_dict(),
            "casimirs": {"su2": str(su2.casimir), "su11": str(su11.casimir)},
        }
    )
    return 0 if su2.passed and su11.passed else 1


def cmd_verify(args) -> int:
    params = ModelParams(args.p, args.q)
    results = run_suite(params, args.suite, jobs=args.jobs)
    _emit([result.to_dict() for result in results])
    return 0 if all(result.passed for result in results) else 1


def cmd_sample(args) -> int:
    params = ModelParams(args.p, args.q)
    cfg = ExportConfig(xmin=args.xmin, xmax=args.xmax, samples=args.samples, format=args.format)
    if args.out:
        export_samples(params, args.what, args.out, cfg)
    else:
        if cfg.format != "csv":
            logger.error("Parquet output needs --out")
            return 2
        sample_frame(params, args.what, cfg).to_csv(sys.stdout, index=False)
    return 0


def cmd_demo(args) -> int:
    paths = write_tables(args.out)
    _emit([str(path) for path in paths])
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_pq(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--p", type=int, required=True)
    parser.add_argument("--q", type=int, required=True)


def _add_grid(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--xmin", type=float, default=config.SAMPLE_XMIN)
    parser.add_argument("--xmax", type=float, default=config.SAMPLE_XMAX)
    parser.add_argument("--samples", type=int, default=config.SAMPLE_POINTS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="python -m src.main",
        description="Exact and numerical toolkit for third-order shape-invariant models",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gh = sub.add_parser("gh", help="generalized Hermite polynomial H_{p,q}")
    p_gh.add_argument("--p", type=int, default=0)
    p_gh.add_argument("--q", type=int, default=0)
    p_gh.add_argument("--table", action="store_true", help="emit the grid p <= pmax, q <= qmax")
    p_gh.add_argument("--pmax", type=int, default=3)
    p_gh.add_argument("--qmax", type=int, default=4)
    fmt = p_gh.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--latex", action="store_true")
    p_gh.set_defaults(func=cmd_gh)

    p_piv = sub.add_parser("piv", help="rational Painlevé IV solution")
    p_piv.add_argument("--family", type=int, choices=(1, 2, 3), required=True)
    _add_pq(p_piv)
    p_piv.add_argument("--check", action="store_true", help="also certify the PIV residual")
    p_piv.set_defaults(func=cmd_piv)

    p_model = sub.add_parser("model", help="potential, spectrum and norms")
    _add_pq(p_model)
    p_model.add_argument("--nmax", type=int, default=config.VERIFY_NMAX)
    _add_grid(p_model)
    p_model.set_defaults(func=cmd_model)

    p_ppoly = sub.add_parser("ppoly", help="polynomials P_{n;j}")
    _add_pq(p_ppoly)
    p_ppoly.add_argument("--j", type=int, choices=(1, 2), required=True)
    p_ppoly.add_argument("--nmax", type=int, default=config.PPOLY_NMAX)
    p_ppoly.add_argument("--verify", action="store_true")
    p_ppoly.add_argument("--table-form", action="store_true", help="primitive integer form")
    p_ppoly.set_defaults(func=cmd_ppoly)

    p_alg = sub.add_parser("algebra", help="su(2) / su(1,1) checks")
    _add_pq(p_alg)
    p_alg.add_argument("--dim", type=int, default=10)
    p_alg.set_defaults(func=cmd_algebra)

    p_verify = sub.add_parser("verify", help="run the verification suite")
    _add_pq(p_verify)
    p_verify.add_argument("--suite", choices=("exact", "numeric", "all"), default="all")
    p_verify.add_argument("--jobs", type=int, default=config.JOBS)
    p_verify.set_defaults(func=cmd_verify)

    p_sample = sub.add_parser("sample", help="sampled data for plotting")
    _add_pq(p_sample)
    p_sample.add_argument("--what", default="potential", help="potential, weight or state:j,n")
    p_sample.add_argument("--format", choices=("csv", "parquet"), default="csv")
    p_sample.add_argument("--out", default=None)
    _add_grid(p_sample)
    p_sample.set_defaults(func=cmd_sample)

    p_demo = sub.add_parser("demo", help="reproduce the reference tables")
    p_demo.add_argument("target", choices=("tables",))
    p_demo.add_argument("--out", default="tables")
    p_demo.set_defaults(func=cmd_demo)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else config.LOG_LEVEL,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )

    try:
        return args.func(args)
    except SpectralModelError as exc:
        logger.error("%s failed: %s", args.command, exc, exc_info=True)
        return 1
    except ValueError as exc:
        logger.error("Invalid arguments for %s: %s", args.command, exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
