"""Command-line front end: catalog, pairing tables, indices and cyclic suites.

Exit codes: 0 every check passed, 1 some check failed, 2 usage or
configuration error, 3 a pairing did not stabilize.
"""
import argparse
import json
import logging
import sys
from fractions import Fraction
from typing import Optional, Sequence

from pydantic import ValidationError

from models.schemas import RunConfig
from services import reports
from services.cyclic import CYCLIC_SUBCOMMANDS, run_suite
from services.errors import NCGError, NonStabilizedError, exit_code_for
from services.fredholm import Parity, catalog, catalog_names, even_pairing, homotopy_check, odd_pairing, verify_module
from services.kclasses import pairing_table, resolve_element
from services.settings import configure_logging

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_NON_STABILIZED = 0, 1, 2, 3


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--window", type=int, default=None, help="Window half-width N (default 32 or NCG_DEFAULT_WINDOW).")
    p.add_argument("--degree", type=int, default=None, help="Highest degree n_max of the even pairing (>= 2).")
    p.add_argument("--backend", choices=("auto", "exact", "float"), default=None, help="Scalar backend override.")
    p.add_argument("--tol", type=float, default=None, help="Float tolerance (default 1e-12).")
    p.add_argument("--bound", type=int, default=None, help="Exponent bound for cyclic verification.")
    p.add_argument("--seed", type=int, default=None, help="Seed of the randomized suites.")
    p.add_argument("--format", choices=reports.FORMATS, default=None, help="Output format.")
    p.add_argument("--out", type=str, default=None, help="Write the output to this file instead of stdout.")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dihedral-ncg",
        description="Exact K-homology pairings and cyclic cohomology for C*(Z⋊Z₂) and C*(Z⋊Z)",
    )
    parser.add_argument("--log-level", default=None, help="Logging level (default NCG_LOG_LEVEL or WARNING).")
    subparsers = parser.add_subparsers(dest="command", required=True)

    p = subparsers.add_parser("catalog", help="List the Fredholm modules.")
    p.add_argument("name", nargs="?", help="Show a single module.")
    _add_config_flags(p)

    p = subparsers.add_parser("table", help="Pairing table of an algebra (A, B or CT).")
    p.add_argument("algebra")
    _add_config_flags(p)

    p = subparsers.add_parser("index", help="Index of the compression E π(u) E for an odd module.")
    p.add_argument("module")
    p.add_argument("unitary")
    _add_config_flags(p)

    p = subparsers.add_parser("pair", help="Pair a module with a named class or a JSON group-ring element.")
    p.add_argument("module")
    p.add_argument("element", help='Name such as P1, U^-1, or JSON like \'{"group": "dihedral", ...}\'.')
    _add_config_flags(p)

    p = subparsers.add_parser("verify", help="Check the Fredholm module axioms.")
    p.add_argument("module")
    _add_config_flags(p)

    p = subparsers.add_parser("homotopy", help="Check the path y_t from i*(d1z1_B) to a degenerate module.")
    p.add_argument("--t-grid", default="0,1/4,1/2,3/4,1", help="Comma-separated rationals in [0, 1].")
    _add_config_flags(p)

    p = subparsers.add_parser("cyclic", help="Cyclic cohomology verification suites.")
    p.add_argument("subcommand", choices=CYCLIC_SUBCOMMANDS)
    p.add_argument("--k", type=int, default=None, help="solve-2: a single k instead of k = 1..8.")
    p.add_argument("--c-k", default="0", help="solve-2: free constant c_k (rational).")
    p.add_argument("--count", type=int, default=None, help="Number of random instances.")
    _add_config_flags(p)
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig.from_settings(
        window=args.window, degree=args.degree, backend=args.backend, tolerance=args.tol,
        bound=args.bound, seed=args.seed, format=args.format,
    )


def cmd_catalog(name: Optional[str], config: RunConfig):
    names = [name] if name else catalog_names()
    modules = [catalog(n).summary() for n in names]
    for m in modules:
        m["pullbacks"] = ",".join(m["pullbacks"])
    return reports.render_records(modules, config.format), EXIT_OK


def cmd_table(algebra: str, config: RunConfig):
    table = pairing_table(algebra, N=config.window, n_max=config.degree, backend=config.backend_override)
    return reports.render_pairing_table(table, config.format), EXIT_OK if table.stabilized else EXIT_FAILED


def _render_pairing(result, config: RunConfig) -> str:
    record = result.to_dict()
    for key in ("degrees", "kernel_dims"):
        if key in record:
            record[key] = " ".join(str(v) for v in record[key])
    return reports.render_records([record], config.format, payload=result.to_dict())


def cmd_index(module: str, unitary: str, config: RunConfig):
    M = catalog(module)
    u = resolve_element(unitary, M.algebra)
    result = odd_pairing(M, u, N=config.window, backend=config.backend_override, tol=config.tolerance, label=unitary)
    return _render_pairing(result, config), EXIT_OK


def cmd_pair(module: str, element: str, config: RunConfig):
    M = catalog(module)
    spec = json.loads(element) if element.lstrip().startswith("{") else element
    a = resolve_element(spec, M.algebra)
    label = element if isinstance(spec, str) else None
    if M.parity == Parity.EVEN:
        result = even_pairing(M, a, n_max=config.degree, N=config.window, backend=config.backend_override,
                              tol=config.tolerance, label=label)
    else:
        result = odd_pairing(M, a, N=config.window, backend=config.backend_override, tol=config.tolerance,
                             label=label)
    return _render_pairing(result, config), EXIT_OK if result.stabilized else EXIT_FAILED


def cmd_verify(module: str, config: RunConfig):
    report = verify_module(catalog(module), N=config.window, tol=config.tolerance, backend=config.backend_override)
    return reports.render_module_report(report, config.format), EXIT_OK if report.passed else EXIT_FAILED


def cmd_homotopy(t_grid: str, config: RunConfig):
    grid = [Fraction(t.strip()) for t in t_grid.split(",") if t.strip()]
    report = homotopy_check(N=config.window, t_grid=grid, tol=config.tolerance)
    return reports.render_module_report(report, config.format), EXIT_OK if report.passed else EXIT_FAILED


def cmd_cyclic(subcommand: str, config: RunConfig, count: Optional[int] = None, k: Optional[int] = None,
               c_k: str = "0", bound_given: bool = True):
    suite = run_suite(subcommand, seed=config.seed, bound=config.bound if bound_given else None,
                      count=count, k=k, c_k=c_k)
    out = reports.render_suite(suite, config.format)
    if subcommand == "duality" and config.format == "text":
        out += "\n\n" + reports.render_matrix(suite.extra["matrix"], ["psi_0'", "psi_1", "psi_2"],
                                             suite.extra["classes"])
    return out, EXIT_OK if suite.passed else EXIT_FAILED


def _dispatch(args: argparse.Namespace, config: RunConfig):
    if args.command == "catalog":
        return cmd_catalog(args.name, config)
    if args.command == "table":
        return cmd_table(args.algebra, config)
    if args.command == "index":
        return cmd_index(args.module, args.unitary, config)
    if args.command == "pair":
        return cmd_pair(args.module, args.element, config)
    if args.command == "verify":
        return cmd_verify(args.module, config)
    if args.command == "homotopy":
        return cmd_homotopy(args.t_grid, config)
    if args.command == "cyclic":
        return cmd_cyclic(args.subcommand, config, count=args.count, k=args.k, c_k=args.c_k,
                          bound_given=args.bound is not None)
    raise ValueError(f"unknown command '{args.command}'")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        configure_logging(args.log_level)
        config = _config(args)
    except ValidationError as e:
        print(f"error: invalid configuration\n{e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"error: invalid configuration: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        out, code = _dispatch(args, config)
    except NonStabilizedError as e:
        print(f"error: {e} (values: {e.values})", file=sys.stderr)
        return exit_code_for(e)
    except (NCGError, ValueError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return exit_code_for(e)

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
        logger.info("wrote %s output to %s", args.command, args.out)
    else:
        print(out)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
