"""Command-line interface: ``pcurvature <subcommand> --p P [options]``.

Exit codes: 0 on success, 1 when a verification check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from typing import Callable

from pcurvature import settings
from pcurvature.connection import (
    ENTRY_NAMES,
    NormalizedConnection,
    entry_templates,
    pcurvature_matrix,
    symbolic_pcurvature,
)
from pcurvature.curve import Curve, f_theta_p, g_k
from pcurvature.detpsi import (
    det_psi,
    frobenius_power_identity,
    leading_term_certificate,
    nilpotent_locus_count,
    top_degree_cancels,
)
from pcurvature.exceptions import DegenerateInput, PCurvatureError
from pcurvature.hurwitz import closed_form, layer_count, square_sum, total_count
from pcurvature.nc_expand import check_odd_prime, pcurvature_formula
from pcurvature.polyring import render
from pcurvature.prank import prank_report, prank_strata
from pcurvature.solve_count import count
from pcurvature.verify import first_failure, run_suite

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Config:
    """Options shared by every subcommand."""

    p: int
    curve: tuple[int, ...] | None = None
    seed: int = settings.DEFAULT_SEED
    output_format: str = settings.DEFAULT_FORMAT
    nodal: bool = False

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> Config:
        """Build the config from parsed arguments, reducing --curve modulo p.

        Raises:
            NotPrime: If --p is not a prime.
            EvenPrime: If --p is 2.
        """
        p = check_odd_prime(args.p)
        curve = None
        if args.curve is not None:
            curve = tuple(c % p for c in args.curve)
        return cls(p, curve, args.seed, args.format, args.nodal)

    def numeric_curve(self, params=None) -> Curve:
        """The curve given by --curve.

        Args:
            params (Iterable[str], optional): Names of the connection parameters.
                Defaults to u0, u1, u2.

        Returns:
            Curve: The numeric curve over F_p, nodal when --nodal was passed.

        Raises:
            DegenerateInput: If no --curve was given.
            SingularCurve: If g has a repeated root not allowed by --nodal.
        """
        if self.curve is None:
            raise DegenerateInput("this command needs --curve a1,a2,a3,a4,a5")
        if params is None:
            return Curve.numeric(self.p, self.curve, nodal=self.nodal)
        return Curve.numeric(self.p, self.curve, params, nodal=self.nodal)


@dataclass
class Output:
    data: dict | list
    text: str


def _curve_arg(value: str) -> tuple[int, ...]:
    try:
        coefficients = tuple(int(c) for c in value.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a list of integers: {value!r}") from exc
    if len(coefficients) != 5:
        raise argparse.ArgumentTypeError(f"expected five coefficients a1..a5, got {value!r}")
    return coefficients


def _int_list(value: str) -> tuple[int, ...]:
    try:
        return tuple(int(c) for c in value.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a list of integers: {value!r}") from exc


# subcommands -----------------------------------------------------------------------------


def cmd_formula(config: Config, args: argparse.Namespace) -> Output:
    formula = pcurvature_formula(config.p)
    return Output(formula.to_json(args.limit), formula.render(args.limit))


def cmd_ftheta(config: Config, args: argparse.Namespace) -> Output:
    if config.curve is None:
        curve = Curve.symbolic(config.p, params=())
    else:
        curve = config.numeric_curve(params=())
    ftp = render(f_theta_p(curve))
    data = {"p": config.p, "f_theta_p": ftp, "g_p": render(g_k(curve, config.p))}
    return Output(data, ftp)


def cmd_prank(config: Config, args: argparse.Namespace) -> Output:
    """p-rank from the h-vector, with the Hasse-Witt rank alongside."""
    if config.curve is None:
        raise DegenerateInput("prank needs --curve a1,a2,a3,a4,a5")
    report = prank_report(config.p, config.curve).to_json()
    text = f"p-rank {report['prank']} (Hasse-Witt {report['oracle']})"
    return Output(report, text)


def cmd_prank_strata(config: Config, args: argparse.Namespace) -> Output:
    strata = prank_strata(config.p)
    data = {
        name: {"poly": entry["text"], "monic": render(entry["monic"])}
        for name, entry in strata.items()
    }
    text = "\n".join(f"{name}: {entry['text']}" for name, entry in strata.items())
    return Output(data, text)


def cmd_pcmatrix(config: Config, args: argparse.Namespace) -> Output:
    if args.entries:
        templates = entry_templates(config.p)
        data = {name: render(templates[name]) for name in ENTRY_NAMES}
    elif config.curve is None:
        data = symbolic_pcurvature(config.p).to_json()
    else:
        curve = config.numeric_curve()
        conn = NormalizedConnection(curve, args.u)
        data = pcurvature_matrix(conn).to_json()
    text = "\n".join(f"{name} = {value}" for name, value in data.items())
    return Output(data, text)


def cmd_count(config: Config, args: argparse.Namespace) -> Output:
    """Count connections with vanishing p-curvature on the --curve curve."""
    result = count(config.numeric_curve())
    data = result.to_json(total=args.total, solutions=args.solutions)
    text = f"e_{config.p} = {result.distinct}"
    if args.total:
        text += f", total {result.total}"
    return Output(data, text)


def cmd_detpsi(config: Config, args: argparse.Namespace) -> Output:
    if config.curve is None:
        curve = Curve.symbolic(config.p)
        dmap = det_psi(curve)
        conn = NormalizedConnection(curve)
        data = {
            **dmap.to_json(),
            "leading_term_certificate": leading_term_certificate(dmap),
            "top_degree_cancels": top_degree_cancels(conn),
            "frobenius_power_identity": frobenius_power_identity(conn),
        }
    else:
        result = nilpotent_locus_count(config.numeric_curve(), expensive=args.expensive)
        data = {"p": config.p, "curve": list(config.curve), "nilpotent": result.distinct}
    text = "\n".join(f"{key}: {value}" for key, value in data.items())
    return Output(data, text)


def cmd_hurwitz(config: Config, args: argparse.Namespace) -> Output:
    p = config.p
    data = {
        "p": p,
        "total": total_count(p),
        "closed_form": closed_form(p),
        "square_sum": square_sum(p),
        "layer_count": layer_count(p),
    }
    return Output(data, f"{data['total']} = (p^3 - p)/24 = {data['closed_form']}")


COMMANDS: dict[str, Callable[[Config, argparse.Namespace], Output]] = {
    "formula": cmd_formula,
    "ftheta": cmd_ftheta,
    "prank": cmd_prank,
    "prank-strata": cmd_prank_strata,
    "pcmatrix": cmd_pcmatrix,
    "count": cmd_count,
    "detpsi": cmd_detpsi,
    "hurwitz": cmd_hurwitz,
}


def cmd_verify(args: argparse.Namespace) -> int:
    """Run a verification suite and print its report.

    Args:
        args (argparse.Namespace): Parsed arguments with ``suite``, ``seed`` and ``format``.

    Returns:
        int: 0 when every check passed, 1 otherwise.
    """
    report = run_suite(args.suite, args.seed)
    if args.format == "json":
        print(report.to_json(orient="records"))
    else:
        print(report.to_string(index=False))
    failed = first_failure(report)
    if failed is not None:
        print(f"verification failed: {failed}", file=sys.stderr)
        return 1
    return 0


# parser ----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    """Parser with one subcommand per operation, sharing --format, --seed and -v."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("json", "text"),
        default=settings.DEFAULT_FORMAT,
        help=f"Output format (default: {settings.DEFAULT_FORMAT})",
    )
    common.add_argument(
        "--seed",
        type=int,
        default=settings.DEFAULT_SEED,
        help=f"Seed for randomized runs (default: {settings.DEFAULT_SEED})",
    )
    common.add_argument("-v", "--verbose", action="count", default=0)

    curve_opts = argparse.ArgumentParser(add_help=False)
    curve_opts.add_argument("--p", type=int, required=True, help="Odd prime characteristic")
    curve_opts.add_argument(
        "--curve", type=_curve_arg, help="Coefficients a1,a2,a3,a4,a5 of the quintic"
    )
    curve_opts.add_argument(
        "--nodal", action="store_true", help="Accept a quintic with double roots"
    )

    parser = argparse.ArgumentParser(
        prog=settings.PROJECT_NAME,
        description="p-curvature of connections on genus-2 curves",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    parents = [common, curve_opts]

    formula = sub.add_parser("formula", parents=parents, help="Universal p-curvature formula")
    formula.add_argument("--limit", type=int, help="Print only the first LIMIT terms")
    sub.add_parser("ftheta", parents=parents, help="f_theta^p and g_p")
    sub.add_parser("prank", parents=parents, help="p-rank and its Hasse-Witt cross-check")
    sub.add_parser("prank-strata", parents=parents, help="Symbolic p-rank strata")
    pcmatrix = sub.add_parser("pcmatrix", parents=parents, help="p-curvature matrix")
    pcmatrix.add_argument("--u", type=_int_list, help="Values u0,u1,u2 of the connection")
    pcmatrix.add_argument(
        "--entries", action="store_true", help="Entries as polynomials in theta^k f12"
    )
    count_cmd = sub.add_parser("count", parents=parents, help="Connections with psi = 0")
    count_cmd.add_argument("--total", action="store_true", help="Multiply by 16")
    count_cmd.add_argument("--solutions", action="store_true", help="List every solution")
    detpsi = sub.add_parser("detpsi", parents=parents, help="Determinant of the p-curvature")
    detpsi.add_argument(
        "--expensive", action="store_true", help="Allow the nilpotent count at p = 5, 7"
    )
    sub.add_parser("hurwitz", parents=parents, help="Frobenius-unstable bundle count")

    verify = sub.add_parser("verify", parents=[common], help="Run verification suites")
    verify.add_argument("suite", choices=("paper", "properties", "all"), nargs="?", default="all")
    return parser


def configure_logging(verbosity: int):
    """Set the root log level: settings.LOG_LEVEL, INFO for -v, DEBUG for -vv."""
    level = settings.LOG_LEVEL
    if verbosity == 1:
        level = "INFO"
    elif verbosity >= 2:
        level = "DEBUG"
    logging.basicConfig(level=level, format=settings.LOG_FORMAT, stream=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    """Entry point of the pcurvature command.

    Args:
        argv (list[str], optional): Arguments without the program name. Defaults to
            sys.argv.

    Returns:
        int: Exit code, 0 on success, 1 on a failed verification, 2 on invalid input.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    configure_logging(args.verbose)

    if args.command == "verify":
        return cmd_verify(args)

    try:
        config = Config.from_args(args)
        output = COMMANDS[args.command](config, args)
    except PCurvatureError as exc:
        logger.debug("command failed", exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if config.output_format == "json":
        print(json.dumps(output.data, indent=2))
    else:
        print(output.text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
