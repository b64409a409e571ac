"""
Command handlers for the tropical command line tool.

Each subcommand has one handle_*_command function taking the parsed
arguments and returning an exit code: 0 on success or agreement, 1 for a
rejected witness, 2 when a proven statement fails on the input. Parse
and usage errors are raised and mapped to exit code 1 in src.app.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import BaseModel

from src.models.schemas import SCHEMAS, CampaignMode, EngineName, SolveReport
from src.services.campaign import CampaignConfig, run_campaign
from src.services.files import dump_matrix, load_matrix, load_system, load_witness
from src.services.plotting import render_svg
from src.services.reports import (
    diagrams_report,
    feasibility_report,
    probe_report_model,
    roots_report,
    theorem_report_model,
    witness_check_report,
)
from src.tropical.bivariate import bivariate_solve, conjecture_probe
from src.tropical.cayley import build_cayley
from src.tropical.errors import UnsupportedDimensionError, WitnessViolationError
from src.tropical.newton import univariate_common_root
from src.tropical.nullstellensatz import build_diagrams, intersect_E, proof_invariant_report, theorem1_verify
from src.tropical.polynomial import TropPoly, system_degree
from src.tropical.semiring import format_value
from src.tropical.solver import Engine, decide, verify_witness
from src.utils.config import settings
from src.utils.metrics import Timer

logger = logging.getLogger(__name__)

# refutation trees above this many nodes are left out of linfeas reports
MAX_REPORTED_TREE = 200


def register_command_handlers(subparsers) -> None:
    """
    Register every subcommand with the argument parser.

    Args:
        subparsers: The object returned by ArgumentParser.add_subparsers()
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--timing", action="store_true", help="include wall time in the report")
    common.add_argument("--log-level", help="override LOG_LEVEL")

    engine = argparse.ArgumentParser(add_help=False)
    engine.add_argument(
        "--engine",
        choices=[e.value for e in EngineName],
        default=settings.SOLVER_ENGINE,
        help="feasibility engine (default: %(default)s)",
    )

    shift = argparse.ArgumentParser(add_help=False)
    shift.add_argument("--n-shift", type=int, help="truncation order N (default: 4 times the system degree)")

    p = subparsers.add_parser("roots", parents=[common], help="tropical roots of univariate polynomials")
    p.add_argument("file", help="system JSON file")
    p.set_defaults(handler=handle_roots_command)

    p = subparsers.add_parser("theorem", parents=[common, engine],
                              help="compare common roots with Cayley feasibility")
    p.add_argument("file", help="univariate system JSON file")
    p.set_defaults(handler=handle_theorem_command)

    p = subparsers.add_parser("campaign", parents=[common, engine], help="seeded randomized campaign")
    p.add_argument("--mode", choices=[m.value for m in CampaignMode], default=CampaignMode.UNIVARIATE.value)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--max-s", type=int, default=4, help="polynomials per system")
    p.add_argument("--max-deg", type=int, default=5, help="largest exponent")
    p.add_argument("--coeff-range", type=int, default=5, help="coefficients lie in [-c, c]")
    p.add_argument("--n-max", type=int, default=settings.PROBE_N_MAX, help="largest N probed (bivariate)")
    p.add_argument("--samples", type=int, default=settings.BRUTE_FORCE_SAMPLES,
                   help="random points for the sampler cross-check (bivariate)")
    p.add_argument("--workers", type=int, default=settings.CAMPAIGN_WORKERS)
    p.set_defaults(handler=handle_campaign_command)

    p = subparsers.add_parser("plot", parents=[common, shift], help="draw Newton polygons and extremal diagrams")
    p.add_argument("file", help="univariate system JSON file")
    p.add_argument("--witness", help="witness JSON file for C_N")
    p.add_argument("--format", choices=["svg", "json"], default="svg")
    p.set_defaults(handler=handle_plot_command)

    p = subparsers.add_parser("cayley", parents=[common, shift], help="build the truncated Cayley matrix")
    p.add_argument("file", help="system JSON file")
    p.set_defaults(handler=handle_cayley_command)

    p = subparsers.add_parser("linfeas", parents=[common, engine, shift],
                              help="decide a tropical linear system or check a witness")
    p.add_argument("file", help="matrix JSON file (system file with --from-system)")
    p.add_argument("--from-system", action="store_true", help="read a system and use its Cayley matrix")
    p.add_argument("--witness", help="verify this witness instead of deciding")
    p.set_defaults(handler=handle_linfeas_command)

    p = subparsers.add_parser("solve", parents=[common], help="find a common tropical zero (n = 1 or 2)")
    p.add_argument("file", help="system JSON file")
    p.set_defaults(handler=handle_solve_command)

    p = subparsers.add_parser("probe", parents=[common, engine],
                              help="per-N Cayley feasibility of a bivariate system")
    p.add_argument("file", help="bivariate system JSON file")
    p.add_argument("--n-max", type=int, default=settings.PROBE_N_MAX)
    p.set_defaults(handler=handle_probe_command)

    p = subparsers.add_parser("schema", parents=[common], help="print the JSON schema of a file or report")
    p.add_argument("name", choices=sorted(SCHEMAS))
    p.set_defaults(handler=handle_schema_command)

    logger.debug("Command handlers registered")


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
        logger.info(f"Wrote {out}")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_model(model: BaseModel, out: Optional[str]) -> None:
    _emit(model.model_dump_json(indent=2), out)


def _truncation(system: Sequence[TropPoly], n_shift: Optional[int]) -> int:
    if n_shift is None:
        return 4 * system_degree(system)
    if n_shift < 0:
        raise ValueError("--n-shift must be nonnegative")
    return n_shift


def handle_roots_command(args) -> int:
    """Print the root multiset of every polynomial and their least common root."""
    system = load_system(args.file)
    if system[0].n != 1:
        raise UnsupportedDimensionError(f"roots needs univariate polynomials, got n={system[0].n}")
    _emit_model(roots_report(system), args.out)
    return 0


def handle_theorem_command(args) -> int:
    """
    Compare direct solvability with feasibility of C_N, N = 4·Σ trdeg.

    When the engine returns a witness the proof checks run on it too.
    Disagreement, a failed round trip or a strict proof check violation
    exits with 2.
    """
    system = load_system(args.file)
    with Timer("theorem", logger) as timer:
        report = theorem1_verify(system, Engine(args.engine), settings.LIFT_BUDGET_FACTOR)
        proof = None
        if report.witness is not None:
            proof = proof_invariant_report(system, report.witness, report.N)
    model = theorem_report_model(report, proof)
    if args.timing:
        model.seconds = round(timer.elapsed, 3)
    _emit_model(model, args.out)

    if not report.ok or (proof is not None and not proof.ok):
        logger.error(
            "Theorem check failed",
            extra={"agree": report.agree, "failures": report.failures},
        )
        return 2
    return 0


def handle_campaign_command(args) -> int:
    """Run a seeded campaign; any disagreement or strict violation exits with 2."""
    if args.count < 0 or args.max_s < 1 or args.max_deg < 1 or args.coeff_range < 0:
        raise ValueError("--count and --coeff-range must be nonnegative, --max-s and --max-deg positive")
    if args.workers < 1:
        raise ValueError("--workers must be positive")
    config = CampaignConfig(
        seed=args.seed,
        count=args.count,
        max_s=args.max_s,
        max_deg=args.max_deg,
        coeff_range=args.coeff_range,
        mode=CampaignMode(args.mode),
        engine=EngineName(args.engine),
        n_max=args.n_max,
        budget_factor=settings.LIFT_BUDGET_FACTOR,
        probe_samples=args.samples,
    )
    with Timer("campaign", logger) as timer:
        report = run_campaign(config, workers=args.workers)
    if args.timing:
        report.seconds = round(timer.elapsed, 3)
    _emit_model(report, args.out)
    return 0 if report.ok else 2


def handle_plot_command(args) -> int:
    """
    Draw the system, and with a witness its extremal diagrams and envelope.

    A witness that is not a tropical zero of C_N is rejected with the
    violated rows.
    """
    system = load_system(args.file)
    if system[0].n != 1:
        raise UnsupportedDimensionError(f"plot needs univariate polynomials, got n={system[0].n}")
    N = _truncation(system, args.n_shift)

    diagrams = None
    envelope = None
    if args.witness:
        C = build_cayley(system, N)
        y = load_witness(args.witness, C)
        check = verify_witness(C, y)
        if not check.ok:
            raise WitnessViolationError([row.row for row in check.violated])
        diagrams = build_diagrams(system, y, N, strict=False)
        try:
            envelope = intersect_E(diagrams)
        except ValueError as exc:
            logger.warning(f"No envelope drawn: {exc}")

    if args.format == "json":
        if diagrams is None:
            raise ValueError("--format json needs --witness")
        _emit_model(diagrams_report(N, diagrams, envelope), args.out)
    else:
        _emit(render_svg(system, diagrams, envelope), args.out)
    return 0


def handle_cayley_command(args) -> int:
    """Print C_N as a matrix file."""
    system = load_system(args.file)
    C = build_cayley(system, _truncation(system, args.n_shift))
    _emit_model(dump_matrix(C), args.out)
    return 0


def handle_linfeas_command(args) -> int:
    """
    Decide a tropical linear system, or check a witness for it.

    A rejected witness exits with 1.
    """
    if args.from_system:
        system = load_system(args.file)
        C = build_cayley(system, _truncation(system, args.n_shift)).to_raw()
    else:
        C = load_matrix(args.file)

    if args.witness:
        check = verify_witness(C, load_witness(args.witness, C))
        _emit_model(witness_check_report(check), args.out)
        return 0 if check.ok else 1

    with Timer("linfeas", logger) as timer:
        result = decide(C, Engine(args.engine), settings.LIFT_BUDGET_FACTOR)
    small = result.refutation is not None and result.refutation.nodes_explored <= MAX_REPORTED_TREE
    model = feasibility_report(C, result, include_tree=small)
    if args.timing:
        model.seconds = round(timer.elapsed, 3)
    _emit_model(model, args.out)
    return 0


def handle_solve_command(args) -> int:
    """Find a common tropical zero of a system with one or two variables."""
    system = load_system(args.file)
    n = system[0].n
    if n == 1:
        root = univariate_common_root(system)
        zero = None if root is None else [root]
    elif n == 2:
        zero = bivariate_solve(system)
    else:
        raise UnsupportedDimensionError(f"solve handles n = 1 or 2, got n={n}")
    _emit_model(
        SolveReport(
            n=n,
            solvable=zero is not None,
            zero=None if zero is None else [format_value(v) for v in zero],
        ),
        args.out,
    )
    return 0


def handle_probe_command(args) -> int:
    """Tabulate feasibility of C_0..C_Nmax for a bivariate system."""
    system = load_system(args.file)
    if args.n_max < 0:
        raise ValueError("--n-max must be nonnegative")
    report = conjecture_probe(system, args.n_max, Engine(args.engine), settings.LIFT_BUDGET_FACTOR)
    _emit_model(probe_report_model(report), args.out)
    return 0


def handle_schema_command(args) -> int:
    """Print the JSON schema of one of the published files or reports."""
    schema = SCHEMAS[args.name].model_json_schema()
    _emit(json.dumps(schema, indent=2, ensure_ascii=False), args.out)
    return 0
