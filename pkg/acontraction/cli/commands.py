# Copyright (C) 2024 acontraction developers
#
# This file is part of acontraction
#
# Acontraction is free software released under the GNU General Public License v3
# or later. You can redistribute and/or modify it under the terms of the GPL v3.
# See the LICENSE file in the project root or <https://www.gnu.org/licenses/gpl-3.0.html>.
#
# THERE IS NO WARRANTY for acontraction, as per Section 15 of the GPL v3.

"""
Module defining the verification stages and the command-line entry point.

Each ``cmd_*`` function runs one stage from a :class:`~acontraction.cli.config.RunConfig`
and returns its exit code with its report: 0 when the stage passes, 1 on a
verification failure or a solver blow-up, 2 on a configuration problem or when
the shock context cannot be built.

"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Callable, Optional, Sequence, Union

from acontraction._version import __version__
from acontraction.contraction.elements import GridSpec
from acontraction.contraction.exceptions import BlowUpError, ShiftDomainError
from acontraction.contraction.run import run_contraction
from acontraction.contraction.scheme import make_ic
from acontraction.contraction.shift import compute_constants
from acontraction.dissipation.verify import scaling_study, sweep_negativity
from acontraction.exceptions import AContractionError, ConfigError
from acontraction.hugoniot.exceptions import ContinuationError
from acontraction.relent.elements import ShockContext
from acontraction.relent.exceptions import ShockContextError
from acontraction.relent.geometry import pi_diagnostics
from acontraction.serialization import Report, dumps
from acontraction.systems.audit import verify_assumptions
from acontraction.systems.elements import AuditThresholds, SystemDescriptor
from acontraction.systems.exceptions import SystemDomainError
from acontraction.systems.maps import build_system

from .config import STAGES, RunConfig, config_hash, load_config
from .elements import DissipationReport, ReportBundle, StageFailure, StageReport

logger = logging.getLogger(__name__)

CONTEXT_ERRORS = (ConfigError, ShockContextError, SystemDomainError, ContinuationError)

StageResult = tuple[int, Report]


def _failure(stage: str, err: Exception, code: int) -> StageResult:
    logger.error("Stage '%s' stopped: %s", stage, err)
    return code, StageFailure(stage=stage, error=str(err), kind=type(err).__name__)


def build_config_system(config: RunConfig) -> SystemDescriptor:
    """Builds the configured system with its working box.

    Raises:
        SystemDomainError: If the system id or its parameters are invalid.
    """
    box = dict(config.system.box) if config.system.box is not None else None
    return build_system(config.system.id, dict(config.system.params), box)


def build_context(
    config: RunConfig,
    s0: Optional[float] = None,
    C: Optional[float] = None,
    system: Optional[SystemDescriptor] = None,
) -> ShockContext:
    """Builds the configured shock context.

    Explicit left and right states take precedence over the basepoint. ``s0`` and
    ``C`` override the configured strength and weight.

    Raises:
        ConfigError: If the weight lies outside its window.
        ShockContextError: If the shock is inadmissible.
        SystemDomainError: If a state is inadmissible.
    """
    shock = config.shock
    system = system if system is not None else build_config_system(config)
    weight = {"C": float(C)} if C is not None else shock.weight()
    if shock.u_left is not None:
        return ShockContext.from_states(
            system,
            shock.u_left,
            shock.u_right,
            family=shock.family,
            c1=shock.c1,
            radius=shock.radius,
            **weight,
        )
    basepoint = shock.basepoint if shock.basepoint is not None else system.reference_state
    return ShockContext.from_basepoint(
        system,
        basepoint,
        shock.s0 if s0 is None else s0,
        family=shock.family,
        c1=shock.c1,
        radius=shock.radius,
        **weight,
    )


def cmd_verify_assumptions(config: RunConfig) -> StageResult:
    """Audits the structural assumptions of the configured system."""
    stage = "verify-assumptions"
    tol = config.tolerances
    try:
        system = build_config_system(config)
        thresholds = AuditThresholds(
            gap=tol.gap,
            nonlinearity=tol.nonlinearity,
            convexity=tol.convexity,
            compatibility=tol.compatibility,
            liu=tol.liu,
            monotonicity=tol.monotonicity,
            n_stubs=config.sweep.n_stubs,
        )
    except CONTEXT_ERRORS as err:
        return _failure(stage, err, 2)
    report = verify_assumptions(
        system,
        n_samples=config.sweep.audit_samples,
        thresholds=thresholds,
        seed=config.seed,
    )
    if not report.passed:
        logger.warning("Assumptions failed: %s", ", ".join(report.failed()))
    return (0 if report.passed else 1), report


def _grid_row(config: RunConfig, system: SystemDescriptor, C: float, s0: float) -> dict:
    sweep = config.sweep
    row: dict = {"C": C, "s0": s0}
    try:
        ctx = build_context(config, s0=s0, C=C, system=system)
    except CONTEXT_ERRORS as err:
        row.update(error=str(err), passed=False)
        return row
    report = sweep_negativity(
        ctx,
        n_samples=sweep.n_samples,
        n_dmax=sweep.n_dmax,
        n_scan=sweep.n_scan,
        seed=config.seed,
        n_rays=sweep.n_rays,
        locate_max=False,
    )
    row.update(
        max_dcont=report.max_dcont,
        max_dcont_over_s0_cubed=report.max_dcont / s0**3,
        max_dmax=report.max_dmax,
        K=report.k_fit,
        truncated=report.truncated,
        error=", ".join(report.failed()) or None,
        passed=report.passed,
    )
    logger.debug("Negativity cell C=%s s0=%s passed=%s", C, s0, report.passed)
    return row


def cmd_verify_dissipation(config: RunConfig) -> StageResult:
    """Sweeps the dissipation of the configured shock over its weighted set.

    With ``sweep.grid`` set, the sweep is repeated for every ``(C, s0)`` pair of the
    sweep lists, giving one CSV row per pair.
    """
    stage = "verify-dissipation"
    sweep = config.sweep
    try:
        system = build_config_system(config)
        ctx = build_context(config, system=system)
    except CONTEXT_ERRORS as err:
        return _failure(stage, err, 2)

    negativity = sweep_negativity(
        ctx,
        n_samples=sweep.n_samples,
        n_dmax=sweep.n_dmax,
        n_scan=sweep.n_scan,
        seed=config.seed,
        n_rays=sweep.n_rays,
    )
    try:
        geometry = pi_diagnostics(ctx, n_rays=sweep.n_rays, seed=config.seed)
    except (AContractionError, ValueError) as err:
        logger.warning("Weighted-set diagnostics unavailable: %s", err)
        geometry = None

    grid = []
    if sweep.grid and config.shock.u_left is None:
        grid = [_grid_row(config, system, C, s0) for C in sweep.C_list for s0 in sweep.s0_list]

    report = DissipationReport(negativity=negativity, geometry=geometry, grid=grid)
    if not report.passed:
        logger.warning("Dissipation checks failed: %s", ", ".join(negativity.failed()))
    return (0 if report.passed else 1), report


def cmd_scaling_study(config: RunConfig) -> StageResult:
    """Fits the strength exponent of the dissipation maximum over the sweep lists."""
    stage = "scaling-study"
    try:
        system = build_config_system(config)
    except CONTEXT_ERRORS as err:
        return _failure(stage, err, 2)
    shock = config.shock
    basepoint = shock.basepoint if shock.basepoint is not None else system.reference_state
    try:
        fit = scaling_study(
            system,
            basepoint,
            shock.family,
            config.sweep.C_list,
            config.sweep.s0_list,
            n_rays=config.sweep.n_rays,
        )
    except CONTEXT_ERRORS as err:
        return _failure(stage, err, 2)
    if not fit.passed:
        logger.warning("Scaling checks failed: %s", ", ".join(fit.failed()))
    return (0 if fit.passed else 1), fit


def cmd_contract(config: RunConfig) -> StageResult:
    """Co-evolves a finite-volume solution with its shift and checks the contraction."""
    stage = "contract"
    params = config.contract
    try:
        ctx = build_context(config)
        grid = GridSpec(params.x_min, params.x_max, params.n_cells)
        ic = make_ic(
            params.ic,
            ctx,
            grid,
            params=params.ic_params,
            seed=config.seed,
            cfl=params.cfl,
            scheme=params.scheme,
        )
    except CONTEXT_ERRORS as err:
        return _failure(stage, err, 2)
    try:
        constants = compute_constants(
            ctx,
            n_samples=params.constants_samples,
            seed=config.seed,
            L=params.L,
            cstar=params.cstar,
        )
        run = run_contraction(
            ctx,
            ic,
            params.t_end,
            constants,
            trace_offset=params.trace_offset,
            trace_tol=params.trace_tol,
            k_tol=params.k_tol,
            tol_entropy=config.tolerances.entropy,
            snapshot_every=params.snapshot_every,
            dissipation_tol=params.dissipation_tol,
            expect_decay=params.ic == "perturbed-shock",
        )
    except (BlowUpError, ShiftDomainError, SystemDomainError) as err:
        return _failure(stage, err, 1)
    if not run.passed:
        logger.warning("Contraction checks failed: %s", ", ".join(run.failed()))
    return (0 if run.passed else 1), run


COMMANDS: dict[str, Callable[[RunConfig], StageResult]] = {
    "verify-assumptions": cmd_verify_assumptions,
    "verify-dissipation": cmd_verify_dissipation,
    "scaling-study": cmd_scaling_study,
    "contract": cmd_contract,
}


class _Rows:
    def __init__(self, rows: list[dict]):
        self._rows = rows

    def to_dict(self) -> dict:
        return {"rows": self._rows}

    def csv_rows(self) -> list[dict]:
        return self._rows


def run_stages(config: RunConfig, stages: Sequence[str]) -> ReportBundle:
    """Runs the given stages in order.

    Raises:
        ConfigError: If a stage name is unknown.
    """
    unknown = [name for name in stages if name not in COMMANDS]
    if unknown:
        raise ConfigError(f"Unknown stage(s) {unknown}, expected one of {list(STAGES)} or 'all'")
    digest = config_hash(config)
    reports = []
    for name in stages:
        logger.info("Running stage '%s' (config %s)", name, digest)
        code, payload = COMMANDS[name](config)
        logger.info("Stage '%s' finished with exit code %s", name, code)
        reports.append(StageReport(name, code, payload, __version__, digest))
    return ReportBundle(version=__version__, config_hash=digest, stages=reports)


def write_bundle(bundle: ReportBundle, output_dir: str, fmt: str = "json") -> list[str]:
    """Writes every stage report as JSON, plus its rows as CSV when ``fmt`` is csv.

    Returns:
        The written paths, the bundle summary last.
    """
    paths = []
    for stage in bundle.stages:
        paths.append(dumps(stage, output_dir, name=stage.stage, fmt="json"))
        if fmt == "csv" and stage.csv_rows():
            paths.append(dumps(stage, output_dir, name=stage.stage, fmt="csv"))
        snapshots = getattr(stage.payload, "snapshot_rows", None)
        if fmt == "csv" and snapshots is not None and snapshots():
            paths.append(dumps(_Rows(snapshots()), output_dir, name="snapshots", fmt="csv"))
    paths.append(dumps(bundle, output_dir, name="bundle", fmt="json"))
    return paths


def _seed(value: str) -> int:
    seed = int(value)
    if not 0 <= seed < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {value}")
    return seed


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="acontraction",
        description="Numerical verification of a-contraction with shifts for extremal shocks.",
    )
    parser.add_argument("--config", default=None, help="Path to a JSON run configuration.")
    parser.add_argument("--out", default=None, help="Output directory for the reports.")
    parser.add_argument("--seed", type=_seed, default=None, help="Seed of every sampler.")
    parser.add_argument(
        "--stage",
        choices=[*STAGES, "all"],
        default="all",
        help="Verification stage to run.",
    )
    parser.add_argument(
        "--format", choices=["json", "csv"], default="json", help="Also write CSV tables."
    )
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default="WARNING",
        help="Logging level.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser.parse_args(argv)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Command-line entry point; returns the process exit code."""
    args = parse_args(argv)
    logging.basicConfig(level=args.log_level, format="%(levelname)s %(name)s: %(message)s")

    try:
        config = load_config(args.config) if args.config else RunConfig()
        overrides: dict[str, Union[int, str]] = {}
        if args.seed is not None:
            overrides["seed"] = args.seed
        if args.out is not None:
            overrides["output_dir"] = args.out
        if overrides:
            config = config.replace(**overrides)
    except ConfigError as err:
        print(f"acontraction: invalid configuration: {err}", file=sys.stderr)
        return 2

    stages = list(STAGES) if args.stage == "all" else [args.stage]
    bundle = run_stages(config, stages)
    try:
        write_bundle(bundle, config.output_dir, args.format)
    except AContractionError as err:
        print(f"acontraction: {err}", file=sys.stderr)
        return 2

    for stage in bundle.stages:
        status = "pass" if stage.passed else f"FAIL (exit {stage.exit_code})"
        print(f"{stage.stage}: {status}")
    print(f"overall: {'pass' if bundle.passed else 'FAIL'} [{bundle.config_hash}]")
    return bundle.exit_code
