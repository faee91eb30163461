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
Module defining the monitor that visits the steps of a contraction run.

"""
from __future__ import annotations

import logging
from typing import Optional

import numpy as np

from acontraction.relent.elements import ShockContext

from .elements import ContractionRun, FilippovStep, FVField, ShiftConstants, ShiftPath

logger = logging.getLogger(__name__)


class ContractionMonitor:  # pylint: disable=too-many-instance-attributes
    """A visitor accumulating the steps of a run into a :class:`ContractionRun`.

    Args:
        ctx (ShockContext): The shock the run is measured against.
        constants (ShiftConstants): Constants of the velocity functional.
        k_tol (float): Allowed drift constant of the pseudo-distance.
        trace_tol (float): Jump between traces below which a Case 2 step is not counted.
        dissipation_tol (float): Largest interface dissipation allowed at a step.
        expect_decay (bool): Also require the final pseudo-distance to lie below the initial one.
        snapshot_every (int): Keep the cell states every this many steps; 0 keeps none.
    """

    def __init__(
        self,
        ctx: ShockContext,
        constants: ShiftConstants,
        k_tol: float,
        trace_tol: float,
        dissipation_tol: float,
        snapshot_every: int = 0,
        expect_decay: bool = False,
    ):
        self._ctx = ctx
        self._constants = constants
        self._k_tol = k_tol
        self._trace_tol = trace_tol
        self._dissipation_tol = dissipation_tol
        self._expect_decay = expect_decay
        self._snapshot_every = snapshot_every
        self._path = ShiftPath()
        self._times: list[float] = []
        self._energies: list[float] = []
        self._snapshots: list[tuple[float, np.ndarray]] = []
        self._flagged = 0
        self._field: Optional[FVField] = None
        self._terminated: Optional[str] = None

    @property
    def path(self) -> ShiftPath:
        return self._path

    def visit_initial(self, field: FVField, energy: float) -> None:
        self._field = field
        self._times.append(field.time)
        self._energies.append(energy)
        if self._snapshot_every:
            self._snapshots.append((field.time, field.states.copy()))

    def visit_step(self, step: FilippovStep, field: FVField, energy: float) -> None:
        """Records a shift step together with the field and pseudo-distance it led to."""
        self._path.append(step)
        self._field = field
        self._times.append(field.time)
        self._energies.append(energy)
        self._flagged += int(field.flagged)
        if self._snapshot_every and len(self._path) % self._snapshot_every == 0:
            self._snapshots.append((field.time, field.states.copy()))
        logger.debug(
            "Step %s: t=%s h=%s h_dot=%s case=%s E=%s",
            len(self._path),
            field.time,
            step.h_next,
            step.h_dot,
            step.case,
            energy,
        )

    def visit_termination(self, reason: str) -> None:
        logger.warning("Run terminated: %s", reason)
        self._terminated = reason

    def drift_constant(self) -> float:
        """Largest ``(E_k - min_{j <= k} E_j) / (dx (1 + t_k))`` along the run."""
        energies = np.asarray(self._energies)
        times = np.asarray(self._times)
        if len(energies) < 2:
            return 0.0
        rise = energies - np.minimum.accumulate(energies)
        return float(np.max(rise / (self._field.grid.dx * (1.0 + times))))

    def finalize(self) -> ContractionRun:
        """Builds the run and evaluates its checks."""
        steps = self._path.steps
        energies = np.asarray(self._energies)
        lo, hi = -0.5 * self._constants.lambda_hat, self._constants.alpha1
        slack = 1e-12 * (1.0 + abs(lo) + abs(hi))
        case2 = sum(1 for s in steps if s.case == 2 and s.jump > self._trace_tol)
        k_tol = self.drift_constant()
        scale = max(1.0, float(np.max(np.abs(energies)))) if len(energies) else 1.0
        dissipation_max = max((s.dissipation for s in steps), default=float("nan"))
        checks = {
            "completed": self._terminated is None,
            "energy_nonnegative": bool(np.all(energies >= -1e-14 * scale)),
            "energy_monotone": k_tol <= self._k_tol,
            "shift_window": all(lo - slack <= s.h_dot <= hi + slack for s in steps),
            "filippov": all(s.contained for s in steps),
            "case2": case2 == 0,
            "interface_dissipation": not dissipation_max > self._dissipation_tol,
        }
        if self._expect_decay:
            checks["energy_decay"] = bool(len(energies) > 1 and energies[-1] < energies[0])
        run = ContractionRun(
            context=self._ctx.to_dict(),
            constants=self._constants,
            grid=self._field.grid,
            path=self._path,
            times=np.asarray(self._times),
            energies=energies,
            k_tol=k_tol,
            k_tol_allowed=self._k_tol,
            case2_violations=case2,
            dissipation_max=dissipation_max,
            dissipation_tol=self._dissipation_tol,
            flagged_steps=self._flagged,
            clamps=sum(1 for s in steps if s.clamped),
            checks=checks,
            terminated=self._terminated,
            snapshots=self._snapshots,
            final=self._field.states.copy(),
        )
        logger.info(
            "Run finished after %s steps: E0=%s E_end=%s K_tol=%s",
            len(steps),
            energies[0],
            energies[-1],
            k_tol,
        )
        return run
