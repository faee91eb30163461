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
Module defining the hyperbolic system descriptor and related value types.

"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Callable, Mapping, Optional

import numpy as np

from acontraction.exceptions import raise_acontraction_error

from .exceptions import SystemDomainError

StateFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class WorkingBox:
    """A compact box of states, bounded in primitive variables.

    Args:
        lower: Lower bounds of the primitive variables.
        upper: Upper bounds of the primitive variables.
        to_primitive: Map from conserved to primitive variables, vectorised over ``(..., n)``.
        to_conserved: Inverse of ``to_primitive``.
    """

    lower: tuple[float, ...]
    upper: tuple[float, ...]
    to_primitive: StateFn
    to_conserved: StateFn

    def __post_init__(self):
        if len(self.lower) != len(self.upper):
            raise SystemDomainError("Working box bounds have mismatched dimensions")
        if any(lo >= hi for lo, hi in zip(self.lower, self.upper)):
            raise SystemDomainError(f"Empty working box {self.lower} x {self.upper}")

    @property
    def dim(self) -> int:
        return len(self.lower)

    def contains(self, u: np.ndarray) -> np.ndarray:
        """Returns a boolean (array) telling which states lie inside the box."""
        prim = self.to_primitive(np.asarray(u, dtype=float))
        lower = np.asarray(self.lower)
        upper = np.asarray(self.upper)
        inside = np.all((prim >= lower) & (prim <= upper), axis=-1)
        return inside & np.all(np.isfinite(prim), axis=-1)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """Draws ``n`` conserved states uniformly in primitive variables."""
        prim = rng.uniform(self.lower, self.upper, size=(n, self.dim))
        return self.to_conserved(prim)

    def shrink(self, factor: float) -> WorkingBox:
        """Returns the box scaled about its centre by ``factor`` in primitive variables."""
        lower = np.asarray(self.lower)
        upper = np.asarray(self.upper)
        centre = 0.5 * (lower + upper)
        half = 0.5 * factor * (upper - lower)
        return replace(self, lower=tuple(centre - half), upper=tuple(centre + half))

    def with_bounds(self, lower, upper) -> WorkingBox:
        return replace(
            self, lower=tuple(float(x) for x in lower), upper=tuple(float(x) for x in upper)
        )

    def to_dict(self) -> dict[str, Any]:
        return {"lower": list(self.lower), "upper": list(self.upper)}


@dataclass(frozen=True, eq=False)
class SystemDescriptor:  # pylint: disable=too-many-instance-attributes
    """A one-dimensional hyperbolic system of conservation laws with a convex entropy.

    All callables are vectorised over leading axes: states have shape ``(..., n)``,
    fluxes ``(..., n)``, entropies ``(...)``, Jacobians and Hessians ``(..., n, n)``.
    Optional analytic derivatives are replaced by central finite differences when absent.
    """

    name: str
    dim: int
    flux_fn: StateFn
    entropy_fn: StateFn
    entropy_flux_fn: StateFn
    admissible_fn: StateFn
    box: WorkingBox
    reference_state: tuple[float, ...]
    jacobian_fn: Optional[StateFn] = None
    entropy_gradient_fn: Optional[StateFn] = None
    entropy_hessian_fn: Optional[StateFn] = None
    params: Mapping[str, Any] = field(default_factory=dict)
    mirrored_from: Optional[SystemDescriptor] = None

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise SystemDomainError(f"Unsupported system dimension {self.dim}")
        if self.box.dim != self.dim or len(self.reference_state) != self.dim:
            raise SystemDomainError(f"Inconsistent dimensions for system '{self.name}'")

    @property
    def is_mirror(self) -> bool:
        return self.mirrored_from is not None

    def with_box(self, lower, upper) -> SystemDescriptor:
        """Returns a copy of the system restricted to a different working box."""
        return replace(self, box=self.box.with_bounds(lower, upper))

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "dim": self.dim,
            "params": dict(self.params),
            "box": self.box.to_dict(),
        }


@dataclass(frozen=True)
class EigenBasis:
    """Normalised eigenstructure of the flux Jacobian at one state.

    ``right[:, i]`` is the unit right eigenvector of family ``i + 1``, ``left[i]`` the
    matching unit left eigenvector, and ``nonlinearity[i]`` the value of the
    directional derivative of the eigenvalue along its own right eigenvector.
    """

    values: np.ndarray
    right: np.ndarray
    left: np.ndarray
    nonlinearity: np.ndarray

    def r(self, family: int) -> np.ndarray:
        return self.right[:, family - 1]

    def l(self, family: int) -> np.ndarray:
        return self.left[family - 1]

    def lam(self, family: int) -> float:
        return float(self.values[family - 1])


def as_state(sys: SystemDescriptor, u: Any, batch: bool = False) -> np.ndarray:
    """Validates shape and finiteness of a state (or a batch of states).

    Raises:
        SystemDomainError: If the shape does not match the system or a component is not finite.
    """
    arr = np.asarray(u, dtype=float)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.shape[-1] != sys.dim or (not batch and arr.ndim != 1):
        raise_acontraction_error(
            f"State of shape {arr.shape} does not match system '{sys.name}' "
            f"of dimension {sys.dim}",
            SystemDomainError,
        )
    if not np.all(np.isfinite(arr)):
        raise_acontraction_error("State has non-finite components", SystemDomainError, state=arr)
    return arr


def check_admissible(sys: SystemDescriptor, u: Any, batch: bool = True) -> np.ndarray:
    """Returns ``u`` as an array after checking it lies in the admissible region.

    Raises:
        SystemDomainError: If any state is inadmissible.
    """
    arr = as_state(sys, u, batch=batch)
    ok = np.asarray(sys.admissible_fn(arr))
    if not np.all(ok):
        bad = arr if arr.ndim == 1 else arr[~ok][0]
        raise_acontraction_error(
            f"State outside the admissible region of '{sys.name}'", SystemDomainError, state=bad
        )
    return arr


@dataclass(frozen=True)
class AuditThresholds:
    """Thresholds a margin must exceed for its assumption to pass."""

    gap: float = 1e-6
    nonlinearity: float = 1e-6
    convexity: float = 1e-8
    compatibility: float = 1e-6
    liu: float = 1e-6
    monotonicity: float = 1e-6
    stub_length: float = 0.1
    n_stubs: int = 16

    def __post_init__(self):
        for name in ("gap", "nonlinearity", "convexity", "compatibility", "liu", "monotonicity"):
            if getattr(self, name) < 0.0:
                raise SystemDomainError(f"Audit threshold '{name}' must be non-negative")
        if self.stub_length <= 0.0 or self.n_stubs < 1:
            raise SystemDomainError("Shock-curve stubs need a positive length and count")


@dataclass(frozen=True)
class AssumptionCheck:
    """Outcome of one structural assumption: worst-case margin against its threshold."""

    key: str
    description: str
    margin: float
    threshold: float
    passed: bool
    details: Mapping[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "key": self.key,
            "description": self.description,
            "margin": self.margin,
            "threshold": self.threshold,
            "passed": self.passed,
            "details": dict(self.details),
        }


@dataclass(frozen=True)
class AssumptionReport:
    """Per-assumption audit of a system over a sampled working box."""

    system: str
    box: Mapping[str, Any]
    n_samples: int
    checks: Mapping[str, AssumptionCheck]
    wave_speed_bound: float
    entropy_bracket: tuple[float, float]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks.values())

    def failed(self) -> list[str]:
        return [key for key, check in self.checks.items() if not check.passed]

    def to_dict(self) -> dict[str, Any]:
        return {
            "system": self.system,
            "box": dict(self.box),
            "n_samples": self.n_samples,
            "checks": {key: check.to_dict() for key, check in self.checks.items()},
            "L": self.wave_speed_bound,
            "entropy_bracket": list(self.entropy_bracket),
            "passed": self.passed,
        }

    def csv_rows(self) -> list[dict[str, Any]]:
        return [
            {
                "assumption": key,
                "margin": check.margin,
                "threshold": check.threshold,
                "passed": check.passed,
            }
            for key, check in self.checks.items()
        ]
