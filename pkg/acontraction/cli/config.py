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
Module defining the run configuration: a tree of frozen dataclasses parsed from
strict JSON, with defaults sized for desk-scale runs.

"""
from __future__ import annotations

import hashlib
import json
import pathlib
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Mapping, Optional, Union

from acontraction.exceptions import ConfigError

DEFAULT_C1 = 100.0
STAGES = ("verify-assumptions", "verify-dissipation", "scaling-study", "contract")


def _positive(section: str, **values: Any) -> None:
    for name, value in values.items():
        if value is None:
            continue
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not value > 0:
            raise ConfigError(f"'{section}.{name}' must be a positive number, got {value!r}")


def _integer(section: str, **values: Any) -> None:
    for name, value in values.items():
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"'{section}.{name}' must be an integer, got {value!r}")


def _vector(section: str, name: str, value: Any) -> Optional[tuple[float, ...]]:
    if value is None:
        return None
    if not isinstance(value, (list, tuple)) or not all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in value
    ):
        raise ConfigError(f"'{section}.{name}' must be a list of numbers, got {value!r}")
    return tuple(float(x) for x in value)


@dataclass(frozen=True)
class SystemConfig:
    """System id, its parameters and an optional working box ``{"lower", "upper"}``."""

    id: str = "isentropic_euler"
    params: Mapping[str, Any] = field(default_factory=dict)
    box: Optional[Mapping[str, Any]] = None

    def __post_init__(self):
        if not isinstance(self.id, str):
            raise ConfigError(f"'system.id' must be a string, got {self.id!r}")
        if not isinstance(self.params, Mapping):
            raise ConfigError("'system.params' must be an object")
        if self.box is not None and (
            not isinstance(self.box, Mapping) or set(self.box) != {"lower", "upper"}
        ):
            raise ConfigError("'system.box' must be an object with keys 'lower' and 'upper'")


@dataclass(frozen=True)
class ShockConfig:  # pylint: disable=too-many-instance-attributes
    """The shock: a basepoint and strength, or explicit left and right states.

    The weight is given by ``C`` or by the ratio ``a1 / a2``; with neither, ``C = 100``.
    When ``c1`` is set the ratio must lie in ``[1 + c1 s0 / 2, 1 + 2 c1 s0]``.
    """

    basepoint: Optional[tuple[float, ...]] = None
    s0: float = 1e-2
    u_left: Optional[tuple[float, ...]] = None
    u_right: Optional[tuple[float, ...]] = None
    family: int = 1
    C: Optional[float] = None
    ratio: Optional[float] = None
    c1: Optional[float] = None
    radius: Optional[float] = None

    def __post_init__(self):
        for name in ("basepoint", "u_left", "u_right"):
            object.__setattr__(self, name, _vector("shock", name, getattr(self, name)))
        _positive("shock", s0=self.s0, ratio=self.ratio, c1=self.c1, radius=self.radius)
        _integer("shock", family=self.family)
        if self.C is not None and (
            isinstance(self.C, bool) or not isinstance(self.C, (int, float))
        ):
            raise ConfigError(f"'shock.C' must be a number, got {self.C!r}")
        if (self.u_left is None) != (self.u_right is None):
            raise ConfigError("'shock.u_left' and 'shock.u_right' must be given together")
        if self.C is not None and self.ratio is not None:
            raise ConfigError("Give at most one of 'shock.C' and 'shock.ratio'")
        if self.c1 is not None and self.ratio is not None:
            lower, upper = 1.0 + 0.5 * self.c1 * self.s0, 1.0 + 2.0 * self.c1 * self.s0
            if not lower <= self.ratio <= upper:
                raise ConfigError(
                    f"'shock.ratio' {self.ratio} outside the window [{lower}, {upper}]"
                )

    def weight(self) -> dict[str, float]:
        """Keyword arguments fixing the weight of a context."""
        if self.ratio is not None:
            return {"ratio": float(self.ratio)}
        return {"C": float(self.C if self.C is not None else DEFAULT_C1)}


@dataclass(frozen=True)
class SweepConfig:  # pylint: disable=too-many-instance-attributes
    """Sampler sizes and the grids of weights and strengths."""

    C_list: tuple[float, ...] = (50.0, 100.0, 200.0)
    s0_list: tuple[float, ...] = (1e-3, 3e-3, 1e-2)
    grid: bool = False
    n_samples: int = 10_000
    n_dmax: int = 200
    n_scan: int = 20
    n_rays: Optional[int] = None
    audit_samples: int = 1000
    n_stubs: int = 16

    def __post_init__(self):
        for name in ("C_list", "s0_list"):
            values = _vector("sweep", name, getattr(self, name))
            if not values or any(v <= 0.0 for v in values):
                raise ConfigError(f"'sweep.{name}' must be a nonempty list of positive numbers")
            object.__setattr__(self, name, values)
        if not isinstance(self.grid, bool):
            raise ConfigError("'sweep.grid' must be a boolean")
        _integer(
            "sweep",
            n_samples=self.n_samples,
            n_dmax=self.n_dmax,
            n_scan=self.n_scan,
            audit_samples=self.audit_samples,
            n_stubs=self.n_stubs,
        )
        _positive(
            "sweep",
            n_samples=self.n_samples,
            n_dmax=self.n_dmax,
            audit_samples=self.audit_samples,
            n_stubs=self.n_stubs,
            n_rays=self.n_rays,
        )


@dataclass(frozen=True)
class ContractConfig:  # pylint: disable=too-many-instance-attributes
    """Finite-volume grid, initial data and shift settings of a contraction run."""

    n_cells: int = 2000
    x_min: float = -1.0
    x_max: float = 1.0
    cfl: float = 0.45
    t_end: float = 0.5
    scheme: str = "rusanov"
    ic: str = "perturbed-shock"
    ic_params: Mapping[str, Any] = field(default_factory=dict)
    trace_offset: int = 1
    trace_tol: Optional[float] = None
    k_tol: Optional[float] = None
    dissipation_tol: Optional[float] = None
    snapshot_every: int = 0
    constants_samples: int = 10_000
    L: Optional[float] = None
    cstar: Optional[float] = None

    def __post_init__(self):
        _integer(
            "contract",
            n_cells=self.n_cells,
            trace_offset=self.trace_offset,
            snapshot_every=self.snapshot_every,
            constants_samples=self.constants_samples,
        )
        _positive(
            "contract",
            n_cells=self.n_cells,
            cfl=self.cfl,
            t_end=self.t_end,
            trace_offset=self.trace_offset,
            trace_tol=self.trace_tol,
            k_tol=self.k_tol,
            dissipation_tol=self.dissipation_tol,
            constants_samples=self.constants_samples,
            L=self.L,
        )
        if self.snapshot_every < 0:
            raise ConfigError("'contract.snapshot_every' must be non-negative")
        if not self.x_max > self.x_min:
            raise ConfigError("'contract.x_max' must exceed 'contract.x_min'")
        if self.cstar is not None and not self.cstar >= 0.0:
            raise ConfigError("'contract.cstar' must be non-negative")
        if not isinstance(self.ic_params, Mapping):
            raise ConfigError("'contract.ic_params' must be an object")


@dataclass(frozen=True)
class ToleranceConfig:  # pylint: disable=too-many-instance-attributes
    """Audit thresholds and the relative tolerance of the cell entropy residual."""

    gap: float = 1e-6
    nonlinearity: float = 1e-6
    convexity: float = 1e-8
    compatibility: float = 1e-6
    liu: float = 1e-6
    monotonicity: float = 1e-6
    entropy: float = 1e-10

    def __post_init__(self):
        _positive("tolerances", **asdict(self))


@dataclass(frozen=True)
class RunConfig:
    """Complete configuration of a verification run."""

    system: SystemConfig = field(default_factory=SystemConfig)
    shock: ShockConfig = field(default_factory=ShockConfig)
    sweep: SweepConfig = field(default_factory=SweepConfig)
    contract: ContractConfig = field(default_factory=ContractConfig)
    tolerances: ToleranceConfig = field(default_factory=ToleranceConfig)
    seed: int = 0
    output_dir: str = "acontraction-out"

    def __post_init__(self):
        _integer("run", seed=self.seed)
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"'seed' must be an unsigned 64-bit integer, got {self.seed}")
        if not isinstance(self.output_dir, str):
            raise ConfigError("'output_dir' must be a string")

    @classmethod
    def from_dict(cls, data: Any) -> RunConfig:
        """Builds a configuration, rejecting unknown keys at every level.

        Raises:
            ConfigError: If a key is unknown or a value fails validation.
        """
        sections = {
            "system": SystemConfig,
            "shock": ShockConfig,
            "sweep": SweepConfig,
            "contract": ContractConfig,
            "tolerances": ToleranceConfig,
        }
        kwargs = _fields_of(cls, data, "config")
        for name, section in sections.items():
            if name in kwargs:
                kwargs[name] = section(**_fields_of(section, kwargs[name], name))
        return cls(**kwargs)

    def replace(self, **changes: Any) -> RunConfig:
        data = self.to_dict()
        data.update(changes)
        return RunConfig.from_dict(data)

    def to_dict(self) -> dict[str, Any]:
        return json.loads(json.dumps(asdict(self)))


def _fields_of(cls: type, data: Any, section: str) -> dict[str, Any]:
    if not isinstance(data, Mapping):
        raise ConfigError(f"'{section}' must be a JSON object")
    names = {f.name for f in fields(cls)}
    unknown = sorted(set(data) - names)
    if unknown:
        raise ConfigError(f"Unknown keys in '{section}': {', '.join(unknown)}")
    return dict(data)


def load_config(path: Union[str, pathlib.Path]) -> RunConfig:
    """Reads a configuration from a JSON file.

    Raises:
        ConfigError: If the file is unreadable, not valid JSON or fails validation.
    """
    try:
        text = pathlib.Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise ConfigError(f"Cannot read config '{path}': {err}") from err
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise ConfigError(
            f"Malformed config '{path}' at line {err.lineno} column {err.colno}: {err.msg}"
        ) from err
    return RunConfig.from_dict(data)


def config_hash(config: RunConfig) -> str:
    """First 12 hex characters of the SHA-256 of the canonical JSON of a configuration."""
    canonical = json.dumps(config.to_dict(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:12]
