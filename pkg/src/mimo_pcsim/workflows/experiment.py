"""Seeded Monte Carlo experiment runner.

Flow per sweep point: derive one RNG stream per realization, draw a topology,
evaluate every scheme of the scenario on it in a worker thread, then reduce the
metric samples to mean and standard error in realization order.
"""

from __future__ import annotations

import asyncio
import logging
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Literal

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - Python 3.10 backport with the same API
    import tomli as tomllib

import numpy as np
import numpy.typing as npt
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from mimo_pcsim.channel import large_scale, sample_topology
from mimo_pcsim.config import Settings, SystemConfig, get_settings
from mimo_pcsim.domain.entities import Drop, ResultRow
from mimo_pcsim.domain.exceptions import ConfigurationError, SolverError
from mimo_pcsim.domain.interfaces import AttackScheme, SchemeOutcome
from mimo_pcsim.infrastructure.persistence import emit_cdf, emit_csv
from mimo_pcsim.optim.quadrature import check_intervals
from mimo_pcsim.utils.rng import derive_rng
from mimo_pcsim.workflows.catalog import Scenario, SchemeOptions, SweepVariable, get_scenario

logger = logging.getLogger(__name__)

RATE_METRICS = frozenset(
    {
        "sum_rate",
        "exact_sum_rate",
        "max_secrecy",
        "secrecy_bound",
        "threshold",
        "evpi",
        "rates",
        "secrecy",
    }
)
SAMPLE_METRICS = frozenset({"rates", "secrecy"})


class ExperimentSpec(BaseModel):
    """One experiment run; field names double as manifest keys."""

    model_config = ConfigDict(extra="forbid")

    scenario: str
    sweep: list[float] | None = Field(
        default=None, description="Sweep values; the catalog range when unset"
    )
    realizations: int | None = Field(default=None, ge=1)
    seed: int | None = Field(default=None, ge=0)
    scale: Literal["desk", "paper"] = "desk"
    unit: Literal["se", "mbps"] = "se"
    output: Path | None = None
    system: dict[str, Any] = Field(default_factory=dict, description="SystemConfig overrides")
    grid_n: int = Field(default=64, description="Simpson intervals for the blind attack")
    scenarios: int = Field(default=50, ge=1, description="Sampled jamming channels per drop")
    validation_samples: int = Field(default=20, ge=0)
    grid_res: float = Field(default=0.02, gt=0, le=0.5)

    @field_validator("scenario")
    @classmethod
    def _known_scenario(cls, value: str) -> str:
        get_scenario(value)
        return value

    @field_validator("sweep")
    @classmethod
    def _nonempty_sweep(cls, value: list[float] | None) -> list[float] | None:
        if value is not None and not value:
            raise ValueError("sweep range must not be empty")
        return value

    @field_validator("grid_n")
    @classmethod
    def _simpson_grid(cls, value: int) -> int:
        check_intervals(value)
        return value

    @property
    def options(self) -> SchemeOptions:
        return SchemeOptions(
            grid_n=self.grid_n,
            scenarios=self.scenarios,
            validation_samples=self.validation_samples,
            grid_res=self.grid_res,
        )


def load_experiment_spec(path: Path | None = None, **overrides: Any) -> ExperimentSpec:
    """Read a TOML manifest and apply non-None overrides on top.

    Raises:
        ConfigurationError: Unreadable manifest or invalid values.
        UnknownScenarioError: Scenario id outside the catalog.
    """
    data: dict[str, Any] = {}
    if path is not None:
        try:
            with Path(path).open("rb") as fh:
                data = tomllib.load(fh)
        except (OSError, tomllib.TOMLDecodeError) as exc:
            raise ConfigurationError(f"cannot read manifest {path}: {exc}") from exc
    data.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return ExperimentSpec.model_validate(data)
    except ValidationError as exc:
        raise ConfigurationError(str(exc)) from exc


@dataclass
class ExperimentResult:
    spec: ExperimentSpec
    rows: list[ResultRow]
    samples: dict[tuple[float, str], npt.NDArray[np.float64]] = field(default_factory=dict)


@dataclass(frozen=True)
class _SweepPoint:
    index: int
    value: float
    config: SystemConfig
    epsilon: float = 0.1
    jam_antennas: int = 1


class ExperimentRunner:
    """Run catalog scenarios with a bounded thread fan-out."""

    def __init__(self, settings: Settings | None = None) -> None:
        self.settings = settings or get_settings()

    def base_config(self, spec: ExperimentSpec, scenario: Scenario) -> SystemConfig:
        antennas = (
            self.settings.paper_antennas if spec.scale == "paper" else self.settings.desk_antennas
        )
        overrides = {**scenario.overrides, **spec.system}
        antennas = int(overrides.pop("antennas", antennas))
        return SystemConfig.from_settings(self.settings, antennas=antennas, **overrides)

    def realizations(self, spec: ExperimentSpec) -> int:
        if spec.realizations is not None:
            return spec.realizations
        if spec.scale == "paper":
            return self.settings.paper_realizations
        return self.settings.desk_realizations

    def sweep_points(self, spec: ExperimentSpec, scenario: Scenario) -> list[_SweepPoint]:
        base = self.base_config(spec, scenario)
        values = spec.sweep if spec.sweep is not None else list(scenario.values)
        points = []
        for index, value in enumerate(values):
            variable = scenario.sweep
            if variable is SweepVariable.EPSILON:
                points.append(_SweepPoint(index, value, base, epsilon=float(value)))
            elif variable is SweepVariable.JAM_ANTENNAS:
                points.append(_SweepPoint(index, value, base, jam_antennas=int(value)))
            elif variable is SweepVariable.D_MAX_ATTACKER:
                config = base.with_overrides(d_max_attacker=float(value))
                points.append(_SweepPoint(index, value, config))
            else:
                config = base.with_overrides(**{variable.value: int(value)})
                points.append(_SweepPoint(index, value, config))
        return points

    def evaluate_drop(
        self, schemes: list[AttackScheme], point: _SweepPoint, seed: int, realization: int
    ) -> list[SchemeOutcome]:
        """Draw one topology and evaluate every scheme on it.

        Each scheme gets its own stream so adding a scheme never changes the others.
        """
        rng = derive_rng(seed, point.index, realization, 0)
        topology = sample_topology(rng, point.config)
        drop = Drop(
            config=point.config,
            topology=topology,
            large_scale=large_scale(topology, point.config),
            rng=rng,
            epsilon=point.epsilon,
            jam_antennas=point.jam_antennas,
        )
        outcomes = []
        for j, scheme in enumerate(schemes, start=1):
            try:
                stream = derive_rng(seed, point.index, realization, j)
                outcomes.append(scheme.evaluate(replace(drop, rng=stream)))
            except SolverError as exc:
                exc.diagnostics.update(
                    {"seed": seed, "sweep_index": point.index, "realization": realization}
                )
                logger.error(
                    "Solver failed",
                    extra={
                        "scheme": scheme.label,
                        "seed": seed,
                        "sweep": point.value,
                        "realization": realization,
                    },
                )
                raise
        return outcomes

    async def run(self, spec: ExperimentSpec) -> ExperimentResult:
        """Evaluate every sweep point of ``spec`` and aggregate the metrics."""
        scenario = get_scenario(spec.scenario)
        seed = spec.seed if spec.seed is not None else self.settings.seed
        n = self.realizations(spec)
        schemes = scenario.schemes(spec.options)
        semaphore = asyncio.Semaphore(self.settings.workers)

        async def one(point: _SweepPoint, realization: int) -> list[SchemeOutcome]:
            async with semaphore:
                return await asyncio.to_thread(
                    self.evaluate_drop, schemes, point, seed, realization
                )

        result = ExperimentResult(spec=spec, rows=[])
        for point in self.sweep_points(spec, scenario):
            logger.info(
                "Running sweep point",
                extra={"scenario": scenario.id, "sweep": point.value, "realizations": n},
            )
            # gather keeps realization order, so the reduction below is order-stable
            outcomes = await asyncio.gather(*(one(point, i) for i in range(n)))
            scale = point.config.bandwidth_hz * point.config.duty_cycle / 1e6
            for j, scheme in enumerate(schemes):
                per_scheme = [o[j] for o in outcomes]
                rows, samples = aggregate(per_scheme, point.value, scheme.label, spec.unit, scale)
                result.rows.extend(rows)
                metric = scenario.cdf_metric
                if metric is not None and metric in samples:
                    result.samples[(point.value, scheme.label)] = samples[metric]
        return result


def aggregate(
    outcomes: list[SchemeOutcome],
    sweep: float,
    scheme: str,
    unit: Literal["se", "mbps"] = "se",
    mbps_per_se: float = 1.0,
) -> tuple[list[ResultRow], dict[str, npt.NDArray[np.float64]]]:
    """Reduce per-realization outcomes to rows plus pooled per-user samples by metric."""
    rows = []
    samples: dict[str, npt.NDArray[np.float64]] = {}
    for metric in sorted(outcomes[0]):
        factor = mbps_per_se if unit == "mbps" and metric in RATE_METRICS else 1.0
        if metric in SAMPLE_METRICS:
            samples[metric] = np.concatenate([np.atleast_1d(o[metric]) for o in outcomes]) * factor
            continue
        values = np.array([float(o[metric]) for o in outcomes]) * factor
        stderr = float(values.std(ddof=1) / np.sqrt(values.size)) if values.size > 1 else 0.0
        rows.append(ResultRow(sweep, scheme, metric, float(values.mean()), stderr, values.size))
    return rows, samples


def cdf_path(output: Path, scheme: str, sweep: float) -> Path:
    return output.with_name(f"{output.stem}_cdf_{scheme}_{sweep:g}.csv")


async def run_experiment(
    spec: ExperimentSpec, settings: Settings | None = None
) -> ExperimentResult:
    """Run ``spec`` and write its CSV (and CDF files for CDF scenarios)."""
    settings = settings or get_settings()
    result = await ExperimentRunner(settings).run(spec)
    output = spec.output or settings.output_dir / f"{spec.scenario}.csv"
    emit_csv(result.rows, output)
    for (sweep, scheme), samples in result.samples.items():
        emit_cdf(samples, cdf_path(output, scheme, sweep))
    return result
