"""Closed catalog of experiment scenarios."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from mimo_pcsim.domain.exceptions import UnknownScenarioError
from mimo_pcsim.domain.interfaces import AttackScheme
from mimo_pcsim.workflows.schemes import (
    ChanceSecrecyAttack,
    DataOnlyAttack,
    DistributionAwareAttack,
    GreedySecrecyAttack,
    GridSecrecyAttack,
    HybridAttack,
    InformationValue,
    LargeCellChanceAttack,
    NoAttack,
    PerfectInformationAttack,
    SaddlePointAttack,
    SingleUserAttack,
    UniformAttack,
)


class SweepVariable(Enum):
    """Quantity varied along the x-axis of a scenario."""

    ANTENNAS = "antennas"
    D_MAX_ATTACKER = "d_max_attacker"
    PILOT_LENGTH = "pilot_length"
    JAM_ANTENNAS = "jam_antennas"
    EPSILON = "epsilon"

    @property
    def is_system_field(self) -> bool:
        return self in (
            SweepVariable.ANTENNAS,
            SweepVariable.D_MAX_ATTACKER,
            SweepVariable.PILOT_LENGTH,
        )


@dataclass(frozen=True)
class SchemeOptions:
    """Solver knobs that shape the schemes of a run."""

    grid_n: int = 64
    scenarios: int = 50
    validation_samples: int = 20
    grid_res: float = 0.02


SchemeFactory = Callable[[SchemeOptions], list[AttackScheme]]


@dataclass(frozen=True)
class Scenario:
    id: str
    description: str
    sweep: SweepVariable
    values: tuple[float, ...]
    schemes: SchemeFactory
    overrides: dict[str, Any] = field(default_factory=dict)
    cdf_metric: str | None = None
    """Per-user metric whose pooled samples are written as an empirical CDF."""


_ATTACKER_RANGE = (25.0, 50.0, 100.0, 150.0, 200.0, 250.0)


def _fig4a(opts: SchemeOptions) -> list[AttackScheme]:
    return [NoAttack(exact=True), PerfectInformationAttack(exact=True)]


def _fig4b(opts: SchemeOptions) -> list[AttackScheme]:
    return [
        NoAttack(),
        SingleUserAttack(),
        UniformAttack(),
        DistributionAwareAttack(grid_n=opts.grid_n),
        PerfectInformationAttack(),
        SaddlePointAttack(),
    ]


def _fig4c(opts: SchemeOptions) -> list[AttackScheme]:
    return [NoAttack(), DistributionAwareAttack(grid_n=opts.grid_n), PerfectInformationAttack()]


def _fig4d(opts: SchemeOptions) -> list[AttackScheme]:
    return [
        NoAttack(),
        SingleUserAttack(),
        DistributionAwareAttack(grid_n=opts.grid_n),
        PerfectInformationAttack(),
        SaddlePointAttack(),
    ]


def _fig4e(opts: SchemeOptions) -> list[AttackScheme]:
    return [
        NoAttack(),
        PerfectInformationAttack(),
        HybridAttack(opts.scenarios, information_samples=opts.validation_samples),
        DataOnlyAttack(opts.scenarios),
    ]


def _fig4f(opts: SchemeOptions) -> list[AttackScheme]:
    return [
        NoAttack(),
        PerfectInformationAttack(),
        GridSecrecyAttack(opts.grid_res),
        GreedySecrecyAttack(),
    ]


def _fig4h(opts: SchemeOptions) -> list[AttackScheme]:
    return [NoAttack(), PerfectInformationAttack(), GreedySecrecyAttack()]


def _fig4i(opts: SchemeOptions) -> list[AttackScheme]:
    return [
        ChanceSecrecyAttack(validation_samples=opts.validation_samples),
        LargeCellChanceAttack(validation_samples=opts.validation_samples),
    ]


def _evpi(opts: SchemeOptions) -> list[AttackScheme]:
    return [InformationValue(grid_n=opts.grid_n)]


SCENARIOS: dict[str, Scenario] = {
    s.id: s
    for s in (
        Scenario(
            "fig4a",
            "Sum-rate vs BS antennas, exact and large-M",
            SweepVariable.ANTENNAS,
            (64.0, 128.0, 256.0, 512.0, 1024.0),
            _fig4a,
        ),
        Scenario(
            "fig4b",
            "Sum-rate vs attacker annulus radius",
            SweepVariable.D_MAX_ATTACKER,
            _ATTACKER_RANGE,
            _fig4b,
        ),
        Scenario(
            "fig4c",
            "Jain fairness vs attacker annulus radius",
            SweepVariable.D_MAX_ATTACKER,
            _ATTACKER_RANGE,
            _fig4c,
        ),
        Scenario(
            "fig4d",
            "Sum-rate vs pilot length",
            SweepVariable.PILOT_LENGTH,
            (10.0, 20.0, 40.0, 80.0),
            _fig4d,
        ),
        Scenario(
            "fig4e",
            "Hybrid attack vs attacker antennas",
            SweepVariable.JAM_ANTENNAS,
            (1.0, 2.0, 4.0, 8.0),
            _fig4e,
        ),
        Scenario(
            "fig4f",
            "Largest secrecy rate vs attacker annulus radius",
            SweepVariable.D_MAX_ATTACKER,
            _ATTACKER_RANGE,
            _fig4f,
            overrides={"users": 3},
        ),
        Scenario(
            "fig4g",
            "Rate CDF, fixed-power BS",
            SweepVariable.D_MAX_ATTACKER,
            (250.0,),
            _fig4c,
            cdf_metric="rates",
        ),
        Scenario(
            "fig4h",
            "Secrecy-rate CDF",
            SweepVariable.D_MAX_ATTACKER,
            (250.0,),
            _fig4h,
            cdf_metric="secrecy",
        ),
        Scenario(
            "fig4i",
            "Chance-constrained secrecy threshold vs outage level",
            SweepVariable.EPSILON,
            (0.1, 0.2, 0.3, 0.4, 0.5, 0.6),
            _fig4i,
        ),
        Scenario(
            "evpi",
            "Value of perfect location information vs attacker annulus radius",
            SweepVariable.D_MAX_ATTACKER,
            _ATTACKER_RANGE,
            _evpi,
        ),
    )
}


def get_scenario(scenario_id: str) -> Scenario:
    """Look up a scenario.

    Raises:
        UnknownScenarioError: If the id is not in the catalog.
    """
    try:
        return SCENARIOS[scenario_id]
    except KeyError:
        raise UnknownScenarioError(
            f"unknown scenario {scenario_id!r}; choose from {', '.join(SCENARIOS)}"
        ) from None


def list_scenarios() -> list[Scenario]:
    return list(SCENARIOS.values())
