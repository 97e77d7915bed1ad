"""Experiment catalog, attack schemes and the Monte Carlo runner."""

from mimo_pcsim.workflows.catalog import (
    SCENARIOS,
    Scenario,
    SchemeOptions,
    SweepVariable,
    get_scenario,
    list_scenarios,
)
from mimo_pcsim.workflows.experiment import (
    ExperimentResult,
    ExperimentRunner,
    ExperimentSpec,
    aggregate,
    load_experiment_spec,
    run_experiment,
)

__all__ = [
    "SCENARIOS",
    "ExperimentResult",
    "ExperimentRunner",
    "ExperimentSpec",
    "Scenario",
    "SchemeOptions",
    "SweepVariable",
    "aggregate",
    "get_scenario",
    "list_scenarios",
    "load_experiment_spec",
    "run_experiment",
]
