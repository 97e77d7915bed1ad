import numpy as np
import pytest

from mimo_pcsim.domain.exceptions import ConfigurationError, UnknownScenarioError
from mimo_pcsim.workflows import (
    ExperimentRunner,
    get_scenario,
    list_scenarios,
    load_experiment_spec,
)
from mimo_pcsim.workflows.catalog import SCENARIOS, SchemeOptions, SweepVariable
from mimo_pcsim.workflows.experiment import aggregate, cdf_path


def test_catalog_ids():
    """Test that every documented scenario is registered."""
    ids = {s.id for s in list_scenarios()}
    expected = {f"fig4{c}" for c in "abcdefghi"}
    assert expected | {"evpi"} == ids
    with pytest.raises(UnknownScenarioError):
        get_scenario("fig9z")


def test_catalog_schemes_have_unique_labels():
    """Test that every scenario builds schemes with distinct labels."""
    for scenario in SCENARIOS.values():
        labels = [s.label for s in scenario.schemes(SchemeOptions())]
        assert labels
        assert len(labels) == len(set(labels)), scenario.id


def test_pilot_length_sweep_covers_single_user_and_optimal_attacks():
    """Test that the pilot-length sweep includes the single-user and optimal PC-pi attacks."""
    labels = {s.label for s in get_scenario("fig4d").schemes(SchemeOptions())}
    assert {"noPC", "singleUserPC", "PC-unc", "PC-pi", "optimalPC-pi"} == labels


def test_cdf_scenarios_pick_their_metric():
    """Test that fig4g pools downlink rates and fig4h pools secrecy rates."""
    assert get_scenario("fig4g").cdf_metric == "rates"
    assert get_scenario("fig4h").cdf_metric == "secrecy"
    assert "PC-Sec-P5" in {s.label for s in get_scenario("fig4h").schemes(SchemeOptions())}
    assert get_scenario("fig4b").cdf_metric is None


def test_sweep_variable_kinds():
    """Test which sweep variables live in SystemConfig."""
    assert SweepVariable.ANTENNAS.is_system_field
    assert SweepVariable.PILOT_LENGTH.is_system_field
    assert not SweepVariable.EPSILON.is_system_field
    assert not SweepVariable.JAM_ANTENNAS.is_system_field


def test_load_manifest_with_overrides(test_data_dir):
    """Test TOML loading, CLI overrides and None passthrough."""
    path = test_data_dir / "exp.toml"
    path.write_text(
        'scenario = "fig4b"\nsweep = [25.0, 250.0]\nrealizations = 3\n'
        "[system]\nusers = 4\n"
    )
    spec = load_experiment_spec(path, seed=9, realizations=None)
    assert spec.scenario == "fig4b"
    assert spec.sweep == [25.0, 250.0]
    assert spec.realizations == 3
    assert spec.seed == 9
    assert spec.system == {"users": 4}


def test_manifest_errors(test_data_dir):
    """Test unreadable files, unknown keys, bad values and unknown scenarios."""
    with pytest.raises(ConfigurationError):
        load_experiment_spec(test_data_dir / "missing.toml")
    broken = test_data_dir / "broken.toml"
    broken.write_text("scenario = [")
    with pytest.raises(ConfigurationError):
        load_experiment_spec(broken)
    with pytest.raises(ConfigurationError):
        load_experiment_spec(scenario="fig4b", colour="blue")
    with pytest.raises(ConfigurationError):
        load_experiment_spec(scenario="fig4b", sweep=[])
    with pytest.raises(ConfigurationError):
        load_experiment_spec(scenario="fig4b", grid_n=7)
    with pytest.raises((ConfigurationError, UnknownScenarioError)):
        load_experiment_spec(scenario="nope")


def test_sweep_points(mock_settings):
    """Test how each sweep variable lands in the per-point configuration."""
    runner = ExperimentRunner(mock_settings)

    spec = load_experiment_spec(scenario="fig4d")
    points = runner.sweep_points(spec, get_scenario("fig4d"))
    assert [p.config.pilot_length for p in points] == [10, 20, 40, 80]
    assert all(p.config.antennas == mock_settings.desk_antennas for p in points)

    spec = load_experiment_spec(scenario="fig4i", sweep=[0.2])
    (point,) = runner.sweep_points(spec, get_scenario("fig4i"))
    assert point.epsilon == 0.2

    spec = load_experiment_spec(scenario="fig4f", system={"antennas": 32})
    point = runner.sweep_points(spec, get_scenario("fig4f"))[0]
    assert point.config.users == 3
    assert point.config.antennas == 32
    assert point.config.d_max_attacker == 25.0


def test_realization_presets(mock_settings):
    """Test desk, paper and explicit realization counts."""
    runner = ExperimentRunner(mock_settings)
    assert runner.realizations(load_experiment_spec(scenario="fig4b")) == 4
    paper = load_experiment_spec(scenario="fig4b", scale="paper")
    assert runner.realizations(paper) == mock_settings.paper_realizations
    assert runner.realizations(load_experiment_spec(scenario="fig4b", realizations=7)) == 7


def test_aggregate_mean_and_stderr():
    """Test the reduction of per-drop outcomes, unit scaling and CDF pooling."""
    outcomes = [
        {"sum_rate": 1.0, "fairness": 0.5, "rates": np.array([0.5, 0.5]), "secrecy": np.zeros(2)},
        {"sum_rate": 3.0, "fairness": 0.7, "rates": np.array([1.0, 2.0]), "secrecy": np.ones(2)},
    ]
    rows, samples = aggregate(outcomes, 25.0, "noPC", unit="mbps", mbps_per_se=10.0)
    by_metric = {r.metric: r for r in rows}
    assert [r.metric for r in rows] == ["fairness", "sum_rate"]
    assert by_metric["sum_rate"].mean == pytest.approx(20.0)
    assert by_metric["sum_rate"].stderr == pytest.approx(10.0)
    assert by_metric["fairness"].mean == pytest.approx(0.6)
    assert set(samples) == {"rates", "secrecy"}
    np.testing.assert_allclose(samples["rates"], [5.0, 5.0, 10.0, 20.0])
    np.testing.assert_allclose(samples["secrecy"], [0.0, 0.0, 10.0, 10.0])


def test_aggregate_without_per_user_metrics():
    """Test that scalar-only outcomes pool no samples."""
    rows, samples = aggregate([{"evpi": 2.0}, {"evpi": 4.0}], 1.0, "hybrid")
    assert samples == {}
    assert rows[0].mean == pytest.approx(3.0)


def test_cdf_path(test_data_dir):
    """Test CDF file naming next to the main CSV."""
    path = cdf_path(test_data_dir / "fig4g.csv", "PC-pi", 250.0)
    assert path.name == "fig4g_cdf_PC-pi_250.csv"
