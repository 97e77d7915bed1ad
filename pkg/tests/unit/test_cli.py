import pandas as pd

from mimo_pcsim.cli import EXIT_CONFIG, EXIT_FAILURE, build_parser, main


def test_parser_run_arguments():
    """Test the run subcommand flags."""
    args = build_parser().parse_args(
        ["run", "fig4b", "--seed", "3", "--realizations", "5", "--scale", "paper", "--unit", "mbps"]
    )
    assert args.command == "run"
    assert args.scenario == "fig4b"
    assert (args.seed, args.realizations, args.scale, args.unit) == (3, 5, "paper", "mbps")


def test_list_scenarios(capsys):
    """Test that every catalog entry is listed."""
    assert main(["list-scenarios"]) == 0
    out = capsys.readouterr().out
    assert "fig4a" in out
    assert "evpi" in out


def test_validate_config(capsys, test_data_dir):
    """Test validation with and without a manifest."""
    assert main(["validate-config"]) == 0
    assert "settings OK" in capsys.readouterr().out

    manifest = test_data_dir / "cli_valid.toml"
    manifest.write_text('scenario = "fig4d"\n')
    assert main(["validate-config", "--config", str(manifest)]) == 0
    assert "4 sweep points" in capsys.readouterr().out


def test_invalid_config_exit_code(test_data_dir):
    """Test that configuration errors map to exit code 2."""
    manifest = test_data_dir / "cli_invalid.toml"
    manifest.write_text('scenario = "fig4b"\nrealizations = 0\n')
    assert main(["validate-config", "--config", str(manifest)]) == EXIT_CONFIG
    assert main(["run", "--config", str(manifest)]) == EXIT_CONFIG


def test_unknown_scenario_exit_code(capsys):
    """Test that an unknown scenario id fails cleanly."""
    assert main(["run", "fig9z"]) == EXIT_FAILURE
    assert "fig9z" in capsys.readouterr().err


def test_run_writes_csv(test_data_dir, capsys):
    """Test a tiny end-to-end run through the CLI."""
    manifest = test_data_dir / "cli_run.toml"
    manifest.write_text('scenario = "fig4c"\nsweep = [250.0]\ngrid_n = 16\n')
    out = test_data_dir / "cli_run.csv"
    code = main(["run", "--config", str(manifest), "--realizations", "2", "--out", str(out)])
    assert code == 0
    frame = pd.read_csv(out)
    assert set(frame["scheme"]) == {"noPC", "PC-unc", "PC-pi"}
    assert set(frame["metric"]) == {"sum_rate", "fairness", "max_secrecy"}
    assert (frame["n"] == 2).all()
    assert "rows" in capsys.readouterr().out
