import pytest

from eonoise import sample_records, write_records_csv
from eonoise.cli import (
    DATASET_COLUMNS,
    SWEEP_COLUMNS,
    load_sweep_config,
    main,
    parse_config_text,
    parse_grid,
    run_counterexample,
    run_dataset,
    run_sweep,
)
from eonoise.errors import ConfigError
from support import fig1_top_left

TOP_LEFT_CONFIG = """
# reference sweep
preset = fig1-top-left
grid_start = 0.0
grid_stop = 0.5
grid_step = 0.05
"""


def _write_config(tmp_path, text=TOP_LEFT_CONFIG, name="sweep.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return path


def _rowmap(row):
    return dict(zip(SWEEP_COLUMNS, row))


def test_config_unknown_key_rejected():
    with pytest.raises(ConfigError, match="unknown key"):
        parse_config_text("alpha1 = 0.5\nwibble = 3\n")


def test_config_duplicate_key_rejected():
    with pytest.raises(ConfigError, match="duplicate"):
        parse_config_text("alpha1 = 0.5\nalpha1 = 0.6\n")


def test_config_requires_assignment():
    with pytest.raises(ConfigError, match="key = value"):
        parse_config_text("alpha1 0.5\n")


def test_preset_fills_parameters(tmp_path):
    config = load_sweep_config(_write_config(tmp_path))
    inst = config.instance
    assert (inst.alpha1, inst.beta1, inst.alpha2, inst.beta2) == (0.9, 0.8, 0.4, 0.1)
    assert inst.base == (0.25, 0.25, 0.25, 0.25)
    assert config.schedule.kind == "equal"


def test_explicit_keys_override_preset(tmp_path):
    text = TOP_LEFT_CONFIG + "beta1 = 0.7\nschedule = halves\nbase = 0.1, 0.2, 0.3, 0.4\n"
    config = load_sweep_config(_write_config(tmp_path, text))
    assert config.instance.beta1 == 0.7
    assert config.instance.base == (0.1, 0.2, 0.3, 0.4)
    assert config.schedule.kind == "halves"


def test_missing_required_key(tmp_path):
    with pytest.raises(ConfigError, match="missing required key"):
        load_sweep_config(_write_config(tmp_path, "alpha1 = 0.9\n"))


def test_unknown_preset(tmp_path):
    with pytest.raises(ConfigError, match="unknown preset"):
        load_sweep_config(_write_config(tmp_path, "preset = fig9\ngrid_start=0\ngrid_stop=0\ngrid_step=1\n"))


def test_sweep_zero_grid(tmp_path):
    from eonoise import derive_predictor, error_derived

    config = load_sweep_config(_write_config(
        tmp_path, "preset = fig1-top-left\ngrid_start = 0\ngrid_stop = 0\ngrid_step = 0.05\n"))
    rows = run_sweep(config)
    assert len(rows) == 1
    row = _rowmap(rows[0])
    assert float(row["bias_pos_corr"]) == pytest.approx(0.0, abs=1e-9)
    # at zero corruption the derived predictor IS the true-attribute one
    inst = config.instance
    error_true = error_derived(inst, derive_predictor(inst, None))
    assert float(row["error_corr"]) == pytest.approx(error_true, abs=1e-9)
    assert row["error_vs_true_flag"] == "1"


def test_sweep_rows_respect_bound_and_given_bias(tmp_path):
    config = load_sweep_config(_write_config(tmp_path))
    rows = run_sweep(config)
    assert len(rows) == 11
    for raw in rows:
        row = _rowmap(raw)
        if row["assumption_1b_pos"] == "1":
            assert float(row["bias_pos_corr"]) <= float(row["bound_pos"]) + 1e-9
            assert float(row["bias_pos_corr"]) <= float(row["bias_pos_given"]) + 1e-9
        if row["assumption_1b_neg"] == "1":
            assert float(row["bias_neg_corr"]) <= float(row["bound_neg"]) + 1e-9
        assert row["assumption_2"] == "1"


def test_sweep_csv_byte_deterministic(tmp_path):
    config_path = _write_config(tmp_path)
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["sweep", "--config", str(config_path), "--out", str(out1)]) == 0
    assert main(["sweep", "--config", str(config_path), "--out", str(out2)]) == 0
    first, second = out1.read_bytes(), out2.read_bytes()
    assert first == second
    header = first.decode().splitlines()[0]
    assert header == ",".join(SWEEP_COLUMNS)


def test_main_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("preset = fig1-top-left\nwhat = 1\n")
    assert main(["sweep", "--config", str(bad), "--out", str(tmp_path / "x.csv")]) == 2
    assert main(["dataset", str(tmp_path / "missing.csv"), "--scenario",
                 "independent-flip", "--grid", "0:0.2:0.1", "--out",
                 str(tmp_path / "y.csv")]) == 3
    assert main(["bound", "1.0", "0.2", "0.5"]) == 2
    capsys.readouterr()


def test_bound_subcommand_prints_value(capsys):
    assert main(["bound", "0.2", "0.3", "0.5"]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "0.494949494949"


def test_counterexample_modes(capsys):
    given, corrupted, ok = run_counterexample("a_violated")
    assert ok and 0.05 < corrupted < 0.07 and given == pytest.approx(0.05, abs=1e-12)
    given, corrupted, ok = run_counterexample("b_violated")
    assert ok and corrupted > given

    # control: without the prediction-dependent flip the corrupted predictor
    # is the true-attribute one and has zero bias
    given, corrupted, ok = run_counterexample("a_violated", flip=0.0)
    assert not ok and corrupted == pytest.approx(0.0, abs=1e-9)

    assert main(["reproduce-lemma1", "a_violated"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out
    assert main(["reproduce-lemma1", "a_violated", "--flip", "0"]) == 0
    assert "FAIL" in capsys.readouterr().out


def test_parse_grid():
    assert parse_grid("0.5") == [0.5]
    assert parse_grid("0:0.2:0.1") == pytest.approx([0.0, 0.1, 0.2])
    with pytest.raises(ConfigError):
        parse_grid("0:0.2")
    with pytest.raises(ConfigError):
        parse_grid("a:b:c")
    with pytest.raises(ConfigError):
        parse_grid("0:0.2:-0.1")


def _dataset_rowmap(row):
    return dict(zip(DATASET_COLUMNS, row))


def test_dataset_zero_flip_matches_true(tmp_path):
    rs = sample_records(fig1_top_left(), 20_000, seed=30)
    rows = run_dataset(rs, "independent-flip", [0.0], seed=5)
    row = _dataset_rowmap(rows[0])
    assert row["bias_pos_corr"] == row["bias_pos_true"]
    assert row["error_corr"] == row["error_true"]
    assert float(row["independence_measure"]) <= 0.05


def test_dataset_on_errors_scenario_breaks_independence(tmp_path):
    rs = sample_records(fig1_top_left(), 20_000, seed=31)
    rows = run_dataset(rs, "independent-flip-on-errors", [0.4], seed=6)
    row = _dataset_rowmap(rows[0])
    assert float(row["independence_measure"]) > 0.05


def test_dataset_rows_deterministic():
    rs = sample_records(fig1_top_left(), 10_000, seed=34)
    first = run_dataset(rs, "independent-flip", [0.1, 0.3], seed=2)
    second = run_dataset(rs, "independent-flip", [0.1, 0.3], seed=2)
    assert first == second


def test_dataset_cli_roundtrip(tmp_path):
    rs = sample_records(fig1_top_left(), 5000, seed=32, with_scores=True)
    records_path = tmp_path / "records.csv"
    write_records_csv(records_path, rs)
    out = tmp_path / "dataset.csv"
    code = main(["dataset", str(records_path), "--scenario", "score-band",
                 "--grid", "0:0.4:0.2", "--seed", "3", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == ",".join(DATASET_COLUMNS)
    assert len(lines) == 4


def test_estimate_subcommand_feeds_sweep(tmp_path, capsys):
    rs = sample_records(fig1_top_left(), 50_000, seed=33)
    records_path = tmp_path / "records.csv"
    write_records_csv(records_path, rs)
    est_path = tmp_path / "estimate.cfg"
    assert main(["estimate", str(records_path), "--out", str(est_path)]) == 0
    capsys.readouterr()

    config_text = est_path.read_text() + "schedule = equal\ngrid_start = 0\ngrid_stop = 0.2\ngrid_step = 0.1\n"
    config = load_sweep_config(_write_config(tmp_path, config_text, name="from_est.cfg"))
    assert config.instance.alpha1 == pytest.approx(0.9, abs=0.02)
    rows = run_sweep(config)
    assert len(rows) == 3
