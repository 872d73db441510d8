"""Command-line front end.

Subcommands: ``sweep`` (analytic flip-rate sweeps to CSV), ``dataset``
(record-level corruption experiments to CSV), ``bound`` (print the bias
shrink factor), ``reproduce-lemma1`` (the two settings where corruption
provably raises bias), and ``estimate`` (fit instance parameters from a
record CSV).

Exit codes: 0 success, 2 configuration error, 3 data error, 4 internal
assertion failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    ConfigError,
    DegenerateProgramError,
    DomainError,
    EmptyCellError,
    MissingColumnError,
    RangeError,
    RecordsError,
    ZeroCellError,
)
from .metrics import (
    bias_derived,
    bias_given,
    bias_shrink_factor,
    check_classifier_informative,
    check_flip_budget,
    corrupted_bias_bound,
    error_derived,
    error_given,
    independence_measure,
)
from .model import GIVEN_PREDICTOR_P, DerivedPredictor, PerturbationSpec, ProblemInstance
from .perturb import GammaSchedule, RecordScenario, SCENARIO_KINDS, apply_scenario, schedule_eval
from .programs import derive_predictor, program_from_table
from .lp import solve
from .records import (
    estimate_corrupted_tables,
    estimate_instance,
    evaluate_predictor_on_records,
    read_records_csv,
    split,
)

BALANCED_BASE = (0.25, 0.25, 0.25, 0.25)

#: Bundled alpha/beta and schedule parameters for the named sweep presets.
#: Base rates are not part of a preset; they default to balanced and can be
#: overridden with the ``base`` config key.
PRESETS: dict[str, dict] = {
    "fig1-top-left": dict(alpha1=0.9, beta1=0.8, alpha2=0.4, beta2=0.1, schedule="equal"),
    "fig1-top-right": dict(alpha1=0.9, beta1=0.6, alpha2=0.7, beta2=0.1, schedule="halves"),
    "fig1-bottom-left": dict(alpha1=0.9, beta1=0.6, alpha2=0.3, beta2=0.8, schedule="power-halving"),
    "fig1-bottom-right": dict(alpha1=0.9, beta1=0.5, alpha2=0.0, beta2=0.4, schedule="equal"),
    "tableA3-row-1": dict(alpha1=0.8, beta1=0.9, alpha2=0.1, beta2=0.0, schedule="equal"),
    "tableA3-row-2": dict(alpha1=0.8, beta1=0.9, alpha2=0.1, beta2=0.0, schedule="power-halving"),
    "tableA3-row-3": dict(alpha1=0.8, beta1=0.9, alpha2=0.1, beta2=0.0, schedule="halves"),
    "tableA3-row-4": dict(alpha1=0.8, beta1=0.9, alpha2=0.1, beta2=0.0, schedule="capped"),
    "tableA3-row-5": dict(alpha1=0.9, beta1=0.6, alpha2=0.7, beta2=0.1, schedule="equal"),
    "tableA3-row-6": dict(alpha1=0.9, beta1=0.4, alpha2=0.1, beta2=0.1, schedule="power-halving"),
    "tableA3-row-7": dict(alpha1=0.7, beta1=0.9, alpha2=0.3, beta2=0.0, schedule="halves"),
    "tableA3-row-8": dict(alpha1=0.7, beta1=0.9, alpha2=0.3, beta2=0.0, schedule="capped"),
    "tableA3-row-9": dict(alpha1=0.3, beta1=0.8, alpha2=0.1, beta2=0.2, schedule="equal"),
    "tableA3-row-10": dict(alpha1=0.3, beta1=0.8, alpha2=0.1, beta2=0.2, schedule="equal"),
    "tableA3-row-11": dict(alpha1=0.9, beta1=0.6, alpha2=0.4, beta2=0.1, schedule="power-halving"),
    "tableA3-row-12": dict(alpha1=0.9, beta1=0.6, alpha2=0.4, beta2=0.4, schedule="power-halving"),
    "tableA3-row-13": dict(alpha1=0.5, beta1=0.8, alpha2=0.1, beta2=0.4, schedule="equal"),
    "tableA3-row-14": dict(alpha1=0.6, beta1=0.8, alpha2=0.1, beta2=0.4, schedule="capped"),
    "tableA4-row-1": dict(alpha1=0.6, beta1=0.55, alpha2=0.1, beta2=0.3, schedule="equal"),
    "tableA4-row-2": dict(alpha1=0.9, beta1=0.6, alpha2=0.4, beta2=0.1, schedule="equal"),
    "tableA4-row-3": dict(alpha1=1.0, beta1=0.8, alpha2=0.0, beta2=0.1, schedule="equal"),
    "tableA4-row-4": dict(alpha1=0.4, beta1=0.95, alpha2=0.1, beta2=0.15, schedule="equal"),
    "tableA4-row-5": dict(alpha1=0.3, beta1=0.7, alpha2=0.1, beta2=0.5, schedule="power-halving"),
    "tableA4-row-6": dict(alpha1=0.35, beta1=0.95, alpha2=0.1, beta2=0.15, schedule="halves"),
}

SWEEP_COLUMNS = (
    "gamma10", "gamma11", "gammam10", "gammam11",
    "bias_pos_corr", "bias_neg_corr", "error_corr",
    "bias_pos_given", "bias_neg_given", "error_given",
    "bound_pos", "bound_neg",
    "assumption_1b_pos", "assumption_1b_neg", "assumption_2",
    "error_vs_true_flag",
)

DATASET_COLUMNS = (
    "level",
    "bias_pos_given", "bias_neg_given", "error_given",
    "bias_pos_corr", "bias_neg_corr", "error_corr",
    "bias_pos_true", "bias_neg_true", "error_true",
    "independence_measure",
)


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


@dataclass(frozen=True)
class SweepConfig:
    instance: ProblemInstance
    schedule: GammaSchedule
    grid: tuple[float, float, float]  # start, stop, step
    out: Path | None = None


_SWEEP_KEYS = ("preset", "alpha1", "beta1", "alpha2", "beta2", "base",
               "schedule", "grid_start", "grid_stop", "grid_step", "out")


def parse_config_text(text: str, source: str = "<config>") -> dict[str, str]:
    """Flat ``key = value`` lines, '#' comments; unknown keys are hard errors."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _SWEEP_KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        values[key] = value.strip()
    return values


def load_sweep_config(path, out_override=None) -> SweepConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    values = parse_config_text(text, source=str(path))

    merged: dict[str, str | float] = {}
    preset = values.pop("preset", None)
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigError(f"unknown preset {preset!r}")
        merged.update(PRESETS[preset])
    merged.update(values)

    def need(key):
        if key not in merged:
            raise ConfigError(f"missing required key {key!r}")
        return merged[key]

    def number(key, value):
        try:
            return float(value)
        except (TypeError, ValueError):
            raise ConfigError(f"key {key!r}: {value!r} is not a number") from None

    base = BALANCED_BASE
    if "base" in merged:
        parts = [p for p in str(merged["base"]).replace(",", " ").split() if p]
        if len(parts) != 4:
            raise ConfigError("key 'base': expected four probabilities")
        base = tuple(number("base", p) for p in parts)

    try:
        instance = ProblemInstance(
            base=base,
            alpha1=number("alpha1", need("alpha1")),
            beta1=number("beta1", need("beta1")),
            alpha2=number("alpha2", need("alpha2")),
            beta2=number("beta2", need("beta2")),
        )
        schedule = GammaSchedule(str(need("schedule")))
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"invalid instance/schedule parameters: {exc}") from None

    grid = (number("grid_start", need("grid_start")),
            number("grid_stop", need("grid_stop")),
            number("grid_step", need("grid_step")))
    if grid[2] <= 0:
        raise ConfigError("grid_step must be positive")
    if not (0.0 <= grid[0] <= grid[1] <= 1.0):
        raise ConfigError("grid must satisfy 0 <= start <= stop <= 1")

    out = out_override if out_override is not None else merged.get("out")
    return SweepConfig(instance=instance, schedule=schedule, grid=grid,
                       out=None if out is None else Path(out))


def grid_points(start: float, stop: float, step: float) -> list[float]:
    points = []
    k = 0
    while True:
        g = start + k * step
        if g > stop + 1e-12:
            break
        points.append(min(g, 1.0))
        k += 1
    return points


def run_sweep(config: SweepConfig) -> list[list[str]]:
    """One formatted row per grid point, in grid order."""
    inst = config.instance
    given = (bias_given(inst, 1), bias_given(inst, -1), error_given(inst))
    error_true = error_derived(inst, derive_predictor(inst, None))
    a2 = check_classifier_informative(inst)

    rows = []
    for g10 in grid_points(*config.grid):
        spec = schedule_eval(config.schedule, g10)
        predictor = derive_predictor(inst, spec)
        err_corr = error_derived(inst, predictor)
        bounds = []
        for y in (1, -1):
            if spec.gamma(y, 0) < 1.0 and spec.gamma(y, 1) < 1.0:
                bounds.append(corrupted_bias_bound(inst, spec, y))
            else:
                bounds.append(float("nan"))
        row = [
            _fmt(g10), _fmt(spec.gamma(1, 1)), _fmt(spec.gamma(-1, 0)), _fmt(spec.gamma(-1, 1)),
            _fmt(bias_derived(inst, predictor, 1)),
            _fmt(bias_derived(inst, predictor, -1)),
            _fmt(err_corr),
            _fmt(given[0]), _fmt(given[1]), _fmt(given[2]),
            _fmt(bounds[0]), _fmt(bounds[1]),
            str(int(check_flip_budget(spec, 1))),
            str(int(check_flip_budget(spec, -1))),
            str(int(a2)),
            str(int(err_corr <= error_true + 1e-12)),
        ]
        rows.append(row)
    return rows


def write_csv(path, columns, rows) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def run_dataset(records, scenario_kind: str, levels, seed: int) -> list[list[str]]:
    """Per level: corrupt the training half, estimate both predictors there,
    evaluate everything on the held-out half with the true attribute."""
    if scenario_kind not in SCENARIO_KINDS:
        raise ConfigError(f"unknown scenario {scenario_kind!r}")
    train, test = split(records, (0.5, 0.5), seed)

    true_pred = DerivedPredictor(
        p=solve(program_from_table(_clean_table(train))).p_star, source="clean")
    given_pred = DerivedPredictor(p=GIVEN_PREDICTOR_P, source="clean")

    given_metrics = evaluate_predictor_on_records(test, given_pred)
    true_metrics = evaluate_predictor_on_records(test, true_pred)

    rows = []
    for level in levels:
        scenario = RecordScenario(scenario_kind, level)
        corrupted = apply_scenario(train, scenario, seed)
        tables = estimate_corrupted_tables(corrupted)
        corr_pred = DerivedPredictor(
            p=solve(program_from_table(tables.joint)).p_star, source="corrupted")
        corr_metrics = evaluate_predictor_on_records(test, corr_pred)
        measure = independence_measure(tables.fourway)
        rows.append([
            _fmt(level),
            _fmt(given_metrics.bias_pos), _fmt(given_metrics.bias_neg), _fmt(given_metrics.error),
            _fmt(corr_metrics.bias_pos), _fmt(corr_metrics.bias_neg), _fmt(corr_metrics.error),
            _fmt(true_metrics.bias_pos), _fmt(true_metrics.bias_neg), _fmt(true_metrics.error),
            _fmt(measure),
        ])
    return rows


def _clean_table(records):
    """(label, attribute, prediction) counts in the shape program_from_table expects."""
    yi = (records.y == -1).astype(int)
    yti = (records.yhat == -1).astype(int)
    table = np.zeros((2, 2, 2))
    np.add.at(table, (yi, records.a.astype(int), yti), 1.0)
    return table


LEMMA1_MODES = ("a_violated", "b_violated")


def run_counterexample(mode: str, flip: float = 0.15, gamma: float = 0.7):
    """Report for the two settings where corruption raises the bias.

    ``a_violated`` corrupts only records the classifier got wrong
    (prediction-dependent flips); ``b_violated`` uses flip rates summing past
    one.  Returns (bias of the given classifier, bias of the corrupted-trained
    predictor, PASS flag) for the positive class.
    """
    if mode == "a_violated":
        inst = ProblemInstance(base=BALANCED_BASE, alpha1=0.65, beta1=0.6,
                               alpha2=0.0, beta2=0.0)
        spec = PerturbationSpec.general({(1, 0, -1): flip})
    elif mode == "b_violated":
        inst = ProblemInstance(base=BALANCED_BASE, alpha1=0.9, beta1=0.8,
                               alpha2=0.4, beta2=0.1)
        spec = PerturbationSpec.uniform(gamma)
    else:
        raise ConfigError(f"mode must be one of {LEMMA1_MODES}, got {mode!r}")

    predictor = derive_predictor(inst, spec)
    given = bias_given(inst, 1)
    corrupted = bias_derived(inst, predictor, 1)
    return given, corrupted, corrupted > given


def _cmd_sweep(args) -> int:
    config = load_sweep_config(args.config, out_override=args.out)
    if config.out is None:
        raise ConfigError("no output path: pass --out or set 'out' in the config")
    rows = run_sweep(config)
    write_csv(config.out, SWEEP_COLUMNS, rows)
    print(f"wrote {len(rows)} rows to {config.out}")
    return 0


def _cmd_dataset(args) -> int:
    records = read_records_csv(args.records)
    levels = parse_grid(args.grid)
    rows = run_dataset(records, args.scenario, levels, args.seed)
    write_csv(args.out, DATASET_COLUMNS, rows)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def _cmd_bound(args) -> int:
    print(_fmt(bias_shrink_factor(args.gamma1, args.gamma2, args.p)))
    return 0


def _cmd_counterexample(args) -> int:
    given, corrupted, ok = run_counterexample(args.mode, flip=args.flip, gamma=args.gamma)
    print(f"mode = {args.mode}")
    print(f"bias_pos_given = {_fmt(given)}")
    print(f"bias_pos_corrupted = {_fmt(corrupted)}")
    print("result = " + ("PASS (corrupted bias exceeds given bias)" if ok
                         else "FAIL (corrupted bias does not exceed given bias)"))
    return 0


def _cmd_estimate(args) -> int:
    records = read_records_csv(args.records)
    est = estimate_instance(records)
    inst = est.instance
    lines = [
        f"base = {_fmt(inst.base[0])}, {_fmt(inst.base[1])}, {_fmt(inst.base[2])}, {_fmt(inst.base[3])}",
        f"alpha1 = {_fmt(inst.alpha1)}",
        f"beta1 = {_fmt(inst.beta1)}",
        f"alpha2 = {_fmt(inst.alpha2)}",
        f"beta2 = {_fmt(inst.beta2)}",
        f"# cell counts (y=+1 a=0, y=+1 a=1, y=-1 a=0, y=-1 a=1): "
        f"{est.counts[0]}, {est.counts[1]}, {est.counts[2]}, {est.counts[3]}",
    ]
    text = "\n".join(lines) + "\n"
    if args.out is not None:
        Path(args.out).write_text(text)
        print(f"wrote estimate to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def parse_grid(text: str) -> list[float]:
    """'start:stop:step' or a single value."""
    parts = text.split(":")
    if len(parts) not in (1, 3):
        raise ConfigError(f"grid must be 'start:stop:step' or a single value, got {text!r}")
    try:
        numbers = [float(p) for p in parts]
    except ValueError:
        raise ConfigError(f"grid {text!r} contains a non-numeric field") from None
    if len(numbers) == 1:
        return numbers
    start, stop, step = numbers
    if step <= 0 or stop < start:
        raise ConfigError(f"bad grid {text!r}")
    return grid_points(start, stop, step)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eonoise",
        description="Equalized-odds postprocessing under a corrupted protected attribute",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="analytic flip-rate sweep to CSV")
    p.add_argument("--config", required=True, help="flat key=value config file")
    p.add_argument("--out", default=None, help="output CSV path (overrides config)")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("dataset", help="record-level corruption experiment to CSV")
    p.add_argument("records", help="record CSV (header y,a,a_c,score,yhat)")
    p.add_argument("--scenario", required=True, choices=SCENARIO_KINDS)
    p.add_argument("--grid", required=True, help="perturbation levels, 'start:stop:step'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_dataset)

    p = sub.add_parser("bound", help="print the bias shrink factor")
    p.add_argument("gamma1", type=float)
    p.add_argument("gamma2", type=float)
    p.add_argument("p", type=float)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("reproduce-lemma1",
                       help="settings where corrupted training raises the bias")
    p.add_argument("mode", choices=LEMMA1_MODES)
    p.add_argument("--flip", type=float, default=0.15,
                   help="prediction-dependent flip probability for a_violated")
    p.add_argument("--gamma", type=float, default=0.7,
                   help="uniform flip probability for b_violated")
    p.set_defaults(func=_cmd_counterexample)

    p = sub.add_parser("estimate", help="estimate instance parameters from records")
    p.add_argument("records")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_estimate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (RecordsError, ZeroCellError, EmptyCellError, MissingColumnError,
            RangeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (DegenerateProgramError, AssertionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    raise SystemExit(main())
