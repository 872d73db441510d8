"""Finite samples of labeled records and empirical estimation from them."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from .errors import MissingColumnError, RangeError, RecordsError, ZeroCellError
from .model import (
    A_VALUES,
    CELLS,
    DerivedPredictor,
    PerturbationSpec,
    ProblemInstance,
    Y_VALUES,
    lift_perturbation,
)

RECORD_CSV_HEADER = ("y", "a", "a_c", "score", "yhat")


@dataclass(frozen=True)
class RecordSet:
    """Columnar sample of (y, a) rows with optional a_c, score, and yhat.

    y and yhat take values -1/+1, a and a_c take 0/1, score lies in [0, 1].
    When both score and yhat are present, yhat must equal +1 exactly where
    the score exceeds 0.5.
    """

    y: np.ndarray
    a: np.ndarray
    a_c: np.ndarray | None = None
    score: np.ndarray | None = None
    yhat: np.ndarray | None = None
    meta: Mapping = field(default_factory=dict)

    def __post_init__(self) -> None:
        y = np.asarray(self.y, dtype=np.int8)
        a = np.asarray(self.a, dtype=np.int8)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "a", a)
        n = y.shape[0]
        if a.shape[0] != n:
            raise RecordsError("column lengths differ")
        if not np.isin(y, (-1, 1)).all():
            raise RecordsError("y values must be -1 or +1")
        if not np.isin(a, (0, 1)).all():
            raise RecordsError("a values must be 0 or 1")
        for name in ("a_c", "score", "yhat"):
            col = getattr(self, name)
            if col is None:
                continue
            dtype = float if name == "score" else np.int8
            col = np.asarray(col, dtype=dtype)
            object.__setattr__(self, name, col)
            if col.shape[0] != n:
                raise RecordsError("column lengths differ")
        if self.a_c is not None and not np.isin(self.a_c, (0, 1)).all():
            raise RecordsError("a_c values must be 0 or 1")
        if self.yhat is not None and not np.isin(self.yhat, (-1, 1)).all():
            raise RecordsError("yhat values must be -1 or +1")
        if self.score is not None and ((self.score < 0) | (self.score > 1)).any():
            raise RecordsError("scores must lie in [0, 1]")
        if self.score is not None and self.yhat is not None:
            if not ((self.yhat == 1) == (self.score > 0.5)).all():
                raise RecordsError("yhat must be +1 exactly where score > 0.5")

    @property
    def n(self) -> int:
        return int(self.y.shape[0])

    def subset(self, idx) -> "RecordSet":
        take = lambda col: None if col is None else col[idx]
        return RecordSet(y=self.y[idx], a=self.a[idx], a_c=take(self.a_c),
                         score=take(self.score), yhat=take(self.yhat), meta=self.meta)


class EstimatedInstance(NamedTuple):
    instance: ProblemInstance
    counts: tuple[int, int, int, int]


class CorruptedTables(NamedTuple):
    #: (2, 2, 2) frequencies over (label, corrupted attribute, prediction).
    joint: np.ndarray
    #: (2, 2, 2, 2) counts over (label, attribute, prediction, corrupted attribute).
    fourway: np.ndarray


class EvalMetrics(NamedTuple):
    bias_pos: float
    bias_neg: float
    error: float


def _yi(values: np.ndarray) -> np.ndarray:
    """Axis index for -1/+1 columns: 0 for +1, 1 for -1."""
    return (values == -1).astype(np.intp)


def estimate_instance(records: RecordSet) -> EstimatedInstance:
    """Cell frequencies and within-cell positive-prediction rates.

    Every (y, a) cell must contain at least one record; the error names the
    first empty cell found.
    """
    if records.yhat is None:
        raise MissingColumnError("estimation needs a yhat column")
    counts = []
    rates = []
    for (y, a) in CELLS:
        mask = (records.y == y) & (records.a == a)
        c = int(mask.sum())
        if c == 0:
            raise ZeroCellError(f"no records with Y={y}, A={a}")
        counts.append(c)
        rates.append(float((records.yhat[mask] == 1).mean()))
    base = tuple(c / records.n for c in counts)
    inst = ProblemInstance(base=base, alpha1=rates[0], beta1=rates[1],
                           alpha2=rates[2], beta2=rates[3])
    return EstimatedInstance(inst, tuple(counts))


def estimate_corrupted_tables(records: RecordSet) -> CorruptedTables:
    """Empirical tables the corrupted training phase and the independence
    measure consume."""
    if records.yhat is None:
        raise MissingColumnError("estimation needs a yhat column")
    if records.a_c is None:
        raise MissingColumnError("estimation needs an a_c column")

    yi = _yi(records.y)
    yti = _yi(records.yhat)
    joint = np.zeros((2, 2, 2))
    np.add.at(joint, (yi, records.a_c.astype(np.intp), yti), 1.0)
    for i, y in enumerate(Y_VALUES):
        for ac in A_VALUES:
            if joint[i, ac].sum() == 0:
                raise ZeroCellError(f"no records with Y={y}, corrupted attribute={ac}")
    joint /= records.n

    fourway = np.zeros((2, 2, 2, 2))
    np.add.at(fourway, (yi, records.a.astype(np.intp), yti, records.a_c.astype(np.intp)), 1.0)
    for i, y in enumerate(Y_VALUES):
        for a in A_VALUES:
            if fourway[i, a].sum() == 0:
                raise ZeroCellError(f"no records with Y={y}, A={a}")
    return CorruptedTables(joint, fourway)


def evaluate_predictor_on_records(records: RecordSet,
                                  predictor: DerivedPredictor) -> EvalMetrics:
    """Empirical bias and error using the exact expectation over the
    predictor's internal randomization: each record contributes
    p[(yhat, a)] to the positive rate of its (y, a) cell instead of a
    sampled coin flip."""
    if records.yhat is None:
        raise MissingColumnError("evaluation needs a yhat column")
    flat = _yi(records.yhat) * 2 + records.a.astype(np.intp)
    pvals = np.asarray(predictor.p)[flat]

    rate = {}
    for (y, a) in CELLS:
        mask = (records.y == y) & (records.a == a)
        if not mask.any():
            raise ZeroCellError(f"no records with Y={y}, A={a}")
        rate[(y, a)] = float(pvals[mask].mean())
    error = float(np.where(records.y == 1, 1.0 - pvals, pvals).mean())
    return EvalMetrics(
        bias_pos=abs(rate[(1, 0)] - rate[(1, 1)]),
        bias_neg=abs(rate[(-1, 0)] - rate[(-1, 1)]),
        error=error,
    )


def evaluate_predictor_sampled(records: RecordSet, predictor: DerivedPredictor,
                               seed: int, repetitions: int = 100
                               ) -> tuple[EvalMetrics, np.ndarray]:
    """Coin-flip evaluation, averaged over repetitions.

    Cross-check mode for the exact expectation; returns the mean metrics and
    the (repetitions, 3) per-repetition samples.
    """
    if records.yhat is None:
        raise MissingColumnError("evaluation needs a yhat column")
    flat = _yi(records.yhat) * 2 + records.a.astype(np.intp)
    pvals = np.asarray(predictor.p)[flat]
    rng = np.random.default_rng(seed)

    masks = {cell: (records.y == cell[0]) & (records.a == cell[1]) for cell in CELLS}
    for cell, mask in masks.items():
        if not mask.any():
            raise ZeroCellError(f"no records with Y={cell[0]}, A={cell[1]}")

    samples = np.empty((repetitions, 3))
    for rep in range(repetitions):
        outputs = rng.random(records.n) < pvals
        rate = {cell: float(outputs[mask].mean()) for cell, mask in masks.items()}
        error = float(np.where(records.y == 1, ~outputs, outputs).mean())
        samples[rep] = (
            abs(rate[(1, 0)] - rate[(1, 1)]),
            abs(rate[(-1, 0)] - rate[(-1, 1)]),
            error,
        )
    mean = samples.mean(axis=0)
    return EvalMetrics(*map(float, mean)), samples


def split(records: RecordSet, fractions: Sequence[float], seed: int) -> list[RecordSet]:
    """Seeded uniform shuffle followed by contiguous slices.

    Slice boundaries are cumulative floors of n * fraction; when the
    fractions sum to one the last batch absorbs the remainder rows.
    """
    fracs = [float(f) for f in fractions]
    if not fracs or any(f <= 0.0 for f in fracs):
        raise RangeError("fractions must be positive")
    total = sum(fracs)
    if total > 1.0 + 1e-12:
        raise RangeError(f"fractions sum to {total}, more than 1")

    perm = np.random.default_rng(seed).permutation(records.n)
    bounds = [0]
    running = 0.0
    for f in fracs:
        running += f
        bounds.append(int(np.floor(records.n * running + 1e-9)))
    if total >= 1.0 - 1e-9:
        bounds[-1] = records.n
    return [records.subset(perm[bounds[i]:bounds[i + 1]]) for i in range(len(fracs))]


def sample_records(inst: ProblemInstance, n: int, seed: int,
                   spec: PerturbationSpec | None = None,
                   with_scores: bool = False) -> RecordSet:
    """Draw records from the instance's generative model.

    Labels and attributes follow the base cells, predictions follow the
    per-cell rates, and, when a spec is given, the corrupted attribute is
    flipped with the spec's (possibly prediction-dependent) probabilities.
    Scores, when requested, are uniform on the half of [0, 1] consistent
    with the prediction.
    """
    rng = np.random.default_rng(seed)
    cell_idx = rng.choice(4, size=n, p=np.asarray(inst.base))
    y = np.where(cell_idx < 2, 1, -1).astype(np.int8)
    a = (cell_idx % 2).astype(np.int8)
    rates = np.asarray([inst.alpha1, inst.beta1, inst.alpha2, inst.beta2])[cell_idx]
    yhat = np.where(rng.random(n) < rates, 1, -1).astype(np.int8)

    a_c = None
    if spec is not None:
        gen = lift_perturbation(spec)
        # GENERAL_KEYS orders prediction +1 before -1 inside each cell
        flat = cell_idx * 2 + (yhat == -1)
        gammas = np.asarray(gen.rates)[flat]
        flips = rng.random(n) < gammas
        a_c = np.where(flips, 1 - a, a).astype(np.int8)

    score = None
    if with_scores:
        u = rng.random(n)
        score = np.where(yhat == 1, 0.5 + 0.5 * (1.0 - u), 0.5 * u)

    return RecordSet(y=y, a=a, a_c=a_c, score=score, yhat=yhat,
                     meta={"seed": int(seed), "rng": "numpy-pcg64"})


def read_records_csv(path) -> RecordSet:
    """Read the record CSV format: header ``y,a,a_c,score,yhat``, optional
    columns left empty uniformly."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise RecordsError(f"{path}: empty file") from None
        if tuple(h.strip() for h in header) != RECORD_CSV_HEADER:
            raise RecordsError(f"{path}: header must be {','.join(RECORD_CSV_HEADER)}")
        rows = [row for row in reader if row]

    if not rows:
        raise RecordsError(f"{path}: no data rows")
    columns = {name: [] for name in RECORD_CSV_HEADER}
    for lineno, row in enumerate(rows, start=2):
        if len(row) != 5:
            raise RecordsError(f"{path}:{lineno}: expected 5 fields, got {len(row)}")
        for name, value in zip(RECORD_CSV_HEADER, row):
            columns[name].append(value.strip())

    def parse(name, caster):
        values = columns[name]
        present = [v != "" for v in values]
        if not any(present):
            return None
        if not all(present):
            raise RecordsError(f"{path}: column {name} must be filled uniformly")
        try:
            return np.asarray([caster(v) for v in values])
        except ValueError as exc:
            raise RecordsError(f"{path}: bad value in column {name}: {exc}") from None

    y = parse("y", int)
    a = parse("a", int)
    if y is None or a is None:
        raise RecordsError(f"{path}: y and a columns are required")
    return RecordSet(y=y, a=a, a_c=parse("a_c", int),
                     score=parse("score", float), yhat=parse("yhat", int))


def write_records_csv(path, records: RecordSet) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(",".join(RECORD_CSV_HEADER) + "\n")
        for i in range(records.n):
            fields = [str(int(records.y[i])), str(int(records.a[i]))]
            fields.append("" if records.a_c is None else str(int(records.a_c[i])))
            fields.append("" if records.score is None else format(float(records.score[i]), ".12g"))
            fields.append("" if records.yhat is None else str(int(records.yhat[i])))
            fh.write(",".join(fields) + "\n")
