"""Domain types: the joint (label, attribute) distribution, the given
classifier's conditional rates, attribute-flip specifications, and derived
randomized predictors.

Conventions used throughout the package:

* labels take values +1 / -1, attributes take values 0 / 1;
* every 4-tuple over (label, attribute) cells is ordered as ``CELLS``,
  i.e. ``((+1, 0), (+1, 1), (-1, 0), (-1, 1))``;
* predictor probability vectors use the same order with the *given
  prediction* in place of the label, so ``p = (p[+1,0], p[+1,1],
  p[-1,0], p[-1,1])``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Mapping

from .errors import NormalizationError, RangeError, ZeroCellError

Y_VALUES = (1, -1)
A_VALUES = (0, 1)

#: Fixed (label, attribute) cell order for all 4-tuples in the package.
CELLS = ((1, 0), (1, 1), (-1, 0), (-1, 1))
CELL_INDEX = {cell: i for i, cell in enumerate(CELLS)}

#: Fixed (label, attribute, prediction) order for prediction-dependent flip rates.
GENERAL_KEYS = tuple((y, a, yt) for (y, a) in CELLS for yt in Y_VALUES)
GENERAL_INDEX = {key: i for i, key in enumerate(GENERAL_KEYS)}

NORMALIZATION_TOL = 1e-12

#: Probability vector that reproduces the given classifier unchanged.
GIVEN_PREDICTOR_P = (1.0, 1.0, 0.0, 0.0)


@dataclass(frozen=True)
class ProblemInstance:
    """Joint distribution of (label, attribute) plus the given classifier.

    ``base[i]`` is P[Y=y, A=a] for the i-th cell of ``CELLS``.  ``alpha1``
    is P[prediction=+1 | Y=+1, A=0], ``beta1`` the same rate for A=1, and
    ``alpha2`` / ``beta2`` the corresponding rates for Y=-1.  All four base
    cells must be strictly positive and sum to one.
    """

    base: tuple[float, float, float, float]
    alpha1: float
    beta1: float
    alpha2: float
    beta2: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "base", tuple(float(b) for b in self.base))
        for name in ("alpha1", "beta1", "alpha2", "beta2"):
            object.__setattr__(self, name, float(getattr(self, name)))
        _check_instance(self)

    def cell(self, y: int, a: int) -> float:
        """P[Y=y, A=a]."""
        return self.base[CELL_INDEX[(y, a)]]

    def rate(self, y: int, a: int) -> float:
        """P[prediction=+1 | Y=y, A=a]."""
        if y == 1:
            return self.alpha1 if a == 0 else self.beta1
        return self.alpha2 if a == 0 else self.beta2

    def label_prob(self, y: int) -> float:
        """P[Y=y]."""
        return self.cell(y, 0) + self.cell(y, 1)

    def attr_given_label(self, y: int) -> float:
        """P[A=1 | Y=y]."""
        return self.cell(y, 1) / self.label_prob(y)

    def joint(self, y: int, a: int, yt: int) -> float:
        """P[Y=y, A=a, prediction=yt]."""
        r = self.rate(y, a)
        return self.cell(y, a) * (r if yt == 1 else 1.0 - r)


def _check_instance(inst: ProblemInstance) -> None:
    for (y, a), b in zip(CELLS, inst.base):
        if not b > 0.0:
            raise ZeroCellError(f"P[Y={y}, A={a}] = {b} must be strictly positive")
    total = sum(inst.base)
    if abs(total - 1.0) > NORMALIZATION_TOL:
        raise NormalizationError(f"base probabilities sum to {total!r}, not 1")
    for name in ("alpha1", "beta1", "alpha2", "beta2"):
        v = getattr(inst, name)
        if not 0.0 <= v <= 1.0:
            raise RangeError(f"{name} = {v} outside [0, 1]")


def validate_instance(inst: ProblemInstance) -> ProblemInstance:
    """Re-check all instance invariants and return the instance unchanged.

    Instances are already validated on construction; this is the explicit,
    idempotent gate for values that arrive from outside the package.
    """
    _check_instance(inst)
    return inst


@dataclass(frozen=True)
class PerturbationSpec:
    """Conditional flip probabilities of the attribute seen in training.

    ``kind == "restricted"`` stores P[corrupted != A | Y=y, A=a] for the four
    ``CELLS``; the flips cannot depend on the prediction.  ``kind ==
    "general"`` stores P[corrupted != A | Y=y, A=a, prediction=yt] for the
    eight ``GENERAL_KEYS`` and can express prediction-dependent corruption.
    """

    kind: Literal["restricted", "general"]
    rates: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.kind not in ("restricted", "general"):
            raise RangeError(f"unknown perturbation kind {self.kind!r}")
        expected = 4 if self.kind == "restricted" else 8
        rates = tuple(float(g) for g in self.rates)
        if len(rates) != expected:
            raise RangeError(f"{self.kind} spec needs {expected} rates, got {len(rates)}")
        for g in rates:
            if not 0.0 <= g <= 1.0:
                raise RangeError(f"flip probability {g} outside [0, 1]")
        object.__setattr__(self, "rates", rates)

    @classmethod
    def restricted(cls, g10: float, g11: float, gm10: float, gm11: float) -> "PerturbationSpec":
        """Prediction-independent rates in ``CELLS`` order."""
        return cls("restricted", (g10, g11, gm10, gm11))

    @classmethod
    def uniform(cls, gamma: float) -> "PerturbationSpec":
        """A single flip probability for every (label, attribute) cell."""
        return cls.restricted(gamma, gamma, gamma, gamma)

    @classmethod
    def general(cls, entries: Mapping[tuple[int, int, int], float] | None = None,
                default: float = 0.0) -> "PerturbationSpec":
        """Prediction-dependent rates; ``entries`` maps (y, a, yt) to a rate."""
        table = dict.fromkeys(GENERAL_KEYS, float(default))
        for key, value in (entries or {}).items():
            if key not in table:
                raise RangeError(f"unknown flip key {key!r}, expected (label, attribute, prediction)")
            table[key] = float(value)
        return cls("general", tuple(table[k] for k in GENERAL_KEYS))

    def gamma(self, y: int, a: int) -> float:
        """P[corrupted != A | Y=y, A=a] for a restricted spec."""
        if self.kind != "restricted":
            raise RangeError("per-cell rate without a prediction value needs a restricted spec")
        return self.rates[CELL_INDEX[(y, a)]]

    def gamma_given_pred(self, y: int, a: int, yt: int) -> float:
        """P[corrupted != A | Y=y, A=a, prediction=yt]; restricted specs ignore yt."""
        if self.kind == "restricted":
            return self.rates[CELL_INDEX[(y, a)]]
        return self.rates[GENERAL_INDEX[(y, a, yt)]]

    @property
    def is_zero(self) -> bool:
        return all(g == 0.0 for g in self.rates)


def lift_perturbation(spec: PerturbationSpec) -> PerturbationSpec:
    """Canonicalize a spec to general form.

    A restricted spec becomes a general one whose rates do not depend on the
    prediction; a general spec is returned unchanged.
    """
    if spec.kind == "general":
        return spec
    return PerturbationSpec(
        "general", tuple(spec.gamma(y, a) for (y, a, _yt) in GENERAL_KEYS)
    )


@dataclass(frozen=True)
class DerivedPredictor:
    """Randomized postprocessing rule: predict +1 with probability
    ``p[(prediction, attribute)]`` when the given classifier says
    ``prediction`` and the true attribute is ``attribute``.
    """

    p: tuple[float, float, float, float]
    source: Literal["clean", "corrupted"]
    tie_break_applied: bool = False

    def __post_init__(self) -> None:
        vals = []
        for v in self.p:
            v = float(v)
            if abs(v) <= 1e-12:
                v = 0.0
            elif abs(v - 1.0) <= 1e-12:
                v = 1.0
            if not 0.0 <= v <= 1.0:
                raise RangeError(f"predictor probability {v} outside [0, 1]")
            vals.append(v)
        object.__setattr__(self, "p", tuple(vals))
        if self.source not in ("clean", "corrupted"):
            raise RangeError(f"unknown predictor source {self.source!r}")

    def prob(self, yt: int, a: int) -> float:
        """P[output=+1 | prediction=yt, A=a]."""
        return self.p[CELL_INDEX[(yt, a)]]

    @property
    def is_constant(self) -> bool:
        return len(set(self.p)) == 1
