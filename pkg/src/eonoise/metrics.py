"""Closed-form bias and error of given and derived predictors, the bias
bound under attribute corruption, assumption checkers, the conditional
independence measure, and the balanced-case closed-form predictor.

Bias for a label class is the absolute gap between the two groups' positive
rates conditioned on that class; error is the probability of disagreeing with
the label.  Both always refer to the test phase, where predictions consult
the *true* attribute regardless of what the training phase saw.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, EmptyCellError, PreconditionError, RangeError
from .model import (
    A_VALUES,
    DerivedPredictor,
    PerturbationSpec,
    ProblemInstance,
    Y_VALUES,
    lift_perturbation,
)
from .programs import build_clean_program, build_corrupted_program

INDEPENDENCE_TOL = 1e-12


def bias_given(inst: ProblemInstance, y: int) -> float:
    """Group gap of the given classifier: |alpha1 - beta1| for label +1,
    |alpha2 - beta2| for label -1."""
    if y == 1:
        return abs(inst.alpha1 - inst.beta1)
    if y == -1:
        return abs(inst.alpha2 - inst.beta2)
    raise RangeError(f"label must be +1 or -1, got {y}")


def bias_derived(inst: ProblemInstance, predictor: DerivedPredictor, y: int) -> float:
    """Group gap of the derived predictor evaluated with the true attribute.

    P[output=+1 | Y=y, A=a] mixes the randomization probabilities with the
    given classifier's rate for that cell, which yields
    |h0*(p[+1,0]-p[-1,0]) - h1*(p[+1,1]-p[-1,1]) + p[-1,0] - p[-1,1]|.
    """
    h0, h1 = inst.rate(y, 0), inst.rate(y, 1)
    p10, p11, pm10, pm11 = predictor.p
    return abs(h0 * (p10 - pm10) - h1 * (p11 - pm11) + pm10 - pm11)


def error_given(inst: ProblemInstance) -> float:
    """P[given prediction != Y]."""
    return (
        inst.label_prob(1)
        + inst.alpha2 * inst.cell(-1, 0)
        - inst.alpha1 * inst.cell(1, 0)
        + inst.beta2 * inst.cell(-1, 1)
        - inst.beta1 * inst.cell(1, 1)
    )


def error_derived(inst: ProblemInstance, predictor: DerivedPredictor) -> float:
    """P[derived output != Y], linear in the randomization probabilities."""
    p10, p11, pm10, pm11 = predictor.p
    c10 = inst.alpha2 * inst.cell(-1, 0) - inst.alpha1 * inst.cell(1, 0)
    c11 = inst.beta2 * inst.cell(-1, 1) - inst.beta1 * inst.cell(1, 1)
    cm10 = inst.cell(-1, 0) - inst.cell(1, 0) - c10
    cm11 = inst.cell(-1, 1) - inst.cell(1, 1) - c11
    return inst.label_prob(1) + c10 * p10 + c11 * p11 + cm10 * pm10 + cm11 * pm11


def bias_shrink_factor(gamma1: float, gamma2: float, p: float) -> float:
    """Multiplier bounding how much of the given classifier's bias survives
    attribute corruption.

    ``gamma1`` is the flip rate of the group whose conditional share is
    ``p``; ``gamma2`` is the other group's flip rate.  Defined on
    [0, 1) x [0, 1) x (0, 1); zero at zero noise, exactly one whenever the
    two flip rates sum to one, strictly increasing in each flip rate, and
    symmetric under relabeling the groups: F(g1, g2, p) = F(g2, g1, 1-p).
    """
    if not (0.0 <= gamma1 < 1.0 and 0.0 <= gamma2 < 1.0 and 0.0 < p < 1.0):
        raise DomainError(
            f"({gamma1}, {gamma2}, {p}) outside [0,1) x [0,1) x (0,1)"
        )
    first = gamma1 * p / (gamma1 * p + (1.0 - gamma2) * (1.0 - p))
    second = (1.0 - gamma1) * p / ((1.0 - gamma1) * p + gamma2 * (1.0 - p))
    return first - second + 1.0


def corrupted_bias_bound(inst: ProblemInstance, spec: PerturbationSpec, y: int) -> float:
    """Upper bound on the derived predictor's bias for label ``y`` when the
    training attribute was corrupted with prediction-independent flips.

    The bound is the given bias times the shrink factor, whose value equals
    the posterior sum P[A=1 | Y=y, corrupted=0] + P[A=0 | Y=y, corrupted=1];
    with p = P[A=1 | Y=y] that is ``bias_shrink_factor(gamma_{y,1},
    gamma_{y,0}, p)``, group 1's flip rate paired with group 1's share.
    """
    if spec.kind != "restricted":
        raise DomainError("bias bound is defined for prediction-independent flips only")
    g0, g1 = spec.gamma(y, 0), spec.gamma(y, 1)
    return bias_given(inst, y) * bias_shrink_factor(g1, g0, inst.attr_given_label(y))


def check_flip_independence(spec: PerturbationSpec) -> tuple[bool, float]:
    """Whether flip rates ignore the prediction, with the largest gap found.

    True (gap 0 up to 1e-12) exactly when, for every (label, attribute)
    cell, the flip probability is the same for both prediction values.
    """
    gen = lift_perturbation(spec)
    gap = 0.0
    for y in Y_VALUES:
        for a in A_VALUES:
            gap = max(gap, abs(gen.gamma_given_pred(y, a, 1) - gen.gamma_given_pred(y, a, -1)))
    return gap <= INDEPENDENCE_TOL, gap


def check_flip_budget(spec: PerturbationSpec, y: int) -> bool:
    """Whether the flip rates for label ``y`` sum to at most one, with each
    rate strictly below one."""
    if spec.kind != "restricted":
        raise DomainError("flip budget is defined for prediction-independent flips only")
    g0, g1 = spec.gamma(y, 0), spec.gamma(y, 1)
    return g0 + g1 <= 1.0 and g0 < 1.0 and g1 < 1.0


def check_classifier_informative(inst: ProblemInstance) -> bool:
    """Whether the given classifier is positively associated with the label
    inside each group: alpha1 > alpha2 and beta1 > beta2 (strict)."""
    return inst.alpha1 > inst.alpha2 and inst.beta1 > inst.beta2


def independence_measure(table) -> float:
    """Largest gap between the conditional joint of (prediction, corrupted
    attribute) given (label, attribute) and the product of its marginals.

    ``table`` is a (2, 2, 2, 2) array of counts or probabilities with axes
    (label, attribute, prediction, corrupted attribute); index 0 stands for
    the value +1 on the label and prediction axes.  Zero exactly when the
    prediction and the corrupted attribute are conditionally independent.
    """
    t = np.asarray(table, dtype=float)
    if t.shape != (2, 2, 2, 2):
        raise RangeError(f"table must be (2, 2, 2, 2), got {t.shape}")
    if (t < 0).any():
        raise RangeError("table cells must be nonnegative")
    worst = 0.0
    for yi, y in enumerate(Y_VALUES):
        for a in A_VALUES:
            cell = t[yi, a]
            mass = cell.sum()
            if mass <= 0.0:
                raise EmptyCellError(f"no mass in conditioning cell (Y={y}, A={a})")
            cond = cell / mass
            product = np.outer(cond.sum(axis=1), cond.sum(axis=0))
            worst = max(worst, float(np.abs(cond - product).max()))
    return worst


def balanced_uniform_predictor(inst: ProblemInstance, gamma: float) -> DerivedPredictor:
    """Closed-form derived predictor for the balanced case with a uniform
    flip rate, the regime where corruption provably cannot raise the error.

    Requires all four base cells equal to 1/4, an informative given
    classifier (alpha1 > alpha2 and beta1 > beta2), and a single flip
    probability gamma in [0, 1/2] shared by every cell.  The construction
    normalizes p[-1,0] to zero, pins p[+1,0] or p[+1,1] to one depending on
    the sign of ``beta2 - beta1 + alpha1 - alpha2 + alpha2*beta1 -
    alpha1*beta2``, and scales the rest by the most negative admissible
    objective value.  When ``alpha2*beta1 < alpha1*beta2`` the two groups are
    swapped internally and the result is swapped back.
    """
    for b in inst.base:
        if abs(b - 0.25) > 1e-12:
            raise PreconditionError("base cells must all equal 1/4")
    if not check_classifier_informative(inst):
        raise PreconditionError("given classifier must satisfy alpha1 > alpha2 and beta1 > beta2")
    if not 0.0 <= gamma <= 0.5:
        raise PreconditionError(f"uniform flip rate {gamma} outside [0, 1/2]")

    a1, b1, a2, b2 = inst.alpha1, inst.beta1, inst.alpha2, inst.beta2
    swapped = a2 * b1 < a1 * b2
    if swapped:
        a1, b1 = b1, a1
        a2, b2 = b2, a2

    u = 0.5 * ((1.0 - gamma) * (a2 - a1) + gamma * (b2 - b1))
    v = 0.5 * ((1.0 - gamma) * (b2 - b1) + gamma * (a2 - a1))
    cross = a1 * b2 - a2 * b1  # <= 0 after orientation
    split_sign = b2 - b1 + a1 - a2 - cross

    if split_sign < 0.0:
        delta = u  # p[+1,0] hits 1 first
    else:
        delta = 2.0 * u * v / (2.0 * u + (1.0 - 2.0 * gamma) * cross)

    p10 = delta / u
    pm11 = delta * (1.0 - 2.0 * gamma) * cross / (2.0 * u * v)
    p11 = delta / v + pm11
    pm10 = 0.0

    if swapped:
        p10, p11 = p11, p10
        pm10, pm11 = pm11, pm10

    probs = []
    for value in (p10, p11, pm10, pm11):
        if not -1e-9 <= value <= 1.0 + 1e-9:
            raise PreconditionError(f"closed form produced probability {value}")
        probs.append(min(1.0, max(0.0, value)))

    source = "clean" if gamma == 0.0 else "corrupted"
    predictor = DerivedPredictor(p=tuple(probs), source=source, tie_break_applied=False)

    if gamma == 0.0:
        program = build_clean_program(inst)
    else:
        program = build_corrupted_program(inst, PerturbationSpec.uniform(gamma))
    assert program.residual(predictor.p) <= 1e-9
    return predictor


@dataclass(frozen=True)
class MetricsReport:
    """Bias and error of the given and derived predictors side by side.

    ``bound_pos`` / ``bound_neg`` carry the corrupted-bias bound when a
    restricted spec with flip rates below one was supplied, and None
    otherwise (the bound's arguments are undefined for prediction-dependent
    flips)."""

    bias_pos_given: float
    bias_neg_given: float
    bias_pos_derived: float
    bias_neg_derived: float
    error_given: float
    error_derived: float
    bound_pos: float | None
    bound_neg: float | None


def build_report(inst: ProblemInstance, predictor: DerivedPredictor,
                 spec: PerturbationSpec | None = None) -> MetricsReport:
    bound_pos = bound_neg = None
    if spec is not None and spec.kind == "restricted" and all(g < 1.0 for g in spec.rates):
        bound_pos = corrupted_bias_bound(inst, spec, 1)
        bound_neg = corrupted_bias_bound(inst, spec, -1)
    return MetricsReport(
        bias_pos_given=bias_given(inst, 1),
        bias_neg_given=bias_given(inst, -1),
        bias_pos_derived=bias_derived(inst, predictor, 1),
        bias_neg_derived=bias_derived(inst, predictor, -1),
        error_given=error_given(inst),
        error_derived=error_derived(inst, predictor),
        bound_pos=bound_pos,
        bound_neg=bound_neg,
    )
