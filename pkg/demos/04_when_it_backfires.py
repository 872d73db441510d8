"""Two corruption patterns under which postprocessing RAISES the bias.

The bias guarantee needs (a) flips that ignore the classifier's prediction
and (b) per-class flip rates summing to at most one.  Violating either one,
even mildly, can leave the "fair" predictor more biased than the classifier
it started from.
"""

from eonoise import (
    PerturbationSpec,
    ProblemInstance,
    bias_derived,
    bias_given,
    check_flip_budget,
    check_flip_independence,
    derive_predictor,
)

balanced = (0.25,) * 4

print("1) prediction-dependent flips (independence violated, budget fine)")
inst = ProblemInstance(base=balanced, alpha1=0.65, beta1=0.6, alpha2=0.0, beta2=0.0)
# only records predicted -1 in cell (Y=+1, A=0) ever get flipped
spec = PerturbationSpec.general({(1, 0, -1): 0.15})
ok, gap = check_flip_independence(spec)
pred = derive_predictor(inst, spec)
print(f"   flip independence: {ok} (gap {gap:.2f})")
print(f"   given bias(+1)     = {bias_given(inst, 1):.4f}")
print(f"   corrupted bias(+1) = {bias_derived(inst, pred, 1):.4f}   <- larger")

print("\n2) over-budget flips (independence fine, budget violated)")
inst = ProblemInstance(base=balanced, alpha1=0.9, beta1=0.8, alpha2=0.4, beta2=0.1)
spec = PerturbationSpec.uniform(0.7)  # 0.7 + 0.7 > 1
pred = derive_predictor(inst, spec)
print(f"   budget ok for class +1: {check_flip_budget(spec, 1)}")
print(f"   given bias(+1)     = {bias_given(inst, 1):.4f}")
print(f"   corrupted bias(+1) = {bias_derived(inst, pred, 1):.4f}   <- larger")

print("\nBoth settings are reproducible from the command line with "
      "`eonoise reproduce-lemma1 a_violated|b_violated`.")
