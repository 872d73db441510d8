"""Basics: derive a fair randomized predictor from a biased classifier.

A classifier is summarized by four numbers: the probability of predicting +1
in each (label, group) cell.  Postprocessing rerandomizes its output so that
both groups get the same positive rate within each label class, at the
smallest possible error cost.
"""

from eonoise import (
    ProblemInstance,
    bias_derived,
    bias_given,
    derive_predictor,
    error_derived,
    error_given,
)

# A biased but useful classifier on a balanced population: group 0 gets far
# more positives than group 1 in both label classes.
inst = ProblemInstance(
    base=(0.25, 0.25, 0.25, 0.25),
    alpha1=0.9,   # P[pred=+1 | Y=+1, A=0]
    beta1=0.8,    # P[pred=+1 | Y=+1, A=1]
    alpha2=0.4,   # P[pred=+1 | Y=-1, A=0]
    beta2=0.1,    # P[pred=+1 | Y=-1, A=1]
)

print("given classifier:")
print(f"  bias(+1) = {bias_given(inst, 1):.4f}   bias(-1) = {bias_given(inst, -1):.4f}")
print(f"  error    = {error_given(inst):.4f}")

pred = derive_predictor(inst)
print("\nderived predictor (probability of outputting +1 per (prediction, group) cell):")
print(f"  p[+1,0]={pred.p[0]:.4f}  p[+1,1]={pred.p[1]:.4f}"
      f"  p[-1,0]={pred.p[2]:.4f}  p[-1,1]={pred.p[3]:.4f}")
print(f"  bias(+1) = {bias_derived(inst, pred, 1):.2e}   "
      f"bias(-1) = {bias_derived(inst, pred, -1):.2e}")
print(f"  error    = {error_derived(inst, pred):.4f}")

print("\nFairness is exact (both biases vanish); the price is a higher error "
      "than the given classifier's.")
