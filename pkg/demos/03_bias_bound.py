"""The bias bound and its shrink factor.

Under prediction-independent flips with per-class rates (g0, g1), the
derived predictor's bias for that class is at most the given classifier's
bias times a factor F.  F is zero with no noise, strictly increasing in each
flip rate, below one while g0 + g1 < 1, and exactly one on the g0 + g1 = 1
line; past that line the guarantee is gone.
"""

import numpy as np

from eonoise import bias_shrink_factor

print("F over a grid of flip rates at group share p = 0.5:")
rates = np.linspace(0.0, 0.8, 5)
header = "g1\\g0 " + "".join(f"{g0:8.2f}" for g0 in rates)
print(header)
for g1 in rates:
    row = f"{g1:5.2f}" + "".join(f"{bias_shrink_factor(gg0, g1, 0.5):8.4f}" for gg0 in rates)
    print(row)

print("\nalong the g0 + g1 = 1 line the factor is exactly one for any share p:")
for g0 in (0.1, 0.35, 0.6, 0.9):
    print(f"  F({g0:.2f}, {1-g0:.2f}, 0.3) = {bias_shrink_factor(g0, 1-g0, 0.3):.12f}")

print("\nrelabeling the groups swaps the rates and complements the share:")
print(f"  F(0.2, 0.5, 0.7) = {bias_shrink_factor(0.2, 0.5, 0.7):.12f}")
print(f"  F(0.5, 0.2, 0.3) = {bias_shrink_factor(0.5, 0.2, 0.3):.12f}")
