"""
Tail dependence along the diagonal
==================================

The ratio C(u, u) / u measures how often both variables are extreme
together. For Clayton it settles at 2^(-1/theta); for the Gaussian copula it
keeps falling toward zero, just slowly.
"""

import numpy as np

from copulakit import CopulaFamily, tail_coefficients, tail_limit_numeric

u = np.array([1e-2, 1e-3, 1e-4, 1e-5, 1e-6])

for c in (CopulaFamily.clayton(2.0), CopulaFamily.gaussian(0.8), CopulaFamily.gumbel(2.44)):
    ratios = tail_limit_numeric(c, "lower", u)
    print(f"{str(c):<12} lower ratios " + "  ".join(f"{r:.4f}" for r in ratios)
          + f"   limit {tail_coefficients(c).lambda_lower:.4f}")

# The upper tail, probed from the other corner.
upper = 1 - u
for c in (CopulaFamily.gumbel(2.44), CopulaFamily.gaussian(0.8)):
    ratios = tail_limit_numeric(c, "upper", upper)
    print(f"{str(c):<12} upper ratios " + "  ".join(f"{r:.4f}" for r in ratios)
          + f"   limit {tail_coefficients(c).lambda_upper:.4f}")
