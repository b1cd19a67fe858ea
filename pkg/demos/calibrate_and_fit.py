"""
Calibrating one family to another, then fitting it back
=======================================================

Start from a Gaussian copula with rho = 0.8, read off its Kendall's tau,
pick the Gumbel parameter with the same tau, then recover that parameter
from a sample by moments and by maximum pseudolikelihood.
"""

from copulakit import (
    CopulaFamily,
    RandomSource,
    fit_moments_tau,
    fit_pseudolikelihood,
    invert_tau,
    kendall_tau,
    rank_transform,
    sample_copula,
    tail_coefficients,
)

tau = kendall_tau(CopulaFamily.gaussian(0.8))
print(f"tau of the Gaussian copula, rho = 0.8: {tau:.6f}")

theta = invert_tau("gumbel", tau)
gumbel = CopulaFamily.gumbel(theta)
print(f"Gumbel parameter with the same tau:     {theta:.4f}")

# Same tau, but the Gumbel copula has an upper tail and the Gaussian has none.
print(f"upper tail coefficient, Gumbel:         {tail_coefficients(gumbel).lambda_upper:.4f}")
print(f"upper tail coefficient, Gaussian:       {tail_coefficients(CopulaFamily.gaussian(0.8)).lambda_upper:.4f}")

# Both estimators only look at ranks.
rs = rank_transform(sample_copula(RandomSource(7), gumbel, 5000))
for fit in (fit_moments_tau(rs, "gumbel"), fit_pseudolikelihood(rs, "gumbel")):
    print(f"{fit.method.value:>4}: theta_hat = {fit.estimate:.4f}  (sample tau {fit.sample_tau:.4f})")
