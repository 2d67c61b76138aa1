"""
Extremal branches and the purity ratio
======================================

The extremal Wigner functions come in two families, split at x_r.
Both the purity and the Gaussian overlap scale with mu_g, so the
non-Gaussianity along each branch depends on the parameter alone.
"""

import numpy as np

from wigner_bounds import bounds

xr = bounds.x_r_root()
print("x_r =", xr)

# the two-root branch runs alpha -> x_r, the one-root branch x_r -> beta
alphas, betas = bounds.branch_params(8)
print("\n branch      param    mu_ex/mu_g  overlap/mu_g  delta_ex")
for a in alphas:
    p = bounds.branch_two_root(1.0, a)
    print(f" two_root  {a:8.4f}  {p.ratio:11.5f}  {p.overlap_ex:11.5f}  {p.delta_ex:8.5f}")
for b in betas:
    p = bounds.branch_one_root(1.0, b)
    print(f" one_root  {b:8.4f}  {p.ratio:11.5f}  {p.overlap_ex:11.5f}  {p.delta_ex:8.5f}")

# the ratio dips below one: the lowest purity is 8/9 of the Gaussian one, at beta = 3
r3, argmin = bounds.purity_extremity_check()
print("\nratio at beta=3:", r3, " (8/9 =", 8 / 9, ")")
print("minimiser:", argmin)

# scaling in mu_g at fixed parameter
for mu_g in (0.2, 0.4, 0.8):
    p = bounds.branch_one_root(mu_g, 5.0)
    print(f"mu_g={mu_g}: mu_ex={p.mu_ex:.6f}  mu_ex/mu_g={p.ratio:.6f}")

# a quick look at the surface: delta as a function of (mu_g, mu)
surface = bounds.upper_surface(np.linspace(0.2, 1.0, 5), samples_per_branch=6)
print("\n", len(surface), "surface points; physical part (mu_ex <= 1):",
      sum(p.mu_ex <= 1 for p in surface))
