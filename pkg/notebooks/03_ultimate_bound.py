"""
Ultimate bound vs. coherent-state mixtures
==========================================

Setting the extremal purity to one gives a bound that holds for any
purity.  Symmetric mixtures of two coherent states are physical and
positive, so they give a lower estimate of the best achievable value.
"""

import numpy as np

from wigner_bounds import bounds

grid = np.linspace(0.1, 1.0, 10)
upper = bounds.ultimate_upper_curve(grid)

d = [bounds.displacement_for(m) for m in grid]
lower = bounds.coherent_lower_estimate(d)

print(" mu_g    upper    lower")
for m, u, lo in zip(grid, upper.delta, bounds.resample(lower, grid)):
    print(f"{m:5.2f}  {u:7.4f}  {lo:7.4f}")

# which branch attains the max on the mu_ex = 1 plane
for m in (0.3, 0.9, 0.95):
    pts = bounds.ultimate_upper_points(m)
    print(m, [(p.branch.value, round(p.param, 4), round(p.delta_ex, 4)) for p in pts])

# close to mu_g = 1 the extremal plane is reached on the one-root branch
print("just below 1:", bounds.ultimate_upper(0.9999), " at 1:", bounds.ultimate_upper(1.0))

# one coherent mixture in detail
mu_g, mu, ov, delta = bounds.coherent_mixture_point(1.0)
print("\nd=1: mu_g=%.6f mu=%.6f overlap=%.6f delta=%.6f" % (mu_g, mu, ov, delta))
print("CS lower", bounds.cs_delta_lower(mu, mu_g), " extremal", bounds.delta_ex_at(mu, mu_g))
