"""
Are the extremal functions Wigner functions?
============================================

A positive phase-space function can still fail to be a quantum state.
The overlap with any pure state must be non-negative; number states
make convenient probes.
"""

from wigner_bounds import bounds
from wigner_bounds.extremal import ExtremalSpec, solve
from wigner_bounds.phase_space import Thermal
from wigner_bounds.physicality import check_candidate

for mu_g in (0.2, 0.5, 0.8):
    for branch, param in bounds.ratio_locus(1 / mu_g):
        W = solve(ExtremalSpec(mu_g, branch, param)).form
        rep = check_candidate(W, n_max=10)
        print(f"mu_g={mu_g} {branch.value} param={param:.5f} -> {rep.verdict_label}")
        for n, v in rep.overlaps[: rep.first_negative_n + 1]:
            print(f"    <{n}|rho|{n}> = {v:+.6f}")

# thermal states: overlaps are the Bose-Einstein populations
rep = check_candidate(Thermal(1.0), n_max=6)
print("\nthermal C=1:", rep.verdict_label)
print([round(v, 6) for _, v in rep.overlaps])
