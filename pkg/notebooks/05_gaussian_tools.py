"""
Covariance matrices and the Williamson form
===========================================
"""

import numpy as np

from wigner_bounds import CovarianceMatrix, gaussian_reference, williamson_1mode, symplectic_transform
from wigner_bounds.phase_space import Thermal, covariance_of, overlap, purity

cov = CovarianceMatrix(3.0, 1.0, 2.0)
print("det", cov.det, "physical", cov.is_physical())

G = gaussian_reference(cov)
print("purity from det:", G.purity)

S, C = williamson_1mode(cov)
print("S =\n", S)
print("S gamma S^T =\n", S @ cov.matrix @ S.T)
print("thermal parameter C =", C)

# move a thermal state back onto the original covariance
W = symplectic_transform(Thermal(C), np.linalg.inv(S))
print("covariance after transform:\n", covariance_of(W).matrix)
print("purity preserved:", purity(W), 1 / (2 * C))
print("overlap with reference:", overlap(W, G.wigner()))
