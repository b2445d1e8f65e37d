"""
Eigenvalue signs of CP tensors
==============================

A CP tensor has nonnegative H-eigenvalues, nonnegative Z-eigenvalues when
the order is even, and for odd order a Z-eigenvector of a positive
eigenvalue lies in the nonnegative orthant.  Power iterations find some
eigenpairs; each is checked against its defining equation.
"""

import numpy as np

from cptensor import rank_one
from cptensor.elimination import eliminate, to_cp_factors
from cptensor.worked_examples import example_tensor
from cptensor.spectral import IterationConfig, check_cp_spectral_properties, z_eigenpair_power

for name in ("m3_2", "m4_1"):
    A = example_tensor(name)
    d, _ = eliminate(A)
    report = check_cp_spectral_properties(A, to_cp_factors(d), IterationConfig(starts=4))
    print(name, report.summary())
    print("  H:", sorted(round(p.lam, 6) for p in report.details["h_pairs"]))
    print("  Z:", sorted(round(p.lam, 6) for p in report.details["z_pairs"]))

###############################################################################
# For ``u^m`` the largest Z-eigenvalue is ``||u||^m`` at ``u / ||u||``.
u = np.array([0.5, 1.0, 2.0])
p = z_eigenpair_power(rank_one(u, 3), x0=np.ones(3))
print(p.lam, np.linalg.norm(u) ** 3)
