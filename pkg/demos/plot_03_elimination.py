"""
Hierarchical elimination step by step
=====================================

Elimination reads off the top level, subtracts those binary powers from
every subset, and moves one level down.  Any strongly symmetric tensor ends
at zero; a hierarchically dominated one also keeps every coefficient
nonnegative.
"""

import numpy as np

from cptensor import Shape
from cptensor.elimination import (
    cp_rank_bound,
    eliminate,
    random_hierarchically_dominated,
    random_subset_tensor,
)

rng = np.random.default_rng(1)
A = random_hierarchically_dominated(Shape(3, 5), rng)
d, trace = eliminate(A, keep_trace=True)
for k, snap in enumerate(trace.snapshots):
    print(f"A^({k}):", {key: str(v) for key, v in snap.items()})
print("coefficients nonnegative:", d.nonnegative, "| terms", len(d),
      "of at most", cp_rank_bound(A.shape))

###############################################################################
# Signed input still eliminates exactly, but the coefficients can go
# negative and then no CP factors follow.
B = random_subset_tensor(Shape(3, 5), rng, density=0.5)
d, trace = eliminate(B)
print("residual", trace.residual_norm, "| negative terms",
      sum(t.coefficient < 0 for t in d.terms))
