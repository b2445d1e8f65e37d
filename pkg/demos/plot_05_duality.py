"""
Pairing with copositive tensors
===============================

Completely positive and copositive tensors are dual cones: ``A . B`` is a
sum of ``B u^m`` over the CP factors of ``A``, and each of those is
nonnegative when ``B`` is copositive.  Copositivity itself is only sampled
here, on a simplex grid plus random points.
"""

import numpy as np

from cptensor import SymTensor
from cptensor.cone import (
    all_ones,
    copositivity_grid_check,
    duality_pairing_check,
    sample_copositive,
)
from cptensor.elimination import eliminate
from cptensor.worked_examples import example_tensor

A = example_tensor("m4_3")
d, _ = eliminate(A)
print(duality_pairing_check(d, all_ones(4, 10), 6).details["pairing"])

###############################################################################
# A tensor with negative entries whose diagonal covers them.
rng = np.random.default_rng(3)
B = sample_copositive(4, 10, rng, negative=True)
report = duality_pairing_check(d, B, 6)
print(report.summary(), report.details["pairing"], report.details["by_factors"])

###############################################################################
# A failing test returns a witness point on the simplex.
C = SymTensor(2, 2, {(1, 1): 1, (1, 2): -3, (2, 2): 1})
verdict = copositivity_grid_check(C, 4)
print(verdict.witness, verdict.value)
