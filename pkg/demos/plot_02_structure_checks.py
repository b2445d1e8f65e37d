"""
Necessary conditions and their witnesses
========================================

Each check returns a report listing every violated inequality, so a failing
tensor comes with the sets that break it.
"""

from fractions import Fraction

from cptensor import SubsetTensor
from cptensor.checks import (
    check_diagonal_mean_dominance,
    check_hierarchical_dominance,
    check_zero_pattern_dominance,
    run_all,
)
from cptensor.worked_examples import example_tensor

A = example_tensor("m3_1")
for report in run_all(A):
    print(report.summary())

###############################################################################
# Lower the value on {2} from 5 to 2.  The supersets {2, j} still sum to 5.
values = dict(A.values)
values[(2,)] = Fraction(2)
for v in check_hierarchical_dominance(SubsetTensor(3, 10, values)).violations:
    print(v)

###############################################################################
# A 2x2 matrix with a large off-diagonal entry fails the diagonal mean test.
M = SubsetTensor(2, 2, {(1,): 1, (2,): 1, (1, 2): 10})
for v in check_diagonal_mean_dominance(M).violations:
    print(v)

###############################################################################
# Dropping two entries from the first example leaves {2,6,9} nonzero while
# {2,9} is zero, which no CP tensor allows.
broken = example_tensor("m3_1", as_printed=True)
for v in check_zero_pattern_dominance(broken).violations:
    print(v)
