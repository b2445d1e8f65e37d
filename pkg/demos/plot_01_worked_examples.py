"""
Rebuilding the worked factor tables
===================================

Six strongly symmetric tensors of order 3 and 4 in dimension 10 ship with
the package.  Eliminating each one gives binary rank-one terms whose CP
factors match the reference tables to four decimals.
"""

from cptensor.worked_examples import CASE_NAMES, reproduce_case
from cptensor.fileformat import render_decomposition

###############################################################################
# One case in detail: the terms, then the factors ``c**(1/m) * v``.
res = reproduce_case("m3_1")
print(render_decomposition(res["decomposition"], "terms"))
print(render_decomposition(res["decomposition"], "factors"))

###############################################################################
# All six cases: factor count, residual, the rank bound and table agreement.
for name in CASE_NAMES:
    res = reproduce_case(name)
    status = "reproduced" if not res["mismatches"] else "mismatch"
    print(f"{name}: {len(res['factors'])} factors (bound {res['bound']}), "
          f"residual {res['residual']}, {status}")
