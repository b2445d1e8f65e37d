from __future__ import annotations

import sys
from fractions import Fraction
from itertools import product
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from cptensor.core import SubsetTensor
from cptensor.worked_examples import CASE_NAMES, EXAMPLES, example_tensor

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def ex1():
    """Order-3 worked example (1)."""
    return example_tensor("m3_1")


@pytest.fixture(params=CASE_NAMES)
def case(request):
    return request.param


def raw_entry(name):
    """Entry lookup straight from the embedded entry list, by distinct set."""
    _, _, entries = EXAMPLES[name]
    table = {frozenset(idx): Fraction(v) for idx, v in entries}
    return lambda idx: table.get(frozenset(idx), Fraction(0))


def brute_full(entry, m, n, x):
    """A x^m summed over all n**m tuples."""
    total = 0
    for t in product(range(1, n + 1), repeat=m):
        p = entry(t)
        for i in t:
            p = p * x[i - 1]
        total += p
    return total


def brute_once(entry, m, n, x):
    out = []
    for i in range(1, n + 1):
        total = 0
        for t in product(range(1, n + 1), repeat=m - 1):
            p = entry((i,) + t)
            for j in t:
                p = p * x[j - 1]
            total += p
        out.append(total)
    return out


def brute_array(entry, m, n):
    arr = np.zeros((n,) * m)
    for t in product(range(1, n + 1), repeat=m):
        arr[tuple(i - 1 for i in t)] = float(entry(t))
    return arr


fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def subset_tensors(draw, max_n=4, orders=(2, 3, 4), values=fractions):
    m = draw(st.sampled_from(orders))
    n = draw(st.integers(1, max_n))
    from cptensor.core import nonempty_subsets

    sets = list(nonempty_subsets(range(1, n + 1), m))
    chosen = draw(st.lists(st.sampled_from(sets), unique=True, max_size=len(sets)))
    return SubsetTensor(m, n, {s: draw(values) for s in chosen})


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("tests.test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
