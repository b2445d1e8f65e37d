"""Worked examples shipped with the package.

Six strongly symmetric, hierarchically dominated nonnegative tensors of
dimension 10 (three of order 3, three of order 4), given as the entry lists
of one multi-index per nonzero similarity class, together with the CP factor
tables produced for them by hierarchical elimination.  Factor tables are
lists of ``(value, support)`` where ``value`` is the common nonzero entry of
the factor printed to four decimals.
"""
from __future__ import annotations

from fractions import Fraction

from .core import SubsetTensor
from .elimination import cp_rank_bound, eliminate, to_cp_factors

__all__ = [
    "EXAMPLES",
    "TABLES",
    "CASE_NAMES",
    "RESTORED",
    "example_tensor",
    "match_table",
    "reproduce_case",
]


def _entries(*items):
    return [(tuple(idx), value) for idx, value in items]


EXAMPLES = {
    "m3_1": (3, 10, _entries(
        ((1, 1, 1), 1), ((2, 2, 2), 5), ((3, 3, 3), 3), ((4, 4, 4), 2),
        ((5, 5, 5), 4), ((6, 6, 6), 2), ((7, 7, 7), 2), ((8, 8, 8), 2),
        ((9, 9, 9), 5), ((10, 10, 10), 4), ((1, 5, 5), 1), ((2, 3, 3), 1),
        ((2, 6, 6), 1), ((2, 8, 8), 1), ((3, 4, 4), 1), ((3, 5, 5), 1),
        ((4, 5, 5), 1), ((5, 9, 9), 1), ((6, 9, 9), 1), ((7, 9, 9), 1),
        ((7, 10, 10), 1), ((8, 10, 10), 1), ((9, 10, 10), 1), ((2, 6, 9), 1),
        ((2, 8, 10), 1), ((3, 4, 5), 1), ((7, 9, 10), 1),
        # forced by the supports {2, 6, 9} and {2, 8, 10}; see RESTORED
        ((2, 9, 9), 1), ((2, 10, 10), 1),
    )),
    "m3_2": (3, 10, _entries(
        ((1, 1, 1), 2), ((2, 2, 2), 5), ((3, 3, 3), 6), ((4, 4, 4), 2),
        ((5, 5, 5), 3), ((8, 8, 8), 6), ((9, 9, 9), 6), ((10, 10, 10), 4),
        ((1, 5, 5), 1), ((1, 10, 10), 1), ((2, 3, 3), 1), ((2, 8, 8), 1),
        ((2, 9, 9), 2), ((2, 10, 10), 1), ((3, 4, 4), 1), ((3, 8, 8), 2),
        ((3, 9, 9), 2), ((4, 8, 8), 1), ((5, 8, 8), 1), ((5, 10, 10), 1),
        ((8, 9, 9), 1), ((9, 10, 10), 1), ((1, 5, 10), 1), ((2, 3, 9), 1),
        ((2, 9, 10), 1), ((3, 4, 8), 1), ((3, 8, 9), 1),
    )),
    "m3_3": (3, 10, _entries(
        ((2, 2, 2), 4), ((3, 3, 3), 6), ((4, 4, 4), 7), ((5, 5, 5), 4),
        ((7, 7, 7), 4), ((8, 8, 8), 6), ((9, 9, 9), 4), ((10, 10, 10), 3),
        ((2, 3, 3), 1), ((2, 4, 4), 1), ((2, 5, 5), 1), ((2, 8, 8), 1),
        ((3, 4, 4), 1), ((3, 5, 5), 1), ((3, 7, 7), 1), ((3, 8, 8), 2),
        ((4, 5, 5), 2), ((4, 7, 7), 1), ((4, 9, 9), 1), ((4, 10, 10), 1),
        ((7, 8, 8), 1), ((7, 9, 9), 1), ((8, 9, 9), 1), ((8, 10, 10), 1),
        ((9, 10, 10), 1), ((2, 3, 8), 1), ((2, 4, 5), 1), ((3, 4, 5), 1),
        ((3, 7, 8), 1), ((4, 7, 9), 1), ((8, 9, 10), 1),
    )),
    "m4_1": (4, 10, _entries(
        ((1, 1, 1, 1), 1), ((2, 2, 2, 2), 6), ((4, 4, 4, 4), 6),
        ((5, 5, 5, 5), 2), ((6, 6, 6, 6), 3), ((7, 7, 7, 7), 4),
        ((8, 8, 8, 8), 8), ((9, 9, 9, 9), 12), ((10, 10, 10, 10), 4),
        ((1, 10, 10, 10), 1), ((2, 4, 4, 4), 2), ((2, 8, 8, 8), 2),
        ((2, 9, 9, 9), 2), ((4, 8, 8, 8), 2), ((4, 9, 9, 9), 2),
        ((5, 7, 7, 7), 1), ((5, 9, 9, 9), 1), ((6, 7, 7, 7), 1),
        ((6, 9, 9, 9), 1), ((6, 10, 10, 10), 1), ((7, 9, 9, 9), 2),
        ((8, 9, 9, 9), 3), ((8, 10, 10, 10), 1), ((9, 10, 10, 10), 1),
        ((2, 4, 8, 8), 1), ((2, 4, 9, 9), 1), ((2, 8, 9, 9), 1),
        ((4, 8, 9, 9), 1), ((5, 7, 9, 9), 1), ((6, 7, 9, 9), 1),
        ((8, 9, 10, 10), 1), ((2, 4, 8, 9), 1),
    )),
    "m4_2": (4, 10, _entries(
        ((1, 1, 1, 1), 9), ((2, 2, 2, 2), 6), ((3, 3, 3, 3), 8),
        ((4, 4, 4, 4), 1), ((5, 5, 5, 5), 1), ((6, 6, 6, 6), 4),
        ((7, 7, 7, 7), 6), ((8, 8, 8, 8), 6), ((9, 9, 9, 9), 9),
        ((10, 10, 10, 10), 2), ((1, 2, 2, 2), 1), ((1, 3, 3, 3), 2),
        ((1, 5, 5, 5), 1), ((1, 7, 7, 7), 1), ((1, 8, 8, 8), 2),
        ((1, 9, 9, 9), 2), ((2, 3, 3, 3), 1), ((2, 6, 6, 6), 2),
        ((2, 7, 7, 7), 2), ((3, 6, 6, 6), 1), ((3, 8, 8, 8), 2),
        ((3, 9, 9, 9), 2), ((4, 9, 9, 9), 1), ((6, 7, 7, 7), 1),
        ((7, 9, 9, 9), 1), ((7, 10, 10, 10), 1), ((8, 9, 9, 9), 2),
        ((9, 10, 10, 10), 1), ((1, 2, 7, 7), 1), ((1, 3, 8, 8), 1),
        ((1, 3, 9, 9), 1), ((1, 8, 9, 9), 1), ((2, 3, 6, 6), 1),
        ((2, 6, 7, 7), 1), ((3, 8, 9, 9), 1), ((7, 9, 10, 10), 1),
        ((1, 3, 8, 9), 1),
    )),
    "m4_3": (4, 10, _entries(
        ((1, 1, 1, 1), 18), ((2, 2, 2, 2), 6), ((3, 3, 3, 3), 4),
        ((4, 4, 4, 4), 2), ((5, 5, 5, 5), 26), ((6, 6, 6, 6), 18),
        ((8, 8, 8, 8), 8), ((9, 9, 9, 9), 24), ((10, 10, 10, 10), 8),
        ((1, 5, 5, 5), 6), ((1, 6, 6, 6), 4), ((1, 8, 8, 8), 2),
        ((1, 9, 9, 9), 4), ((1, 10, 10, 10), 2), ((2, 5, 5, 5), 2),
        ((2, 6, 6, 6), 2), ((2, 9, 9, 9), 2), ((3, 4, 4, 4), 1),
        ((3, 9, 9, 9), 2), ((3, 10, 10, 10), 1), ((4, 9, 9, 9), 1),
        ((5, 6, 6, 6), 6), ((5, 8, 8, 8), 3), ((5, 9, 9, 9), 7),
        ((5, 10, 10, 10), 2), ((6, 8, 8, 8), 2), ((6, 9, 9, 9), 4),
        ((8, 9, 9, 9), 1), ((9, 10, 10, 10), 3), ((1, 5, 6, 6), 2),
        ((1, 5, 8, 8), 1), ((1, 5, 9, 9), 2), ((1, 5, 10, 10), 1),
        ((1, 6, 8, 8), 1), ((1, 6, 9, 9), 1), ((1, 9, 10, 10), 1),
        ((2, 5, 6, 6), 1), ((2, 5, 9, 9), 1), ((2, 6, 9, 9), 1),
        ((3, 4, 9, 9), 1), ((3, 9, 10, 10), 1), ((5, 6, 8, 8), 1),
        ((5, 6, 9, 9), 2), ((5, 8, 9, 9), 1), ((5, 9, 10, 10), 1),
        ((1, 5, 6, 8), 1), ((1, 5, 6, 9), 1), ((1, 5, 9, 10), 1),
        ((2, 5, 6, 9), 1),
    )),
}

CASE_NAMES = tuple(EXAMPLES)

# Classes missing from the printed entry list of a case.  Without them the
# case violates zero-pattern dominance ({2, 9} lies under {2, 6, 9}) and its
# factor table does not reproduce it.
RESTORED = {"m3_1": ((2, 9, 9), (2, 10, 10))}


def _table(*items):
    return [(Fraction(value), tuple(support)) for value, support in items]


# Printed factor tables, in printed order (level-major, then lexicographic).
TABLES = {
    "m3_1": _table(
        ("1", (2, 6, 9)), ("1", (2, 8, 10)), ("1", (3, 4, 5)), ("1", (7, 9, 10)),
        ("1", (1, 5)), ("1", (2, 3)), ("1", (5, 9)),
        ("1.2599", (2,)), ("1", (3,)), ("1", (4,)), ("1", (5,)), ("1", (6,)),
        ("1", (7,)), ("1", (8,)), ("1.2599", (9,)), ("1.2599", (10,)),
    ),
    "m3_2": _table(
        ("1", (1, 5, 10)), ("1", (2, 3, 9)), ("1", (2, 9, 10)), ("1", (3, 4, 8)),
        ("1", (3, 8, 9)), ("1", (2, 8)), ("1", (5, 8)),
        ("1", (1,)), ("1.2599", (2,)), ("1.4422", (3,)), ("1", (4,)), ("1", (5,)),
        ("1.2599", (8,)), ("1.4422", (9,)), ("1.2599", (10,)),
    ),
    "m3_3": _table(
        ("1", (2, 3, 8)), ("1", (2, 4, 5)), ("1", (3, 4, 5)), ("1", (3, 7, 8)),
        ("1", (4, 7, 9)), ("1", (8, 9, 10)), ("1", (4, 10)),
        ("1.2599", (2,)), ("1.4422", (3,)), ("1.4422", (4,)), ("1.2599", (5,)),
        ("1.2599", (7,)), ("1.4422", (8,)), ("1.2599", (9,)), ("1", (10,)),
    ),
    "m4_1": _table(
        ("1", (2, 4, 8, 9)), ("1", (5, 7, 9)), ("1", (6, 7, 9)), ("1", (8, 9, 10)),
        ("1", (1, 10)), ("1", (2, 4)), ("1", (2, 8)), ("1", (2, 9)), ("1", (4, 8)),
        ("1", (4, 9)), ("1", (6, 10)), ("1", (8, 9)),
        ("1.1892", (2,)), ("1.1892", (4,)), ("1", (5,)), ("1", (6,)),
        ("1.1892", (7,)), ("1.3161", (8,)), ("1.4953", (9,)), ("1", (10,)),
    ),
    "m4_2": _table(
        ("1", (1, 3, 8, 9)), ("1", (1, 2, 7)), ("1", (2, 3, 6)), ("1", (2, 6, 7)),
        ("1", (7, 9, 10)), ("1", (1, 3)), ("1", (1, 5)), ("1", (1, 8)),
        ("1", (1, 9)), ("1", (3, 8)), ("1", (3, 9)), ("1", (4, 9)), ("1", (8, 9)),
        ("1.3161", (1,)), ("1.3161", (2,)), ("1.3161", (3,)), ("1.1892", (6,)),
        ("1.3161", (7,)), ("1.1892", (8,)), ("1.3161", (9,)), ("1", (10,)),
    ),
    "m4_3": _table(
        ("1", (1, 5, 6, 8)), ("1", (1, 5, 6, 9)), ("1", (1, 5, 9, 10)),
        ("1", (2, 5, 6, 9)), ("1", (3, 4, 9)), ("1", (3, 9, 10)), ("1", (5, 8, 9)),
        ("1.3161", (1, 5)), ("1.1892", (1, 6)), ("1", (1, 8)), ("1.1892", (1, 9)),
        ("1", (1, 10)), ("1", (2, 5)), ("1", (2, 6)), ("1", (2, 9)),
        ("1.3161", (5, 6)), ("1", (5, 8)), ("1.3161", (5, 9)), ("1", (5, 10)),
        ("1", (6, 8)), ("1.1892", (6, 9)), ("1", (9, 10)),
        ("1.5651", (1,)), ("1.1892", (2,)), ("1.1892", (3,)), ("1", (4,)),
        ("1.7321", (5,)), ("1.5651", (6,)), ("1.3161", (8,)), ("1.7321", (9,)),
        ("1.3161", (10,)),
    ),
}


def example_tensor(name: str, as_printed: bool = False) -> SubsetTensor:
    """Return the named worked example as an exact :class:`SubsetTensor`.

    ``as_printed=True`` drops the classes listed in :data:`RESTORED`.
    """
    m, n, entries = EXAMPLES[name]
    skip = set(RESTORED.get(name, ())) if as_printed else set()
    values = {}
    for idx, value in entries:
        if idx in skip:
            continue
        key = tuple(sorted(set(idx)))
        if key in values:
            raise ValueError(f"duplicate class {key} in example {name}")
        values[key] = Fraction(value)
    return SubsetTensor(m, n, values)


def match_table(factors, table, tol: float = 5e-5):
    """Compare CP factors with a printed table as ``(value, support)`` multisets.

    Returns the list of mismatches as ``(got, expected)`` pairs; an empty list
    means the table is reproduced.  Each factor is summarised by its common
    nonzero value and its support.
    """
    got = sorted(
        (support, float(u[support[0] - 1]))
        for u, support in zip(factors.factors, factors.supports)
    )
    want = sorted((support, float(value)) for value, support in table)
    mismatches = []
    for g, w in zip(got, want):
        if g[0] != w[0] or abs(g[1] - w[1]) > tol:
            mismatches.append((g, w))
    for extra in got[len(want):]:
        mismatches.append((extra, None))
    for missing in want[len(got):]:
        mismatches.append((None, missing))
    return mismatches


def reproduce_case(name: str, backend: str = "rational"):
    """Eliminate a worked example and compare its factors with the table.

    Returns a dict with the decomposition, factors, residual norm, rank
    bound and table mismatches.
    """
    A = example_tensor(name)
    if backend == "float":
        A = A.as_float()
    d, trace = eliminate(A)
    factors = to_cp_factors(d)
    return {
        "name": name,
        "tensor": A,
        "decomposition": d,
        "factors": factors,
        "residual": trace.residual_norm,
        "bound": cp_rank_bound(A.shape),
        "mismatches": match_table(factors, TABLES[name]),
    }
