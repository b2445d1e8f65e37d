"""Structural conditions on (strongly) symmetric nonnegative tensors.

Every check returns a :class:`CheckReport` listing *all* violations found.
The dominance checks are necessary conditions for complete positivity
(zero-pattern, s-duplicate and diagonal-mean dominance) or the sufficient
one that drives elimination (hierarchical dominance).

Comparisons use ``lhs >= rhs - eps`` where ``eps`` is zero for exact tensors
and :data:`cptensor.core.EPS` for float tensors.
"""
from __future__ import annotations

from collections import Counter
from itertools import combinations
from dataclasses import dataclass, field
from fractions import Fraction

from .core import (
    MultiIndex,
    Shape,
    SubsetTensor,
    SymTensor,
    canonicalize,
    class_violations,
    nonempty_subsets,
    to_subset,
)
from .errors import BadDepth, InvalidDuplicate, OrderTooSmall

__all__ = [
    "Violation",
    "CheckReport",
    "SDuplicate",
    "dominated",
    "similar",
    "is_strongly_symmetric",
    "is_nonnegative",
    "check_zero_pattern_dominance",
    "check_s_duplicate",
    "check_diagonal_mean_dominance",
    "check_hierarchical_dominance",
    "check_propagated_dominance",
    "run_all",
]


@dataclass(frozen=True)
class Violation:
    condition: str
    witness: tuple
    lhs: object = None
    rhs: object = None

    def __str__(self):
        return f"{self.condition}: {self.witness} lhs={self.lhs} rhs={self.rhs}"


@dataclass
class CheckReport:
    name: str
    violations: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.passed

    def summary(self) -> str:
        status = "PASS" if self.passed else f"FAIL ({len(self.violations)} violations)"
        return f"{self.name}: {status}"


def dominated(lower, upper) -> bool:
    """``lower`` is dominated by ``upper``: its distinct indices are a subset."""
    return set(lower) <= set(upper)


def similar(a, b) -> bool:
    return set(a) == set(b)


@dataclass(frozen=True)
class SDuplicate:
    """Multi-indices ``members`` proposed as an s-duplicate of ``target``.

    Each member must be dominated by the target, and an index appearing ``t``
    times in the target must appear ``s * t`` times in total across the ``s``
    members.
    """

    target: tuple
    members: tuple

    @property
    def s(self) -> int:
        return len(self.members)

    def validate(self, m: int, n: int):
        shape = Shape(m, n)
        target = canonicalize(self.target, shape)
        if not self.members:
            raise InvalidDuplicate("an s-duplicate needs at least one member")
        counts = Counter()
        for member in self.members:
            member = canonicalize(member, shape)
            if not dominated(member, target):
                bad = min(set(member) - set(target))
                raise InvalidDuplicate(f"member {member} is not dominated by {target}", bad)
            counts.update(member)
        need = Counter(target)
        for i, t in sorted(need.items()):
            if counts[i] != self.s * t:
                raise InvalidDuplicate(
                    f"index {i} appears {t} times in the target but {counts[i]} "
                    f"times across members (expected {self.s * t})",
                    i,
                )


def is_strongly_symmetric(A: SymTensor) -> CheckReport:
    """Entries of similar multi-indices agree (first mismatch per class)."""
    report = CheckReport("strong symmetry")
    for (ref, other), (a, b) in class_violations(A):
        report.violations.append(Violation("strong-symmetry", (ref, other), a, b))
    return report


def is_nonnegative(A) -> CheckReport:
    report = CheckReport("nonnegativity")
    store = A.entries if isinstance(A, SymTensor) else A.values
    for key, v in sorted(store.items()):
        if v < -A.eps:
            report.violations.append(Violation("nonnegative", (key,), v, 0))
    return report


def check_zero_pattern_dominance(A: SubsetTensor) -> CheckReport:
    """Every nonempty ``T`` inside a set ``S`` with nonzero value has ``values[T] > 0``."""
    report = CheckReport("zero-pattern dominance")
    eps = A.eps
    for support, v in A.items():
        if abs(v) <= eps:
            continue
        for sub in nonempty_subsets(support):
            if A.values.get(sub, 0) <= eps:
                report.violations.append(
                    Violation("zero-pattern", (support, sub), A[sub], 0)
                )
    return report


def check_s_duplicate(A, d: SDuplicate) -> CheckReport:
    """Mean of the entries at the members dominates the entry at the target.

    Raises
    ------
    InvalidDuplicate
        If ``d`` is not an s-duplicate of its target.
    """
    d.validate(A.m, A.n)
    report = CheckReport("s-duplicate dominance")
    total = sum((A[member] for member in d.members), Fraction(0) if A.exact else 0.0)
    mean = total / d.s
    rhs = A[d.target]
    if mean < rhs - A.eps:
        report.violations.append(Violation("s-duplicate", (tuple(d.target),), mean, rhs))
    report.details["mean"] = mean
    report.details["target"] = rhs
    return report


def diagonal_duplicate(target) -> SDuplicate:
    """The ``m``-duplicate ``{(j, ..., j) : j in target}`` of ``target``."""
    m = len(target)
    return SDuplicate(tuple(target), tuple((j,) * m for j in target))


def check_diagonal_mean_dominance(A: SubsetTensor) -> CheckReport:
    """``(1/m) sum_p a_{j_p ... j_p} >= a_{j_1 ... j_m}`` for every nonzero class.

    The left side depends on the multiplicities inside the class; the binding
    member repeats the index with the smallest diagonal entry, and that one
    is checked (it implies the inequality for every other member).
    """
    report = CheckReport("diagonal-mean dominance")
    m, eps = A.m, A.eps
    for support, v in A.items():
        if abs(v) <= eps:
            continue
        diag = {j: A.values.get((j,), 0) for j in support}
        low = min(support, key=lambda j: (diag[j], j))
        target = MultiIndex(sorted(support + (low,) * (m - len(support))))
        lhs = sum(diag[j] for j in target)
        lhs = lhs / m if not A.exact else Fraction(lhs, m)
        if lhs < v - eps:
            report.violations.append(Violation("diagonal-mean", (target,), lhs, v))
    return report


def _superset_sums(A: SubsetTensor, depth: int):
    """Map each set ``S`` to the sum of values over supersets ``T`` with ``|T| = |S| + depth``."""
    sums = {}
    for key, v in A.values.items():
        r = len(key) - depth
        if r < 1:
            continue
        for sub in combinations(key, r):
            sums[sub] = sums.get(sub, 0) + v
    return sums


def _dominance(A: SubsetTensor, depth: int, name: str, condition: str) -> CheckReport:
    report = CheckReport(name)
    eps = A.eps
    zero = Fraction(0) if A.exact else 0.0
    sums = _superset_sums(A, depth)
    # sets absent from A and from every sum satisfy 0 >= 0
    for sub in sorted(set(sums) | {k for k in A.values if len(k) <= A.m - depth},
                      key=lambda s: (len(s), s)):
        lhs = A.values.get(sub, zero)
        rhs = sums.get(sub, zero)
        if lhs < rhs - eps:
            report.violations.append(Violation(condition, (sub,), lhs, rhs))
    return report


def check_hierarchical_dominance(A: SubsetTensor) -> CheckReport:
    """Each set's value dominates the sum over its one-larger supersets."""
    if A.m < 2:
        raise OrderTooSmall(f"order {A.m} < 2")
    return _dominance(A, 1, "hierarchical dominance", "hierarchical")


def check_propagated_dominance(A: SubsetTensor, q: int) -> CheckReport:
    """Each set ``S`` with ``|S| <= m - q`` dominates its ``(|S| + q)``-supersets."""
    if not 1 <= q <= A.m - 1:
        raise BadDepth(f"depth {q} outside 1..{A.m - 1}")
    return _dominance(A, q, f"propagated dominance (q={q})", f"propagated-{q}")


def run_all(A) -> list:
    """Every applicable check, strong symmetry first.

    Dense input that is not strongly symmetric stops after that report.
    """
    reports = []
    if isinstance(A, SymTensor):
        sym = is_strongly_symmetric(A)
        reports.append(sym)
        if not sym.passed:
            return reports
        A = to_subset(A)
    reports.append(is_nonnegative(A))
    reports.append(check_zero_pattern_dominance(A))
    reports.append(check_diagonal_mean_dominance(A))
    reports.append(check_hierarchical_dominance(A))
    for q in range(1, A.m):
        reports.append(check_propagated_dominance(A, q))
    return reports
