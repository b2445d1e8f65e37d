"""Hierarchical elimination into symmetric binary rank-one terms.

A strongly symmetric tensor of order ``m`` is peeled level by level: first
every nonzero entry on an ``m``-element index set is removed with the binary
rank-one tensor on that set, then every remaining nonzero entry on an
``(m-1)``-element set, and so on down to singletons.  On subset storage,
subtracting ``c * v^m`` for a 0/1 vector ``v`` with support ``S`` is just
``values[T] -= c`` for every nonempty ``T`` inside ``S``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .core import EPS, Shape, SubsetTensor, SymTensor, nonempty_subsets, rank_one
from .errors import NegativeCoefficient, OrderTooSmall, ResidualNonzero

__all__ = [
    "DecompositionTerm",
    "Decomposition",
    "CpFactorization",
    "EliminationTrace",
    "eliminate",
    "reconstruct",
    "to_cp_factors",
    "cp_rank_bound",
    "random_subset_tensor",
    "random_hierarchically_dominated",
]


@dataclass(frozen=True)
class DecompositionTerm:
    """One term ``coefficient * v^m`` with ``v`` the 0/1 vector on ``support``."""

    coefficient: object
    support: tuple

    def binary_vector(self, n: int) -> np.ndarray:
        v = np.zeros(n)
        v[[i - 1 for i in self.support]] = 1.0
        return v


@dataclass(frozen=True)
class Decomposition:
    shape: Shape
    terms: tuple = ()

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    @property
    def nonnegative(self) -> bool:
        return all(t.coefficient >= 0 for t in self.terms)

    def levels(self):
        """Terms grouped by support size, largest first."""
        out = {}
        for t in self.terms:
            out.setdefault(len(t.support), []).append(t)
        return out


@dataclass(frozen=True)
class CpFactorization:
    """Nonnegative vectors whose ``m``-th powers sum to the tensor.

    ``factors`` is an ``(r, n)`` array; ``r`` bounds the CP rank from above.
    """

    m: int
    factors: np.ndarray
    supports: tuple = ()

    def __len__(self):
        return len(self.factors)

    def tensor(self) -> SymTensor:
        """Sum of ``u^m`` over the factors, as a float tensor."""
        n = self.factors.shape[1]
        total = SymTensor(self.m, n)
        for u in self.factors:
            total = total + rank_one(u.astype(float), self.m)
        return total.as_float()


@dataclass
class EliminationTrace:
    """Snapshots ``A^(0), ..., A^(m)`` (when kept) and the final residual."""

    snapshots: list = field(default_factory=list)
    residual: SubsetTensor | None = None
    residual_norm: float = 0.0


def eliminate(A: SubsetTensor, keep_trace: bool = False, tol: float = 1e-9):
    """Run hierarchical elimination on ``A``.

    Parameters
    ----------
    A : SubsetTensor
    keep_trace : bool
        Store every intermediate tensor in the returned trace.
    tol : float
        Float backend only: the largest tolerated entry of
        ``A - reconstruct(decomposition)``, relative to ``max(1, max|A|)``.

    Returns
    -------
    (Decomposition, EliminationTrace)

    Raises
    ------
    ResidualNonzero
        Float backend only, when rounding has destroyed the reconstruction.
    """
    m, n = A.m, A.n
    if m < 2:
        raise OrderTooSmall(f"order {m} < 2")
    eps = A.eps
    work = dict(A.values)
    trace = EliminationTrace()
    if keep_trace:
        trace.snapshots.append(A)
    terms = []
    for size in range(m, 0, -1):
        level = sorted(key for key, v in work.items() if len(key) == size and abs(v) > eps)
        for support in level:
            c = work[support]
            terms.append(DecompositionTerm(c, support))
        # all coefficients of a level are read before any update is applied
        for term in terms[len(terms) - len(level):]:
            for sub in nonempty_subsets(term.support):
                left = work.get(sub, 0) - term.coefficient
                if left == 0:
                    work.pop(sub, None)
                else:
                    work[sub] = left
        if keep_trace:
            trace.snapshots.append(SubsetTensor(m, n, work))
    decomposition = Decomposition(A.shape, tuple(terms))
    trace.residual = SubsetTensor(m, n, work)
    if A.exact:
        trace.residual_norm = trace.residual.max_abs()
    else:
        diff = (A.as_float() - reconstruct(decomposition).as_float()).max_abs()
        trace.residual_norm = max(diff, trace.residual.max_abs())
        if trace.residual_norm > tol * max(1.0, A.max_abs()):
            raise ResidualNonzero(trace.residual_norm, tol)
    return decomposition, trace


def reconstruct(d: Decomposition) -> SubsetTensor:
    """Sum the terms: ``values[T] = sum of coefficients whose support contains T``."""
    values = {}
    for term in d.terms:
        for sub in nonempty_subsets(term.support, d.shape.m):
            values[sub] = values.get(sub, 0) + term.coefficient
    return SubsetTensor(d.shape.m, d.shape.n, values)


def to_cp_factors(d: Decomposition) -> CpFactorization:
    """One factor ``coefficient**(1/m)`` times the binary vector per term.

    Raises
    ------
    NegativeCoefficient
        If any coefficient is negative; the decomposition then certifies
        nothing about complete positivity.
    """
    m, n = d.shape.m, d.shape.n
    rows = []
    for term in d.terms:
        if term.coefficient < 0:
            raise NegativeCoefficient(term)
        rows.append(float(term.coefficient) ** (1.0 / m) * term.binary_vector(n))
    factors = np.array(rows) if rows else np.zeros((0, n))
    return CpFactorization(m, factors, tuple(t.support for t in d.terms))


def cp_rank_bound(shape: Shape) -> int:
    """Upper bound on the number of elimination terms: ``sum_k C(n, m-k)``."""
    if shape.m < 2:
        raise OrderTooSmall(f"order {shape.m} < 2")
    return sum(math.comb(shape.n, shape.m - k) for k in range(shape.m))


def _random_value(rng, signed, exact, high=5):
    if exact:
        num = int(rng.integers(1, 4 * high + 1))
        den = int(rng.integers(1, 5))
        v = Fraction(num, den)
    else:
        v = float(rng.uniform(0.1, high))
    if signed and rng.random() < 0.5:
        v = -v
    return v


def random_subset_tensor(shape: Shape, rng, density=0.3, signed=True, exact=True):
    """Random strongly symmetric tensor with each index set present w.p. ``density``."""
    values = {}
    for key in nonempty_subsets(range(1, shape.n + 1), shape.m):
        if rng.random() < density:
            values[key] = _random_value(rng, signed, exact)
    return SubsetTensor(shape.m, shape.n, values)


def random_hierarchically_dominated(shape: Shape, rng, density=0.3, exact=True,
                                    slack=0.5):
    """Random strongly symmetric, nonnegative, hierarchically dominated tensor.

    Top-level sets (size ``m``) get random nonnegative values with probability
    ``density``.  Every smaller set ``S`` then gets the sum of its immediate
    supersets plus, with probability ``slack``, a random positive surplus, so
    each dominance inequality holds and a good share of them hold with
    equality.
    """
    m, n = shape.m, shape.n
    values = {}
    universe = range(1, n + 1)
    for key in nonempty_subsets(universe, m):
        if len(key) == m and rng.random() < density:
            values[key] = _random_value(rng, False, exact)
    for size in range(m - 1, 0, -1):
        sums = {}
        for key, v in values.items():
            if len(key) == size + 1:
                for i in key:
                    sub = tuple(j for j in key if j != i)
                    sums[sub] = sums.get(sub, 0) + v
        for sub in nonempty_subsets(universe, size):
            if len(sub) != size:
                continue
            v = sums.get(sub, 0)
            if rng.random() < slack * (1 if v else density):
                v = v + _random_value(rng, False, exact, high=3)
            if v:
                values[sub] = v
    return SubsetTensor(m, n, values)
