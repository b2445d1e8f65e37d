"""Inner product, sampled copositivity, and the CP/copositive pairing."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

import numpy as np

from .checks import CheckReport, Violation
from .core import SubsetTensor, SymTensor, contract_full, orbit_size, to_dense
from .elimination import Decomposition, reconstruct, to_cp_factors
from .errors import DimensionMismatch, NegativeCoefficient, NotCopositive, NotCpDecomposition

__all__ = [
    "SimplexGrid",
    "CopositivityVerdict",
    "inner_product",
    "copositivity_grid_check",
    "duality_pairing_check",
    "sample_copositive",
    "all_ones",
]


def _dense(A) -> SymTensor:
    return to_dense(A) if isinstance(A, SubsetTensor) else A


def inner_product(A, B):
    """``sum over all n**m positions of a * b``.

    Each sorted multi-index stands for its whole permutation orbit, so it is
    weighted by the orbit size.
    """
    A, B = _dense(A), _dense(B)
    if A.shape != B.shape:
        raise DimensionMismatch(f"shapes {A.shape} and {B.shape} differ")
    exact = A.exact and B.exact
    total = Fraction(0) if exact else 0.0
    small, large = (A, B) if len(A) <= len(B) else (B, A)
    for key, a in small.entries.items():
        b = large.entries.get(key)
        if b is not None:
            total += orbit_size(key) * a * b
    return total if exact else float(total)


@dataclass(frozen=True)
class SimplexGrid:
    """Points of the standard simplex with coordinates ``k_i / d``."""

    n: int
    d: int

    def __post_init__(self):
        if self.n < 1 or self.d < 1:
            raise ValueError("grid needs n >= 1 and d >= 1")

    def __len__(self):
        return math.comb(self.d + self.n - 1, self.n - 1)

    def points(self) -> np.ndarray:
        """All grid points as rows, in stars-and-bars order."""
        rows = []
        for bars in combinations(range(self.d + self.n - 1), self.n - 1):
            edges = (-1,) + bars + (self.d + self.n - 1,)
            rows.append([edges[i + 1] - edges[i] - 1 for i in range(self.n)])
        return np.array(rows, dtype=float) / self.d


@dataclass(frozen=True)
class CopositivityVerdict:
    """Outcome of a sampled copositivity test.

    A violation is a certificate (``witness >= 0`` with ``B x^m < 0``).  A pass
    only says no violation was seen at this resolution; it proves nothing.
    """

    violated: bool
    resolution: int
    sample_count: int
    witness: np.ndarray | None = None
    value: float | None = None

    def __bool__(self):
        return not self.violated


def _form_evaluator(B: SymTensor):
    keys = list(B.entries)
    weights = np.array([orbit_size(k) * float(B.entries[k]) for k in keys])
    idx = np.array(keys, dtype=int) - 1 if keys else np.zeros((0, B.m), dtype=int)

    def evaluate(X):
        if not keys:
            return np.zeros(len(X))
        prod = np.ones((len(X), len(keys)))
        for col in range(B.m):
            prod *= X[:, idx[:, col]]
        return prod @ weights

    return evaluate


def copositivity_grid_check(B, grid, samples: int = 1000, seed: int = 0,
                            tol: float = 1e-12, chunk: int = 4096) -> CopositivityVerdict:
    """Evaluate ``B x^m`` on a simplex grid, then on random nonnegative points.

    ``grid`` is a :class:`SimplexGrid` or a resolution ``d``.  Points are
    visited in a fixed order and the first one with ``B x^m < -tol`` is
    returned as the witness.
    """
    B = _dense(B)
    if isinstance(grid, int):
        grid = SimplexGrid(B.n, grid)
    if grid.n != B.n:
        raise DimensionMismatch(f"grid dimension {grid.n} for tensor dimension {B.n}")
    evaluate = _form_evaluator(B)
    pts = grid.points()
    if samples:
        rand = np.random.default_rng(seed).exponential(size=(samples, B.n))
        pts = np.vstack([pts, rand / rand.sum(axis=1, keepdims=True)])
    for start in range(0, len(pts), chunk):
        block = pts[start:start + chunk]
        vals = evaluate(block)
        bad = np.flatnonzero(vals < -tol)
        if bad.size:
            k = bad[0]
            return CopositivityVerdict(True, grid.d, len(pts), block[k].copy(), float(vals[k]))
    return CopositivityVerdict(False, grid.d, len(pts))


def duality_pairing_check(d: Decomposition, B, grid, samples: int = 1000,
                          seed: int = 0, tol: float = 1e-8) -> CheckReport:
    """Check ``A . B >= 0`` for ``A = reconstruct(d)`` and a copositive ``B``.

    Also checks that pairing entrywise agrees with ``sum_k B (u_k)^m`` over
    the CP factors ``u_k`` of ``d``.

    Raises
    ------
    NotCpDecomposition
        If ``d`` has a negative coefficient.
    NotCopositive
        If the sampled copositivity test finds a violation in ``B``.
    """
    try:
        factors = to_cp_factors(d)
    except NegativeCoefficient as exc:
        raise NotCpDecomposition(exc.term) from None
    verdict = copositivity_grid_check(B, grid, samples=samples, seed=seed)
    if verdict.violated:
        raise NotCopositive(verdict)
    A = reconstruct(d)
    pairing = float(inner_product(A, B))
    by_factors = sum(float(contract_full(B, u)) for u in factors.factors)
    report = CheckReport("CP/copositive pairing")
    scale = max(1.0, abs(pairing))
    if pairing < -tol:
        report.violations.append(Violation("pairing-nonnegative", (), pairing, 0.0))
    if abs(pairing - by_factors) > tol * scale:
        report.violations.append(Violation("pairing-identity", (), pairing, by_factors))
    report.details.update(pairing=pairing, by_factors=by_factors, verdict=verdict)
    return report


def all_ones(m: int, n: int) -> SymTensor:
    return SymTensor(m, n, {k: 1 for k in combinations_with_replacement(range(1, n + 1), m)})


def sample_copositive(m: int, n: int, rng, negative: bool = False,
                      density: float = 0.4) -> SymTensor:
    """Random copositive tensor.

    With ``negative=False`` the tensor is entrywise nonnegative.  With
    ``negative=True`` some off-diagonal classes are negative and the diagonal
    is raised to cover them: by AM-GM each negative position ``t`` satisfies
    ``prod x_t <= (1/m) sum_j x_{t_j}^m`` on the nonnegative orthant, so a
    diagonal entry of at least ``sum_t |b_t| mult_i(t) / m`` at every ``i``
    keeps ``B x^m >= 0``.
    """
    entries = {}
    cover = np.zeros(n)
    for key in combinations_with_replacement(range(1, n + 1), m):
        if len(set(key)) == 1 or rng.random() >= density:
            continue
        if negative and rng.random() < 0.5:
            v = -float(rng.uniform(0.05, 1.0))
            for i in key:
                cover[i - 1] += orbit_size(key) * abs(v) / m
        else:
            v = float(rng.uniform(0.0, 1.0))
        entries[key] = v
    for i in range(1, n + 1):
        entries[(i,) * m] = cover[i - 1] + float(rng.uniform(0.0, 1.0))
    return SymTensor(m, n, entries)
