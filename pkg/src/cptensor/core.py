"""Storage for symmetric and strongly symmetric tensors.

Two containers are provided.  :class:`SymTensor` keeps one value per sorted
multi-index, so permutation symmetry holds by construction.
:class:`SubsetTensor` keeps one value per nonempty index set of size at most
``m``; entry ``(i1, ..., im)`` is the value stored under the set of distinct
indices ``{i1, ..., im}``.  That is exactly the strongly symmetric tensors.

Indices are 1-based everywhere in the public API.  Values are either exact
(``int``/``Fraction``, stored as ``Fraction``) or floating point; a tensor is
exact only if every value handed to it is.  Zero values are never stored.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations
from numbers import Integral, Rational, Real
from types import MappingProxyType

import numpy as np

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    NotStronglySymmetric,
    WrongArity,
)

__all__ = [
    "EPS",
    "Shape",
    "MultiIndex",
    "SymTensor",
    "SubsetTensor",
    "canonicalize",
    "class_members",
    "orbit_size",
    "rank_one",
    "binary_power",
    "contract_full",
    "contract_once",
    "to_subset",
    "to_dense",
    "nonempty_subsets",
]

#: Zero tolerance of the floating point backend.
EPS = 1e-12


@dataclass(frozen=True)
class Shape:
    """Order ``m`` and dimension ``n`` of a tensor."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError(f"order must be at least 2, got {self.m}")
        if self.n < 1:
            raise ValueError(f"dimension must be at least 1, got {self.n}")


class MultiIndex(tuple):
    """A sorted tuple of 1-based indices."""

    __slots__ = ()

    def distinct_set(self) -> frozenset:
        return frozenset(self)

    @property
    def support(self) -> tuple:
        """Sorted tuple of the distinct indices."""
        return tuple(sorted(set(self)))


def canonicalize(raw_index, shape: Shape) -> MultiIndex:
    """Sort ``raw_index`` after checking its length and range."""
    raw = tuple(raw_index)
    if len(raw) != shape.m:
        raise WrongArity(f"expected {shape.m} indices, got {len(raw)}")
    for i in raw:
        if not isinstance(i, Integral) or not 1 <= i <= shape.n:
            raise IndexOutOfRange(f"index {i!r} outside 1..{shape.n}")
    return MultiIndex(sorted(int(i) for i in raw))


@lru_cache(maxsize=None)
def _orbit_from_counts(counts: tuple) -> int:
    total = math.factorial(sum(counts))
    for c in counts:
        total //= math.factorial(c)
    return total


def orbit_size(multi_index) -> int:
    """Number of distinct permutations of ``multi_index`` (a multinomial)."""
    return _orbit_from_counts(tuple(sorted(Counter(multi_index).values())))


def class_members(support, m: int) -> list:
    """All sorted multi-indices of length ``m`` whose distinct set is ``support``."""
    support = tuple(sorted(support))
    k = len(support)
    if k == 0 or k > m:
        return []
    out = [
        MultiIndex(sorted(support + extra))
        for extra in combinations_with_replacement(support, m - k)
    ]
    out.sort()
    return out


def nonempty_subsets(support, max_size=None):
    """Yield the nonempty subsets of ``support`` as sorted tuples."""
    support = tuple(sorted(support))
    top = len(support) if max_size is None else min(max_size, len(support))
    for r in range(1, top + 1):
        yield from combinations(support, r)


def _is_exact(v) -> bool:
    return isinstance(v, (Integral, Rational)) and not isinstance(v, bool)


def _coerce(values: dict):
    """Return ``(values, exact)`` with zeros dropped and a uniform scalar type."""
    exact = all(_is_exact(v) for v in values.values())
    out = {}
    for key, v in values.items():
        if isinstance(v, bool) or not isinstance(v, Real):
            raise TypeError(f"non-real value {v!r} at {key}")
        v = Fraction(v) if exact else float(v)
        if v != 0:
            out[key] = v
    return out, exact


def _zero(exact):
    return Fraction(0) if exact else 0.0


def _as_vector(x, n: int):
    vals = list(x.tolist() if isinstance(x, np.ndarray) else x)
    if len(vals) != n:
        raise DimensionMismatch(f"vector of length {len(vals)} for dimension {n}")
    exact = all(_is_exact(v) for v in vals)
    vals = [Fraction(v) if exact else float(v) for v in vals]
    return vals, exact


def _pack_vector(vals, exact):
    return np.array(vals, dtype=object if exact else float)


class _TensorBase:
    __slots__ = ("shape", "_data", "exact")

    @property
    def m(self) -> int:
        return self.shape.m

    @property
    def n(self) -> int:
        return self.shape.n

    @property
    def eps(self):
        """Zero tolerance: integer 0 for exact tensors, :data:`EPS` otherwise.

        The integer keeps ``value - eps`` a Fraction on the exact backend.
        """
        return 0 if self.exact else EPS

    def items(self):
        """Stored ``(key, value)`` pairs in key order."""
        return sorted(self._data.items(), key=lambda kv: (len(set(kv[0])), kv[0]))

    def __len__(self):
        return len(self._data)

    def __bool__(self):
        return bool(self._data)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((type(self).__name__, self.shape, frozenset(self._data.items())))

    def _combine(self, other, sign):
        if type(other) is not type(self):
            return NotImplemented
        if other.shape != self.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")
        data = dict(self._data)
        for key, v in other._data.items():
            data[key] = data.get(key, 0) + sign * v
        return type(self)(self.m, self.n, data)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return type(self)(self.m, self.n, {k: -v for k, v in self._data.items()})

    def __mul__(self, scalar):
        if not isinstance(scalar, Real):
            return NotImplemented
        return type(self)(self.m, self.n, {k: scalar * v for k, v in self._data.items()})

    __rmul__ = __mul__

    def as_float(self):
        return type(self)(self.m, self.n, {k: float(v) for k, v in self._data.items()})

    def max_abs(self) -> float:
        return max((abs(float(v)) for v in self._data.values()), default=0.0)


class SymTensor(_TensorBase):
    """Symmetric tensor stored by sorted multi-index.

    Parameters
    ----------
    m, n : int
        Order and dimension.
    entries : mapping, optional
        Multi-index -> value.  Keys may be given in any order; permuted copies
        of one key must agree.

    Examples
    --------
    >>> A = SymTensor(3, 2, {(2, 1, 1): 3})
    >>> A[1, 2, 1]
    Fraction(3, 1)
    """

    __slots__ = ()

    def __init__(self, m: int, n: int, entries=None):
        self.shape = Shape(m, n)
        canon = {}
        for raw, v in (entries or {}).items():
            key = canonicalize(raw, self.shape)
            if key in canon and canon[key] != v:
                raise ValueError(f"conflicting values for permutations of {key}")
            canon[key] = v
        data, self.exact = _coerce(canon)
        self._data = MappingProxyType(data)

    @property
    def entries(self):
        return self._data

    def __getitem__(self, idx):
        return self._data.get(canonicalize(idx, self.shape), _zero(self.exact))

    def __repr__(self):
        return f"SymTensor(m={self.m}, n={self.n}, stored={len(self._data)})"

    def to_numpy(self) -> np.ndarray:
        """Full ``n**m`` float array (0-based axes)."""
        out = np.zeros((self.n,) * self.m)
        for key, v in self._data.items():
            for perm in set(permutations(key)):
                out[tuple(i - 1 for i in perm)] = float(v)
        return out

    @classmethod
    def from_numpy(cls, array, tol=0.0):
        """Build from a dense array; entries are read at sorted multi-indices."""
        array = np.asarray(array, dtype=float)
        m, n = array.ndim, array.shape[0]
        entries = {}
        for key in combinations_with_replacement(range(1, n + 1), m):
            v = array[tuple(i - 1 for i in key)]
            if abs(v) > tol:
                entries[key] = float(v)
        return cls(m, n, entries)


class SubsetTensor(_TensorBase):
    """Strongly symmetric tensor stored by index set.

    Parameters
    ----------
    m, n : int
        Order and dimension.
    values : mapping, optional
        Index set (any iterable of distinct indices) -> value.  Sets must be
        nonempty and have at most ``m`` elements.
    """

    __slots__ = ()

    def __init__(self, m: int, n: int, values=None):
        self.shape = Shape(m, n)
        keyed = {}
        for raw, v in (values or {}).items():
            key = self._key(raw, exact_size=False)
            if len(key) != len(tuple(raw)):
                raise ValueError(f"index set {tuple(raw)} has repeated indices")
            if key in keyed:
                raise ValueError(f"index set {key} given twice")
            keyed[key] = v
        data, self.exact = _coerce(keyed)
        self._data = MappingProxyType(data)

    def _key(self, idx, exact_size=True):
        raw = tuple(idx)
        if not raw or len(raw) > self.m:
            raise WrongArity(f"index set size {len(raw)} outside 1..{self.m}")
        for i in raw:
            if not isinstance(i, Integral) or not 1 <= i <= self.n:
                raise IndexOutOfRange(f"index {i!r} outside 1..{self.n}")
        return tuple(sorted(set(int(i) for i in raw)))

    @property
    def values(self):
        return self._data

    def __getitem__(self, idx):
        """Entry at a multi-index of length ``m`` or at an index set."""
        return self._data.get(self._key(idx), _zero(self.exact))

    def __repr__(self):
        return f"SubsetTensor(m={self.m}, n={self.n}, stored={len(self._data)})"

    def sets_of_size(self, k: int):
        """Stored sets with exactly ``k`` elements, in lexicographic order."""
        return sorted(key for key in self._data if len(key) == k)

    def to_numpy(self) -> np.ndarray:
        return to_dense(self).to_numpy()


def rank_one(u, m: int) -> SymTensor:
    """The symmetric rank-one tensor ``u^m``.

    >>> rank_one([2, 0, 1], 2).entries[(1, 3)]
    Fraction(2, 1)
    """
    vals, _ = _as_vector(u, len(u))
    n = len(vals)
    nz = [i + 1 for i, v in enumerate(vals) if v != 0]
    entries = {}
    for key in combinations_with_replacement(nz, m):
        prod = vals[key[0] - 1]
        for i in key[1:]:
            prod = prod * vals[i - 1]
        entries[key] = prod
    return SymTensor(m, n, entries)


def binary_power(support, m: int, n: int, coefficient=1) -> SubsetTensor:
    """``coefficient * v^m`` for the 0/1 vector ``v`` with the given support.

    The entry is ``coefficient`` exactly at multi-indices whose distinct set
    lies inside ``support``.
    """
    return SubsetTensor(m, n, {t: coefficient for t in nonempty_subsets(support, m)})


def contract_full(A, x):
    """``A x^m``, the full contraction with ``x`` in every mode."""
    vals, x_exact = _as_vector(x, A.n)
    exact = A.exact and x_exact
    if isinstance(A, SymTensor):
        total = _zero(exact)
        for key, a in A.entries.items():
            prod = a * orbit_size(key)
            for i in key:
                prod = prod * vals[i - 1]
            total += prod
        return total if exact else float(total)
    if isinstance(A, SubsetTensor):
        total = _zero(exact)
        for key, a in A.values.items():
            total += a * _exact_support_sum(key, vals, A.m)
        return total if exact else float(total)
    raise TypeError(f"cannot contract {type(A).__name__}")


def _exact_support_sum(support, vals, length):
    """Sum of ``prod x_t`` over tuples ``t`` of ``length`` with distinct set ``support``.

    Inclusion-exclusion over subsets ``T`` of the support of ``(sum_T x)**length``.
    """
    k = len(support)
    if k == 0:
        return 1 if length == 0 else 0
    total = 0
    for r in range(1, k + 1):
        sign = -1 if (k - r) % 2 else 1
        for sub in combinations(support, r):
            s = 0
            for i in sub:
                s = s + vals[i - 1]
            total += sign * s**length
    return total


def contract_once(A, x) -> np.ndarray:
    """``A x^{m-1}``: contraction with ``x`` in all but the first mode."""
    vals, x_exact = _as_vector(x, A.n)
    exact = A.exact and x_exact
    out = [_zero(exact)] * A.n
    if isinstance(A, SymTensor):
        for key, a in A.entries.items():
            for i in set(key):
                rest = list(key)
                rest.remove(i)
                prod = a * orbit_size(rest)
                for j in rest:
                    prod = prod * vals[j - 1]
                out[i - 1] = out[i - 1] + prod
    elif isinstance(A, SubsetTensor):
        m = A.m
        for key, a in A.values.items():
            for i in key:
                without = tuple(j for j in key if j != i)
                g = _exact_support_sum(key, vals, m - 1) + _exact_support_sum(
                    without, vals, m - 1
                )
                out[i - 1] = out[i - 1] + a * g
    else:
        raise TypeError(f"cannot contract {type(A).__name__}")
    return _pack_vector(out, exact)


def class_violations(A: SymTensor, first_only=False):
    """Pairs of similar multi-indices with differing entries.

    For each index set touched by a stored entry, the lexicographically first
    member of the class is compared against every other member; the first
    mismatch is reported.  Yields ``((ref, other), (ref_value, other_value))``.
    """
    supports = sorted({tuple(sorted(set(key))) for key in A.entries}, key=lambda s: (len(s), s))
    for support in supports:
        members = class_members(support, A.m)
        ref = members[0]
        ref_val = A.entries.get(ref, _zero(A.exact))
        for other in members[1:]:
            val = A.entries.get(other, _zero(A.exact))
            if abs(val - ref_val) > A.eps:
                yield (ref, other), (ref_val, val)
                if first_only:
                    return
                break


def to_subset(A: SymTensor) -> SubsetTensor:
    """Convert a strongly symmetric :class:`SymTensor` to subset storage.

    Raises
    ------
    NotStronglySymmetric
        With the first pair of similar indices carrying different entries.
    """
    for witness, values in class_violations(A, first_only=True):
        raise NotStronglySymmetric(witness, values)
    values = {}
    for key, v in A.entries.items():
        values.setdefault(tuple(sorted(set(key))), v)
    return SubsetTensor(A.m, A.n, values)


def to_dense(A: SubsetTensor) -> SymTensor:
    """Expand each index set to every multi-index of its class."""
    entries = {}
    for support, v in A.values.items():
        for key in class_members(support, A.m):
            entries[key] = v
    return SymTensor(A.m, A.n, entries)
