"""Line-oriented text format for tensors and decompositions.

A tensor file starts with a header ``sst m n`` (strongly symmetric, one line
per index set) or ``dst m n`` (dense symmetric, one line per multi-index of
length ``m``).  Each entry line is the 1-based indices followed by a value
token: an integer, a fraction ``p/q`` or a decimal.  ``#`` starts a comment.
Positions without a line are zero::

    sst 3 10
    # A(2,6,9) = 1
    2 6 9 1
    2 5
"""
from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path

from .core import SubsetTensor, SymTensor
from .elimination import Decomposition, to_cp_factors
from .errors import DuplicateEntry, IndexOutOfRange, ParseError

__all__ = [
    "parse_tensor",
    "read_tensor",
    "render_tensor",
    "write_tensor",
    "format_value",
    "render_decomposition",
]

_INT = re.compile(r"^[+-]?\d+$")
_FRAC = re.compile(r"^[+-]?\d+/\d+$")
_DEC = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")

KINDS = {"sst": SubsetTensor, "dst": SymTensor}


def _parse_value(token, lineno, backend):
    if _INT.match(token) or _FRAC.match(token):
        try:
            value = Fraction(token)
        except ZeroDivisionError:
            raise ParseError(lineno, f"zero denominator in {token!r}") from None
        return (float(value) if backend == "float" else value), True
    if _DEC.match(token):
        if backend == "rational":
            return Fraction(token), True
        return float(token), False
    raise ParseError(lineno, f"bad value token {token!r}")


def parse_tensor(text: str, backend: str | None = None):
    """Parse a tensor file.

    Parameters
    ----------
    text : str
    backend : {None, "rational", "float"}
        ``None`` keeps values exact when every token is an integer or a
        fraction and switches to floats otherwise.

    Returns
    -------
    SubsetTensor or SymTensor
    """
    if backend not in (None, "rational", "float"):
        raise ValueError(f"unknown backend {backend!r}")
    header = None
    raw = {}
    all_exact = True
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].split()
        if not body:
            continue
        if header is None:
            if len(body) != 3 or body[0] not in KINDS:
                raise ParseError(lineno, "expected header 'sst m n' or 'dst m n'")
            try:
                m, n = int(body[1]), int(body[2])
            except ValueError:
                raise ParseError(lineno, "order and dimension must be integers") from None
            if m < 2 or n < 1:
                raise ParseError(lineno, f"invalid shape m={m}, n={n}")
            header = (body[0], m, n)
            continue
        kind, m, n = header
        *idx_tokens, value_token = body
        if not idx_tokens:
            raise ParseError(lineno, "entry needs indices and a value")
        try:
            idx = tuple(int(t) for t in idx_tokens)
        except ValueError:
            raise ParseError(lineno, "indices must be integers") from None
        for i in idx:
            if not 1 <= i <= n:
                raise IndexOutOfRange(f"line {lineno}: index {i} outside 1..{n}")
        if kind == "sst":
            if len(idx) > m:
                raise ParseError(lineno, f"more than {m} indices")
            if any(a >= b for a, b in zip(idx, idx[1:])):
                raise ParseError(lineno, "indices must be distinct and ascending")
            key = idx
        else:
            if len(idx) != m:
                raise ParseError(lineno, f"expected {m} indices, got {len(idx)}")
            key = tuple(sorted(idx))
        if key in raw:
            raise DuplicateEntry(lineno, key)
        value, exact = _parse_value(value_token, lineno, backend)
        all_exact = all_exact and exact
        raw[key] = value
    if header is None:
        raise ParseError(0, "missing header")
    kind, m, n = header
    if not all_exact:
        raw = {k: float(v) for k, v in raw.items()}
    return KINDS[kind](m, n, raw)


def read_tensor(path, backend: str | None = None):
    return parse_tensor(Path(path).read_text(), backend=backend)


def format_value(v) -> str:
    """Exact values as ``p`` or ``p/q``; floats in shortest round-trip form."""
    if isinstance(v, Fraction):
        return str(v)
    return repr(float(v))


def render_tensor(A) -> str:
    """Inverse of :func:`parse_tensor`; entries sorted by set size, then indices."""
    kind = "sst" if isinstance(A, SubsetTensor) else "dst"
    lines = [f"{kind} {A.m} {A.n}"]
    for key, v in A.items():
        lines.append(" ".join(str(i) for i in key) + " " + format_value(v))
    return "\n".join(lines) + "\n"


def write_tensor(path, A):
    Path(path).write_text(render_tensor(A))


def render_decomposition(d: Decomposition, style: str = "terms",
                         precision: str = "table") -> str:
    """One line per term: ``value : support``.

    ``style="terms"`` prints coefficients exactly.  ``style="factors"`` prints
    the common nonzero value ``coefficient**(1/m)`` of each CP factor, to four
    decimals (``precision="table"``) or in full.
    """
    if style == "terms":
        lines = [f"{format_value(t.coefficient)} : {' '.join(map(str, t.support))}"
                 for t in d.terms]
    elif style == "factors":
        factors = to_cp_factors(d)
        lines = []
        for u, support in zip(factors.factors, factors.supports):
            value = float(u[support[0] - 1])
            shown = f"{value:.4f}" if precision == "table" else repr(value)
            lines.append(f"{shown} : {' '.join(map(str, support))}")
    else:
        raise ValueError(f"unknown style {style!r}")
    return "".join(line + "\n" for line in lines)
