"""Exact integer Laurent polynomials in v with the bar involution v -> v^-1.

Coefficients are held to the signed 64-bit range; anything that would leave
it raises :class:`CoefficientOverflow` instead of silently growing or wrapping,
so the Python objects behave exactly like the int64 tables in the kernels.

>>> p = LaurentPoly.parse("v - v^-1")
>>> str(p * p)
'v^2 - 2 + v^-2'
>>> str(bar(p))
'-v + v^-1'
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

__all__ = [
    "CoefficientOverflow", "LaurentPoly", "INT64_MAX",
    "add", "mul", "negate", "scale", "bar", "coeff",
    "is_strictly_negative_support", "is_one_plus_even_positive",
]

INT64_MAX = 2**63 - 1
INT64_MIN = -(2**63)


class CoefficientOverflow(OverflowError):
    """A coefficient left the signed 64-bit range."""


def _check(c: int) -> int:
    if c > INT64_MAX or c < INT64_MIN:
        raise CoefficientOverflow(f"coefficient {c} does not fit in 64 bits")
    return c


class LaurentPoly:
    """Sparse exponent -> coefficient map with no stored zeros."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for k, c in items:
            acc[int(k)] = acc.get(int(k), 0) + int(c)
        self._terms = {k: _check(c) for k, c in sorted(acc.items()) if c}
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "LaurentPoly":
        return cls({k: c})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def v(cls) -> "LaurentPoly":
        return cls({1: 1})

    # -- accessors --------------------------------------------------------
    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def coeff(self, k: int) -> int:
        return self._terms.get(k, 0)

    def exponents(self) -> list[int]:
        return list(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def top_degree(self) -> int | None:
        return max(self._terms) if self._terms else None

    def bottom_degree(self) -> int | None:
        return min(self._terms) if self._terms else None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = _check(out.get(k, 0) + c)
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = k1 + k2
                out[k] = _check(out.get(k, 0) + _check(c1 * c2))
        return LaurentPoly(out)

    __rmul__ = __mul__

    def shift(self, d: int) -> "LaurentPoly":
        """Multiply by v^d."""
        return LaurentPoly({k + d: c for k, c in self._terms.items()})

    def bar(self) -> "LaurentPoly":
        return LaurentPoly({-k: c for k, c in self._terms.items()})

    # -- comparisons / hashing -------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- text ---------------------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for k in sorted(self._terms, reverse=True):
            c = self._terms[k]
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "v" if k == 1 else f"v^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if not pieces:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append((" - " if c < 0 else " + ") + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    _TERM = re.compile(r"([+-]?)\s*(\d+)?\s*(\*?\s*v(?:\^(-?\d+))?)?")

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Inverse of ``str``; also accepts loose spacing."""
        s = text.replace(" ", "")
        if s in ("", "0"):
            return cls()
        out: dict[int, int] = {}
        pos = 0
        while pos < len(s):
            m = cls._TERM.match(s, pos)
            if m is None or m.end() == pos or (m.group(2) is None and m.group(3) is None):
                raise ValueError(f"cannot parse Laurent polynomial {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            mag = int(m.group(2)) if m.group(2) is not None else 1
            if m.group(3) is None:
                k = 0
            else:
                k = int(m.group(4)) if m.group(4) is not None else 1
            out[k] = out.get(k, 0) + sign * mag
            pos = m.end()
            if pos < len(s) and s[pos] not in "+-":
                raise ValueError(f"cannot parse Laurent polynomial {text!r}")
        return cls(out)


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    return NotImplemented


def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def negate(p: LaurentPoly) -> LaurentPoly:
    return -p


def scale(p: LaurentPoly, c: int) -> LaurentPoly:
    return LaurentPoly({k: _check(a * c) for k, a in p.terms.items()})


def bar(p: LaurentPoly) -> LaurentPoly:
    return p.bar()


def coeff(p: LaurentPoly, k: int) -> int:
    return p.coeff(k)


def is_strictly_negative_support(p: LaurentPoly) -> bool:
    """All exponents are <= -1 (vacuously true for 0)."""
    return all(k <= -1 for k in p.exponents())


def is_one_plus_even_positive(p: LaurentPoly) -> bool:
    """p lies in 1 + v^2 Z[v^2]."""
    return p.coeff(0) == 1 and all(k == 0 or (k > 0 and k % 2 == 0) for k in p.exponents())
