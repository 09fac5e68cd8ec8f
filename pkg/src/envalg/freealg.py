"""Exact noncommutative polynomials over the rationals.

A word is a tuple of 1-based generator indices; the empty tuple is the unit.
:class:`FreePoly` stores a sparse map word -> :class:`~fractions.Fraction`
and never keeps a zero coefficient.  Instances are treated as immutable.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import GeneratorMismatch

Scalar = Fraction
Word = tuple  # tuple[int, ...]

# degree of the zero polynomial; compares below every natural number
NEG_INF = -math.inf


def scalar(x) -> Fraction:
    """Coerce an int, Fraction or ``"a/b"`` string to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        if any(ch in x for ch in ".eE"):
            raise ValueError(f"not an exact rational: {x!r}")
        return Fraction(x.strip())
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


def word_key(w: Sequence[int]):
    """Canonical total order on words: ascending degree, then lexicographic."""
    return (len(w), tuple(w))


def inversions(w: Sequence[int]) -> int:
    return sum(1 for a in range(len(w)) for b in range(a + 1, len(w)) if w[a] > w[b])


def is_sorted_word(w: Sequence[int]) -> bool:
    return all(w[k] <= w[k + 1] for k in range(len(w) - 1))


def format_scalar(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class FreePoly:
    """Element of the free associative algebra on ``n`` generators."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping | Iterable = ()):
        if n < 1:
            raise ValueError("generator count must be at least 1")
        self.n = n
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for w, c in items:
            w = tuple(w)
            for i in w:
                if not (isinstance(i, int) and 1 <= i <= n):
                    raise ValueError(f"generator index {i!r} outside 1..{n}")
            acc[w] = acc.get(w, 0) + scalar(c)
        self._terms = {w: c for w, c in acc.items() if c}
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def _raw(cls, n, terms):
        # trusted path: terms already pruned, keys are tuples, values Fractions
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, n):
        return cls._raw(n, {})

    @classmethod
    def one(cls, n):
        return cls._raw(n, {(): Fraction(1)})

    @classmethod
    def gen(cls, n, i):
        return cls(n, {(i,): 1})

    @classmethod
    def monomial(cls, n, word, coeff=1):
        return cls(n, {tuple(word): coeff})

    @classmethod
    def constant(cls, n, c):
        return cls(n, {(): c})

    # access -------------------------------------------------------------
    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def words(self):
        return self._terms.keys()

    def coeff(self, w) -> Fraction:
        return self._terms.get(tuple(w), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    @property
    def degree(self):
        if not self._terms:
            return NEG_INF
        return max(len(w) for w in self._terms)

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self._terms}) <= 1

    def component(self, m: int) -> "FreePoly":
        return homogeneous_component(self, m)

    # arithmetic ---------------------------------------------------------
    def _check(self, other):
        if self.n != other.n:
            raise GeneratorMismatch(f"generator counts differ: {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, FreePoly):
            try:
                other = FreePoly.constant(self.n, other)
            except TypeError:
                return NotImplemented
        self._check(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            v = out.get(w, 0) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return FreePoly._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return FreePoly._raw(self.n, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, FreePoly):
            try:
                other = FreePoly.constant(self.n, other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "FreePoly":
        c = scalar(c)
        if not c:
            return FreePoly.zero(self.n)
        return FreePoly._raw(self.n, {w: c * v for w, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, FreePoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        out: dict = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 + w2
                out[w] = out.get(w, 0) + c1 * c2
        return FreePoly._raw(self.n, {w: c for w, c in out.items() if c})

    def __rmul__(self, other):
        if isinstance(other, FreePoly):
            return NotImplemented
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = FreePoly.one(self.n)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, FreePoly):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == FreePoly.constant(self.n, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    # text ---------------------------------------------------------------
    def sorted_terms(self):
        """Terms in printing order: highest degree first, lexicographic within a degree."""
        return sorted(self._terms.items(), key=lambda wc: (-len(wc[0]), wc[0]))

    def render(self, names: Sequence[str] | None = None) -> str:
        return render(self, names)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"FreePoly({self.n}, {render(self)!r})"


def add(p: FreePoly, q: FreePoly) -> FreePoly:
    return p + q


def multiply(p: FreePoly, q: FreePoly) -> FreePoly:
    return p * q


def homogeneous_component(p: FreePoly, m: int) -> FreePoly:
    if m < 0:
        raise ValueError("degree must be nonnegative")
    return FreePoly._raw(p.n, {w: c for w, c in p.items() if len(w) == m})


def render_word(w: Sequence[int], names: Sequence[str] | None = None) -> str:
    if not w:
        return "1"
    if names is None:
        return "*".join(f"X{i}" for i in w)
    return "*".join(names[i - 1] for i in w)


def render(p: FreePoly, names: Sequence[str] | None = None) -> str:
    """Canonical text form, e.g. ``P*Q + R`` or ``1/3*X1*X2 - 2``."""
    if not p:
        return "0"
    parts = []
    for idx, (w, c) in enumerate(p.sorted_terms()):
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if not w:
            body = format_scalar(a)
        elif a == 1:
            body = render_word(w, names)
        else:
            body = f"{format_scalar(a)}*{render_word(w, names)}"
        if idx == 0:
            parts.append(body if sign == "+" else "-" + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)
