"""Equipollence classes, the symmetrization map and regular polynomials.

A multi-index ``alpha`` is a plain tuple of ``n`` nonnegative ints.  Its
equipollence class is the set of words containing generator ``i`` exactly
``alpha[i-1]`` times.  ``sym(alpha)`` averages the class; a polynomial is
regular when it is constant on every class it touches.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import NotHomogeneousError, NotRegularError, ResourceLimitError
from .freealg import FreePoly, format_scalar, render, scalar

MultiIndex = tuple  # tuple[int, ...]

DEFAULT_DIGIT_BUDGET = 10_000


# multi-indices ----------------------------------------------------------

def equipollence_class(w: Sequence[int], n: int) -> MultiIndex:
    alpha = [0] * n
    for i in w:
        alpha[i - 1] += 1
    return tuple(alpha)


def revlex_key(alpha: MultiIndex):
    return tuple(reversed(alpha))


def revlex_compare(a: MultiIndex, b: MultiIndex) -> int:
    """-1, 0 or 1 as ``a`` precedes, equals or follows ``b``.

    ``a`` precedes ``b`` when they first differ, reading from the last
    coordinate, at a slot where ``a`` is smaller.
    """
    if len(a) != len(b):
        raise ValueError("multi-indices have different lengths")
    if sum(a) != sum(b):
        raise ValueError("multi-indices have different totals")
    ka, kb = revlex_key(a), revlex_key(b)
    return (ka > kb) - (ka < kb)


def compositions(n: int, m: int):
    """All multi-indices of length ``n`` and total ``m`` (unordered)."""
    if n == 1:
        yield (m,)
        return
    for first in range(m, -1, -1):
        for rest in compositions(n - 1, m - first):
            yield (first,) + rest


@functools.lru_cache(maxsize=None)
def multi_indices(n: int, m: int) -> tuple:
    """The degree-``m`` multi-indices in increasing reverse-lex order."""
    return tuple(sorted(compositions(n, m), key=revlex_key))


def multinomial(alpha: MultiIndex) -> int:
    out = math.factorial(sum(alpha))
    for a in alpha:
        out //= math.factorial(a)
    return out


def sorted_word(alpha: MultiIndex) -> tuple:
    """The ordered monomial X_1^a1 ... X_n^an as a word."""
    return tuple(i for i, a in enumerate(alpha, 1) for _ in range(a))


def _multiset_perms(counts: list, length: int):
    if length == 0:
        yield ()
        return
    for i, c in enumerate(counts):
        if c:
            counts[i] -= 1
            for rest in _multiset_perms(counts, length - 1):
                yield (i + 1,) + rest
            counts[i] += 1


@functools.lru_cache(maxsize=4096)
def class_words(alpha: MultiIndex) -> tuple:
    """Distinct words of class ``alpha`` in lexicographic order."""
    return tuple(_multiset_perms(list(alpha), sum(alpha)))


# commutative polynomials ------------------------------------------------

class SymPoly:
    """Commutative polynomial: sparse map multi-index -> Fraction."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping | Iterable = ()):
        self.n = n
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for alpha, c in items:
            alpha = tuple(alpha)
            if len(alpha) != n or any(a < 0 for a in alpha):
                raise ValueError(f"bad multi-index {alpha} for n={n}")
            acc[alpha] = acc.get(alpha, 0) + scalar(c)
        self._terms = {a: c for a, c in acc.items() if c}

    @classmethod
    def monomial(cls, alpha, coeff=1):
        return cls(len(alpha), {tuple(alpha): coeff})

    @classmethod
    def linear(cls, coeffs):
        n = len(coeffs)
        return cls(n, {tuple(int(j == i) for j in range(n)): c for i, c in enumerate(coeffs)})

    @classmethod
    def one(cls, n):
        return cls(n, {(0,) * n: 1})

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if not isinstance(other, SymPoly):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def __add__(self, other):
        if self.n != other.n:
            raise ValueError("generator counts differ")
        out = dict(self._terms)
        for a, c in other._terms.items():
            out[a] = out.get(a, 0) + c
        return SymPoly(self.n, out)

    def __neg__(self):
        return SymPoly(self.n, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, SymPoly):
            c = scalar(other)
            return SymPoly(self.n, {a: c * v for a, v in self._terms.items()})
        if self.n != other.n:
            raise ValueError("generator counts differ")
        out: dict = {}
        for a, c in self._terms.items():
            for b, d in other._terms.items():
                k = tuple(x + y for x, y in zip(a, b))
                out[k] = out.get(k, 0) + c * d
        return SymPoly(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = SymPoly.one(self.n)
        for _ in range(e):
            out = out * self
        return out

    def __repr__(self):
        parts = []
        for a, c in sorted(self._terms.items(), key=lambda t: (sum(t[0]), revlex_key(t[0]))):
            mono = "*".join(f"x{i}^{e}" if e > 1 else f"x{i}" for i, e in enumerate(a, 1) if e) or "1"
            parts.append(f"{format_scalar(c)}*{mono}")
        return f"SymPoly({self.n}, {' + '.join(parts) or '0'})"


def commutative_image(p: FreePoly) -> SymPoly:
    """Forget the order of factors: sum coefficients over each class."""
    out: dict = {}
    for w, c in p.items():
        a = equipollence_class(w, p.n)
        out[a] = out.get(a, 0) + c
    return SymPoly(p.n, out)


# the symmetrization map -------------------------------------------------

def sym(alpha: MultiIndex) -> FreePoly:
    """Average of all orderings of ``X^alpha``.

    Uses the class-sum form: each distinct word gets ``1/multinomial``.
    """
    alpha = tuple(alpha)
    n = len(alpha)
    c = Fraction(1, multinomial(alpha))
    return FreePoly._raw(n, {w: c for w in class_words(alpha)})


def phi(p: SymPoly) -> FreePoly:
    out: dict = {}
    for alpha, lam in p.items():
        c = lam / multinomial(alpha)
        for w in class_words(alpha):
            out[w] = c
    return FreePoly._raw(p.n, out)


def is_regular(p: FreePoly) -> bool:
    seen: dict = {}
    counts: dict = {}
    for w, c in p.items():
        a = equipollence_class(w, p.n)
        if seen.setdefault(a, c) != c:
            return False
        counts[a] = counts.get(a, 0) + 1
    return all(counts[a] == multinomial(a) for a in counts)


def class_sums(p: FreePoly) -> dict:
    out: dict = {}
    for w, c in p.items():
        a = equipollence_class(w, p.n)
        out[a] = out.get(a, 0) + c
    return {a: c for a, c in out.items() if c}


def regular_equipollent(p: FreePoly) -> FreePoly:
    """The unique regular polynomial with the same class sums as ``p``."""
    if not p.is_homogeneous():
        raise NotHomogeneousError("regular_equipollent needs a homogeneous polynomial")
    return phi(SymPoly(p.n, class_sums(p)))


def phi_inverse(p: FreePoly) -> SymPoly:
    if not is_regular(p):
        raise NotRegularError("polynomial is not regular")
    out = {}
    for w, c in p.items():
        a = equipollence_class(w, p.n)
        if a not in out:
            out[a] = c * multinomial(a)
    return SymPoly(p.n, out)


# powers of linear forms -------------------------------------------------

@dataclass(frozen=True)
class LinearForm:
    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(scalar(c) for c in self.coefficients))

    @property
    def n(self):
        return len(self.coefficients)

    def to_free(self) -> FreePoly:
        return FreePoly(self.n, {(i,): c for i, c in enumerate(self.coefficients, 1)})

    def to_sym(self) -> SymPoly:
        return SymPoly.linear(self.coefficients)

    def power(self, m: int) -> FreePoly:
        return self.to_free() ** m

    def monomial_value(self, alpha: MultiIndex) -> Fraction:
        """``c^alpha = prod c_i^alpha_i``."""
        out = Fraction(1)
        for c, a in zip(self.coefficients, alpha):
            out *= c ** a
        return out

    def render(self, names=None):
        return render(self.to_free(), names)


def dominating_tuple(n: int, m: int, r: int) -> LinearForm:
    """Positive integers with ``c^beta >= r * c^alpha`` whenever alpha precedes beta.

    ``c_1 = 1`` and ``c_k = r * c_{k-1}**m``.
    """
    if n < 1 or m < 0 or r < 1:
        raise ValueError("need n >= 1, m >= 0, r >= 1")
    return LinearForm(_growth_tuple(n, m, r, None))


def _digits(x: int) -> int:
    # exact decimal length without str(), which CPython caps at 4300 digits
    k = max(1, int(x.bit_length() * 0.30103))
    while 10 ** k <= x:
        k += 1
    while k > 1 and 10 ** (k - 1) > x:
        k -= 1
    return k


def _growth_tuple(n, m, r, digit_budget):
    cs = [1]
    for _ in range(1, n):
        prev = cs[-1]
        if digit_budget is not None:
            # log10 estimate from bit lengths; refuse before building the integer
            est = (r.bit_length() + m * prev.bit_length()) * 0.30103
            if est > digit_budget + 1:
                raise ResourceLimitError(
                    f"power decomposition needs coefficients of ~{int(est)} digits "
                    f"(budget {digit_budget})",
                    required=int(est), limit=digit_budget,
                )
        cs.append(r * prev ** m)
    if digit_budget is not None and _digits(cs[-1]) > digit_budget:
        raise ResourceLimitError(
            f"power decomposition coefficient exceeds {digit_budget} digits",
            required=_digits(cs[-1]), limit=digit_budget,
        )
    return tuple(cs)


@dataclass(frozen=True)
class PowerDecomposition:
    """``sum coeff * form**m`` over the listed summands."""

    summands: tuple  # of (Fraction, LinearForm, int)
    n: int

    def expand(self) -> FreePoly:
        out = FreePoly.zero(self.n)
        for coeff, form, m in self.summands:
            out = out + form.power(m).scale(coeff)
        return out

    def render(self, names=None) -> str:
        if not self.summands:
            return "0"
        return "\n".join(
            f"{format_scalar(c)} * ({form.render(names)})^{m}" for c, form, m in self.summands
        )


@functools.lru_cache(maxsize=64)
def _sym_basis_in_powers(n: int, m: int, digit_budget: int):
    """Express every ``sym(alpha)``, ``|alpha| = m``, through powers of linear forms.

    Walks the multi-indices in reverse-lex order.  After visiting ``beta``,
    each earlier ``sym(alpha)`` is a known combination of powers plus a
    rational combination of the ``sym(gamma)`` still to come.  The next
    index is pulled in with ``(c_1 X_1 + ... + c_n X_n)^m`` where ``c``
    comes from :func:`dominating_tuple` with ``r`` just large enough that the
    coefficient being divided by stays positive.

    Returns ``(forms, f)`` with ``f[a]`` a map form-index -> coefficient.
    """
    lam_idx = multi_indices(n, m)
    d = len(lam_idx)
    weights = [multinomial(a) for a in lam_idx]
    forms = [tuple(int(i == 0) for i in range(n))]  # X_1^m = sym((m,0,...,0))
    f = [{0: Fraction(1)}]
    lam = [{}]
    for b in range(1, d):
        bound = max((weights[a] * abs(lam[a].get(b, 0)) for a in range(b)), default=0)
        r = math.floor(d * bound) + 1  # smallest integer strictly above d*bound
        c = _growth_tuple(n, m, r, digit_budget)
        cpow = []
        for alpha in lam_idx:
            v = 1
            for ci, ai in zip(c, alpha):
                v *= ci ** ai
            cpow.append(v)
        lead = Fraction(weights[b] * cpow[b]) + sum(weights[a] * cpow[a] * lam[a].get(b, 0) for a in range(b))
        assert lead > 0, "growth tuple failed to keep the pivot positive"
        gi = len(forms)
        forms.append(c)
        new_f = {gi: Fraction(1)}
        for a in range(b):
            s = weights[a] * cpow[a]
            for fi, v in f[a].items():
                new_f[fi] = new_f.get(fi, 0) - s * v
        new_f = {fi: v / lead for fi, v in new_f.items() if v}
        new_lam = {}
        for g in range(b + 1, d):
            tot = weights[g] * cpow[g] + sum(weights[a] * cpow[a] * lam[a].get(g, 0) for a in range(b))
            if tot:
                new_lam[g] = -tot / lead
        for a in range(b):
            l = lam[a].pop(b, 0)
            if not l:
                continue
            for fi, v in new_f.items():
                f[a][fi] = f[a].get(fi, 0) + l * v
            f[a] = {fi: v for fi, v in f[a].items() if v}
            for g, v in new_lam.items():
                lam[a][g] = lam[a].get(g, 0) + l * v
            lam[a] = {g: v for g, v in lam[a].items() if v}
        f.append(new_f)
        lam.append(new_lam)
    assert not any(lam), "reverse-lex sweep left unresolved terms"
    return tuple(forms), tuple(f)


def power_decomposition(p: FreePoly, n: int | None = None, *, digit_budget: int = DEFAULT_DIGIT_BUDGET) -> PowerDecomposition:
    """Write a homogeneous regular ``p`` as at most ``binom(n+m-1, m)`` powers of linear forms."""
    n = p.n if n is None else n
    if n != p.n:
        raise ValueError("generator count does not match the polynomial")
    if not p:
        return PowerDecomposition((), n)
    if not p.is_homogeneous():
        raise NotHomogeneousError("power_decomposition needs a homogeneous polynomial")
    coords = phi_inverse(p)  # raises on non-regular input
    m = p.degree
    forms, f = _sym_basis_in_powers(n, m, digit_budget)
    index = {alpha: a for a, alpha in enumerate(multi_indices(n, m))}
    total: dict = {}
    for alpha, lam in coords.items():
        for fi, v in f[index[alpha]].items():
            total[fi] = total.get(fi, 0) + lam * v
    summands = tuple(
        (total[fi], LinearForm(forms[fi]), m) for fi in sorted(total) if total[fi]
    )
    return PowerDecomposition(summands, n)
