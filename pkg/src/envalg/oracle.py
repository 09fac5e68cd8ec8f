"""Brute-force certification by exact linear algebra.

The span of all trinomial products of degree <= d is row-reduced over
the rationals.  Nothing here calls the rewriting code in :mod:`.reduce`,
so agreement between the two is a genuine cross-check.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import ResourceLimitError
from .freealg import FreePoly, inversions, is_sorted_word, scalar
from .lie import BracketTable, ValidatedLie, bracket_words, gl_index, require_lie

DEFAULT_DIMENSION_CAP = 100_000


def pivot_key(w):
    # unsorted words are eliminated first, so remainders land on ordered monomials
    return (len(w), inversions(w), w)


def space_dimension(n: int, d: int) -> int:
    return sum(n ** m for m in range(d + 1))


class EchelonSpace:
    """Reduced row echelon basis of a subspace of polynomials of degree <= d.

    ``_rows`` maps each pivot word to its row (a term dict with pivot
    coefficient 1); no pivot word appears in any other row.
    """

    def __init__(self, n: int, degree_bound: int):
        self.n = n
        self.degree_bound = degree_bound
        self._rows: dict = {}

    def copy(self) -> "EchelonSpace":
        out = EchelonSpace(self.n, self.degree_bound)
        out._rows = {p: dict(r) for p, r in self._rows.items()}
        return out

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self):
        return set(self._rows)

    @property
    def rows(self):
        return [FreePoly(self.n, self._rows[p]) for p in sorted(self._rows, key=pivot_key, reverse=True)]

    def _reduce(self, vec: dict) -> dict:
        vec = dict(vec)
        for w in [w for w in vec if w in self._rows]:
            c = vec.get(w)
            if not c:
                continue
            for u, v in self._rows[w].items():
                x = vec.get(u, 0) - c * v
                if x:
                    vec[u] = x
                else:
                    vec.pop(u, None)
        return vec

    def insert(self, vec: Mapping) -> bool:
        """Add a vector; returns True when it raised the rank."""
        vec = self._reduce(vec)
        if not vec:
            return False
        piv = max(vec, key=pivot_key)
        inv = 1 / vec[piv]
        row = {w: c * inv for w, c in vec.items()}
        for other in self._rows.values():
            c = other.get(piv)
            if c:
                for u, v in row.items():
                    x = other.get(u, 0) - c * v
                    if x:
                        other[u] = x
                    else:
                        other.pop(u, None)
        self._rows[piv] = row
        return True

    def reduce(self, p: FreePoly) -> FreePoly:
        """Canonical remainder of ``p`` modulo the space."""
        if p.degree > self.degree_bound:
            raise ValueError(f"degree {p.degree} exceeds the space's bound {self.degree_bound}")
        return FreePoly(self.n, self._reduce(dict(p.items())))

    def member(self, p: FreePoly) -> bool:
        return not self.reduce(p)


def _trinomial_terms(t: BracketTable, pre, i, j, suf) -> dict:
    terms = {pre + (i, j) + suf: Fraction(1), pre + (j, i) + suf: Fraction(-1)}
    for s, c in t.structure(i, j).items():
        w = pre + (s,) + suf
        terms[w] = terms.get(w, 0) - c
    return {w: c for w, c in terms.items() if c}


def _words(n, m):
    return itertools.product(range(1, n + 1), repeat=m)


def _check_cap(n, d, cap):
    need = space_dimension(n, d)
    if need > cap:
        raise ResourceLimitError(
            f"degree-{d} space on {n} generators has dimension {need}, cap is {cap}",
            required=need, limit=cap,
        )
    return need


def trinomial_span(t, d: int, *, cap: int = DEFAULT_DIMENSION_CAP) -> EchelonSpace:
    """Echelon basis of every ``P (X_i X_j - X_j X_i - [X_i,X_j]) Q`` of degree <= d."""
    table = t.table if isinstance(t, ValidatedLie) else t
    n = table.n
    _check_cap(n, d, cap)
    space = EchelonSpace(n, d)
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    for outer in range(d - 1):  # deg P + deg Q = outer, outer + 2 <= d
        for lp in range(outer + 1):
            for pre in _words(n, lp):
                for suf in _words(n, outer - lp):
                    for i, j in pairs:
                        space.insert(_trinomial_terms(table, pre, i, j, suf))
    return space


def member(space: EchelonSpace, p: FreePoly) -> bool:
    return space.member(p)


def quotient_dimension(t, d: int, *, cap: int = DEFAULT_DIMENSION_CAP, space: EchelonSpace | None = None) -> int:
    table = t.table if isinstance(t, ValidatedLie) else t
    total = _check_cap(table.n, d, cap)
    if space is None:
        space = trinomial_span(table, d, cap=cap)
    return total - space.rank


@dataclass(frozen=True)
class PBWReport:
    n: int
    degree_bound: int
    rank: int
    quotient_dimension: int
    expected_dimension: int
    independent: bool
    spanning: bool
    failures: tuple = ()

    @property
    def passed(self) -> bool:
        return self.independent and self.spanning and self.quotient_dimension == self.expected_dimension

    def render(self) -> str:
        def verdict(ok):
            return "pass" if ok else "FAIL"
        dims_ok = self.quotient_dimension == self.expected_dimension
        lines = [
            f"generators:            {self.n}",
            f"degree bound:          {self.degree_bound}",
            f"span rank:             {self.rank}",
            f"quotient dimension:    {self.quotient_dimension}",
            f"expected dimension:    {self.expected_dimension}",
            f"ordered independence:  {verdict(self.independent)}",
            f"ordered spanning:      {verdict(self.spanning)}",
            f"dimension match:       {verdict(dims_ok)}",
        ]
        if self.passed:
            lines.append("PASS")
        else:
            lines.append("FAIL " + "; ".join(self.failures))
        return "\n".join(lines)


def check_pbw_independence(t, d: int, *, cap: int = DEFAULT_DIMENSION_CAP) -> PBWReport:
    """Certify at degree <= d that ordered monomials form a basis of the quotient."""
    table, _ = require_lie(t)
    n = table.n
    space = trinomial_span(table, d, cap=cap)
    total = space_dimension(n, d)
    expected = math.comb(n + d, d)
    failures = []

    widened = space.copy()
    independent = True
    for m in range(d + 1):
        for w in _words(n, m):
            if is_sorted_word(w) and not widened.insert({w: Fraction(1)}):
                independent = False
                failures.append(f"ordered monomial {w} depends on others modulo the span")
                break
        if not independent:
            break

    spanning = True
    for m in range(d + 1):
        for w in _words(n, m):
            rem = space._reduce({w: Fraction(1)})
            if any(not is_sorted_word(u) for u in rem):
                spanning = False
                failures.append(f"word {w} does not reduce to ordered monomials")
                break
        if not spanning:
            break

    qdim = total - space.rank
    if qdim != expected:
        failures.append(f"quotient dimension {qdim} != {expected}")
    return PBWReport(n, d, space.rank, qdim, expected, independent, spanning, tuple(failures))


# matrix realizations ----------------------------------------------------

def _identity(k):
    return tuple(tuple(Fraction(int(r == c)) for c in range(k)) for r in range(k))


def _zero(k):
    return tuple(tuple(Fraction(0) for _ in range(k)) for _ in range(k))


def _mm(a, b):
    k = len(a)
    return tuple(
        tuple(sum((a[r][s] * b[s][c] for s in range(k) if a[r][s]), Fraction(0)) for c in range(k))
        for r in range(k)
    )


def _madd(a, b, cb=1):
    return tuple(tuple(x + cb * y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


class MatrixAssignment:
    """Square rational matrices, one per generator, respecting the brackets.

    Construction checks ``A_i A_k - A_k A_i`` against the assignment of
    ``[X_i, X_k]`` for every pair and raises ``ValueError`` on mismatch.
    """

    def __init__(self, table: BracketTable, matrices):
        if isinstance(table, ValidatedLie):
            table = table.table
        if len(matrices) != table.n:
            raise ValueError(f"need {table.n} matrices, got {len(matrices)}")
        mats = [tuple(tuple(scalar(x) for x in row) for row in m) for m in matrices]
        k = len(mats[0])
        for m in mats:
            if len(m) != k or any(len(row) != k for row in m):
                raise ValueError("matrices must all be square of the same size")
        self.table = table
        self.size = k
        self.matrices = tuple(mats)
        for i, j in itertools.combinations(range(1, table.n + 1), 2):
            lhs = _madd(_mm(mats[i - 1], mats[j - 1]), _mm(mats[j - 1], mats[i - 1]), -1)
            rhs = self.evaluate(bracket_words(table, i, j))
            if lhs != rhs:
                raise ValueError(f"matrices do not respect the bracket [X{i}, X{j}]")

    @property
    def n(self):
        return self.table.n

    def evaluate(self, p: FreePoly):
        return evaluate(p, self)


def evaluate(p: FreePoly, a: MatrixAssignment):
    if p.n != a.n:
        raise ValueError("assignment and polynomial have different generator counts")
    k = a.size
    out = _zero(k)
    cache: dict = {(): _identity(k)}

    def word_matrix(w):
        if w not in cache:
            cache[w] = _mm(word_matrix(w[:-1]), a.matrices[w[-1] - 1])
        return cache[w]

    for w, c in p.items():
        out = _madd(out, word_matrix(w), c)
    return out


def matrix_unit(k, r, c, coeff=1):
    return tuple(tuple(Fraction(coeff) if (x, y) == (r, c) else Fraction(0) for y in range(1, k + 1)) for x in range(1, k + 1))


def heisenberg_assignment(table: BracketTable, n: int) -> MatrixAssignment:
    """(n+2)x(n+2) strictly upper triangular realization: P_j -> E_{1,j+1},
    Q_j -> E_{j+1,n+2}, R -> -E_{1,n+2}."""
    k = n + 2
    mats = [matrix_unit(k, 1, j + 1) for j in range(1, n + 1)]
    mats += [matrix_unit(k, j + 1, k) for j in range(1, n + 1)]
    mats.append(matrix_unit(k, 1, k, -1))
    return MatrixAssignment(table, mats)


def gl_assignment(table: BracketTable, n: int) -> MatrixAssignment:
    """Defining representation ``E_ij -> E_ij``."""
    mats = [None] * (n * n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            mats[gl_index(n, i, j) - 1] = matrix_unit(n, i, j)
    return MatrixAssignment(table, mats)


def diagonal_assignment(table: BracketTable, diagonals) -> MatrixAssignment:
    mats = []
    for diag in diagonals:
        k = len(diag)
        mats.append(tuple(tuple(Fraction(diag[r]) if r == c else Fraction(0) for c in range(k)) for r in range(k)))
    return MatrixAssignment(table, mats)
