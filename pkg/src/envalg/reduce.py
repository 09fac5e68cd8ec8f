"""Normal forms in the enveloping algebra.

Two polynomials are equivalent when their difference is a combination of
trinomial products ``P (X_i X_j - X_j X_i - [X_i, X_j]) Q``.  This module
computes the regular representative of a class, the ordered-monomial
(PBW) representative, rewrite traces for both, and the explicit trinomial
combination that exposes a failing Jacobi identity.
"""

from __future__ import annotations

import functools
import itertools
import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import ResourceLimitError
from .freealg import FreePoly, format_scalar, is_sorted_word, render_word, word_key
from .lie import BracketTable, ValidatedLie, jacobi_residue, require_lie
from .symmetrize import (
    class_sums, class_words, multi_indices, phi_inverse, regular_equipollent, sorted_word, sym,
)

FORWARD = "forward"
BACKWARD = "backward"


class NonCanonicalWarning(UserWarning):
    """A forced computation over a table that fails the Jacobi identity."""


@dataclass(frozen=True)
class RewriteStep:
    """One use of the trinomial relation on the words ``P X_i X_j Q``.

    ``forward`` moves ``coeff`` of ``P X_i X_j Q`` to
    ``P X_j X_i Q + P [X_i, X_j] Q``; ``backward`` moves ``coeff`` of
    ``P X_j X_i Q`` to ``P X_i X_j Q - P [X_i, X_j] Q``.
    """

    prefix: tuple
    i: int
    j: int
    suffix: tuple
    orientation: str = FORWARD
    coeff: Fraction = Fraction(1)

    def delta(self, t: BracketTable) -> FreePoly:
        """What the step adds to the running polynomial."""
        tri = trinomial(t, self.prefix, self.i, self.j, self.suffix)
        sign = -1 if self.orientation == FORWARD else 1
        return tri.scale(sign * self.coeff)

    def render(self, names=None) -> str:
        p = render_word(self.prefix, names)
        q = render_word(self.suffix, names)
        mark = "+" if self.orientation == FORWARD else "-"
        return f"{p} | {self.i} {self.j} | {q} | {mark} | {format_scalar(self.coeff)}"


@dataclass
class RewriteTrace:
    source: FreePoly
    result: FreePoly
    steps: list = field(default_factory=list)
    canonical: bool = True

    def replay(self, t: BracketTable) -> FreePoly:
        cur = self.source
        for s in self.steps:
            cur = cur + s.delta(t)
        return cur

    def render(self, names=None) -> str:
        return "\n".join(s.render(names) for s in self.steps)

    def __len__(self):
        return len(self.steps)


def parse_trace_line(line: str, names: Sequence[str] | None = None) -> RewriteStep:
    """Inverse of :meth:`RewriteStep.render`."""
    parts = [p.strip() for p in line.split("|")]
    if len(parts) != 5:
        raise ValueError(f"malformed trace line: {line!r}")
    pw, ij, qw, mark, coeff = parts
    i, j = (int(x) for x in ij.split())
    lookup = {nm: k for k, nm in enumerate(names, 1)} if names else {}

    def word(s):
        if s == "1":
            return ()
        out = []
        for tok in s.split("*"):
            if tok in lookup:
                out.append(lookup[tok])
            elif tok.startswith("X") and tok[1:].isdigit():
                out.append(int(tok[1:]))
            else:
                raise ValueError(f"unknown generator {tok!r} in trace")
        return tuple(out)

    if mark not in "+-" or len(mark) != 1:
        raise ValueError(f"bad orientation mark {mark!r}")
    return RewriteStep(word(pw), i, j, word(qw), FORWARD if mark == "+" else BACKWARD, Fraction(coeff))


def trinomial(t: BracketTable, prefix, i: int, j: int, suffix) -> FreePoly:
    """``P (X_i X_j - X_j X_i - [X_i, X_j]) Q`` expanded."""
    prefix, suffix = tuple(prefix), tuple(suffix)
    terms: dict = {}
    if i != j:
        terms[prefix + (i, j) + suffix] = Fraction(1)
        terms[prefix + (j, i) + suffix] = Fraction(-1)
        for s, c in t.structure(i, j).items():
            w = prefix + (s,) + suffix
            terms[w] = terms.get(w, 0) - c
    return FreePoly(t.n, terms)


def _correction(t: BracketTable, prefix, i, j, suffix) -> dict:
    """``P [X_i, X_j] Q`` as a term map."""
    return {tuple(prefix) + (s,) + tuple(suffix): c for s, c in t.structure(i, j).items()}


def swap_rewrite(prefix, i: int, j: int, suffix, t: BracketTable) -> FreePoly:
    """``P X_j X_i Q + P [X_i, X_j] Q``, the polynomial equivalent to ``P X_i X_j Q``."""
    for idx in (i, j, *prefix, *suffix):
        if not 1 <= idx <= t.n:
            raise IndexError(f"generator index {idx} outside 1..{t.n}")
    terms = _correction(t, prefix, i, j, suffix)
    w = tuple(prefix) + (j, i) + tuple(suffix)
    terms[w] = terms.get(w, 0) + 1
    return FreePoly(t.n, terms)


def _descents(w):
    return [k for k in range(len(w) - 1) if w[k] > w[k + 1]]


def _sort_path(w, rng: random.Random | None):
    """Adjacent transpositions taking ``w`` to its sorted rearrangement.

    Yields ``(prefix, a, b, suffix)`` with ``a > b`` for each swap.  The
    canonical path always takes the leftmost descent.
    """
    w = list(w)
    while True:
        ds = _descents(w)
        if not ds:
            return
        k = ds[0] if rng is None else rng.choice(ds)
        yield tuple(w[:k]), w[k], w[k + 1], tuple(w[k + 2:])
        w[k], w[k + 1] = w[k + 1], w[k]


def _accumulate(acc: dict, terms: dict, c):
    for w, v in terms.items():
        x = acc.get(w, 0) + c * v
        if x:
            acc[w] = x
        else:
            acc.pop(w, None)


# regular normal form ----------------------------------------------------

def reduce_to_regular(p: FreePoly, t, *, force: bool = False, rng: random.Random | None = None):
    """Reduce ``p`` to the unique equivalent regular polynomial.

    Peels the top homogeneous component, replaces it by its regular
    equipollent, and pushes the difference down a degree by transposing
    adjacent factors.  Returns ``(result, trace)``.  ``rng`` randomizes the
    transposition order; for a Lie algebra the result does not change.
    """
    table, canonical = require_lie(t, force)
    if p.n != table.n:
        raise ValueError("polynomial and table have different generator counts")
    trace = RewriteTrace(p, p, canonical=canonical)
    result: dict = {}
    current = dict(p.items())
    while current:
        m = max(len(w) for w in current)
        top = FreePoly._raw(table.n, {w: c for w, c in current.items() if len(w) == m})
        rest = {w: c for w, c in current.items() if len(w) < m}
        for w, c in regular_equipollent(top).items():
            result[w] = c
        # move each top word onto its sorted representative
        for w, c in top.sorted_terms():
            for pre, a, b, suf in _sort_path(w, rng):
                trace.steps.append(RewriteStep(pre, a, b, suf, FORWARD, c))
                _accumulate(rest, _correction(table, pre, a, b, suf), c)
        # then spread each class total evenly over the class
        for alpha, mu in sorted(class_sums(top).items()):
            words = class_words(alpha)
            share = mu / len(words)
            for w in words:
                path = list(_sort_path(w, rng))
                for pre, a, b, suf in reversed(path):
                    trace.steps.append(RewriteStep(pre, a, b, suf, BACKWARD, share))
                    _accumulate(rest, _correction(table, pre, a, b, suf), -share)
        current = rest
    out = FreePoly._raw(table.n, result)
    trace.result = out
    return out, trace


# ordered-monomial normal form -------------------------------------------

class _Straightener:
    """Memoized leftmost-descent straightening of single words."""

    def __init__(self, table: BracketTable):
        self.table = table
        self.cache: dict = {}

    def word(self, w) -> dict:
        hit = self.cache.get(w)
        if hit is not None:
            return hit
        ds = _descents(w)
        if not ds:
            out = {w: Fraction(1)}
        else:
            k = ds[0]
            pre, a, b, suf = w[:k], w[k], w[k + 1], w[k + 2:]
            out = dict(self.word(pre + (b, a) + suf))
            for s, c in self.table.structure(a, b).items():
                _accumulate(out, self.word(pre + (s,) + suf), c)
        self.cache[w] = out
        return out

    def poly(self, p: FreePoly) -> FreePoly:
        out: dict = {}
        for w, c in p.items():
            _accumulate(out, self.word(w), c)
        return FreePoly._raw(self.table.n, out)


@functools.lru_cache(maxsize=32)
def _straightener(table: BracketTable) -> _Straightener:
    return _Straightener(table)


def pbw_normal_form(p: FreePoly, t, *, force: bool = False, rng: random.Random | None = None) -> FreePoly:
    """Equivalent polynomial supported on ordered monomials ``X_1^a1 ... X_n^an``.

    With ``rng`` the rewrite picks a random unsorted word and a random
    descent at every step instead of the memoized canonical path.
    """
    table, canonical = require_lie(t, force)
    if p.n != table.n:
        raise ValueError("polynomial and table have different generator counts")
    if not canonical:
        warnings.warn("Jacobi identity fails; ordered form is not canonical", NonCanonicalWarning, stacklevel=2)
    if rng is None:
        return _straightener(table).poly(p)
    return pbw_straighten(p, table, rng=rng, force=True)[0]


def pbw_straighten(p: FreePoly, t, *, force: bool = False, rng: random.Random | None = None):
    """Worklist straightening that records every step.  Returns ``(result, trace)``.

    Each step rewrites the whole coefficient of one word at one descent.
    Every step lowers (degree, inversion count) of the rewritten word.
    """
    table, canonical = require_lie(t, force)
    trace = RewriteTrace(p, p, canonical=canonical)
    cur = dict(p.items())
    while True:
        unsorted = sorted((w for w in cur if not is_sorted_word(w)), key=word_key)
        if not unsorted:
            break
        w = unsorted[0] if rng is None else rng.choice(unsorted)
        ds = _descents(w)
        k = ds[0] if rng is None else rng.choice(ds)
        c = cur.pop(w)
        pre, a, b, suf = w[:k], w[k], w[k + 1], w[k + 2:]
        trace.steps.append(RewriteStep(pre, a, b, suf, FORWARD, c))
        _accumulate(cur, {pre + (b, a) + suf: Fraction(1)}, c)
        _accumulate(cur, _correction(table, pre, a, b, suf), c)
    out = FreePoly._raw(table.n, cur)
    trace.result = out
    return out, trace


def equivalent(p: FreePoly, q: FreePoly, t) -> bool:
    return not pbw_normal_form(p - q, t)


# change of basis --------------------------------------------------------

@dataclass(frozen=True)
class BasisChange:
    """Coordinates between the symmetrized and the ordered-monomial bases.

    ``indices`` lists the multi-indices (by degree, reverse-lex within a
    degree).  Column ``a`` of ``sym_to_ordered`` holds the ordered-basis
    coordinates of ``sym(indices[a])``; ``ordered_to_sym`` the reverse.
    """

    indices: tuple
    sym_to_ordered: tuple
    ordered_to_sym: tuple


DEFAULT_BASIS_CAP = 5000


def basis_change(t, d: int, *, cap: int = DEFAULT_BASIS_CAP) -> BasisChange:
    table, _ = require_lie(t)
    if d < 0:
        raise ValueError("degree bound must be nonnegative")
    n = table.n
    indices = tuple(a for m in range(d + 1) for a in multi_indices(n, m))
    if len(indices) > cap:
        raise ResourceLimitError(
            f"basis of size {len(indices)} exceeds cap {cap}", required=len(indices), limit=cap
        )
    pos = {a: k for k, a in enumerate(indices)}
    size = len(indices)
    s2o = [[Fraction(0)] * size for _ in range(size)]
    o2s = [[Fraction(0)] * size for _ in range(size)]
    for col, alpha in enumerate(indices):
        ordered = pbw_normal_form(sym(alpha), table)
        for w, c in ordered.items():
            s2o[pos[_class_of(w, n)]][col] = c
        regular, _ = reduce_to_regular(FreePoly.monomial(n, sorted_word(alpha)), table)
        for beta, c in phi_inverse(regular).items():
            o2s[pos[beta]][col] = c
    return BasisChange(indices, tuple(map(tuple, s2o)), tuple(map(tuple, o2s)))


def _class_of(w, n):
    alpha = [0] * n
    for i in w:
        alpha[i - 1] += 1
    return tuple(alpha)


def matmul(a, b):
    return tuple(
        tuple(sum((a[r][k] * b[k][c] for k in range(len(b))), Fraction(0)) for c in range(len(b[0])))
        for r in range(len(a))
    )


# Jacobi witness ---------------------------------------------------------

class ResidueZero(ValueError):
    """The Jacobi residue vanishes, so no witness exists."""


def _witness_steps(t: BracketTable, i: int, j: int, k: int) -> list:
    """Trinomial steps whose deltas sum to the Jacobi residue of ``(i, j, k)``.

    With ``X, Y, Z`` the three letters and the sums cyclic over them:
    ``sum (XY - YX - [X,Y]) Z - sum Z (XY - YX - [X,Y])`` has its cubic
    part cancel; adding ``([X,Y] Z - Z [X,Y] - [[X,Y],Z])`` cyclically
    cancels the quadratic part, leaving minus the residue.  Steps are
    recorded so that their deltas sum to the residue itself.
    """
    steps = []
    for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
        # delta(forward, c) = -c * trinomial, delta(backward, c) = +c * trinomial
        steps.append(RewriteStep((), x, y, (z,), FORWARD, Fraction(1)))
        steps.append(RewriteStep((z,), x, y, (), BACKWARD, Fraction(1)))
        for s, c in sorted(t.structure(x, y).items()):
            if s != z:
                steps.append(RewriteStep((), s, z, (), FORWARD, c))
    return steps


def nonuniqueness_witness(t: BracketTable, i: int, j: int, k: int):
    """A nonzero regular degree-1 polynomial equivalent to zero.

    Returns ``(residue, trace)``; the trace starts from 0 and its steps,
    each a multiple of one trinomial product, sum exactly to the residue.
    """
    if isinstance(t, ValidatedLie):
        t = t.table
    res = jacobi_residue(t, i, j, k)
    if not res:
        raise ResidueZero(f"Jacobi residue of ({i}, {j}, {k}) is zero; no witness exists")
    trace = RewriteTrace(FreePoly.zero(t.n), res, _witness_steps(t, i, j, k), canonical=False)
    return res, trace


def ordered_monomials(n: int, m: int):
    return [sorted_word(a) for a in multi_indices(n, m)]


def words_up_to(n: int, d: int):
    for m in range(d + 1):
        yield from itertools.product(range(1, n + 1), repeat=m)
