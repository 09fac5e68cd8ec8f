"""Lie algebras given by structure constants.

Only brackets ``[X_i, X_k]`` with ``i < k`` are stored; the other orientation
is implied by antisymmetry and ``[X_i, X_i] = 0``.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import NotALieAlgebra, SpecFormatError
from .freealg import FreePoly, format_scalar, scalar


class BracketTable:
    """Structure constants ``c_iks`` with ``[X_i, X_k] = sum_s c_iks X_s``.

    ``entries`` maps ``(i, k)`` to ``{s: coeff}``.  Either orientation may be
    given; ``(k, i)`` is stored negated.  Conflicting duplicates raise.
    """

    __slots__ = ("n", "_entries", "names", "_hash")

    def __init__(self, n: int, entries: Mapping | None = None, names: Sequence[str] | None = None):
        if n < 1:
            raise ValueError("a Lie algebra needs at least one generator")
        self.n = n
        store: dict = {}
        for (i, k), vec in (entries or {}).items():
            for idx in (i, k):
                if not 1 <= idx <= n:
                    raise ValueError(f"bracket index {idx} outside 1..{n}")
            vec = {s: scalar(c) for s, c in dict(vec).items()}
            for s in vec:
                if not 1 <= s <= n:
                    raise ValueError(f"bracket result index {s} outside 1..{n}")
            vec = {s: c for s, c in vec.items() if c}
            if i == k:
                if vec:
                    raise ValueError(f"[X{i}, X{i}] must be zero")
                continue
            if i > k:
                i, k = k, i
                vec = {s: -c for s, c in vec.items()}
            if (i, k) in store and store[(i, k)] != vec:
                raise ValueError(f"inconsistent duplicate bracket for ({i}, {k})")
            store[(i, k)] = vec
        self._entries = {key: v for key, v in store.items() if v}
        if names is not None:
            names = tuple(names)
            if len(names) != n:
                raise ValueError("need exactly one name per generator")
            if len(set(names)) != n:
                raise ValueError("generator names must be distinct")
        self.names = names
        self._hash = None

    @property
    def entries(self):
        return {key: dict(v) for key, v in self._entries.items()}

    def structure(self, i: int, k: int) -> dict:
        """``[X_i, X_k]`` as a sparse ``{s: coeff}`` map."""
        if i == k:
            return {}
        if i < k:
            return self._entries.get((i, k), {})
        return {s: -c for s, c in self._entries.get((k, i), {}).items()}

    def generator_names(self) -> tuple:
        return self.names if self.names is not None else tuple(f"X{i}" for i in range(1, self.n + 1))

    def __eq__(self, other):
        if not isinstance(other, BracketTable):
            return NotImplemented
        return self.n == other.n and self._entries == other._entries and self.names == other.names

    def __hash__(self):
        if self._hash is None:
            frozen = frozenset((key, frozenset(v.items())) for key, v in self._entries.items())
            self._hash = hash((self.n, frozen, self.names))
        return self._hash

    def __repr__(self):
        return f"BracketTable(n={self.n}, entries={len(self._entries)})"


@dataclass(frozen=True)
class ValidatedLie:
    table: BracketTable
    certificate: tuple = ()


@dataclass(frozen=True)
class JacobiReport:
    """Failure report: every increasing triple whose Jacobi residue is nonzero."""

    table: BracketTable
    failures: tuple = field(default=())

    def render(self) -> str:
        names = self.table.generator_names()
        lines = ["not a Lie algebra: Jacobi identity fails"]
        for (i, j, k), res in self.failures:
            lines.append(f"  ({i}, {j}, {k}): {res.render(names)}")
        return "\n".join(lines)


def bracket_words(t: BracketTable, i: int, k: int) -> FreePoly:
    return FreePoly(t.n, {(s,): c for s, c in t.structure(i, k).items()})


def _as_vector(p: FreePoly) -> dict:
    out = {}
    for w, c in p.items():
        if len(w) != 1:
            raise ValueError("bracket operands must be homogeneous of degree 1")
        out[w[0]] = c
    return out


def bracket(t: BracketTable, p: FreePoly, q: FreePoly) -> FreePoly:
    """Bilinear extension of the structure constants to degree-1 polynomials."""
    if p.n != t.n or q.n != t.n:
        raise ValueError("operand generator count differs from the table")
    u, v = _as_vector(p), _as_vector(q)
    out: dict = {}
    for i, a in u.items():
        for k, b in v.items():
            for s, c in t.structure(i, k).items():
                out[(s,)] = out.get((s,), 0) + a * b * c
    return FreePoly(t.n, out)


def jacobi_residue(t: BracketTable, i: int, j: int, k: int) -> FreePoly:
    """``[[X_i,X_j],X_k] + [[X_j,X_k],X_i] + [[X_k,X_i],X_j]``."""
    for idx in (i, j, k):
        if not 1 <= idx <= t.n:
            raise IndexError(f"generator index {idx} outside 1..{t.n}")
    g = lambda a: FreePoly.gen(t.n, a)  # noqa: E731
    return (
        bracket(t, bracket_words(t, i, j), g(k))
        + bracket(t, bracket_words(t, j, k), g(i))
        + bracket(t, bracket_words(t, k, i), g(j))
    )


@functools.lru_cache(maxsize=64)
def validate(t: BracketTable):
    """Return :class:`ValidatedLie` or a :class:`JacobiReport` listing failures."""
    ok, bad = [], []
    for triple in itertools.combinations(range(1, t.n + 1), 3):
        res = jacobi_residue(t, *triple)
        if res:
            bad.append((triple, res))
        else:
            ok.append(triple)
    if bad:
        return JacobiReport(t, tuple(bad))
    return ValidatedLie(t, tuple(ok))


def require_lie(t, force: bool = False):
    """Unwrap ``t`` and check Jacobi.  Returns ``(table, canonical)``.

    Without ``force`` a non-Lie table raises :class:`NotALieAlgebra`.
    """
    if isinstance(t, ValidatedLie):
        return t.table, True
    v = validate(t)
    if isinstance(v, ValidatedLie):
        return t, True
    if not force:
        triple, res = v.failures[0]
        raise NotALieAlgebra(triple, res.render(t.generator_names()))
    return t, False


# builtin families -------------------------------------------------------

def abelian(n: int) -> BracketTable:
    return BracketTable(n)


def heisenberg(n: int) -> BracketTable:
    """P_1..P_n, Q_1..Q_n, R with ``[P_j, Q_k] = -delta_jk R``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    r = 2 * n + 1
    entries = {(j, n + j): {r: -1} for j in range(1, n + 1)}
    if n == 1:
        names = ("P", "Q", "R")
    else:
        names = tuple(f"P{j}" for j in range(1, n + 1)) + tuple(f"Q{j}" for j in range(1, n + 1)) + ("R",)
    return BracketTable(r, entries, names)


def gl_index(n: int, i: int, j: int) -> int:
    return (i - 1) * n + j


def gl(n: int) -> BracketTable:
    """Matrix units E_ij, numbered row-major, with
    ``[E_ij, E_kl] = delta_jk E_il - delta_li E_kj``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    entries = {}
    for (a, (i, j)), (b, (k, l)) in itertools.combinations(enumerate(pairs, 1), 2):
        vec: dict = {}
        if j == k:
            vec[gl_index(n, i, l)] = vec.get(gl_index(n, i, l), 0) + 1
        if l == i:
            vec[gl_index(n, k, j)] = vec.get(gl_index(n, k, j), 0) - 1
        vec = {s: c for s, c in vec.items() if c}
        if vec:
            entries[(a, b)] = vec
    sep = "" if n < 10 else "_"
    names = tuple(f"E{i}{sep}{j}" for i, j in pairs)
    return BracketTable(n * n, entries, names)


FAMILIES = {"abelian": abelian, "heisenberg": heisenberg, "gl": gl}


def builtin(family: str, n: int) -> BracketTable:
    if n < 1:
        raise ValueError("n must be at least 1")
    try:
        return FAMILIES[family](n)
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None


# spec files -------------------------------------------------------------

def parse_spec(text: str) -> BracketTable:
    """Read the line-oriented algebra spec format (``dim``/``name``/``bracket``)."""
    n = None
    names: dict = {}
    raw: dict = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "dim":
            if n is not None:
                raise SpecFormatError("duplicate dim line", lineno)
            try:
                n = int(rest)
            except ValueError:
                raise SpecFormatError(f"bad dimension {rest!r}", lineno) from None
            if n < 1:
                raise SpecFormatError("dimension must be at least 1", lineno)
            continue
        if n is None:
            raise SpecFormatError("'dim <n>' must come first", lineno)
        if head == "name":
            bits = rest.split()
            if len(bits) != 2:
                raise SpecFormatError("expected 'name <i> <string>'", lineno)
            i = _index(bits[0], n, lineno)
            if i in names:
                raise SpecFormatError(f"generator {i} named twice", lineno)
            if not (bits[1][0].isalpha() or bits[1][0] == "_") or not all(ch.isalnum() or ch == "_" for ch in bits[1]):
                raise SpecFormatError(f"bad generator name {bits[1]!r}", lineno)
            names[i] = bits[1]
        elif head == "bracket":
            lhs, sep, rhs = rest.partition(":")
            if not sep:
                raise SpecFormatError("expected 'bracket <i> <k> : <coeff> <s> ...'", lineno)
            ik = lhs.split()
            if len(ik) != 2:
                raise SpecFormatError("expected two generator indices before ':'", lineno)
            i, k = (_index(x, n, lineno) for x in ik)
            toks = rhs.split()
            if len(toks) % 2:
                raise SpecFormatError("coefficients and indices must come in pairs", lineno)
            vec: dict = {}
            for c, s in zip(toks[::2], toks[1::2]):
                try:
                    coeff = scalar(c)
                except (ValueError, ZeroDivisionError):
                    raise SpecFormatError(f"bad coefficient {c!r}", lineno) from None
                s = _index(s, n, lineno)
                vec[s] = vec.get(s, 0) + coeff
            vec = {s: c for s, c in vec.items() if c}
            if i == k:
                if vec:
                    raise SpecFormatError(f"[X{i}, X{i}] must be zero", lineno)
                continue
            key, v = ((i, k), vec) if i < k else ((k, i), {s: -c for s, c in vec.items()})
            if key in raw and raw[key][0] != v:
                raise SpecFormatError(
                    f"bracket ({i}, {k}) contradicts line {raw[key][1]}", lineno
                )
            raw.setdefault(key, (v, lineno))
        else:
            raise SpecFormatError(f"unknown directive {head!r}", lineno)
    if n is None:
        raise SpecFormatError("missing 'dim <n>' line")
    name_tuple = None
    if names:
        name_tuple = tuple(names.get(i, f"X{i}") for i in range(1, n + 1))
        if len(set(name_tuple)) != n:
            raise SpecFormatError("generator names must be distinct")
    return BracketTable(n, {key: v for key, (v, _) in raw.items()}, name_tuple)


def _index(tok: str, n: int, lineno: int) -> int:
    try:
        i = int(tok)
    except ValueError:
        raise SpecFormatError(f"bad generator index {tok!r}", lineno) from None
    if not 1 <= i <= n:
        raise SpecFormatError(f"generator index {i} outside 1..{n}", lineno)
    return i


def load_spec(path) -> BracketTable:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())


def dump_spec(t: BracketTable, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"dim {t.n}")
    if t.names is not None:
        lines.extend(f"name {i} {nm}" for i, nm in enumerate(t.names, 1))
    for (i, k) in sorted(t._entries):
        vec = t._entries[(i, k)]
        rhs = " ".join(f"{format_scalar(c)} {s}" for s, c in sorted(vec.items()))
        lines.append(f"bracket {i} {k} : {rhs}")
    return "\n".join(lines) + "\n"


def bad_example() -> BracketTable:
    """``[X1,X2]=X3, [X2,X3]=X1, [X3,X1]=X1``: antisymmetric but not Jacobi."""
    return BracketTable(3, {(1, 2): {3: 1}, (2, 3): {1: 1}, (3, 1): {1: 1}})


__all__ = [
    "BracketTable", "ValidatedLie", "JacobiReport", "bracket", "jacobi_residue",
    "validate", "require_lie", "builtin", "abelian", "heisenberg", "gl",
    "parse_spec", "load_spec", "dump_spec", "bad_example",
]
