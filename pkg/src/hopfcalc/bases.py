"""Basis kinds: words, commutative monomials, trace classes, group elements
and (labelled) diagrams, with their monoid laws and canonical forms.

Words are plain ``str`` objects; the empty string is the empty word. Letters
are ordered by code point.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import IndexOutOfRange, MalformedMatrix, PartitionMismatch, SizeLimit, UnknownLetter

# Canonicalisation cost is (min side)!; the bound applies to both sides.
MAX_CANON_SIDE = 8


# --------------------------------------------------------------------- words

class Alphabet(tuple):
    """Finite set of single-character letters, stored in code-point order."""

    def __new__(cls, letters: Iterable[str] = ()):
        letters = list(letters)
        for x in letters:
            if not isinstance(x, str) or len(x) != 1:
                raise ValueError(f"letters must be single characters, got {x!r}")
        if len(set(letters)) != len(letters):
            raise ValueError("repeated letter in alphabet")
        return super().__new__(cls, sorted(letters))

    def check_word(self, w: str) -> str:
        for i, x in enumerate(w):
            if x not in self:
                raise UnknownLetter(f"letter {x!r} not in alphabet {''.join(self)!r}", i)
        return w

    def words(self, max_len: int, min_len: int = 0) -> list[str]:
        out = []
        for n in range(min_len, max_len + 1):
            out.extend("".join(t) for t in itertools.product(self, repeat=n))
        return out


def subword(w: str, indices: Iterable[int]) -> str:
    """Letters of ``w`` at the (1-based, strictly increasing) positions given."""
    idx = list(indices)
    prev = 0
    for i in idx:
        if not 1 <= i <= len(w):
            raise IndexOutOfRange(f"position {i} outside 1..{len(w)}")
        if i <= prev:
            raise IndexOutOfRange("positions must be strictly increasing")
        prev = i
    return "".join(w[i - 1] for i in idx)


# ---------------------------------------------------------------- monomials

_VAR_RE = re.compile(r"([A-Za-z]+)(\d*)")


def var_key(v: str):
    m = _VAR_RE.fullmatch(v)
    if m is None:
        return (v, -1)
    return (m.group(1), int(m.group(2)) if m.group(2) else -1)


@dataclass(frozen=True)
class Monomial:
    """Commutative monomial: variable -> positive exponent."""

    powers: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        for v, e in self.powers:
            if e <= 0:
                raise ValueError("exponents must be positive")

    @classmethod
    def of(cls, exps=None, **kw) -> "Monomial":
        acc = Counter()
        for v, e in dict(exps or {}, **kw).items():
            acc[v] += e
        return cls(tuple(sorted(((v, e) for v, e in acc.items() if e), key=lambda t: var_key(t[0]))))

    @classmethod
    def from_word(cls, w: Iterable[str]) -> "Monomial":
        return cls.of(Counter(w))

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.powers)

    def exponents(self) -> dict[str, int]:
        return dict(self.powers)

    def __mul__(self, other: "Monomial") -> "Monomial":
        acc = Counter(dict(self.powers))
        acc.update(dict(other.powers))
        return Monomial.of(acc)

    def sort_key(self):
        return (self.degree, tuple(var_key(v) for v, e in self.powers for _ in range(e)))

    def __str__(self):
        if not self.powers:
            return "1"
        parts = [v if e == 1 else f"{v}^{e}" for v, e in self.powers]
        sep = "" if all(len(v) == 1 for v, _ in self.powers) else "*"
        return sep.join(parts)


# ------------------------------------------------------------ trace monoids

@dataclass(frozen=True)
class CommutationGraph:
    """Symmetric, irreflexive set of commuting letter pairs."""

    pairs: frozenset = frozenset()

    @classmethod
    def of(cls, pairs: Iterable[Sequence[str]]) -> "CommutationGraph":
        out = set()
        for p in pairs:
            x, y = tuple(p)
            if x == y:
                raise ValueError(f"commutation graph has no loops: {x}{y}")
            out.add(frozenset((x, y)))
        return cls(frozenset(out))

    @classmethod
    def complete(cls, letters: Iterable[str]) -> "CommutationGraph":
        return cls.of(itertools.combinations(sorted(set(letters)), 2))

    def commute(self, x: str, y: str) -> bool:
        return x != y and frozenset((x, y)) in self.pairs

    def sort_key(self):
        return tuple(sorted(tuple(sorted(p)) for p in self.pairs))

    def __str__(self):
        return ",".join("".join(p) for p in self.sort_key())


@dataclass(frozen=True)
class TraceWord:
    """Element of the partially commutative monoid, held by its lex-least spelling."""

    normal_form: str
    graph: CommutationGraph = field(default_factory=CommutationGraph, compare=True)

    def __len__(self):
        return len(self.normal_form)

    def __hash__(self):
        return hash(self.normal_form)

    def sort_key(self):
        return (len(self.normal_form), self.normal_form)

    def __str__(self):
        return self.normal_form or "1"


def trace_normal_form(w: str, graph: CommutationGraph) -> TraceWord:
    """Lexicographically least word equivalent to ``w`` under commutations.

    Repeatedly extracts the smallest letter whose first remaining occurrence
    commutes with every letter before it.
    """
    return _trace_word(w, graph)


@lru_cache(maxsize=1 << 16)
def _trace_word(w: str, graph: CommutationGraph) -> TraceWord:
    return TraceWord(_lex_normal(w, graph), graph)


def _lex_normal(w: str, graph: CommutationGraph) -> str:
    rest = list(w)
    out = []
    while rest:
        best = None
        seen = set()
        for i, x in enumerate(rest):
            if x in seen:
                continue
            if all(graph.commute(x, y) for y in rest[:i]):
                if best is None or x < rest[best]:
                    best = i
            seen.add(x)
        out.append(rest.pop(best))
    return "".join(out)


def trace_class(w: str, graph: CommutationGraph) -> set[str]:
    """All spellings reachable from ``w`` by swapping adjacent commuting letters (BFS)."""
    seen = {w}
    todo = deque([w])
    while todo:
        u = todo.popleft()
        for i in range(len(u) - 1):
            if graph.commute(u[i], u[i + 1]):
                v = u[:i] + u[i + 1] + u[i] + u[i + 2:]
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
    return seen


# ------------------------------------------------------------ finite groups

@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Group given by a multiplication table; element 0 is the identity."""

    name: str
    names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.names)
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise ValueError("multiplication table must be square")
        t = self.table
        if any(t[0][i] != i or t[i][0] != i for i in range(n)):
            raise ValueError("element 0 must be the identity")
        for i in range(n):
            if sorted(t[i]) != list(range(n)):
                raise ValueError("table rows must be permutations")
            if 0 not in t[i] or t[i].index(0) != [r[i] for r in t].index(0):
                raise ValueError(f"element {self.names[i]} lacks a two-sided inverse")
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                for c in range(n):
                    if t[ab][c] != t[a][t[b][c]]:
                        raise ValueError("multiplication table is not associative")

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.name == other.name and self.table == other.table

    def __hash__(self):
        return hash((self.name, len(self.names)))

    @property
    def order(self) -> int:
        return len(self.names)

    def elements(self) -> list["GroupElem"]:
        return [GroupElem(self, i) for i in range(self.order)]

    def identity(self) -> "GroupElem":
        return GroupElem(self, 0)

    def element(self, name: str) -> "GroupElem":
        try:
            return GroupElem(self, self.names.index(name))
        except ValueError:
            raise UnknownLetter(f"no element named {name!r} in {self.name}") from None


@dataclass(frozen=True)
class GroupElem:
    group: FiniteGroup
    index: int

    def __mul__(self, other: "GroupElem") -> "GroupElem":
        return GroupElem(self.group, self.group.table[self.index][other.index])

    def inverse(self) -> "GroupElem":
        return GroupElem(self.group, self.group.table[self.index].index(0))

    def sort_key(self):
        return self.index

    def __str__(self):
        return self.group.names[self.index]


def cyclic_group(n: int) -> FiniteGroup:
    names = ["1", "c"] + [f"c^{k}" for k in range(2, n)]
    table = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    return FiniteGroup(f"C{n}", tuple(names[:n]), table)


def symmetric_group(n: int) -> FiniteGroup:
    if not 1 <= n <= 9:
        raise SizeLimit("symmetric groups are limited to S1..S9")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(i) = p(q(i)): apply q first
    table = tuple(tuple(index[tuple(p[q[i]] for i in range(n))] for q in perms) for p in perms)
    names = tuple("1" if i == 0 else "p" + "".join(str(x + 1) for x in p) for i, p in enumerate(perms))
    return FiniteGroup(f"S{n}", names, table)


def group_from_name(name: str) -> FiniteGroup:
    m = re.fullmatch(r"([CS])(\d+)", name.strip())
    if not m:
        raise ValueError(f"unknown group {name!r}; use Cn or Sn")
    n = int(m.group(2))
    if n < 1:
        raise ValueError("group order must be positive")
    return cyclic_group(n) if m.group(1) == "C" else symmetric_group(n)


# ----------------------------------------------------------------- diagrams

@dataclass(frozen=True)
class LabelledDiagram:
    """Packed matrix: rows are black spots, columns white spots, entries edge counts."""

    rows: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        rows = self.rows
        if not rows:
            return
        q = len(rows[0])
        if q == 0 or any(len(r) != q for r in rows):
            raise MalformedMatrix("diagram matrix must be rectangular and non-empty")
        for r in rows:
            if any((not isinstance(x, int)) or x < 0 for x in r):
                raise MalformedMatrix("entries must be non-negative integers")
            if not any(r):
                raise MalformedMatrix("matrix is not packed: zero row")
        for j in range(q):
            if not any(r[j] for r in rows):
                raise MalformedMatrix("matrix is not packed: zero column")

    @classmethod
    def of(cls, rows: Iterable[Iterable[int]]) -> "LabelledDiagram":
        return cls(tuple(tuple(r) for r in rows))

    @property
    def p(self) -> int:
        return len(self.rows)

    @property
    def q(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def degree(self) -> int:
        return sum(map(sum, self.rows))

    def is_empty(self) -> bool:
        return not self.rows

    def sort_key(self):
        return (self.degree, self.p, self.q, self.rows)

    def __str__(self):
        return format_matrix(self.rows) if self.rows else "1"


EMPTY_DIAGRAM = LabelledDiagram()


@dataclass(frozen=True)
class Diagram:
    """Unlabelled diagram: class of a labelled one under row and column permutations."""

    canon: LabelledDiagram

    @property
    def degree(self) -> int:
        return self.canon.degree

    def sort_key(self):
        return self.canon.sort_key()

    def __str__(self):
        return str(self.canon)


def format_matrix(rows) -> str:
    return "[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in rows) + "]"


def parse_matrix(text: str) -> tuple[tuple[int, ...], ...]:
    """Parse ``[[r11,...],[...]]`` (whitespace ignored) into a tuple of rows."""
    s = "".join(text.split())
    if not re.fullmatch(r"\[(\[\d+(,\d+)*\])(,\[\d+(,\d+)*\])*\]|\[\]", s):
        raise MalformedMatrix(f"bad matrix literal {text!r}")
    if s == "[]":
        return ()
    return tuple(tuple(int(x) for x in r.split(",")) for r in re.findall(r"\[([\d,]+)\]", s))


def _blocks(P) -> list[frozenset]:
    return [frozenset(b) for b in getattr(P, "blocks", P)]


def diagram_from_partitions(P1, P2) -> LabelledDiagram:
    """Incidence matrix ``|Y ∩ Z|`` of two partitions, blocks ordered by minimum."""
    b1 = sorted(_blocks(P1), key=min)
    b2 = sorted(_blocks(P2), key=min)
    g1 = frozenset().union(*b1) if b1 else frozenset()
    g2 = frozenset().union(*b2) if b2 else frozenset()
    if g1 != g2:
        raise PartitionMismatch("partitions must cover the same ground set")
    return LabelledDiagram(tuple(tuple(len(y & z) for z in b2) for y in b1))


def ldiag_concat(d1: LabelledDiagram, d2: LabelledDiagram) -> LabelledDiagram:
    """Block-diagonal juxtaposition ``[d1|d2]``."""
    if d1.is_empty():
        return d2
    if d2.is_empty():
        return d1
    q1, q2 = d1.q, d2.q
    rows = tuple(r + (0,) * q2 for r in d1.rows) + tuple((0,) * q1 + r for r in d2.rows)
    return LabelledDiagram(rows)


def ldiag_restrict(d: LabelledDiagram, rows: Iterable[int]) -> LabelledDiagram:
    """Sub-diagram on the black spots ``rows`` (1-based); emptied columns are dropped."""
    idx = sorted(set(rows))
    for i in idx:
        if not 1 <= i <= d.p:
            raise IndexOutOfRange(f"black spot {i} outside 1..{d.p}")
    return _restrict(d.rows, tuple(i - 1 for i in idx))


@lru_cache(maxsize=1 << 16)
def _restrict(rows, idx) -> LabelledDiagram:
    sub = [rows[i] for i in idx]
    if not sub:
        return EMPTY_DIAGRAM
    keep = [j for j in range(len(sub[0])) if any(r[j] for r in sub)]
    return LabelledDiagram(tuple(tuple(r[j] for j in keep) for r in sub))


def diag_canonical(d: LabelledDiagram, max_side: int | None = None) -> Diagram:
    """Row-major lexicographically least matrix among all row/column permutations."""
    bound = MAX_CANON_SIDE if max_side is None else max_side
    if d.p > bound or d.q > bound:
        raise SizeLimit(f"{d.p}x{d.q} diagram exceeds canonicalisation bound {bound}")
    return Diagram(LabelledDiagram(_canon_rows(d.rows)))


@lru_cache(maxsize=1 << 16)
def _canon_rows(rows):
    if not rows:
        return ()
    p, q = len(rows), len(rows[0])
    best = None
    if p <= q:
        # fixing the row order, sorting columns gives the least matrix for it
        for perm in set(itertools.permutations(rows)):
            cand = tuple(zip(*sorted(zip(*perm))))
            if best is None or cand < best:
                best = cand
    else:
        cols = tuple(zip(*rows))
        for perm in set(itertools.permutations(cols)):
            cand = tuple(sorted(zip(*perm)))
            if best is None or cand < best:
                best = cand
    return best


def spot_types(d: LabelledDiagram) -> tuple[dict[int, int], dict[int, int]]:
    """(white-spot type, black-spot type): degree -> number of spots of that degree."""
    col_sums = [sum(c) for c in zip(*d.rows)] if d.rows else []
    row_sums = [sum(r) for r in d.rows]
    return dict(sorted(Counter(col_sums).items())), dict(sorted(Counter(row_sums).items()))


def packed_matrices(n: int, max_rows: int | None = None, max_cols: int | None = None) -> Iterator[LabelledDiagram]:
    """Every packed matrix with entry sum ``n`` (labelled diagrams of degree ``n``)."""
    if n == 0:
        yield EMPTY_DIAGRAM
        return
    pmax = n if max_rows is None else min(n, max_rows)
    qmax = n if max_cols is None else min(n, max_cols)
    for p in range(1, pmax + 1):
        for q in range(1, qmax + 1):
            if p * q < max(p, q):
                continue
            yield from _fill(n, p, q)


def _fill(n, p, q):
    rows_by_sum = {s: list(_compositions(s, q)) for s in range(1, n + 1)}

    def rec(rows, left, covered):
        todo = p - len(rows)
        if todo == 0:
            if left == 0 and all(covered):
                yield LabelledDiagram(tuple(rows))
            return
        # each later row needs at least one edge, and so does every uncovered column
        for s in range(1, left - (todo - 1) + 1):
            if left - s < max(todo - 1, 0):
                break
            for r in rows_by_sum[s]:
                cov = [c or x > 0 for c, x in zip(covered, r)]
                if cov.count(False) > left - s:
                    continue
                rows.append(r)
                yield from rec(rows, left - s, cov)
                rows.pop()

    yield from rec([], n, [False] * q)


def _compositions(total, parts):
    """Non-negative integer vectors of length ``parts`` summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for v in range(total, -1, -1):
        for rest in _compositions(total - v, parts - 1):
            yield (v,) + rest
