"""Set partitions, Stirling and Bell numbers, truncated EGFs and the
Hadamard exponential product by coefficients, partition pairs and diagrams.

Variables: ``L_k`` counts k-blocks of the first partition (black spots,
matrix rows) and ``V_k`` k-blocks of the second (white spots, columns).
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from .bases import Diagram, LabelledDiagram, Monomial, diag_canonical, diagram_from_partitions, packed_matrices, spot_types
from .errors import NonzeroConstantTerm, OrderMismatch, SizeLimit
from .linalg import LinComb, to_rational

MAX_PARTITION_N = 12
MAX_DIAGRAM_ORDER = 6


# ---------------------------------------------------------------- partitions

@dataclass(frozen=True)
class SetPartition:
    """Partition of ``{1..n}``; blocks sorted internally and by their minima."""

    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, blocks) -> "SetPartition":
        bs = [tuple(sorted(b)) for b in blocks]
        if any(not b for b in bs):
            raise ValueError("blocks must be non-empty")
        flat = sorted(x for b in bs for x in b)
        if flat != list(range(1, len(flat) + 1)):
            raise ValueError("blocks must partition {1..n}")
        return cls(tuple(sorted(bs, key=lambda b: b[0])))

    @property
    def n(self) -> int:
        return sum(map(len, self.blocks))

    def type(self) -> dict[int, int]:
        return dict(sorted(Counter(map(len, self.blocks)).items()))

    def __len__(self):
        return len(self.blocks)

    def __str__(self):
        return "{" + ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + "}"


def set_partitions(n: int, max_n: int = MAX_PARTITION_N) -> list[SetPartition]:
    """All partitions of ``{1..n}`` in restricted-growth-string order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > max_n:
        raise SizeLimit(f"set partitions of {n} exceed bound {max_n}")
    return list(_partitions(n))


@lru_cache(maxsize=16)
def _partitions(n: int) -> tuple[SetPartition, ...]:
    out = []

    def rec(i, rgs, nblocks):
        if i == n:
            blocks = [[] for _ in range(nblocks)]
            for pos, b in enumerate(rgs, 1):
                blocks[b].append(pos)
            out.append(SetPartition(tuple(tuple(b) for b in blocks)))
            return
        for b in range(nblocks + 1):
            rgs.append(b)
            rec(i + 1, rgs, max(nblocks, b + 1))
            rgs.pop()

    rec(0, [], 0)
    return tuple(out)


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise ValueError("arguments must be non-negative")
    if n == k:
        return 1
    if n == 0 or k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


@lru_cache(maxsize=None)
def bell(n: int) -> int:
    """Bell number via the Bell triangle."""
    if n < 0:
        raise ValueError("n must be non-negative")
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


# --------------------------------------------------------------- polynomials

class Polynomial(LinComb):
    """Commutative polynomial with rational coefficients over :class:`Monomial`."""

    __slots__ = ()

    @classmethod
    def const(cls, c) -> "Polynomial":
        return cls({Monomial(): c})

    @classmethod
    def one(cls) -> "Polynomial":
        return cls.const(1)

    @classmethod
    def var(cls, name: str, power: int = 1) -> "Polynomial":
        return cls({Monomial.of({name: power}): 1})

    @staticmethod
    def _coerce(x) -> "Polynomial":
        if isinstance(x, Polynomial):
            return x
        if isinstance(x, LinComb):
            return Polynomial._raw(dict(x.raw_items()))
        return Polynomial.const(x)

    def __add__(self, other):
        o = self._coerce(other)
        acc = defaultdict(Fraction, self._d)
        for m, c in o._d.items():
            acc[m] += c
        return Polynomial._accumulated(acc)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self._d.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            s = Fraction(other)
            return Polynomial._raw({m: s * c for m, c in self._d.items()} if s else {})
        o = self._coerce(other)
        acc = defaultdict(Fraction)
        for m1, c1 in self._d.items():
            for m2, c2 in o._d.items():
                acc[m1 * m2] += c1 * c2
        return Polynomial._accumulated(acc)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._d == Polynomial.const(other)._d
        return super().__eq__(other)

    __hash__ = LinComb.__hash__

    def evaluate(self, values: dict) -> Fraction:
        total = Fraction(0)
        for m, c in self._d.items():
            t = c
            for v, e in m.powers:
                t *= to_rational(values[v]) ** e
            total += t
        return total

    def __str__(self):
        if not self._d:
            return "0"
        out = []
        for m, c in self.terms():
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not m.powers:
                body = str(a)
            elif a == 1:
                body = str(m)
            else:
                body = f"{a}*{m}"
            out.append((sign, body))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text


def bell_polynomial(n: int, var: str = "y") -> Polynomial:
    """``B_n(y) = Σ_k S(n, k) y^k``."""
    return Polynomial({Monomial.of({var: k}): stirling2(n, k) for k in range(n + 1)})


def type_monomial(alpha: dict[int, int], prefix: str) -> Monomial:
    return Monomial.of({f"{prefix}{k}": c for k, c in alpha.items()})


# ---------------------------------------------------------------------- EGFs

@dataclass(frozen=True)
class EGFSeries:
    """Truncated EGF ``Σ_{n ≤ N} c_n z^n / n!``; coefficients are rationals or polynomials."""

    coeffs: tuple

    @classmethod
    def of(cls, coeffs: Sequence) -> "EGFSeries":
        return cls(tuple(c if isinstance(c, Polynomial) else to_rational(c) for c in coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)


def exp_series(order: int) -> EGFSeries:
    """``e^z``."""
    return EGFSeries.of([1] * (order + 1))


def _one_like(c):
    return Polynomial.one() if isinstance(c, Polynomial) else Fraction(1)


def _zero_like(c):
    return Polynomial() if isinstance(c, Polynomial) else Fraction(0)


def _check_orders(F, G):
    if F.order != G.order:
        raise OrderMismatch(f"orders differ: {F.order} vs {G.order}")


def egf_mul(F: EGFSeries, G: EGFSeries) -> EGFSeries:
    """Product of EGFs: ``c_n = Σ_j C(n, j) f_j g_{n-j}``."""
    _check_orders(F, G)
    out = []
    for n in range(F.order + 1):
        acc = _zero_like(F[0])
        for j in range(n + 1):
            acc = acc + comb(n, j) * (F[j] * G[n - j])
        out.append(acc)
    return EGFSeries(tuple(out))


def egf_exp(F: EGFSeries) -> EGFSeries:
    """``exp(F)`` through order N, from ``G' = F' G``."""
    if F[0] != 0:
        raise NonzeroConstantTerm("exp needs a series with zero constant term")
    g = [_one_like(F[0])]
    for n in range(F.order):
        acc = _zero_like(F[0])
        for k in range(n + 1):
            acc = acc + comb(n, k) * (F[k + 1] * g[n - k])
        g.append(acc)
    return EGFSeries(tuple(g))


def egf_log(G: EGFSeries) -> EGFSeries:
    """Inverse of :func:`egf_exp`; needs constant term 1."""
    if G[0] != 1:
        raise NonzeroConstantTerm("log needs a series with constant term 1")
    f = [_zero_like(G[0])]
    for n in range(G.order):
        acc = G[n + 1]
        for k in range(n):
            acc = acc - comb(n, k) * (f[k + 1] * G[n - k])
        f.append(acc)
    return EGFSeries(tuple(f))


def hadamard(F: EGFSeries, G: EGFSeries) -> EGFSeries:
    """Hadamard exponential product: coefficientwise ``a_n b_n``."""
    _check_orders(F, G)
    return EGFSeries(tuple(a * b for a, b in zip(F.coeffs, G.coeffs)))


def hadamard_via_partitions(order: int) -> EGFSeries:
    """``Σ_n z^n/n! Σ_{P1, P2} L^{Type P1} V^{Type P2}`` over pairs of partitions of [1..n]."""
    if order > MAX_DIAGRAM_ORDER:
        raise SizeLimit(f"order {order} exceeds bound {MAX_DIAGRAM_ORDER}")
    out = []
    for n in range(order + 1):
        parts = set_partitions(n)
        acc = defaultdict(Fraction)
        for P1 in parts:
            m1 = type_monomial(P1.type(), "L")
            for P2 in parts:
                acc[m1 * type_monomial(P2.type(), "V")] += 1
        out.append(Polynomial._accumulated(acc))
    return EGFSeries(tuple(out))


@lru_cache(maxsize=None)
def _mult_table(n: int) -> dict:
    parts = set_partitions(n)
    return dict(Counter(diag_canonical(diagram_from_partitions(P1, P2)) for P1 in parts for P2 in parts))


def mult_table(n: int) -> dict[Diagram, int]:
    """Number of ordered partition pairs of [1..n] giving each diagram class."""
    if n > MAX_DIAGRAM_ORDER:
        raise SizeLimit(f"degree {n} exceeds bound {MAX_DIAGRAM_ORDER}")
    return dict(_mult_table(n))


def mult_of_diagram(d: Diagram | LabelledDiagram, n: int | None = None) -> int:
    """``mult(d)``: ordered pairs of partitions of [1..|d|] with incidence diagram d."""
    if isinstance(d, LabelledDiagram):
        d = diag_canonical(d)
    if n is None:
        n = d.degree
    if n != d.degree:
        raise ValueError(f"diagram has {d.degree} edges, not {n}")
    return mult_table(n).get(d, 0)


@lru_cache(maxsize=None)
def _classes(n: int) -> tuple:
    return tuple(sorted({diag_canonical(m) for m in packed_matrices(n)}, key=lambda d: d.sort_key()))


def diagram_classes(n: int) -> list[Diagram]:
    """Unlabelled diagrams with n edges, from an exhaustive packed-matrix enumeration."""
    if n > MAX_DIAGRAM_ORDER:
        raise SizeLimit(f"degree {n} exceeds bound {MAX_DIAGRAM_ORDER}")
    return list(_classes(n))


def diagram_monomial(d: Diagram | LabelledDiagram) -> Monomial:
    """``L^{black type} V^{white type}``."""
    canon = d.canon if isinstance(d, Diagram) else d
    white, black = spot_types(canon)
    return type_monomial(black, "L") * type_monomial(white, "V")


def hadamard_via_diagrams(order: int) -> EGFSeries:
    """``Σ_n z^n/n! Σ_{|d| = n} mult(d) L^{black type(d)} V^{white type(d)}``."""
    if order > MAX_DIAGRAM_ORDER:
        raise SizeLimit(f"order {order} exceeds bound {MAX_DIAGRAM_ORDER}")
    out = []
    for n in range(order + 1):
        acc = defaultdict(Fraction)
        for d in diagram_classes(n):
            acc[diagram_monomial(d)] += mult_of_diagram(d, n)
        out.append(Polynomial._accumulated(acc))
    return EGFSeries(tuple(out))


def specialize(series: EGFSeries, values: dict) -> EGFSeries:
    """Evaluate polynomial coefficients at rational values of the variables."""
    return EGFSeries(tuple(c.evaluate(values) if isinstance(c, Polynomial) else c for c in series.coeffs))


def free_exponential(cumulants: Sequence, order: int) -> EGFSeries:
    """``exp(Σ_{n≥1} x_n z^n/n!)`` for rational ``x_1, x_2, ...`` (missing ones are 0)."""
    coeffs = [0] + [cumulants[n - 1] if n - 1 < len(cumulants) else 0 for n in range(1, order + 1)]
    return egf_exp(EGFSeries.of(coeffs))


def bell_table(upto: int, diagram_upto: int = 5) -> list[dict]:
    """Rows of n, B(n), Stirling row, number of diagram classes and Σ mult."""
    rows = []
    for n in range(upto + 1):
        row = {"n": n, "bell": bell(n), "stirling": [stirling2(n, k) for k in range(n + 1)]}
        if n <= min(diagram_upto, MAX_DIAGRAM_ORDER):
            row["diagrams"] = len(diagram_classes(n))
            row["sum_mult"] = sum(mult_table(n).values())
        rows.append(row)
    return rows
