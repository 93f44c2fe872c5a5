"""Exact scalars, finitely supported linear combinations, tensors and convolution.

Basis elements are any hashable objects. Their canonical order is given by
:func:`basis_key`: words (``str``) are ordered length-then-lexicographic,
tensors (``tuple``) componentwise, and every other basis kind exposes a
``sort_key()`` method.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Iterator, Mapping

Rational = Fraction

__all__ = [
    "Rational", "CycOmega", "OMEGA", "LinComb", "LinMap", "basis_key",
    "to_rational", "lc_combine", "lc_tensor", "lc_pair", "convolve",
]


def to_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


class CycOmega:
    """Element ``a + b*w`` of Q(w) where w is a primitive cube root of unity.

    Multiplication uses ``w**2 == -1 - w``.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = to_rational(a)
        self.b = to_rational(b)

    @classmethod
    def coerce(cls, x) -> "CycOmega":
        if isinstance(x, CycOmega):
            return x
        return cls(x, 0)

    def __add__(self, other):
        o = CycOmega.coerce(other)
        return CycOmega(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return CycOmega(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-CycOmega.coerce(other))

    def __rsub__(self, other):
        return CycOmega.coerce(other) - self

    def __mul__(self, other):
        o = CycOmega.coerce(other)
        bd = self.b * o.b
        return CycOmega(self.a * o.a - bd, self.a * o.b + self.b * o.a - bd)

    __rmul__ = __mul__

    def conjugate(self) -> "CycOmega":
        # w -> w**2 = -1 - w
        return CycOmega(self.a - self.b, -self.b)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycOmega(other)
        if not isinstance(other, CycOmega):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"CycOmega({self.a}, {self.b})"

    def __str__(self):
        if not self.b:
            return str(self.a)
        w = "w" if self.b == 1 else ("-w" if self.b == -1 else f"{self.b}*w")
        if not self.a:
            return w
        return f"{self.a} + {w}" if not w.startswith("-") else f"{self.a} - {w[1:]}"


OMEGA = CycOmega(0, 1)


def basis_key(b):
    if isinstance(b, str):
        return (len(b), b)
    if isinstance(b, tuple):
        return tuple(basis_key(x) for x in b)
    return b.sort_key()


class LinComb(Mapping):
    """Immutable finitely supported map from basis elements to rationals.

    Integer coefficients may be stored as ``int`` internally for speed;
    every accessor returns :class:`~fractions.Fraction`.

    Zero coefficients are pruned on construction, so ``==`` is mathematical
    equality. Iteration and :meth:`terms` follow the canonical basis order.
    """

    __slots__ = ("_d", "_hash")

    def __init__(self, terms: Mapping | Iterable | None = None):
        d = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for b, c in items:
                c = to_rational(c)
                if c:
                    d[b] = d.get(b, 0) + c
                    if not d[b]:
                        del d[b]
        self._d = d
        self._hash = None

    @classmethod
    def _raw(cls, d: dict) -> "LinComb":
        # d must already hold non-zero int or Fraction coefficients
        obj = cls.__new__(cls)
        obj._d = d
        obj._hash = None
        return obj

    @classmethod
    def _accumulated(cls, acc: Mapping) -> "LinComb":
        return cls._raw({b: c for b, c in acc.items() if c})

    @classmethod
    def basis(cls, b, c=1) -> "LinComb":
        return cls({b: c})

    @classmethod
    def zero(cls) -> "LinComb":
        return cls._raw({})

    def __getitem__(self, b):
        return Fraction(self._d[b])

    def coeff(self, b) -> Fraction:
        return Fraction(self._d.get(b, 0))

    def __len__(self):
        return len(self._d)

    def __iter__(self) -> Iterator:
        return iter(sorted(self._d, key=basis_key))

    def __contains__(self, b):
        return b in self._d

    def terms(self) -> list[tuple[Hashable, Fraction]]:
        return [(b, Fraction(self._d[b])) for b in self]

    def raw_items(self):
        """Unordered ``(basis, coefficient)`` pairs, cheaper than :meth:`terms`."""
        return self._d.items()

    def support(self) -> list:
        return list(self)

    def __bool__(self):
        return bool(self._d)

    def __eq__(self, other):
        if isinstance(other, LinComb):
            return self._d == other._d
        if isinstance(other, Mapping):
            return self._d == LinComb(other)._d
        if other == 0:
            return not self._d
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._d.items()))
        return self._hash

    def __add__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        return lc_combine(1, self, 1, other)

    def __sub__(self, other):
        if not isinstance(other, LinComb):
            return NotImplemented
        return lc_combine(1, self, -1, other)

    def __neg__(self):
        return self._raw({b: -c for b, c in self._d.items()})

    def __mul__(self, scalar):
        if isinstance(scalar, (int, Fraction)):
            return self.scale(scalar)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, scalar) -> "LinComb":
        s = to_rational(scalar)
        if not s:
            return self._raw({})
        return self._raw({b: s * c for b, c in self._d.items()})

    def map_basis(self, f: Callable) -> "LinComb":
        """Relabel every basis element through ``f``, merging collisions."""
        acc = defaultdict(int)
        for b, c in self._d.items():
            acc[f(b)] += c
        return self._accumulated(acc)

    def __repr__(self):
        inner = ", ".join(f"{b!r}: {c}" for b, c in self.terms())
        return f"{type(self).__name__}({{{inner}}})"


def lc_combine(a, X: LinComb, b, Y: LinComb) -> LinComb:
    """Return ``a*X + b*Y`` with zero terms pruned."""
    a, b = to_rational(a), to_rational(b)
    acc = defaultdict(int)
    if a:
        for k, c in X.raw_items():
            acc[k] += a * c
    if b:
        for k, c in Y.raw_items():
            acc[k] += b * c
    return LinComb._accumulated(acc)


def _tensor_key(x, y):
    left = x if isinstance(x, tuple) else (x,)
    right = y if isinstance(y, tuple) else (y,)
    return left + right


def lc_tensor(X: LinComb, Y: LinComb) -> LinComb:
    """Tensor product; nested tensors are flattened, so ``(u⊗v)⊗w == u⊗(v⊗w)``."""
    d = {}
    for x, cx in X.raw_items():
        for y, cy in Y.raw_items():
            d[_tensor_key(x, y)] = cx * cy
    return LinComb._raw(d)


def lc_pair(X: LinComb, Y: LinComb) -> Fraction:
    """Kronecker pairing: basis elements are orthonormal."""
    if len(Y) < len(X):
        X, Y = Y, X
    return sum((c * Y.coeff(b) for b, c in X.raw_items()), Fraction(0))


class LinMap:
    """Linear map given by its action on basis elements."""

    def __init__(self, on_basis: Callable[[Hashable], LinComb], name: str = ""):
        self.on_basis = on_basis
        self.name = name

    def __call__(self, X: LinComb) -> LinComb:
        acc = defaultdict(int)
        for b, c in X.raw_items():
            for k, v in self.on_basis(b).raw_items():
                acc[k] += c * v
        return LinComb._accumulated(acc)

    def __repr__(self):
        return f"LinMap({self.name or self.on_basis!r})"


def convolve(f: LinMap, g: LinMap, alg) -> LinMap:
    """Convolution ``f*g = mu o (f ⊗ g) o Delta`` over the bialgebra ``alg``."""

    def on_basis(b):
        acc = LinComb.zero()
        for (x, y), c in alg.coproduct_basis(b).raw_items():
            acc = lc_combine(1, acc, c, alg.product(f.on_basis(x), g.on_basis(y)))
        return acc

    return LinMap(on_basis, name=f"({f.name or 'f'})*({g.name or 'g'})")
