"""Exact matrix representations and their tensor products through a coproduct."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Hashable, Sequence

from .bases import FiniteGroup, cyclic_group
from .errors import DimensionMismatch, NotAMorphism
from .hopf import BialgebraOps, check_bialgebra
from .linalg import OMEGA, CycOmega, LinComb

Matrix = tuple  # tuple of row tuples; entries Fraction or CycOmega


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def zeros(n: int) -> Matrix:
    return tuple((Fraction(0),) * n for _ in range(n))


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    cols = list(zip(*B))
    return tuple(tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols) for row in A)


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(A, B))


def mat_scale(c, A: Matrix) -> Matrix:
    return tuple(tuple(c * a for a in r) for r in A)


def kron(A: Matrix, B: Matrix) -> Matrix:
    return tuple(tuple(a * b for a in ra for b in rb) for ra in A for rb in B)


def is_zero(A: Matrix) -> bool:
    return not any(x for r in A for x in r)


def mat_eq(A: Matrix, B: Matrix) -> bool:
    return len(A) == len(B) and all(x == y for r, s in zip(A, B) for x, y in zip(r, s))


@dataclass(eq=False)
class MatrixRep:
    """Assignment of ``dim × dim`` matrices to basis elements.

    ``domain`` lists the basis elements the representation is validated on
    (the whole group for group representations).
    """

    dim: int
    action: Callable[[Hashable], Matrix]
    domain: Sequence = ()
    name: str = ""

    def __call__(self, b) -> Matrix:
        M = self.action(b)
        if len(M) != self.dim or any(len(r) != self.dim for r in M):
            raise DimensionMismatch(f"{self.name}: image of {b} is not {self.dim}x{self.dim}")
        return M


def rep_apply(rho: MatrixRep, X: LinComb) -> Matrix:
    """``Σ X(b) ρ(b)``."""
    out = zeros(rho.dim)
    for b, c in X.raw_items():
        out = mat_add(out, mat_scale(c, rho(b)))
    return out


def check_rep(rho: MatrixRep, alg: BialgebraOps, elements: Sequence | None = None) -> bool:
    """``ρ(1) = Id`` and ``ρ(xy) = ρ(x)ρ(y)`` for all pairs from ``elements``."""
    elements = rho.domain if elements is None else elements
    if not mat_eq(rho(alg.unit), identity(rho.dim)):
        return False
    for x, y in itertools.product(elements, repeat=2):
        if not mat_eq(rep_apply(rho, alg.mul_basis(x, y)), mat_mul(rho(x), rho(y))):
            return False
    return True


def rep_tensor(rho1: MatrixRep, rho2: MatrixRep, alg: BialgebraOps, corpus: Sequence | None = None) -> MatrixRep:
    """``(ρ1 ⊗ ρ2) ∘ Δ`` as a representation on the tensor product of carriers.

    Raises :class:`NotAMorphism` if Δ fails multiplicativity on ``corpus``.
    """
    corpus = list(rho1.domain if corpus is None else corpus)
    report = check_bialgebra(alg, [], pairs=itertools.product(corpus, repeat=2))
    if not report.morphism:
        raise NotAMorphism(f"{alg.name}: coproduct is not multiplicative on {report.witnesses.get('morphism')}")

    @lru_cache(maxsize=None)
    def action(b):
        out = zeros(rho1.dim * rho2.dim)
        for (x, y), c in alg.delta_basis(b).raw_items():
            out = mat_add(out, mat_scale(c, kron(rho1(x), rho2(y))))
        return out

    return MatrixRep(rho1.dim * rho2.dim, action, corpus, name=f"{rho1.name}⊠{rho2.name}")


# ------------------------------------------------------------ constructors

def group_rep(group: FiniteGroup, images: dict, name: str = "") -> MatrixRep:
    """Representation from the images of every group element (keyed by name or element)."""
    table = {}
    for k, M in images.items():
        g = group.element(k) if isinstance(k, str) else k
        table[g] = tuple(tuple(r) for r in M)
    missing = [g for g in group.elements() if g not in table]
    if missing:
        raise ValueError(f"no image for {missing[0]}")
    dim = len(next(iter(table.values())))
    return MatrixRep(dim, table.__getitem__, group.elements(), name or f"rep({group.name})")


def regular_rep(group: FiniteGroup) -> MatrixRep:
    """Left regular representation by permutation matrices."""
    n = group.order
    one, zero = Fraction(1), Fraction(0)

    def action(g):
        return tuple(tuple(one if group.table[g.index][j] == i else zero for j in range(n)) for i in range(n))

    return MatrixRep(n, action, group.elements(), f"reg({group.name})")


def c3_omega_rep() -> tuple[FiniteGroup, MatrixRep]:
    """C3 acting on Q(w)^2 by ``c -> diag(w, w^2)``: the rotation by 2π/3, diagonalised."""
    G = cyclic_group(3)
    w = OMEGA
    w2 = w * w
    one, zero = CycOmega(1), CycOmega(0)
    images = {
        "1": ((one, zero), (zero, one)),
        "c": ((w, zero), (zero, w2)),
        "c^2": ((w2, zero), (zero, w2 * w2)),
    }
    return G, group_rep(G, images, "rot(C3)")


def sign_rep(group: FiniteGroup) -> MatrixRep:
    """Sign character of a symmetric group given by :func:`symmetric_group`."""
    def sign(g):
        name = group.names[g.index]
        perm = list(range(1, len(name))) if name == "1" else [int(c) for c in name[1:]]
        inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
        return ((Fraction((-1) ** inv),),)

    return MatrixRep(1, sign, group.elements(), f"sign({group.name})")


def permutation_rep(group: FiniteGroup) -> MatrixRep:
    """Defining representation of ``S_n`` by n×n permutation matrices."""
    n = len(group.names[1]) - 1 if group.order > 1 else 1

    def action(g):
        name = group.names[g.index]
        perm = list(range(1, n + 1)) if name == "1" else [int(c) for c in name[1:]]
        return tuple(tuple(Fraction(int(perm[j] == i + 1)) for j in range(n)) for i in range(n))

    return MatrixRep(n, action, group.elements(), f"perm({group.name})")


def word_rep(letter_images: dict, name: str = "") -> MatrixRep:
    """Representation of the free algebra by multiplicative extension from letters."""
    imgs = {k: tuple(tuple(Fraction(x) if isinstance(x, int) else x for x in r) for r in M)
            for k, M in letter_images.items()}
    dim = len(next(iter(imgs.values())))

    @lru_cache(maxsize=None)
    def action(w):
        if not w:
            return identity(dim)
        return mat_mul(action(w[:-1]), imgs[w[-1]])

    return MatrixRep(dim, action, sorted(imgs), name or "word-rep")
