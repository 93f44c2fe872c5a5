import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hopfcalc.bases import (
    Alphabet, CommutationGraph, LabelledDiagram, Monomial, cyclic_group, diag_canonical,
    subword, symmetric_group, trace_class, trace_normal_form,
)
from hopfcalc.errors import NoAntipode
from hopfcalc.hopf import (
    antipode, antipode_basis, cauchy_concat, check_antipode, check_bialgebra, check_grading,
    coproduct, counit, diag, duality_check, swap_coproduct, free_concat_unshuffle, free_grouplike,
    group_algebra, infiltration, iplus_power, ldiag, poly_binomial, product, shuffle_deconcat,
    trace_delta_from_spelling, trace_unshuffle, unshuffle_q,
)
from hopfcalc.linalg import LinComb

Q_VALUES = [0, 1, Fraction(1, 2), Fraction(-3, 4)]
word = st.text(alphabet="ab", max_size=4)


def lc(d):
    return LinComb(d)


# ---------------------------------------------------------------- oracles

def unshuffle_oracle(w, q):
    """Definition by enumeration: sum over covers I ∪ J of the positions."""
    n = len(w)
    acc = {}
    positions = range(1, n + 1)
    for I in itertools.chain.from_iterable(itertools.combinations(positions, k) for k in range(n + 1)):
        rest = [i for i in positions if i not in I]
        for J_extra in itertools.chain.from_iterable(itertools.combinations(I, k) for k in range(len(I) + 1)):
            J = sorted(rest + list(J_extra))
            key = (subword(w, I), subword(w, J))
            acc[key] = acc.get(key, 0) + Fraction(q) ** len(J_extra)
    return LinComb(acc)


def shuffle_oracle(u, v):
    """Interleavings: choose the positions of u among |u|+|v| slots."""
    n = len(u) + len(v)
    acc = {}
    for pos in itertools.combinations(range(n), len(u)):
        it_u, it_v = iter(u), iter(v)
        w = "".join(next(it_u) if i in pos else next(it_v) for i in range(n))
        acc[w] = acc.get(w, 0) + 1
    return LinComb(acc)


def infiltration_oracle(u, v, q):
    """Coefficient of w is the number of covers (I, J) with w[I] = u, w[J] = v, weighted q^|I∩J|."""
    acc = {}
    letters = sorted(set(u + v)) or ["a"]
    for n in range(max(len(u), len(v)), len(u) + len(v) + 1):
        for w in map("".join, itertools.product(letters, repeat=n)):
            c = unshuffle_oracle(w, q).coeff((u, v))
            if c:
                acc[w] = c
    return LinComb(acc)


# ----------------------------------------------------------- words

def test_coproduct_examples():
    A0 = free_concat_unshuffle("ab", 0)
    assert coproduct(A0, lc({"ab": 1})) == lc({("ab", ""): 1, ("a", "b"): 1, ("b", "a"): 1, ("", "ab"): 1})
    Ac = shuffle_deconcat("ab", 0)
    assert coproduct(Ac, lc({"ab": 1})) == lc({("ab", ""): 1, ("a", "b"): 1, ("", "ab"): 1})
    Aq = free_concat_unshuffle("ab", Fraction(1, 2))
    assert coproduct(Aq, lc({"a": 1})) == lc({("a", ""): 1, ("", "a"): 1, ("a", "a"): Fraction(1, 2)})


@pytest.mark.parametrize("q", Q_VALUES)
def test_unshuffle_matches_cover_enumeration(q):
    for w in Alphabet("ab").words(5):
        assert unshuffle_q(w, q) == unshuffle_oracle(w, q)


def test_product_examples():
    assert product(free_concat_unshuffle(), lc({"ab": 1}), lc({"b": 1})) == lc({"abb": 1})
    assert product(shuffle_deconcat("ab", 0), lc({"a": 1}), lc({"b": 1})) == lc({"ab": 1, "ba": 1})
    q = Fraction(2, 3)
    assert product(shuffle_deconcat("ab", q), lc({"a": 1}), lc({"a": 1})) == lc({"aa": 2, "a": q})


def test_infiltration_classical_example():
    # classical infiltration (q = 1)
    assert infiltration("ab", "ab", 1) == lc({"ab": 1, "aab": 2, "abb": 2, "aabb": 4, "abab": 2})


@pytest.mark.parametrize("q", [0, 1, Fraction(1, 2)])
def test_infiltration_against_cover_oracle(q):
    for u in Alphabet("ab").words(2):
        for v in Alphabet("ab").words(2):
            assert infiltration(u, v, q) == infiltration_oracle(u, v, q)


def test_shuffle_is_infiltration_at_zero():
    for u in Alphabet("ab").words(3):
        for v in Alphabet("ab").words(3):
            assert infiltration(u, v, 0) == shuffle_oracle(u, v)


@settings(max_examples=150)
@given(word, word, word, st.sampled_from(Q_VALUES))
def test_duality(u, v, w, q):
    assert duality_check(u, v, w, q)


@settings(max_examples=80)
@given(word, word, word, st.sampled_from(Q_VALUES))
def test_infiltration_associative_and_commutative(u, v, w, q):
    alg = shuffle_deconcat("ab", q)
    U, V, W = lc({u: 1}), lc({v: 1}), lc({w: 1})
    assert product(alg, U, V) == product(alg, V, U)
    assert product(alg, product(alg, U, V), W) == product(alg, U, product(alg, V, W))


def test_counit():
    A = free_concat_unshuffle()
    assert counit(A, lc({"": 3, "ab": 5})) == 3
    assert counit(free_grouplike("a"), lc({"aa": 2, "a": 1})) == 3


# -------------------------------------------------------- bialgebra checks

def test_designed_failures():
    words = Alphabet("ab").words(3)
    r = check_bialgebra(cauchy_concat(), words)
    assert r.coassociativity and r.counit and not r.morphism
    assert r.witnesses["morphism"]
    r = check_bialgebra(swap_coproduct(), words)
    assert not r.coassociativity and r.morphism
    assert r.as_expected


@pytest.mark.parametrize("alg,corpus", [
    (free_concat_unshuffle("ab", 0), Alphabet("ab").words(3)),
    (free_concat_unshuffle("ab", Fraction(-3, 4)), Alphabet("ab").words(3)),
    (shuffle_deconcat("ab", Fraction(1, 2)), Alphabet("ab").words(3)),
    (poly_binomial("abc"), sorted({Monomial.from_word(w) for w in Alphabet("abc").words(3)}, key=lambda m: m.sort_key())),
    (group_algebra(cyclic_group(4)), cyclic_group(4).elements()),
    (free_grouplike("ab"), Alphabet("ab").words(3)),
])
def test_bialgebra_instances(alg, corpus):
    assert check_bialgebra(alg, corpus).all_pass


def test_poly_binomial_coproduct():
    P = poly_binomial("x")
    x3 = Monomial.of(x=3)
    expected = {(Monomial.of(x=j), Monomial.of(x=3 - j)): c for j, c in enumerate([1, 3, 3, 1])}
    assert P.delta_basis(x3) == LinComb(expected)


def test_gradings():
    assert check_grading(free_concat_unshuffle("ab", 0), Alphabet("ab").words(3))
    assert check_grading(shuffle_deconcat("ab", 0), Alphabet("ab").words(3))
    assert not check_grading(free_grouplike("ab"), Alphabet("ab").words(2))


# --------------------------------------------------------------- trace

def test_trace_coproduct_independent_of_spelling():
    g = CommutationGraph.of([("a", "c")])
    for w in ["acbca", "cabcccbaca", "abcabc"]:
        ref = trace_delta_from_spelling(w, g)
        for v in trace_class(w, g):
            assert trace_delta_from_spelling(v, g) == ref


def test_trace_product_normalises():
    T = trace_unshuffle()
    g = T.params["theta"]
    x = lc({trace_normal_form("c", g): 1})
    y = lc({trace_normal_form("a", g): 1})
    assert product(T, x, y) == lc({trace_normal_form("ac", g): 1})


# ------------------------------------------------------------ diagrams

def test_ldiag_single_edge_coproduct():
    e = LabelledDiagram.of([[1]])
    L = ldiag()
    assert L.delta_basis(e) == lc({(e, L.unit): 1, (L.unit, e): 1})


def test_diag_coproduct_merges_classes():
    D = diag()
    d = diag_canonical(LabelledDiagram.of([[1, 0], [0, 1]]))
    e = diag_canonical(LabelledDiagram.of([[1]]))
    assert D.delta_basis(d) == lc({(d, D.unit): 1, (e, e): 2, (D.unit, d): 1})


# ------------------------------------------------------------ antipode

def test_antipode_closed_form_on_words():
    A = free_concat_unshuffle("ab", 0)
    for w in Alphabet("ab").words(5):
        assert antipode_basis(A, w) == lc({w[::-1]: (-1) ** len(w)})


def test_antipode_of_primitive_and_group():
    P = poly_binomial("x")
    assert antipode(P, lc({Monomial.of(x=2): 1})) == lc({Monomial.of(x=2): 1})
    G = symmetric_group(3)
    g = G.element("p231")
    assert antipode(group_algebra(G), lc({g: 1})) == lc({g.inverse(): 1})


@pytest.mark.parametrize("alg,b", [
    (free_grouplike("a"), "a"),
    (free_concat_unshuffle("ab", 1), "a"),
    (free_concat_unshuffle("ab", Fraction(1, 2)), "ab"),
])
def test_no_antipode(alg, b):
    with pytest.raises(NoAntipode):
        antipode_basis(alg, b)


def test_reduced_coproduct_nilpotent_when_graded():
    A = free_concat_unshuffle("ab", 0)
    assert not iplus_power(A, 4, "aba")
    assert iplus_power(A, 3, "aba")


def test_antipode_shuffle_q():
    # deconcatenation is graded, so the antipode exists even when the product is not
    A = shuffle_deconcat("ab", Fraction(1, 2))
    for w in Alphabet("ab").words(3):
        assert check_antipode(A, w)


@settings(max_examples=60)
@given(word, word)
def test_antipode_antimorphism(x, y):
    A = free_concat_unshuffle("ab", 0)
    assert antipode(A, product(A, lc({x: 1}), lc({y: 1}))) == product(A, antipode(A, lc({y: 1})), antipode(A, lc({x: 1})))
