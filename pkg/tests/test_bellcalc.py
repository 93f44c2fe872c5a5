import itertools
from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from hopfcalc import bellcalc as B
from hopfcalc.bases import LabelledDiagram, diag_canonical, diagram_from_partitions, spot_types
from hopfcalc.errors import NonzeroConstantTerm, OrderMismatch, SizeLimit


# ---------------------------------------------------------------- oracles

def partitions_oracle(n):
    """All labelings [n] -> [n] collapsed to sets of blocks."""
    seen = set()
    for labels in itertools.product(range(n), repeat=n):
        blocks = {}
        for i, lab in enumerate(labels, 1):
            blocks.setdefault(lab, set()).add(i)
        seen.add(frozenset(frozenset(b) for b in blocks.values()))
    return seen


def stirling_oracle(n, k):
    return sum((-1) ** j * comb(k, j) * (k - j) ** n for j in range(k + 1)) // factorial(k)


def brute_canon(rows):
    p, q = len(rows), len(rows[0]) if rows else 0
    best = ()
    for rp in itertools.permutations(range(p)):
        for cp in itertools.permutations(range(q)):
            m = tuple(tuple(rows[i][j] for j in cp) for i in rp)
            if not best or m < best:
                best = m
    return best


# ------------------------------------------------------------ partitions

@pytest.mark.parametrize("n", range(7))
def test_set_partitions_against_labelling_oracle(n):
    got = B.set_partitions(n)
    as_sets = {frozenset(frozenset(b) for b in P.blocks) for P in got}
    assert len(got) == len(as_sets)
    assert as_sets == (partitions_oracle(n) if n else {frozenset()})


def test_partition_examples():
    assert [P.blocks for P in B.set_partitions(0)] == [()]
    assert len(B.set_partitions(3)) == 5
    assert len(B.set_partitions(4)) == 15
    with pytest.raises(SizeLimit):
        B.set_partitions(13)


def test_partition_canonical_block_order():
    P = B.SetPartition.of([{3, 1}, {2}])
    assert P.blocks == ((1, 3), (2,))
    assert P.type() == {1: 1, 2: 1}
    assert str(P) == "{{1,3},{2}}"
    with pytest.raises(ValueError):
        B.SetPartition.of([{1}, {3}])


@pytest.mark.parametrize("n,k", [(n, k) for n in range(9) for k in range(n + 1)])
def test_stirling_against_inclusion_exclusion(n, k):
    assert B.stirling2(n, k) == stirling_oracle(n, k)


def test_stirling_examples():
    assert B.stirling2(3, 2) == 3
    assert B.stirling2(4, 2) == 7
    assert all(B.stirling2(n, n) == 1 for n in range(8))
    assert all(B.stirling2(n, 0) == 0 for n in range(1, 8))


def test_bell_values():
    assert [B.bell(n) for n in range(4)] == [1, 1, 2, 5]
    assert B.bell(10) == 115975
    for n in range(1, 13):
        assert B.bell(n) == sum(B.stirling2(n, k) for k in range(n + 1))


def test_bell_polynomial():
    y = B.Polynomial.var("y")
    assert B.bell_polynomial(1) == y
    assert B.bell_polynomial(3) == y + 3 * y * y + y * y * y
    assert B.bell_polynomial(2).evaluate({"y": 1}) == 2


# ----------------------------------------------------------------- EGFs

def test_egf_mul_examples():
    N = 6
    e = B.exp_series(N)
    assert B.egf_mul(e, e).coeffs == tuple(Fraction(2 ** n) for n in range(N + 1))
    z = B.EGFSeries.of([0, 1, 0, 0])
    assert B.egf_mul(z, z)[2] == 2
    one = B.EGFSeries.of([1, 0, 0, 0])
    F = B.EGFSeries.of([3, 1, 4, 1])
    assert B.egf_mul(F, one) == F
    with pytest.raises(OrderMismatch):
        B.egf_mul(F, B.exp_series(5))


def test_exp_and_log():
    assert B.egf_exp(B.EGFSeries.of([0, 1, 0, 0, 0])) == B.exp_series(4)
    with pytest.raises(NonzeroConstantTerm):
        B.egf_exp(B.EGFSeries.of([1, 1]))
    with pytest.raises(NonzeroConstantTerm):
        B.egf_log(B.EGFSeries.of([2, 1]))


def test_exp_of_y_times_exp_minus_one_gives_bell_polynomials():
    y = B.Polynomial.var("y")
    F = B.EGFSeries((B.Polynomial(),) + (y,) * 6)
    E = B.egf_exp(F)
    assert all(E[n] == B.bell_polynomial(n) for n in range(7))


rationals = st.fractions(min_value=-4, max_value=4, max_denominator=5)


@settings(max_examples=50)
@given(st.lists(rationals, min_size=8, max_size=8))
def test_log_inverts_exp(tail):
    F = B.EGFSeries.of([0] + tail)
    assert B.egf_log(B.egf_exp(F)) == F


@settings(max_examples=50)
@given(st.lists(rationals, min_size=5, max_size=5), st.lists(rationals, min_size=5, max_size=5))
def test_exp_turns_sums_into_products(f, g):
    F, G = B.EGFSeries.of([0] + f), B.EGFSeries.of([0] + g)
    S = B.EGFSeries.of([a + b for a, b in zip(F.coeffs, G.coeffs)])
    assert B.egf_exp(S) == B.egf_mul(B.egf_exp(F), B.egf_exp(G))


def test_hadamard_examples():
    N = 5
    e = B.exp_series(N)
    assert B.hadamard(e, e) == e
    F = B.EGFSeries.of([2, -1, 3, 0, 7, 1])
    assert B.hadamard(F, e) == F
    fact = B.EGFSeries.of([factorial(n) for n in range(N + 1)])
    assert B.hadamard(fact, fact).coeffs == tuple(Fraction(factorial(n) ** 2) for n in range(N + 1))


def test_two_mode_factorisation():
    lam, mu = Fraction(3, 2), Fraction(-2, 5)
    F = B.free_exponential([lam], 6)
    G = B.free_exponential([mu], 6)
    assert B.hadamard(F, G) == B.free_exponential([lam * mu], 6)


# ------------------------------------------------- diagrams and mult

def test_hadamard_low_orders():
    H = B.hadamard_via_partitions(2)
    L1, L2, V1, V2 = (B.Polynomial.var(v) for v in ("L1", "L2", "V1", "V2"))
    assert H[1] == L1 * V1
    assert H[2] == (L2 + L1 * L1) * (V2 + V1 * V1)


def test_mult_examples():
    def m(rows):
        return B.mult_of_diagram(LabelledDiagram.of(rows))
    assert m([[1]]) == 1
    assert m([[2]]) == 1
    assert m([[1], [1]]) == 1
    assert m([[1, 1]]) == 1
    assert m([[1, 0], [0, 1]]) == 1
    assert sum(B.mult_table(2).values()) == 4


@pytest.mark.parametrize("n", range(5))
def test_mult_table_against_brute_canonicalisation(n):
    parts = B.set_partitions(n)
    counts = {}
    for P1 in parts:
        for P2 in parts:
            key = brute_canon(diagram_from_partitions(P1, P2).rows)
            counts[key] = counts.get(key, 0) + 1
    table = {d.canon.rows: c for d, c in B.mult_table(n).items()}
    assert table == counts


def test_diagram_class_counts():
    # derived: exhaustive packed-matrix enumeration, cross-checked against the
    # brute-force canonicalisation above for n <= 4
    assert [len(B.diagram_classes(n)) for n in range(6)] == [1, 1, 4, 10, 33, 91]


def test_every_diagram_class_arises_from_partitions():
    for n in range(5):
        assert set(B.diagram_classes(n)) == set(B.mult_table(n))


@pytest.mark.parametrize("n", range(6))
def test_sum_of_mult_is_bell_squared(n):
    assert sum(B.mult_of_diagram(d, n) for d in B.diagram_classes(n)) == B.bell(n) ** 2


def test_routes_agree_through_order_four():
    assert B.hadamard_via_partitions(4) == B.hadamard_via_diagrams(4)


def test_spot_types_recover_partition_types():
    for n in range(5):
        for P1 in B.set_partitions(n):
            for P2 in B.set_partitions(n):
                white, black = spot_types(diagram_from_partitions(P1, P2))
                assert black == P1.type() and white == P2.type()


def test_mult_checks_degree_and_bounds():
    d = diag_canonical(LabelledDiagram.of([[1]]))
    with pytest.raises(ValueError):
        B.mult_of_diagram(d, 2)
    with pytest.raises(SizeLimit):
        B.mult_table(7)
    with pytest.raises(SizeLimit):
        B.hadamard_via_diagrams(7)


def test_bell_table_rows():
    rows = B.bell_table(3)
    assert [r["bell"] for r in rows] == [1, 1, 2, 5]
    assert rows[3]["stirling"] == [0, 1, 3, 1]
    assert [r["sum_mult"] for r in rows] == [1, 1, 4, 25]


def test_polynomial_arithmetic():
    x, y = B.Polynomial.var("x"), B.Polynomial.var("y")
    p = (x + y) * (x - y)
    assert p == x * x - y * y
    assert str(p) == "x^2 - y^2"
    assert p.evaluate({"x": 3, "y": 1}) == 8
    assert str(B.Polynomial()) == "0"
    assert 2 - x == -(x - 2)
