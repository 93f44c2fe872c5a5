"""Acceptance gate: one test per criterion, each printing a single PASS/FAIL line."""

import itertools
import random
import time
from fractions import Fraction

import pytest

from hopfcalc import bellcalc as B
from hopfcalc.bases import (
    Alphabet, CommutationGraph, LabelledDiagram, Monomial, diag_canonical, diagram_from_partitions,
    spot_types, symmetric_group, trace_class, trace_normal_form,
)
from hopfcalc.cli import format_lc, parse_expr, run_command
from hopfcalc.errors import NoAntipode
from hopfcalc.hopf import (
    antipode, antipode_basis, cauchy_concat, check_antipode, check_bialgebra, coproduct, diag,
    duality_check, swap_coproduct, free_concat_unshuffle, free_grouplike, group_algebra, ldiag, poly_binomial,
    shuffle_deconcat, trace_unshuffle,
)
from hopfcalc.linalg import LinComb
from hopfcalc.reps import c3_omega_rep, check_rep, is_zero, permutation_rep, regular_rep, rep_apply, rep_tensor, sign_rep
from hopfcalc import suites


@pytest.fixture
def verdict(capsys):
    def emit(n, ok, detail=""):
        with capsys.disabled():
            print(f"\n[criterion {n:2d}] {'PASS' if ok else 'FAIL'} {detail}".rstrip())
        assert ok, detail
    return emit


def test_criterion_01_bell_numbers(verdict):
    t = time.perf_counter()
    outs = {n: run_command(["bell", str(n)]) for n in (1, 2, 3, 10)}
    lib = [B.bell(n) for n in (1, 2, 3, 10)]
    elapsed = time.perf_counter() - t
    ok = ([outs[n] for n in (1, 2, 3, 10)] == [(0, "1"), (0, "2"), (0, "5"), (0, "115975")]
          and lib == [1, 2, 5, 115975] and elapsed < 1)
    verdict(1, ok, f"bell 1,2,3,10 = {[o[1] for o in outs.values()]} in {elapsed:.3f}s")


def test_criterion_02_egf_identity(verdict):
    t = time.perf_counter()
    y = B.Polynomial.var("y")
    order = 8
    # y (e^x - 1) = sum_{n >= 1} y x^n / n!
    F = B.EGFSeries((B.Polynomial(),) + (y,) * order)
    E = B.egf_exp(F)
    ok = all(E[n] == B.bell_polynomial(n) for n in range(order + 1))
    ok = ok and all(E[n] == B.Polynomial({Monomial.of(y=k): B.stirling2(n, k) for k in range(n + 1)})
                    for n in range(order + 1))
    elapsed = time.perf_counter() - t
    verdict(2, ok and elapsed < 1, f"exp(y(e^x-1)) = sum B_n(y) x^n/n! through order 8 in {elapsed:.3f}s")


def test_criterion_03_coproduct_expansions(verdict):
    ab = LinComb({"ab": 1})
    free0 = free_concat_unshuffle("ab", 0)
    cauchy = cauchy_concat("ab")
    d0 = coproduct(free0, ab)
    dc = coproduct(cauchy, ab)
    want0 = parse_expr("ab (x) 1 + a (x) b + b (x) a + 1 (x) ab", free0)
    wantc = parse_expr("ab (x) 1 + a (x) b + 1 (x) ab", cauchy)
    # Δ0 is multiplicative: Δ0(ab) = Δ0(a)Δ0(b); Δ_Cauchy(ab) differs from Δ_Cauchy(a)Δ_Cauchy(b)
    prod0 = free0.tensor_product(coproduct(free0, LinComb({"a": 1})), coproduct(free0, LinComb({"b": 1})))
    prodc = cauchy.tensor_product(coproduct(cauchy, LinComb({"a": 1})), coproduct(cauchy, LinComb({"b": 1})))
    ok = d0 == want0 and dc == wantc and prod0 == want0 and prodc == want0 and len(d0) == 4 and len(dc) == 3
    verdict(3, ok, f"D0(ab) = {format_lc(d0)}; D_Cauchy(ab) = {format_lc(dc)}")


def test_criterion_04_bialgebra_suites(verdict):
    t = time.perf_counter()
    bounds = suites.Bounds()
    wanted = {"free-q(q=0)", "free-q(q=1)", "free-q(q=1/2)", "poly", "trace(theta=ac)",
              "group(C3)", "group(S3)", "ldiag", "diag"}
    insts = [i for i in suites.instances(bounds) if i.alg.name in wanted]
    assert {i.alg.name for i in insts} == wanted
    lines = []
    ok = True
    for inst in insts:
        rep = check_bialgebra(inst.alg, inst.corpus, inst.pairs)
        ok &= rep.all_pass
        lines.append(f"{inst.alg.name}:{'ok' if rep.all_pass else rep.suites}")
    words = Alphabet("ab").words(bounds.word_len)
    rc = check_bialgebra(cauchy_concat("ab"), words)
    r2 = check_bialgebra(swap_coproduct(), words)
    ok &= rc.coassociativity and rc.counit and not rc.morphism
    ok &= (not r2.coassociativity) and r2.morphism
    elapsed = time.perf_counter() - t
    ok &= elapsed < 60
    verdict(4, ok, f"{len(insts)} instances pass, Cauchy morphism fails, swap coproduct coassociativity fails; {elapsed:.1f}s")


def test_criterion_05_antipode(verdict):
    bounds = suites.Bounds()
    hopf_names = {"free-q(q=0)", "shuffle(q=0)", "poly", "trace(theta=ac)", "group(C3)", "group(S3)", "ldiag", "diag"}
    insts = [i for i in suites.instances(bounds) if i.alg.name in hopf_names]
    failures = []
    n_identity = n_anti = 0
    for inst in insts:
        alg = inst.alg
        for b in inst.corpus:
            n_identity += 1
            if not check_antipode(alg, b):
                failures.append(("identity", alg.name, b))
        corpus = inst.antipode_corpus if inst.antipode_corpus is not None else inst.corpus
        pairs = itertools.product(corpus, repeat=2) if inst.pairs is None or inst.antipode_corpus is not None else inst.pairs
        for x, y in pairs:
            n_anti += 1
            X, Y = LinComb({x: 1}), LinComb({y: 1})
            if antipode(alg, alg.product(X, Y)) != alg.product(antipode(alg, Y), antipode(alg, X)):
                failures.append(("antimorphism", alg.name, (x, y)))
    free0 = free_concat_unshuffle("ab", 0)
    for w in Alphabet("ab").words(6):
        if antipode_basis(free0, w) != LinComb({w[::-1]: (-1) ** len(w)}):
            failures.append(("closed form", w))
    for alg in (free_grouplike("a"), free_concat_unshuffle("ab", 1), free_concat_unshuffle("ab", Fraction(1, 2))):
        try:
            antipode_basis(alg, "a")
            failures.append(("expected NoAntipode", alg.name))
        except NoAntipode:
            pass
    for argv in (["antipode", "--alg", "free-grouplike", "--alphabet", "a", "a"],
                 ["antipode", "--alg", "free-q", "--q", "1", "a"],
                 ["antipode", "--alg", "free-q", "--q", "1/2", "a"]):
        res = run_command(argv)
        if res.code != 3 or not res.error.startswith("NoAntipode"):
            failures.append(("cli", argv))
    verdict(5, not failures, f"{n_identity} identity cases, {n_anti} antimorphism pairs, 127 closed-form words"
            + (f"; first failure {failures[0]}" if failures else ""))


def test_criterion_06_duality(verdict):
    words = Alphabet("ab").words(4)
    bad = [(q, u, v, w) for q in (0, 1, Fraction(1, 2))
           for u, v, w in itertools.product(words, repeat=3) if not duality_check(u, v, w, q)]
    # the third infiltration term keeps the letter: a infiltrate_q a = 2aa + q a
    sample = shuffle_deconcat("ab", Fraction(1, 2)).mul_basis("a", "a") == LinComb({"aa": 2, "a": Fraction(1, 2)})
    verdict(6, not bad and sample, f"{3 * len(words) ** 3} triples" + (f"; first failure {bad[0]}" if bad else ""))


def test_criterion_07_diagram_from_partition_pair(verdict):
    P1 = B.SetPartition.of([{2, 3, 5}, {1, 4, 6, 7, 8}, {9, 10, 11}])
    P2 = B.SetPartition.of([{1}, {2, 3, 4}, {5, 6, 7, 8, 9}, {10, 11}])
    d = diagram_from_partitions(P1, P2)
    drawn = LabelledDiagram.of([[0, 2, 1, 0], [1, 1, 3, 0], [0, 0, 1, 2]])
    white, black = spot_types(d)
    ok = (diag_canonical(d) == diag_canonical(drawn)
          and black == {3: 2, 5: 1} == P1.type()
          and white == {1: 1, 2: 1, 3: 1, 5: 1} == P2.type())
    verdict(7, ok, f"labelled {d}, class {diag_canonical(d)}, black {black}, white {white}")


def test_criterion_08_hadamard_three_routes(verdict):
    t = time.perf_counter()
    order = 5
    parts = B.hadamard_via_partitions(order)
    diags = B.hadamard_via_diagrams(order)
    sums = [sum(B.mult_of_diagram(d, n) for d in B.diagram_classes(n)) for n in range(order + 1)]
    # coefficient route: numeric L_k, V_k through the exponential formula
    Ls = [Fraction(1), Fraction(-2), Fraction(3, 2), Fraction(0), Fraction(5)]
    Vs = [Fraction(2), Fraction(1, 3), Fraction(-1), Fraction(4), Fraction(-1, 2)]
    values = {f"L{k + 1}": Ls[k] for k in range(order)} | {f"V{k + 1}": Vs[k] for k in range(order)}
    coeff = B.hadamard(B.free_exponential(Ls, order), B.free_exponential(Vs, order))
    elapsed = time.perf_counter() - t
    ok = (parts == diags and B.specialize(parts, values) == coeff
          and sums == [B.bell(n) ** 2 for n in range(order + 1)] and sums[5] == 2704 and elapsed < 120)
    verdict(8, ok, f"routes agree through order 5; sum mult = {sums}; {elapsed:.1f}s")


def test_criterion_09_representations(verdict):
    G, rho = c3_omega_rep()
    alg = group_algebra(G)
    norm = LinComb({g: 1 for g in G.elements()})
    ok = check_rep(rho, alg) and is_zero(rep_apply(rho, norm)) and not is_zero(rep_apply(regular_rep(G), norm))
    S3 = symmetric_group(3)
    salg = group_algebra(S3)
    tensors = [(rho, rho, alg), (regular_rep(G), rho, alg), (sign_rep(S3), permutation_rep(S3), salg),
               (permutation_rep(S3), regular_rep(S3), salg)]
    for r1, r2, a in tensors:
        ok = ok and check_rep(rep_tensor(r1, r2, a), a)
    verdict(9, ok, "rho(1+c+c^2) = 0 on Q(w)^2, nonzero on the regular rep; tensor products are representations")


def test_criterion_10_trace_monoid(verdict):
    g = CommutationGraph.of([("a", "c")])
    spellings = ["acbcccbaac", "cabcccbaca", "cabcccbcaa"]
    forms = {trace_normal_form(w, g) for w in spellings}
    words = Alphabet("abc").words(8)
    bad = [w for w in words if trace_normal_form(w, g).normal_form != min(trace_class(w, g))]
    verdict(10, len(forms) == 1 and not bad,
            f"three spellings of one heap -> {next(iter(forms))}; {len(words)} words checked against BFS")


# ---------------------------------------------------------------- criterion 11

def _rand_coeff(rng):
    num = rng.randint(-20, 20)
    return Fraction(num, rng.randint(1, 12)) if num else Fraction(1)


def _word(rng, letters, max_len=5):
    return "".join(rng.choice(letters) for _ in range(rng.randint(0, max_len)))


def _generators():
    free = free_concat_unshuffle("abc", 0)
    poly = poly_binomial("abc")
    trace = trace_unshuffle("abc", (("a", "c"),))
    S3 = symmetric_group(3)
    group = group_algebra(S3)
    C3alg = group_algebra(c3_omega_rep()[0])
    L, D = ldiag(), diag()
    diagrams = suites.ldiag_corpus(4, 3)
    theta = trace.params["theta"]
    return {
        "word": (free, lambda r: _word(r, "abc")),
        "tensor": (free, lambda r: (_word(r, "abc", 3), _word(r, "abc", 3))),
        "monomial": (poly, lambda r: Monomial.from_word(_word(r, "abc"))),
        "trace": (trace, lambda r: trace_normal_form(_word(r, "abc"), theta)),
        "group S3": (group, lambda r: r.choice(S3.elements())),
        "group C3": (C3alg, lambda r: r.choice(C3alg.params["group"].elements())),
        "ldiag": (L, lambda r: r.choice(diagrams)),
        "diag": (D, lambda r: diag_canonical(r.choice(diagrams))),
    }


def test_criterion_11_cli_round_trip_and_examples(verdict):
    rng = random.Random(20240611)
    failures = []
    kinds = _generators()
    for kind, (alg, gen) in kinds.items():
        for _ in range(1000):
            X = LinComb({gen(rng): _rand_coeff(rng) for _ in range(rng.randint(0, 6))})
            text = format_lc(X)
            if parse_expr(text, alg) != X:
                failures.append((kind, text))
    examples = [
        (["coprod", "--alg", "free-q", "--q", "0", "ab"], 0, "1 (x) ab + a (x) b + b (x) a + ab (x) 1", ""),
        (["antipode", "--alg", "free-grouplike", "--alphabet", "a", "a"], 3, "", "NoAntipode"),
        (["bell", "3"], 0, "5", ""),
    ]
    for argv, code, out, err in examples:
        res = run_command(argv)
        if res.code != code or res.out != out or (err and res.error.split(":")[0] != err):
            failures.append(("example", argv, tuple(res), res.error))
    verdict(11, not failures, f"1000 round trips x {len(kinds)} basis kinds; 3 command examples byte-exact"
            + (f"; first failure {failures[0]}" if failures else ""))
