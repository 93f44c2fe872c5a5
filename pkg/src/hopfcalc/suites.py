"""Exhaustive property suites over small corpora, run by ``hopfcalc check``.

Every suite returns a :class:`SuiteResult`. Corpus sizes come from
:class:`Bounds`; the environment variable ``HOPFCALC_MAX_DEGREE`` replaces
the default word length / edge count.
"""

from __future__ import annotations

import itertools
import os
import time
from dataclasses import dataclass
from typing import Callable, Iterable

from . import bellcalc as B
from .bases import (
    Alphabet, CommutationGraph, Monomial, diag_canonical, diagram_from_partitions,
    packed_matrices, spot_types, symmetric_group, cyclic_group, trace_class, trace_normal_form,
)
from .errors import NoAntipode
from .hopf import (
    BialgebraOps, antipode_basis, cauchy_concat, check_antipode, check_bialgebra, check_grading,
    diag, duality_check, swap_coproduct, free_concat_unshuffle, free_grouplike, group_algebra, ldiag,
    poly_binomial, shuffle_deconcat, trace_delta_from_spelling, trace_unshuffle,
    antipode_map, identity_map, unit_counit_map,
)
from .linalg import LinComb, basis_key, convolve
from .reps import c3_omega_rep, check_rep, is_zero, regular_rep, rep_apply, rep_tensor, sign_rep, permutation_rep


@dataclass(frozen=True)
class Bounds:
    word_len: int = 4          # bialgebra / duality corpora over {a, b}
    trace_len: int = 4         # trace-monoid bialgebra corpus over {a, b, c}
    trace_antipode_len: int = 3
    diagram_edges: int = 4
    diagram_rows: int = 3      # black spots in the diagram corpus
    antipode_word_len: int = 6
    trace_nf_len: int = 8      # normal form vs. BFS oracle
    bell_n: int = 10
    egf_order: int = 8
    hadamard_order: int = 5

    @classmethod
    def from_env(cls, env=None) -> "Bounds":
        env = os.environ if env is None else env
        raw = env.get("HOPFCALC_MAX_DEGREE")
        if not raw:
            return cls()
        d = int(raw)
        if d < 0:
            raise ValueError("HOPFCALC_MAX_DEGREE must be non-negative")
        return cls(word_len=d, trace_len=d, trace_antipode_len=min(d, 3), diagram_edges=d)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    cases: int
    detail: str = ""
    seconds: float = 0.0


# ------------------------------------------------------------------ corpora

def word_corpus(alphabet="ab", max_len=4) -> list[str]:
    return Alphabet(alphabet).words(max_len)


def poly_corpus(alphabet="ab", max_deg=4) -> list[Monomial]:
    return sorted({Monomial.from_word(w) for w in Alphabet(alphabet).words(max_deg)}, key=basis_key)


def trace_corpus(alg: BialgebraOps, max_len=4) -> list:
    graph = alg.params["theta"]
    return sorted({trace_normal_form(w, graph) for w in alg.params["alphabet"].words(max_len)}, key=basis_key)


def ldiag_corpus(max_edges=4, max_rows=3) -> list:
    return [d for n in range(max_edges + 1) for d in packed_matrices(n, max_rows=max_rows)]


def diag_corpus(max_edges=4, max_rows=3) -> list:
    return sorted({diag_canonical(d) for d in ldiag_corpus(max_edges, max_rows)}, key=basis_key)


def graded_pairs(corpus: list, degree: Callable, bound: int) -> list:
    """Ordered pairs whose product stays inside the corpus degree bound."""
    return [(x, y) for x in corpus for y in corpus if degree(x) + degree(y) <= bound]


@dataclass
class Instance:
    alg: BialgebraOps
    corpus: list
    pairs: list | None = None    # None: all ordered pairs of the corpus
    hopf: bool = True            # antipode expected to exist
    antipode_corpus: list | None = None  # smaller corpus for antimorphism pairs


def instances(bounds: Bounds = Bounds()) -> list[Instance]:
    """The bialgebra instances with their test corpora."""
    words = word_corpus("ab", bounds.word_len)
    out = [Instance(free_concat_unshuffle("ab", q), words, hopf=(q == 0)) for q in (0, 1, "1/2")]
    out.append(Instance(shuffle_deconcat("ab", 0), words))
    out.append(Instance(poly_binomial("ab"), poly_corpus("ab", bounds.word_len)))
    tr = trace_unshuffle("abc", (("a", "c"),))
    out.append(Instance(tr, trace_corpus(tr, bounds.trace_len),
                        antipode_corpus=trace_corpus(tr, bounds.trace_antipode_len)))
    for G in (cyclic_group(3), symmetric_group(3)):
        out.append(Instance(group_algebra(G), G.elements()))
    e, r = bounds.diagram_edges, bounds.diagram_rows
    L = ldiag_corpus(e, r)
    out.append(Instance(ldiag(), L, graded_pairs(L, lambda d: d.degree, e)))
    D = diag_corpus(e, r)
    out.append(Instance(diag(), D, graded_pairs(D, lambda d: d.degree, e)))
    return out


def designed_failures(bounds: Bounds = Bounds()) -> list[Instance]:
    words = word_corpus("ab", min(bounds.word_len, 3))
    return [Instance(cauchy_concat("ab"), words, hopf=False), Instance(swap_coproduct(), words, hopf=False)]


# ------------------------------------------------------------------- suites

def _timed(name: str, fn: Callable[[], tuple[bool, int, str]]) -> SuiteResult:
    t = time.perf_counter()
    ok, cases, detail = fn()
    return SuiteResult(name, ok, cases, detail, time.perf_counter() - t)


def bialgebra_suite(inst: Instance) -> SuiteResult:
    def run():
        rep = check_bialgebra(inst.alg, inst.corpus, inst.pairs)
        npairs = len(inst.corpus) ** 2 if inst.pairs is None else len(inst.pairs)
        failed = sorted(k for k, ok in rep.suites.items() if not ok)
        detail = ("fails " + ",".join(failed)) if failed else ""
        return rep.as_expected, len(inst.corpus) + npairs, detail
    return _timed(f"bialgebra {inst.alg.name}", run)


def grading_suite(inst: Instance) -> SuiteResult:
    return _timed(f"grading {inst.alg.name}",
                  lambda: (check_grading(inst.alg, inst.corpus, inst.pairs), len(inst.corpus), ""))


def _antipode_cases(inst: Instance):
    if inst.antipode_corpus is not None:
        return inst.corpus, list(itertools.product(inst.antipode_corpus, repeat=2))
    pairs = inst.pairs if inst.pairs is not None else list(itertools.product(inst.corpus, repeat=2))
    return inst.corpus, pairs


def antipode_suite(inst: Instance) -> SuiteResult:
    """Antipode identity on the corpus and ``S(xy) = S(y)S(x)`` on pairs."""
    alg = inst.alg

    def run():
        S = antipode_map(alg)
        corpus, pairs = _antipode_cases(inst)
        bad = [b for b in corpus if not check_antipode(alg, b, S)]
        for x, y in pairs:
            lhs = S(alg.mul_basis(x, y))
            rhs = alg.product(S.on_basis(y), S.on_basis(x))
            if lhs != rhs:
                bad.append((x, y))
        return not bad, len(corpus) + len(pairs), f"first failure {bad[0]!r}" if bad else ""
    return _timed(f"antipode {alg.name}", run)


def convolution_suite(inst: Instance) -> SuiteResult:
    """``S * Id = Id * S = 1ε`` through the generic convolution product."""
    alg = inst.alg

    def run():
        S, I, E = antipode_map(alg), identity_map(), unit_counit_map(alg)
        left, right = convolve(S, I, alg), convolve(I, S, alg)
        corpus, _ = _antipode_cases(inst)
        bad = [b for b in corpus if not (left.on_basis(b) == E.on_basis(b) == right.on_basis(b))]
        return not bad, len(corpus), f"first failure {bad[0]!r}" if bad else ""
    return _timed(f"convolution {alg.name}", run)


def antipode_closed_form_suite(max_len: int = 6) -> SuiteResult:
    def run():
        alg = free_concat_unshuffle("ab", 0)
        words = word_corpus("ab", max_len)
        bad = [w for w in words if antipode_basis(alg, w) != LinComb.basis(w[::-1], (-1) ** len(w))]
        return not bad, len(words), f"first failure {bad[0]!r}" if bad else ""
    return _timed("antipode closed form (-1)^|w| reverse(w)", run)


def no_antipode_suite() -> SuiteResult:
    def run():
        algs = [free_grouplike("a"), free_concat_unshuffle("ab", 1), free_concat_unshuffle("ab", "1/2")]
        bad = []
        for alg in algs:
            try:
                antipode_basis(alg, "a")
                bad.append(alg.name)
            except NoAntipode:
                pass
        return not bad, len(algs), f"antipode found for {bad}" if bad else ""
    return _timed("no antipode (group-like letters, q != 0)", run)


def duality_suite(max_len: int = 4, qs: Iterable = (0, 1, "1/2")) -> SuiteResult:
    def run():
        words = word_corpus("ab", max_len)
        n = 0
        for q in qs:
            for u, v, w in itertools.product(words, repeat=3):
                n += 1
                if not duality_check(u, v, w, q):
                    return False, n, f"q={q} u={u!r} v={v!r} w={w!r}"
        return True, n, ""
    return _timed("duality <D_q w, u(x)v> = <w, u infiltrate_q v>", run)


def trace_suite(max_len: int = 8, alphabet="abc", theta=(("a", "c"),)) -> SuiteResult:
    """Normal form vs. BFS class minimum, and spelling-independent coproduct."""
    def run():
        graph = CommutationGraph.of(theta)
        words = Alphabet(alphabet).words(max_len)
        for w in words:
            if trace_normal_form(w, graph).normal_form != min(trace_class(w, graph)):
                return False, len(words), f"normal form of {w!r}"
        n = len(words)
        for w in Alphabet(alphabet).words(min(max_len, 5)):
            ref = trace_delta_from_spelling(w, graph)
            for v in trace_class(w, graph):
                n += 1
                if trace_delta_from_spelling(v, graph) != ref:
                    return False, n, f"coproduct depends on spelling {v!r} of {w!r}"
        return True, n, ""
    return _timed("trace normal form vs. BFS oracle", run)


def bell_suite(max_n: int = 10) -> SuiteResult:
    def run():
        for n in range(max_n + 1):
            parts = B.set_partitions(n)
            if len(set(parts)) != len(parts) or len(parts) != B.bell(n):
                return False, n, f"enumeration count at n={n}"
            if n and B.bell(n) != sum(B.stirling2(n, k) for k in range(n + 1)):
                return False, n, f"Stirling sum at n={n}"
            by_blocks = [0] * (n + 1)
            for P in parts:
                by_blocks[len(P)] += 1
            if by_blocks != [B.stirling2(n, k) for k in range(n + 1)]:
                return False, n, f"Stirling row at n={n}"
        return True, max_n + 1, ""
    return _timed("bell = |partitions| = sum of Stirling row", run)


def egf_suite(order: int = 8) -> SuiteResult:
    def run():
        y = B.Polynomial.var("y")
        F = B.EGFSeries((B.Polynomial(),) + (y,) * order)
        E = B.egf_exp(F)
        for n in range(order + 1):
            if E[n] != B.bell_polynomial(n):
                return False, n, f"coefficient {n}"
        if B.egf_log(E) != F:
            return False, order, "log(exp F) != F"
        return True, order + 1, ""
    return _timed("exp(y(e^x-1)) = sum B_n(y) x^n/n!", run)


def hadamard_suite(order: int = 5) -> SuiteResult:
    """Coefficient route vs. partition pairs vs. diagrams, plus sum of mult."""
    def run():
        parts = B.hadamard_via_partitions(order)
        diags = B.hadamard_via_diagrams(order)
        if parts != diags:
            return False, order, "partition and diagram routes differ"
        for n in range(order + 1):
            if sum(B.mult_table(n).values()) != B.bell(n) ** 2:
                return False, n, f"sum of mult at n={n}"
        # specialise L_k, V_k and compare with the coefficientwise product
        Ls, Vs = [1, -2, 3, 0, 5][:order], [2, 1, -1, 4, 0][:order]
        values = {f"L{k}": Ls[k - 1] if k <= len(Ls) else 0 for k in range(1, order + 1)}
        values.update({f"V{k}": Vs[k - 1] if k <= len(Vs) else 0 for k in range(1, order + 1)})
        H = B.hadamard(B.free_exponential(Ls, order), B.free_exponential(Vs, order))
        if B.specialize(parts, values) != H:
            return False, order, "specialisation differs from coefficientwise product"
        return True, 3 * (order + 1), ""
    return _timed("hadamard three-route agreement", run)


def spot_type_suite(max_n: int = 4) -> SuiteResult:
    def run():
        n_cases = 0
        for n in range(max_n + 1):
            parts = B.set_partitions(n)
            for P1 in parts:
                for P2 in parts:
                    n_cases += 1
                    white, black = spot_types(diagram_from_partitions(P1, P2))
                    if black != P1.type() or white != P2.type():
                        return False, n_cases, f"{P1} {P2}"
        return True, n_cases, ""
    return _timed("spot types recover partition types", run)


def reps_suite() -> SuiteResult:
    def run():
        G, rho = c3_omega_rep()
        alg = group_algebra(G)
        total = LinComb({g: 1 for g in G.elements()})
        if not check_rep(rho, alg) or not is_zero(rep_apply(rho, total)):
            return False, 1, "C3 rotation model"
        if is_zero(rep_apply(regular_rep(G), total)):
            return False, 2, "regular representation kills 1+c+c^2"
        n = 2
        S3 = symmetric_group(3)
        pairs = [(rho, rho, alg), (regular_rep(G), rho, alg),
                 (sign_rep(S3), permutation_rep(S3), group_algebra(S3))]
        for r1, r2, a in pairs:
            n += 1
            if not check_rep(rep_tensor(r1, r2, a), a):
                return False, n, f"{r1.name} x {r2.name}"
        return True, n, ""
    return _timed("representations and their tensor products", run)


def all_suites(bounds: Bounds | None = None) -> list[Callable[[], SuiteResult]]:
    """Deferred suite runs, so callers can filter by name cheaply."""
    bounds = bounds or Bounds.from_env()
    insts = instances(bounds)
    out = []
    for inst in insts + designed_failures(bounds):
        out.append((f"bialgebra {inst.alg.name}", lambda i=inst: bialgebra_suite(i)))
    for inst in insts:
        if inst.alg.degree is not None:
            out.append((f"grading {inst.alg.name}", lambda i=inst: grading_suite(i)))
        if inst.hopf:
            out.append((f"antipode {inst.alg.name}", lambda i=inst: antipode_suite(i)))
            out.append((f"convolution {inst.alg.name}", lambda i=inst: convolution_suite(i)))
    out += [
        ("antipode closed form", lambda: antipode_closed_form_suite(bounds.antipode_word_len)),
        ("no antipode", no_antipode_suite),
        ("duality", lambda: duality_suite(bounds.word_len)),
        ("trace normal form", lambda: trace_suite(bounds.trace_nf_len)),
        ("bell", lambda: bell_suite(bounds.bell_n)),
        ("egf", lambda: egf_suite(bounds.egf_order)),
        ("hadamard", lambda: hadamard_suite(bounds.hadamard_order)),
        ("spot types", lambda: spot_type_suite(min(bounds.hadamard_order, 4))),
        ("representations", reps_suite),
    ]
    return out


def run_suites(name_filter: str | None = None, bounds: Bounds | None = None) -> list[SuiteResult]:
    return [fn() for name, fn in all_suites(bounds) if not name_filter or name_filter in name]
