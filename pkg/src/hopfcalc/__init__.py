"""Exact-arithmetic kernel for combinatorial Hopf algebras on words, trace
monoids, group algebras and Feynman-type bicoloured diagrams, with set
partition and exponential generating function tools."""

from .bases import (
    Alphabet, CommutationGraph, Diagram, FiniteGroup, GroupElem, LabelledDiagram, Monomial,
    TraceWord, cyclic_group, diag_canonical, diagram_from_partitions, group_from_name,
    ldiag_concat, ldiag_restrict, packed_matrices, spot_types, subword, symmetric_group,
    trace_class, trace_normal_form,
)
from .bellcalc import (
    EGFSeries, Polynomial, SetPartition, bell, bell_polynomial, diagram_classes, egf_exp,
    egf_log, egf_mul, hadamard, hadamard_via_diagrams, hadamard_via_partitions,
    mult_of_diagram, set_partitions, stirling2,
)
from .errors import *  # noqa: F401,F403
from .hopf import (
    BialgebraOps, antipode, cauchy_concat, check_antipode, check_bialgebra, coproduct,
    counit, diag, swap_coproduct, free_concat_unshuffle, free_grouplike, group_algebra,
    infiltration, ldiag, poly_binomial, product, shuffle_deconcat, trace_unshuffle,
    unshuffle_q,
)
from .linalg import OMEGA, CycOmega, LinComb, LinMap, Rational, convolve, lc_pair, lc_tensor
from .reps import MatrixRep, c3_omega_rep, regular_rep, rep_apply, rep_tensor

__version__ = "0.1.0"
