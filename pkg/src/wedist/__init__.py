"""Bounded weighted edit distance toolkit.

Library surface: exact-cost weight functions and alignments (`core`),
reference oracles (`oracle`), string-primitive index (`pillar`), bounded
(self-)edit distance (`selfed`), min-plus/Monge algebra (`monge`), phrase
decompositions (`decompose`), the four-way band solver (`band_solver`),
the divide-and-conquer solver (`dac`), and hard-instance generators
(`hardgen`).

All costs are integer numerators over the weight function's denominator;
INF is the infinity sentinel.
"""

from .core import (
    INF, Alignment, Band, Cost, WeightFn, alignment_cost, alignment_to_cigar,
    as_symbols, cigar_to_alignment, compose_alignments, expand_breakpoints,
    make_weight_fn, normalize_check, split_alignment, unit_weights,
    weight_fn_from_json,
)
from .oracle import DPResult, four_way_brute, selfed_brute, wed_banded, wed_quadratic
from .pillar import Fragment, PillarIndex, build_index
from .selfed import ed_bounded, selfed_bounded
from .monge import (
    is_monge, minplus_identity, monge_minplus, monge_power, smawk_row_minima,
    vec_minplus,
)
from .decompose import PhraseDecomposition, decompose_pillar, decompose_std
from .band_solver import (
    BandGraphView, BoundaryMatrix, FourWayResult, box_boundary_matrix,
    box_boundary_matrix_naive, solve_pillar, solve_standard,
)
from .dac import (
    RunStats, SolverConfig, SplitOutcome, split, wed_auto, wed_exact,
    wed_leq_k, weighted_ed,
)
from .hardgen import (
    BatchInstance, CombinedInstance, GadgetParams, TripartiteGraph,
    combine_batch, gen_three_matrix_gadget, gen_two_matrix_gadget,
    min_triangle_weight, predicted_distance, triangle_to_matrices,
)

__version__ = "0.1.0"
