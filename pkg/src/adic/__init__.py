"""Exact-arithmetic analysis of layered multigraph (Bratteli) diagrams:
matrix sequences over labeled alphabets, stream decomposition and Frobenius
normal forms, invariant measure classification, and successor (adic)
dynamics.  All verdict-relevant arithmetic uses exact rationals."""

from .errors import AdicError
from .verdict import Verdict
from .matrixseq import (
    GenMatrix,
    EventuallyPeriodic,
    Truncated,
    from_int_matrices,
    constant,
    partial_product,
    submatrix_leq,
    gather,
    reduce_sequence,
    is_reduced,
    is_primitive,
    wielandt_bound,
    state_split,
)
from .diagram import (
    BratteliDiagram,
    StableOrder,
    substitution_order,
    Cylinder,
    cylinder,
    count_words,
    enumerate_paths,
    word_metric,
)
from .frobenius import (
    stream_decompose,
    frobenius_form,
    minimal_components,
    stationary_frobenius,
)
from .cones import (
    extreme_count,
    simplex_image,
    periodic_pf,
    exact_ray,
)
from .measures import (
    CentralMeasure,
    canonical_cover,
    chat_block,
    two_by_two_series,
    is_distinguished,
    classify_measures,
    classify_subdiagram,
    parry_measure_stationary,
)
from .vershik import (
    LazyPath,
    successor,
    predecessor,
    extremal_paths,
    SubdiagramEmbedding,
    anti_lex_rank,
    return_time,
    cyclic_return_time,
    kac_partial_sum,
    kac_partial_sum_brute,
    simulate_orbit,
)
from . import gallery

__version__ = "0.1.0"

__all__ = [
    "AdicError",
    "Verdict",
    "GenMatrix",
    "EventuallyPeriodic",
    "Truncated",
    "from_int_matrices",
    "constant",
    "partial_product",
    "submatrix_leq",
    "gather",
    "reduce_sequence",
    "is_reduced",
    "is_primitive",
    "wielandt_bound",
    "state_split",
    "BratteliDiagram",
    "StableOrder",
    "substitution_order",
    "Cylinder",
    "cylinder",
    "count_words",
    "enumerate_paths",
    "word_metric",
    "stream_decompose",
    "frobenius_form",
    "minimal_components",
    "stationary_frobenius",
    "extreme_count",
    "simplex_image",
    "periodic_pf",
    "exact_ray",
    "CentralMeasure",
    "canonical_cover",
    "chat_block",
    "two_by_two_series",
    "is_distinguished",
    "classify_measures",
    "classify_subdiagram",
    "parry_measure_stationary",
    "LazyPath",
    "successor",
    "predecessor",
    "extremal_paths",
    "SubdiagramEmbedding",
    "anti_lex_rank",
    "return_time",
    "cyclic_return_time",
    "kac_partial_sum",
    "kac_partial_sum_brute",
    "simulate_orbit",
    "gallery",
]
