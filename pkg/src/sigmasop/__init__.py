"""Dividing-line posets, their set-family realisations, and an embedding oracle."""

from .patterns import (
    ConsistencyPattern,
    check_coverage,
    check_maximality,
    check_weak_maximality,
    gen_atp,
    gen_chain,
    gen_sop3,
    gen_tp,
    gen_tp1,
    gen_tp2,
    validate_pattern,
)
from .poset import (
    OrderEmbedding,
    Poset,
    close_strict_pairs,
    dual,
    enumerate_posets,
    find_embedding,
    heights,
    induced,
    is_isomorphic,
    transitive_reduction,
)
from .report import Check, Report
from .sigma import SigmaPatternPoset, sigma_ip, sigma_op, sigma_pattern, verify_sigma_properties
from .witnesses import (
    PatternWitness,
    SetSystem,
    canonical_pattern_model,
    down_set_system,
    extract_half_graph,
    extract_pattern_witness,
    has_sop,
    has_sup,
    inclusion_poset,
    ip_sigma_sets,
    op_half_graph_sets,
    op_sigma_sets,
    pattern_sigma_sets,
)

__version__ = "0.1.0"
