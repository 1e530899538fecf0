"""Engines of the hyperdyn toolkit.

This module exports the public operations of every engine.
"""

from src.engines.exact_metric import PointSet, hausdorff_distance, min_gap, directed_distance
from src.engines.space_model import SymbolicSystem, parse_space, point_at, realize_window, isolation_radius
from src.engines.cb_rank import (
    SpaceTree,
    OrdinalDescriptor,
    derived_set,
    limit_degree,
    admits_hyper_expansive,
    admits_expansive_kp,
    adjacent_pairs,
    build_adjacent_example,
)
from src.engines.dynamics import (
    Verdict,
    build_theorem2_system,
    build_translation_example,
    classify_periodic_point,
    hyper_expansive_verdict,
    expansive_delta,
    compact_invariant_sets,
    shift_periodic_count,
    eps_dense_segment,
)
from src.engines.hyperspace_oracle import (
    SeparationReport,
    orbit_separation,
    separation_constant,
    separation_curve,
)

__all__ = [
    "PointSet",
    "hausdorff_distance",
    "min_gap",
    "directed_distance",
    "SymbolicSystem",
    "parse_space",
    "point_at",
    "realize_window",
    "isolation_radius",
    "SpaceTree",
    "OrdinalDescriptor",
    "derived_set",
    "limit_degree",
    "admits_hyper_expansive",
    "admits_expansive_kp",
    "adjacent_pairs",
    "build_adjacent_example",
    "Verdict",
    "build_theorem2_system",
    "build_translation_example",
    "classify_periodic_point",
    "hyper_expansive_verdict",
    "expansive_delta",
    "compact_invariant_sets",
    "shift_periodic_count",
    "eps_dense_segment",
    "SeparationReport",
    "orbit_separation",
    "separation_constant",
    "separation_curve",
]
