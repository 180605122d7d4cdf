"""Instance transformations with forward and backward witness maps."""
from .base import (
    NotApplicable, ReductionRecord, has_push, pull_back_witness, push_forward_witness,
)
from .chromatic import perm_clique_to_chromatic
from .paths import (
    GadgetNames, directed_dp_to_undirected_dp, gadget_size,
    hitting_set_to_directed_disjoint_paths,
)
from .permutation import (
    DistortionLayout, bpis_to_constrained_permutation, constrained_permutation_to_distortion,
    cp_labels, cp_set_count,
)
from .recolor import (
    STAR, clash_coloring, kkclique_to_perm_derandomized, recolor_with, sample_random_coloring,
)
from .strings import hitting_set_to_closest_string
from .tables import bpis_to_hitting_set, complement_record, complement_table_graph, permis_to_bpis
from .threecol import group_colorings, sat3_to_3col, smallest_k, threecol_to_kkclique

# CLI rule name -> single-record transformation
RULES = {
    "sat3_to_3col": sat3_to_3col,
    "3col_to_kkclique": threecol_to_kkclique,
    "complement": complement_record,
    "permis_to_bpis": permis_to_bpis,
    "bpis_to_hs": bpis_to_hitting_set,
    "hs_to_cs": hitting_set_to_closest_string,
    "bpis_to_cp": bpis_to_constrained_permutation,
    "cp_to_distortion": constrained_permutation_to_distortion,
    "hs_to_ddp": hitting_set_to_directed_disjoint_paths,
    "ddp_to_udp": directed_dp_to_undirected_dp,
    "permclique_to_chromatic": perm_clique_to_chromatic,
}
# rules needing an extra argument: recolor (coloring or seed), derand_recolor (family)
RULE_NAMES = (
    "sat3_to_3col", "3col_to_kkclique", "recolor", "derand_recolor", "complement",
    "permis_to_bpis", "bpis_to_hs", "hs_to_cs", "bpis_to_cp", "cp_to_distortion",
    "hs_to_ddp", "ddp_to_udp", "permclique_to_chromatic",
)

__all__ = [
    "NotApplicable", "ReductionRecord", "has_push", "pull_back_witness", "push_forward_witness",
    "perm_clique_to_chromatic", "GadgetNames", "directed_dp_to_undirected_dp", "gadget_size",
    "hitting_set_to_directed_disjoint_paths", "DistortionLayout", "bpis_to_constrained_permutation",
    "constrained_permutation_to_distortion", "cp_labels", "cp_set_count", "STAR", "clash_coloring",
    "kkclique_to_perm_derandomized", "recolor_with", "sample_random_coloring",
    "hitting_set_to_closest_string", "bpis_to_hitting_set", "complement_record",
    "complement_table_graph", "permis_to_bpis", "group_colorings", "sat3_to_3col", "smallest_k",
    "threecol_to_kkclique", "RULES", "RULE_NAMES",
]
