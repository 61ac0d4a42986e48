"""Disjoint transitive cliques in every feedback arc set of a random multipartite tournament."""
from .absorber import Absorber, absorption_degree, build_absorber, select_a_star
from .analysis import (
    check_property1_sample,
    check_property2_sample,
    check_property3,
    check_property4,
    consistent_set,
    friendly_vertices,
    inconsistent_set,
    is_friendly_clique,
    verify_property,
)
from .campaign import CampaignReport, CampaignSpec, emit_report, run_campaign
from .constants import Constants, practical_constants, smallest_d, theoretical_constants
from .errors import (
    FormatError,
    ParameterError,
    PreconditionError,
    ResourceError,
    StageFailure,
)
from .matching import bipartite_max_matching
from .oracle import ExactPacking, brute_force_fk, enumerate_tournaments, max_transversal_packing
from .order import (
    LeftGraph,
    VertexOrder,
    is_feedback_arc_set,
    left_graph,
    minimalize_fas,
    upper_bound_witness,
)
from .packing import (
    PackingResult,
    PerfectRSet,
    build_p2,
    extend_set,
    find_clique_packing,
    verify_packing,
)
from .tournament import (
    Tournament,
    deserialize,
    neighbors,
    reduce_to_equal_parts,
    sample_random,
    sample_turan,
    serialize,
)

__version__ = "0.1.0"
