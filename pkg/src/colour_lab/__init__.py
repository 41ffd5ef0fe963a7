"""colour-lab: star / restricted-star colouring constructions, exact
solvers, reductions with witness translation, and a lemma-verification
harness."""

from . import gadgets, lemmas, reductions
from .colouring import (
    Colouring,
    OrientedGraph,
    PathWitness,
    is_inn_injective_hom_to_tournament,
    orientation_from_colouring,
    validate,
    zero_pair_scan,
)
from .graph import (
    Graph,
    GraphBuilder,
    StructureReport,
    decode_graph6,
    disjoint_union,
    encode_graph6,
    from_edge_list,
    identify_vertices,
    line_graph,
    square,
    structure_report,
    subdivide_all_edges,
    to_dot,
    to_edge_list,
)
from .reductions import Formula1in3, ReductionTrace, build_reduction, sat_1in3
from .solver import (
    SolveOutcome,
    SolveParams,
    chromatic,
    decide,
    distance_two_rs,
    edge_decide,
    enumerate_colourings,
    oracle_decide,
)

__version__ = "0.1.0"
