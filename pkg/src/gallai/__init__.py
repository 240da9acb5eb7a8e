"""Gallai colorings of complete graphs: decomposition, monochromatic cycles, and verification."""

from .coloring import (
    ColoredKn,
    TriangleWitness,
    color_class,
    dump_coloring,
    find_rainbow_triangle,
    is_gallai,
    largest_component,
    load_coloring,
    q_value,
)
from .constructions import (
    AbsenceCertificate,
    build_even_extremal,
    build_extremal,
    build_g0,
    build_odd_extremal,
    certify_class,
    certify_no_mono_cycle,
    extremal_order,
)
from .cycles import (
    BalancedBipartiteWitness,
    CycleWitness,
    G0Witness,
    PancyclicWitness,
    bipartite_even_cycle,
    bondy_certificate,
    find_mono_cycle,
    has_cycle_length,
    multipartite_odd_cycle,
    recognize_g0,
)
from .decomposition import (
    GallaiPartition,
    Leaf,
    Node,
    compose,
    decompose_full,
    enumerate_gallai,
    gallai_partition,
    parse_tree,
    random_gallai,
    reduced_graph,
    refine_connected,
    tree_to_coloring,
)
from .errors import (
    BudgetExceeded,
    CapExceeded,
    ColoringFormatError,
    CycleFound,
    GallaiError,
    LemmaRefutation,
    PreconditionError,
    RainbowTriangleError,
)
from .graph import SimpleGraph
from .verify import VerificationReport

__version__ = "0.1.0"
