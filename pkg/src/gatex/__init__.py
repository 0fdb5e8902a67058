"""Recognition, construction and optimization for galled-tree explainable graphs."""

from .errors import (Graph6Error, GraphError, GatexError, InvariantError,
                     NotGatexError, SizeLimitError)
from .graph import (Graph, brute_force_invariants, complement, cycle_graph,
                    complete_graph, empty_graph, find_induced_embedding,
                    induced_subgraph, path_graph)
from .graph6 import graph6_decode, graph6_encode
from .canon import canonical_form, is_isomorphic
from .modules import build_mdt, is_module, is_primitive, quotient, strong_modules
from .network import GalledTree, explain, flip_labels, random_galled_tree, validate
from .cographs import (is_cograph, is_polar_cat, is_pseudo_cograph,
                       recognize_polar_cat, recognize_pseudo_cograph)
from .pvr import build_elementary, build_pvr, build_pvr_network
from .recognition import (GatexVerdict, is_gatex, recognize_gatex_forbidden,
                          recognize_gatex_structural)
from .forbidden import enumerate_graphs, load_catalog, mine_forbidden
from .solvers import (chromatic_number, clique_number, independence_number,
                      perfect_order_coloring, solve, transitive_orientation)
from .twinwidth import (ContractionSequence, Trigraph, build_one_contraction_sequence,
                        contract, verify_sequence)

__version__ = "0.1.0"
