"""
Dispatch shared by the HTTP routes and the command line: coloring modes,
property checks, counting and class recognition.
"""
import logging
import random
from typing import Optional, Tuple

from ..core.errors import InputError
from .coloring_engine import (
    BruteForcePrimeSolver,
    ChainedPrimeSolver,
    chromatic_number,
    cotree_chi,
    count_hc_colorings,
    count_hc_colorings_total,
    greedy_coloring,
    is_greedy_coloring,
    is_hc_coloring,
    is_hierarchical,
    is_modularly_minimal,
    is_strictly_hierarchical,
    is_tt_minimal,
    modularly_minimal_coloring,
    tt_minimal_coloring,
)
from .cotree import CotreeNode, binary_refine, discriminating_cotree, is_cograph
from .graph_core import Coloring, Graph, Verdict, monochromatic_edge
from .oracles import chi_bruteforce
from .p4sparse import SpiderDecomposition, SpiderPrimeSolver, is_p4_sparse, p4sparse_modmin_coloring, recognize_spider

logger = logging.getLogger(__name__)

COLOR_MODES = ("greedy", "tt-minimal", "modmin", "p4sparse")
PROPERTIES = ("proper", "greedy", "hierarchical", "strict", "modmin", "hc", "tt-minimal")
CLASSES = ("cograph", "p4sparse", "spider")


def default_solver() -> ChainedPrimeSolver:
    """Spiders first, exact search for everything small enough."""
    return ChainedPrimeSolver(SpiderPrimeSolver(), BruteForcePrimeSolver())


def compute_chi(g: Graph, method: str = "md") -> int:
    if method == "brute":
        return chi_bruteforce(g)
    if method == "md":
        return chromatic_number(g, default_solver())
    raise InputError(f"unknown chi method {method!r}")


def color_graph(
    g: Graph,
    mode: str,
    order: Optional[list] = None,
    tree: Optional[CotreeNode] = None,
    seed: Optional[int] = None,
) -> Coloring:
    rng = random.Random(seed) if seed is not None else None
    if mode == "greedy":
        if order is None:
            order = list(range(g.n))
            if rng is not None:
                rng.shuffle(order)
        return greedy_coloring(g, order)
    if mode == "tt-minimal":
        if tree is None:
            tree = binary_refine(discriminating_cotree(g))
        return tt_minimal_coloring(g, tree, rng)
    if mode == "modmin":
        return modularly_minimal_coloring(g, default_solver(), rng)
    if mode == "p4sparse":
        return p4sparse_modmin_coloring(g)
    raise InputError(f"unknown coloring mode {mode!r}, expected one of {', '.join(COLOR_MODES)}")


def check_property(g: Graph, sigma: Coloring, prop: str, tree: Optional[CotreeNode] = None) -> Verdict:
    if len(sigma) != g.n:
        raise InputError(f"coloring has {len(sigma)} entries for a graph with {g.n} vertices")
    if prop not in PROPERTIES:
        raise InputError(f"unknown property {prop!r}, expected one of {', '.join(PROPERTIES)}")
    if prop in ("hc", "tt-minimal"):
        if tree is None:
            raise InputError(f"property {prop} needs a cotree")
        return is_hc_coloring(g, sigma, tree) if prop == "hc" else is_tt_minimal(g, sigma, tree)
    # every remaining property presupposes a proper coloring
    edge = monochromatic_edge(g, sigma)
    if edge is not None:
        return Verdict(False, list(edge), "coloring is not proper")
    if prop == "proper":
        return Verdict(True)
    if prop == "greedy":
        return is_greedy_coloring(g, sigma)
    if prop == "hierarchical":
        return is_hierarchical(g, sigma)
    if prop == "strict":
        return is_strictly_hierarchical(g, sigma)
    return is_modularly_minimal(g, sigma, default_solver())


def count(g: Graph, tree: Optional[CotreeNode] = None) -> Tuple[int, int]:
    """(Z, chi) for the given binary cotree, or for the chi-ascending caterpillar."""
    if tree is None:
        return count_hc_colorings_total(g), compute_chi(g)
    z = count_hc_colorings(g, tree)
    return z, cotree_chi(tree)[id(tree)]


def recognize(g: Graph, graph_class: str) -> Tuple[Verdict, Optional[SpiderDecomposition]]:
    if graph_class == "cograph":
        return is_cograph(g), None
    if graph_class == "p4sparse":
        return is_p4_sparse(g), None
    if graph_class == "spider":
        sd = recognize_spider(g)
        if sd is None:
            return Verdict(False, None, "not a spider"), None
        return Verdict(True), sd
    raise InputError(f"unknown class {graph_class!r}, expected one of {', '.join(CLASSES)}")
