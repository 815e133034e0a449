"""
Spiders and P4-sparse graphs.

A spider is a partition (K, S, R) with K a clique, S a stable set, |K| = |S| >= 2,
and R complete to K and anticomplete to S. Thin: every body vertex k sees exactly
one leg, match(k). Thick: every body vertex sees all legs except match(k).
With two legs both descriptions give the same graph; it is reported as thin.
"""
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Collection, Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from ..core.errors import DomainError, InputError, UnsupportedPrimeError
from .coloring_engine import BruteForcePrimeSolver, ChainedPrimeSolver, chromatic_number, modularly_minimal_coloring
from .graph_core import Coloring, Graph, Verdict, graph_from_edges, induced_subgraph, is_proper_coloring
from .mdtree import MDNode, ModuleView, modular_decomposition, node_quotient

logger = logging.getLogger(__name__)


class SpiderFlavor(str, Enum):
    THIN = "thin"
    THICK = "thick"


@dataclass(frozen=True)
class SpiderDecomposition:
    body: Tuple[int, ...]
    legs: Tuple[int, ...]
    head: Tuple[int, ...]
    flavor: SpiderFlavor
    matching: Tuple[Tuple[int, int], ...]
    graph: Graph = field(repr=False, compare=False)

    @property
    def k(self) -> int:
        return len(self.body)

    def match(self, k: int) -> int:
        return dict(self.matching)[k]


class _SpiderRoles(NamedTuple):
    flavor: SpiderFlavor
    body: List[int]
    legs: List[int]
    head: List[int]
    matching: Dict[int, int]


def _spider_roles(
    vertices: Collection[int],
    degree: Callable[[int], int],
    neighbors: Callable[[int], Iterable[int]],
) -> Optional[_SpiderRoles]:
    """Spider roles of the graph induced by ``vertices``, or None.

    ``neighbors`` must stay inside ``vertices``. Legs are the vertices of minimum
    degree (1 thin, k-1 thick) and the body is the k vertices of degree s-k (thin)
    or s-2 (thick). Once every leg sees only the body, through a bijective match,
    those degrees force K to be a clique complete to the head. Cost is O(s) plus
    the leg-body edges.
    """
    s = len(vertices)
    if s < 4:
        return None
    deg = {v: degree(v) for v in vertices}
    delta = min(deg.values())
    legs = [v for v in vertices if deg[v] == delta]
    k = len(legs)
    if k < 2 or 2 * k > s:
        return None
    if delta == 1:
        flavor, body_degree = SpiderFlavor.THIN, s - k
    elif delta == k - 1 and k >= 3:
        flavor, body_degree = SpiderFlavor.THICK, s - 2
    else:
        return None
    body = [v for v in vertices if deg[v] == body_degree]
    if len(body) != k:
        return None

    body_set = frozenset(body)
    matching: Dict[int, int] = {}
    for leg in legs:
        nbrs = frozenset(neighbors(leg))
        if not nbrs <= body_set:
            return None
        if flavor is SpiderFlavor.THIN:
            (b,) = nbrs
        else:
            missing = body_set - nbrs
            if len(missing) != 1:
                return None
            (b,) = missing
        if b in matching:
            return None
        matching[b] = leg
    leg_set = frozenset(legs)
    head = [v for v in vertices if v not in body_set and v not in leg_set]
    return _SpiderRoles(flavor, body, legs, head, matching)


def recognize_spider(h: Graph) -> Optional[SpiderDecomposition]:
    """Spider partition of H, or None, in O(n + m)."""
    roles = _spider_roles(range(h.n), h.degree, h.neighbors)
    if roles is None:
        return None
    body = tuple(sorted(roles.body))
    return SpiderDecomposition(
        body=body,
        legs=tuple(sorted(roles.legs)),
        head=tuple(sorted(roles.head)),
        flavor=roles.flavor,
        matching=tuple((b, roles.matching[b]) for b in body),
        graph=h,
    )


def construct_spider(k: int, flavor: SpiderFlavor = SpiderFlavor.THIN, head: Optional[Graph] = None) -> SpiderDecomposition:
    """Body 0..k-1, legs k..2k-1 with match(i) = k+i, head from 2k on."""
    flavor = SpiderFlavor(flavor)
    if k < 2:
        raise InputError("a spider needs at least two legs")
    if flavor is SpiderFlavor.THICK and k < 3:
        raise InputError("thick spiders with two legs are thin; use k >= 3")
    h = head.n if head is not None else 0
    edges = [(a, b) for a in range(k) for b in range(a + 1, k)]
    for i in range(k):
        if flavor is SpiderFlavor.THIN:
            edges.append((i, k + i))
        else:
            edges.extend((i, k + j) for j in range(k) if j != i)
        edges.extend((i, 2 * k + r) for r in range(h))
    if head is not None:
        edges.extend((2 * k + u, 2 * k + v) for u, v in head.edges())
    g = graph_from_edges(2 * k + h, edges)
    return SpiderDecomposition(
        body=tuple(range(k)),
        legs=tuple(range(k, 2 * k)),
        head=tuple(range(2 * k, 2 * k + h)),
        flavor=flavor,
        matching=tuple((i, k + i) for i in range(k)),
        graph=g,
    )


def _spider_colors(sd: SpiderDecomposition, fresh: Iterator[int]) -> Dict[int, int]:
    """Colors for body and legs: the body takes |K| fresh colors and the legs reuse them."""
    out: Dict[int, int] = {}
    for b in sd.body:
        out[b] = next(fresh)
    body = sd.body
    for i, b in enumerate(body):
        leg = sd.match(b)
        if sd.flavor is SpiderFlavor.THIN:
            out[leg] = out[body[(i + 1) % len(body)]]
        else:
            out[leg] = out[b]
    return out


def _head_solver() -> ChainedPrimeSolver:
    return ChainedPrimeSolver(SpiderPrimeSolver(), BruteForcePrimeSolver())


def color_spider(sd: SpiderDecomposition, head_coloring: Optional[Coloring] = None) -> Coloring:
    """Minimal coloring: chi(R) + |K| colors, sigma(S) = sigma(K), head colors kept.

    ``head_coloring`` is indexed like ``sd.head`` (its i-th entry colors sd.head[i]).
    """
    head_colors: Dict[int, int] = {}
    if sd.head:
        if head_coloring is None or len(head_coloring) != len(sd.head):
            raise DomainError(f"head of size {len(sd.head)} needs a coloring of that size")
        head_graph, _ = induced_subgraph(sd.graph, sd.head)
        if not is_proper_coloring(head_graph, head_coloring):
            raise DomainError("head coloring is not proper")
        chi = chromatic_number(head_graph, _head_solver())
        if head_coloring.num_colors != chi:
            raise DomainError(f"head coloring uses {head_coloring.num_colors} colors, chi is {chi}")
        head_colors = {v: head_coloring[i] for i, v in enumerate(sd.head)}
    elif head_coloring is not None and len(head_coloring):
        raise DomainError("spider without head takes no head coloring")

    start = max(head_colors.values(), default=0) + 1
    colors = _spider_colors(sd, iter(range(start, start + sd.k)))
    colors.update(head_colors)
    return Coloring.from_mapping(colors, sd.graph.n)


def spider_to_dict(sd: SpiderDecomposition) -> dict:
    return {
        "flavor": sd.flavor.value,
        "K": list(sd.body),
        "S": list(sd.legs),
        "R": list(sd.head),
        "matching": [list(pair) for pair in sd.matching],
    }


class SpiderPrimeSolver:
    """Prime modules whose quotient is a spider with singleton body and legs and at most one head child."""

    name = "spider"

    def color_prime(self, g: Graph, node: MDNode, colors: Sequence[int]) -> Optional[Dict[int, int]]:
        sd = recognize_spider(node_quotient(g, node))
        if sd is None or len(sd.head) > 1:
            return None
        children = node.children
        if any(len(children[i].vertices) != 1 for i in sd.body + sd.legs):
            return None
        head = children[sd.head[0]].vertices if sd.head else frozenset()
        head_palette = {colors[v] for v in head}
        budget = {colors[v] for v in node.vertices}
        fresh = iter(sorted(budget - head_palette))
        out = {}
        for i, c in _spider_colors(sd, fresh).items():
            (v,) = children[i].vertices
            out[v] = c
        out.update({v: colors[v] for v in head})
        return out


def spider_splitter(view: ModuleView, x: FrozenSet[int]) -> Optional[List[FrozenSet[int]]]:
    """Maximal modular partition of a module that induces a spider: singletons of K and S, plus R."""
    roles = _spider_roles(x, view.degree, view.neighbors)
    if roles is None:
        return None
    parts = [frozenset((v,)) for v in roles.body + roles.legs]
    if roles.head:
        parts.append(frozenset(roles.head))
    return parts


def is_p4_sparse(g: Graph) -> Verdict:
    """Every prime quotient is a spider with at most one head vertex, and only the head child is non-trivial."""
    if g.n == 0:
        return Verdict(True)
    tree = modular_decomposition(g, prime_splitter=spider_splitter)
    for node in tree.prime_nodes():
        quotient = node_quotient(g, node)
        sd = recognize_spider(quotient)
        if sd is None:
            return Verdict(False, sorted(node.vertices), "prime module is not a spider")
        if len(sd.head) > 1:
            return Verdict(False, sorted(node.vertices), "spider head is not a module")
        for i in sd.body + sd.legs:
            if len(node.children[i].vertices) != 1:
                return Verdict(False, sorted(node.vertices), "body or leg position holds a non-trivial module")
    return Verdict(True)


def p4sparse_modmin_coloring(g: Graph) -> Coloring:
    started = time.perf_counter()
    tree = modular_decomposition(g, prime_splitter=spider_splitter)
    try:
        sigma = modularly_minimal_coloring(g, SpiderPrimeSolver(), tree=tree)
    except UnsupportedPrimeError as e:
        raise UnsupportedPrimeError(e.module, "graph is not P4-sparse, prime module is not a spider") from e
    elapsed = (time.perf_counter() - started) * 1000
    logger.info(f"P4-sparse coloring n={g.n} m={g.m}: {sigma.num_colors} colors in {elapsed:.1f} ms")
    return sigma
