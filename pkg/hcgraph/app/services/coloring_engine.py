"""
Coloring construction and verification.

Construction runs bottom-up over a tree (the MD tree for modularly-minimal
colorings, a binary cotree for (T,t)-minimal ones). Every vertex starts with its
own color v+1, so sibling palettes are pairwise disjoint when their parent is
processed:

- union / parallel: every child is injected into the palette of the child with
  the largest chi (first one on ties)
- join / series: palettes stay disjoint
- prime: a PrimeSolver recolors the module using only colors already present

Injections are canonical (i-th smallest color to i-th smallest color) unless a
seeded ``random.Random`` is passed.
"""
import logging
import math
import random
from typing import Dict, FrozenSet, List, Optional, Protocol, Sequence, Tuple

import networkx as nx

from ..core.config import settings
from ..core.errors import DomainError, InputError, UnsupportedPrimeError
from .cotree import JOIN, CotreeNode, RefinePolicy, binary_refine, discriminating_cotree, require_cotree
from .graph_core import (
    Coloring,
    Graph,
    Verdict,
    canonicalize_coloring,
    graph_from_edges,
    monochromatic_edge,
)
from .mdtree import MDNode, MDTree, NodeKind, modular_decomposition, node_quotient
from .oracles import exact_coloring

logger = logging.getLogger(__name__)


class PrimeSolver(Protocol):
    name: str

    def color_prime(self, g: Graph, node: MDNode, colors: Sequence[int]) -> Optional[Dict[int, int]]:
        """New colors for every vertex of ``node``, or None to refuse.

        ``colors`` holds the current coloring: each child of ``node`` is already
        colored modularly-minimally and sibling palettes are disjoint. Returned
        colors must come from the union of the children's palettes.
        """
        ...


def _palette(colors: Sequence[int], vertices) -> FrozenSet[int]:
    return frozenset(colors[v] for v in vertices)


class BruteForcePrimeSolver:
    """Exact solver: weighted coloring of the quotient, weight = chi of the child.

    Each child becomes a clique of chi(child) copies joined to the copies of adjacent
    children; an optimal coloring of that graph tells which colors each child gets,
    and the child's own coloring is renamed onto them bijectively.
    """

    name = "brute-force"

    def __init__(self, max_weight: Optional[int] = None):
        self.max_weight = max_weight

    def color_prime(self, g: Graph, node: MDNode, colors: Sequence[int]) -> Optional[Dict[int, int]]:
        cap = settings.PRIME_SOLVER_MAX_WEIGHT if self.max_weight is None else self.max_weight
        palettes = [sorted(_palette(colors, child.vertices)) for child in node.children]
        weights = [len(p) for p in palettes]
        total = sum(weights)
        if total > cap:
            logger.debug(f"brute-force prime solver refuses weight {total} > {cap}")
            return None

        quotient = node_quotient(g, node)
        offsets = []
        acc = 0
        for w in weights:
            offsets.append(acc)
            acc += w
        copies = [range(offsets[i], offsets[i] + weights[i]) for i in range(len(weights))]
        edges = []
        for i, block in enumerate(copies):
            edges.extend((a, b) for a in block for b in block if a < b)
        for i, j in quotient.edges():
            edges.extend((a, b) for a in copies[i] for b in copies[j])
        expanded = graph_from_edges(total, edges)
        solved = exact_coloring(expanded, max_n=cap)

        budget = sorted(set().union(*palettes))
        out: Dict[int, int] = {}
        for i, child in enumerate(node.children):
            targets = sorted(budget[solved[c] - 1] for c in copies[i])
            rename = dict(zip(palettes[i], targets))
            for v in child.vertices:
                out[v] = rename[colors[v]]
        return out


class ChainedPrimeSolver:
    """Asks each solver in turn; the first non-refusal wins."""

    def __init__(self, *solvers: PrimeSolver):
        if not solvers:
            raise InputError("ChainedPrimeSolver needs at least one solver")
        self.solvers = solvers
        self.name = "+".join(s.name for s in solvers)

    def color_prime(self, g: Graph, node: MDNode, colors: Sequence[int]) -> Optional[Dict[int, int]]:
        for solver in self.solvers:
            result = solver.color_prime(g, node, colors)
            if result is not None:
                return result
        return None


def _inject(colors: List[int], groups: Sequence[Sequence[int]], chis: Sequence[int], rng: Optional[random.Random]) -> int:
    """Map every group's palette into the palette of the group with the largest chi."""
    keep = max(range(len(groups)), key=lambda i: (chis[i], -i))
    target = sorted(_palette(colors, groups[keep]))
    for i, group in enumerate(groups):
        if i == keep:
            continue
        source = sorted(_palette(colors, group))
        if rng is None:
            rename = dict(zip(source, target))
        else:
            rename = dict(zip(source, rng.sample(target, len(source))))
        for v in group:
            colors[v] = rename[colors[v]]
    return chis[keep]


# -- construction -----------------------------------------------------------

def greedy_coloring(g: Graph, order: Sequence[int]) -> Coloring:
    order = [int(v) for v in order]
    if sorted(order) != list(range(g.n)):
        raise InputError(f"order must be a permutation of 0..{g.n - 1}")
    colors = [0] * g.n
    for v in order:
        taken = {colors[u] for u in g.neighbors(v)}
        c = 1
        while c in taken:
            c += 1
        colors[v] = c
    return Coloring(colors)


def _modmin_pass(
    g: Graph,
    tree: MDTree,
    solver: PrimeSolver,
    rng: Optional[random.Random] = None,
) -> Tuple[List[int], Dict[FrozenSet[int], int]]:
    colors = [v + 1 for v in range(g.n)]
    chi: Dict[FrozenSet[int], int] = {}
    for node in tree.root.postorder():
        if node.kind is NodeKind.LEAF:
            chi[node.vertices] = 1
        elif node.kind is NodeKind.SERIES:
            chi[node.vertices] = sum(chi[c.vertices] for c in node.children)
        elif node.kind is NodeKind.PARALLEL:
            groups = [sorted(c.vertices) for c in node.children]
            chi[node.vertices] = _inject(colors, groups, [chi[c.vertices] for c in node.children], rng)
        else:
            chi[node.vertices] = _solve_prime(g, node, colors, solver)
    return colors, chi


def _solve_prime(g: Graph, node: MDNode, colors: List[int], solver: PrimeSolver) -> int:
    budget = _palette(colors, node.vertices)
    result = solver.color_prime(g, node, colors)
    if result is None:
        logger.warning(f"⚠️ solver {solver.name} refused prime module of size {len(node.vertices)}")
        raise UnsupportedPrimeError(node.vertices)
    if set(result) != set(node.vertices):
        raise DomainError(f"solver {solver.name} did not color the whole module")
    if not set(result.values()) <= budget:
        raise DomainError(f"solver {solver.name} minted colors outside the children palettes")
    # siblings start with disjoint palettes, so only recolored vertices can clash
    for v in [v for v, c in result.items() if c != colors[v]]:
        for u in g.neighbors(v):
            if u in result and result[u] == result[v]:
                raise DomainError(f"solver {solver.name} returned an improper coloring on edge ({v}, {u})")
    for v, c in result.items():
        colors[v] = c
    return len(set(result.values()))


def _default_solver(solver: Optional[PrimeSolver]) -> PrimeSolver:
    return solver if solver is not None else BruteForcePrimeSolver()


def chromatic_number(g: Graph, solver: Optional[PrimeSolver] = None, tree: Optional[MDTree] = None) -> int:
    if g.n == 0:
        return 0
    tree = tree or modular_decomposition(g)
    _, chi = _modmin_pass(g, tree, _default_solver(solver))
    return chi[tree.root.vertices]


def modularly_minimal_coloring(
    g: Graph,
    solver: Optional[PrimeSolver] = None,
    rng: Optional[random.Random] = None,
    tree: Optional[MDTree] = None,
) -> Coloring:
    if g.n == 0:
        return Coloring(())
    tree = tree or modular_decomposition(g)
    colors, chi = _modmin_pass(g, tree, _default_solver(solver), rng)
    logger.debug(f"modularly-minimal coloring of n={g.n} with {chi[tree.root.vertices]} colors")
    return canonicalize_coloring(Coloring(colors))


def tt_minimal_coloring(g: Graph, tree: CotreeNode, rng: Optional[random.Random] = None) -> Coloring:
    require_cotree(g, tree, binary=True)
    colors = [v + 1 for v in range(g.n)]
    chi: Dict[int, int] = {}
    for node in tree.postorder():
        if node.is_leaf:
            chi[id(node)] = 1
        elif node.label == JOIN:
            chi[id(node)] = sum(chi[id(c)] for c in node.children)
        else:
            groups = [sorted(c.leaves) for c in node.children]
            chi[id(node)] = _inject(colors, groups, [chi[id(c)] for c in node.children], rng)
    return canonicalize_coloring(Coloring(colors))


def strictify(g: Graph, sigma: Coloring, solver: Optional[PrimeSolver] = None) -> Coloring:
    """Rename colors inside every parallel module so children palettes become nested prefixes."""
    tree = modular_decomposition(g)
    verdict = is_modularly_minimal(g, sigma, solver, tree=tree)
    if not verdict:
        raise DomainError(f"strictify needs a modularly-minimal coloring, module {verdict.witness} is not")
    colors = list(sigma.colors)
    for node in tree.nodes():
        if node.kind is not NodeKind.PARALLEL:
            continue
        prefix = sorted(_palette(colors, node.vertices))
        for child in node.children:
            rename = dict(zip(sorted(_palette(colors, child.vertices)), prefix))
            for v in child.vertices:
                colors[v] = rename[colors[v]]
    return canonicalize_coloring(Coloring(colors))


# -- verification -----------------------------------------------------------

def _require_proper(g: Graph, sigma: Coloring, what: str) -> None:
    if len(sigma) != g.n:
        raise InputError(f"coloring has {len(sigma)} entries for a graph with {g.n} vertices")
    edge = monochromatic_edge(g, sigma)
    if edge is not None:
        raise DomainError(f"{what} needs a proper coloring, edge {edge} is monochromatic")


def is_greedy_coloring(g: Graph, sigma: Coloring, literal: bool = False) -> Verdict:
    """Grundy-witness test.

    literal: every vertex of color c has neighbors of all colors 1..c-1.
    Default: some renaming of the colors satisfies that. A vertex of color b
    without a neighbor of color a forces b before a; the coloring is greedy iff
    those constraints are acyclic.
    """
    _require_proper(g, sigma, "greedy check")
    if literal:
        for v in range(g.n):
            around = {sigma[u] for u in g.neighbors(v)}
            for c in range(1, sigma[v]):
                if c not in around:
                    return Verdict(False, (v, c), f"vertex {v} has no neighbor of color {c}")
        return Verdict(True)
    palette = sorted(sigma.palette())
    before = nx.DiGraph()
    before.add_nodes_from(palette)
    for v in range(g.n):
        around = {sigma[u] for u in g.neighbors(v)}
        b = sigma[v]
        for a in palette:
            if a != b and a not in around:
                before.add_edge(b, a)
    if nx.is_directed_acyclic_graph(before):
        return Verdict(True, list(nx.lexicographical_topological_sort(before)))
    cycle = [u for u, _ in nx.find_cycle(before)]
    return Verdict(False, cycle, "color precedence constraints are cyclic")


def _tree_palettes(sigma: Coloring, tree: CotreeNode) -> Dict[int, FrozenSet[int]]:
    palettes: Dict[int, FrozenSet[int]] = {}
    for node in tree.postorder():
        if node.is_leaf:
            palettes[id(node)] = frozenset((sigma[node.vertex],))
        else:
            palettes[id(node)] = frozenset().union(*(palettes[id(c)] for c in node.children))
    return palettes


def cotree_chi(tree: CotreeNode) -> Dict[int, int]:
    """chi of G(u) for every node u, keyed by id(u): joins add, unions take the max."""
    chi: Dict[int, int] = {}
    for node in tree.postorder():
        if node.is_leaf:
            chi[id(node)] = 1
        elif node.label == JOIN:
            chi[id(node)] = sum(chi[id(c)] for c in node.children)
        else:
            chi[id(node)] = max(chi[id(c)] for c in node.children)
    return chi


def _check_tree_args(g: Graph, sigma: Coloring, tree: CotreeNode) -> None:
    if len(sigma) != g.n:
        raise InputError(f"coloring has {len(sigma)} entries for a graph with {g.n} vertices")
    require_cotree(g, tree, binary=True)


def is_hc_coloring(g: Graph, sigma: Coloring, tree: CotreeNode) -> Verdict:
    """Join children must have disjoint palettes, union children nested ones.

    The witness is the leaf set of the highest violating node.
    """
    _check_tree_args(g, sigma, tree)
    palettes = _tree_palettes(sigma, tree)
    for node in tree.preorder():
        if node.is_leaf:
            continue
        a, b = (palettes[id(c)] for c in node.children)
        if node.label == JOIN:
            if a & b:
                return Verdict(False, sorted(node.leaves), "join children share colors")
        elif not (a <= b or b <= a):
            return Verdict(False, sorted(node.leaves), "union children palettes are not nested")
    return Verdict(True)


def is_tt_minimal(g: Graph, sigma: Coloring, tree: CotreeNode) -> Verdict:
    _check_tree_args(g, sigma, tree)
    palettes = _tree_palettes(sigma, tree)
    chi = cotree_chi(tree)
    for node in tree.preorder():
        if len(palettes[id(node)]) != chi[id(node)]:
            return Verdict(False, sorted(node.leaves), f"uses {len(palettes[id(node)])} colors, chi is {chi[id(node)]}")
    return Verdict(True)


def is_hierarchical(g: Graph, sigma: Coloring, tree: Optional[MDTree] = None) -> Verdict:
    _require_proper(g, sigma, "hierarchical check")
    tree = tree or modular_decomposition(g)
    for node in tree.parallel_nodes():
        palettes = [sigma.palette(c.vertices) for c in node.children]
        whole = frozenset().union(*palettes)
        if not any(p == whole for p in palettes):
            return Verdict(False, sorted(node.vertices), "no child palette contains the others")
    return Verdict(True)


def is_strictly_hierarchical(g: Graph, sigma: Coloring, tree: Optional[MDTree] = None) -> Verdict:
    _require_proper(g, sigma, "strictly hierarchical check")
    tree = tree or modular_decomposition(g)
    for node in tree.parallel_nodes():
        palettes = [(c.vertices, sigma.palette(c.vertices)) for c in node.children]
        for i, (mi, pi) in enumerate(palettes):
            for mj, pj in palettes[i + 1:]:
                if not (pi <= pj or pj <= pi):
                    return Verdict(False, [sorted(mi), sorted(mj)], "sibling palettes are not nested")
    return Verdict(True)


def is_modularly_minimal(
    g: Graph,
    sigma: Coloring,
    solver: Optional[PrimeSolver] = None,
    tree: Optional[MDTree] = None,
) -> Verdict:
    _require_proper(g, sigma, "modular minimality check")
    if g.n == 0:
        return Verdict(True)
    tree = tree or modular_decomposition(g)
    _, chi = _modmin_pass(g, tree, _default_solver(solver))
    for node in tree.nodes():
        used = len(sigma.palette(node.vertices))
        if used != chi[node.vertices]:
            return Verdict(False, sorted(node.vertices), f"uses {used} colors, chi is {chi[node.vertices]}")
    return Verdict(True)


# -- counting ---------------------------------------------------------------

def g(s1: int, s2: int) -> int:
    """Injections from an s1-set into an s2-set."""
    if s1 < 0 or s2 < 0:
        raise InputError("set sizes must be nonnegative")
    return math.perm(s2, s1)


def count_hc_colorings(graph: Graph, tree: CotreeNode) -> int:
    """Z(root): hc-colorings w.r.t. the tree, up to renaming the whole color set.

    Labeled colorings with colors 1..chi number Z * chi!.
    """
    require_cotree(graph, tree, binary=True)
    z: Dict[int, int] = {}
    chi: Dict[int, int] = {}
    for node in tree.postorder():
        key = id(node)
        if node.is_leaf:
            z[key], chi[key] = 1, 1
            continue
        left, right = (id(c) for c in node.children)
        if node.label == JOIN:
            z[key] = z[left] * z[right]
            chi[key] = chi[left] + chi[right]
        else:
            s1, s2 = sorted((chi[left], chi[right]))
            z[key] = z[left] * z[right] * g(s1, s2)
            chi[key] = s2
    return z[id(tree)]


def count_hc_colorings_total(graph: Graph) -> int:
    """Z for the chi-ascending caterpillar refinement of the discriminating cotree."""
    disc = discriminating_cotree(graph)
    sigma = modularly_minimal_coloring(graph)
    tree = binary_refine(disc, RefinePolicy.COLOR_SORTED, sigma)
    return count_hc_colorings(graph, tree)
