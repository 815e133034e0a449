"""
Cotrees: cograph recognition, discriminating cotrees, binary refinements,
enumeration of all binary cotrees of a cograph, and reconstruction.

Inner labels: 0 = disjoint union, 1 = join.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations, islice
from typing import Callable, Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

from ..core.config import settings
from ..core.errors import DomainError, InputError
from .graph_core import Coloring, Graph, Verdict, co_components, connected_components, graph_from_edges
from .mdtree import NodeKind, modular_decomposition, node_quotient

logger = logging.getLogger(__name__)

UNION = 0
JOIN = 1


@dataclass(frozen=True)
class CotreeNode:
    label: Optional[int] = None
    vertex: Optional[int] = None
    children: Tuple["CotreeNode", ...] = ()
    leaves: FrozenSet[int] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.vertex is not None:
            if self.children or self.label is not None:
                raise InputError(f"leaf {self.vertex} cannot carry children or a label")
            if self.vertex < 0:
                raise InputError(f"negative leaf id {self.vertex}")
            object.__setattr__(self, "leaves", frozenset((self.vertex,)))
            return
        if self.label not in (UNION, JOIN):
            raise InputError(f"inner cotree label must be 0 or 1, got {self.label!r}")
        if len(self.children) < 2:
            raise InputError("inner cotree node needs at least two children")
        leaves: Set[int] = set()
        for child in self.children:
            if leaves & child.leaves:
                raise InputError(f"duplicate leaf ids {sorted(leaves & child.leaves)}")
            leaves |= child.leaves
        object.__setattr__(self, "leaves", frozenset(leaves))

    @property
    def is_leaf(self) -> bool:
        return self.vertex is not None

    @property
    def is_binary(self) -> bool:
        return all(len(node.children) in (0, 2) for node in self.preorder())

    def preorder(self) -> Iterator["CotreeNode"]:
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def postorder(self) -> Iterator["CotreeNode"]:
        stack: List[Tuple["CotreeNode", bool]] = [(self, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded or node.is_leaf:
                yield node
                continue
            stack.append((node, True))
            for child in reversed(node.children):
                stack.append((child, False))


def leaf(v: int) -> CotreeNode:
    return CotreeNode(vertex=v)


def union(*children: CotreeNode) -> CotreeNode:
    return CotreeNode(label=UNION, children=tuple(children))


def join(*children: CotreeNode) -> CotreeNode:
    return CotreeNode(label=JOIN, children=tuple(children))


class RefinePolicy(str, Enum):
    LEFT_COMB = "left-comb"
    BALANCED = "balanced"
    COLOR_SORTED = "color-sorted"


def _rebuild(root: CotreeNode, fn: Callable[[CotreeNode, Tuple[CotreeNode, ...]], CotreeNode]) -> CotreeNode:
    """Bottom-up rewrite; fn receives the original node and its already rewritten children."""
    done: Dict[int, CotreeNode] = {}
    for node in root.postorder():
        if node.is_leaf:
            done[id(node)] = node
        else:
            done[id(node)] = fn(node, tuple(done[id(c)] for c in node.children))
    return done[id(root)]


# -- recognition ------------------------------------------------------------

def induces_p4(g: Graph, quad: Sequence[int]) -> bool:
    edges = [(a, b) for a, b in combinations(quad, 2) if g.has_edge(a, b)]
    if len(edges) != 3:
        return False
    degrees = sorted(sum(v in e for e in edges) for v in quad)
    return degrees == [1, 1, 2, 2]


def _orient_p4(g: Graph, quad: Sequence[int]) -> Tuple[int, int, int, int]:
    ends = [v for v in quad if sum(g.has_edge(v, w) for w in quad if w != v) == 1]
    paths = []
    for start in ends:
        path = [start]
        while len(path) < 4:
            nxt = next(w for w in quad if w not in path and g.has_edge(path[-1], w))
            path.append(nxt)
        paths.append(tuple(path))
    return min(paths)


def find_induced_p4(g: Graph, vertices: Optional[Sequence[int]] = None) -> Optional[Tuple[int, int, int, int]]:
    """First induced P4 in lexicographic order of 4-subsets, oriented lexicographically."""
    pool = sorted(range(g.n) if vertices is None else vertices)
    for quad in combinations(pool, 4):
        if induces_p4(g, quad):
            return _orient_p4(g, quad)
    return None


def is_cograph(g: Graph) -> Verdict:
    tree = modular_decomposition(g)
    primes = tree.prime_nodes()
    if not primes:
        return Verdict(True)
    node = primes[0]
    quotient = node_quotient(g, node)
    local = find_induced_p4(quotient)
    # a prime graph always contains an induced P4
    assert local is not None
    reps = [min(child.vertices) for child in node.children]
    witness = _orient_p4(g, [reps[i] for i in local])
    return Verdict(False, witness, "induced P4")


def discriminating_cotree(g: Graph) -> CotreeNode:
    tree = modular_decomposition(g)
    if tree.prime_nodes():
        verdict = is_cograph(g)
        raise DomainError(f"graph is not a cograph, induced P4 {list(verdict.witness)}")
    done: Dict[int, CotreeNode] = {}
    for node in tree.root.postorder():
        if node.kind is NodeKind.LEAF:
            done[id(node)] = leaf(node.vertex)
        else:
            label = JOIN if node.kind is NodeKind.SERIES else UNION
            done[id(node)] = CotreeNode(label=label, children=tuple(done[id(c)] for c in node.children))
    return done[id(tree.root)]


# -- refinement and contraction --------------------------------------------

def _comb(label: int, items: Sequence[CotreeNode]) -> CotreeNode:
    acc = items[0]
    for item in items[1:]:
        acc = CotreeNode(label=label, children=(acc, item))
    return acc


def _balanced(label: int, items: Sequence[CotreeNode]) -> CotreeNode:
    if len(items) == 1:
        return items[0]
    mid = (len(items) + 1) // 2
    return CotreeNode(label=label, children=(_balanced(label, items[:mid]), _balanced(label, items[mid:])))


def binary_refine(
    tree: CotreeNode,
    policy: RefinePolicy = RefinePolicy.LEFT_COMB,
    coloring: Optional[Coloring] = None,
) -> CotreeNode:
    """Replace every node with k>2 children by a binary tree carrying the same label.

    COLOR_SORTED orders union children by ascending palette size (stable) and builds
    the caterpillar ((c1,c2),c3)...; join nodes are combed as given.
    """
    policy = RefinePolicy(policy)
    if policy is RefinePolicy.COLOR_SORTED:
        if coloring is None:
            raise InputError("color-sorted refinement needs a coloring")
        if max(tree.leaves) >= len(coloring):
            raise InputError("coloring does not cover the cotree leaves")

    def refine(node: CotreeNode, kids: Tuple[CotreeNode, ...]) -> CotreeNode:
        if len(kids) == 2:
            return CotreeNode(label=node.label, children=kids)
        if policy is RefinePolicy.BALANCED:
            return _balanced(node.label, kids)
        if policy is RefinePolicy.COLOR_SORTED and node.label == UNION:
            kids = tuple(sorted(kids, key=lambda c: len(coloring.palette(c.leaves))))
        return _comb(node.label, kids)

    return _rebuild(tree, refine)


def contract_cotree(tree: CotreeNode) -> CotreeNode:
    """Merge every inner node into its parent when both carry the same label."""

    def contract(node: CotreeNode, kids: Tuple[CotreeNode, ...]) -> CotreeNode:
        merged: List[CotreeNode] = []
        for kid in kids:
            if not kid.is_leaf and kid.label == node.label:
                merged.extend(kid.children)
            else:
                merged.append(kid)
        merged.sort(key=lambda c: min(c.leaves))
        return CotreeNode(label=node.label, children=tuple(merged))

    return _rebuild(tree, contract)


def cotree_signature(tree: CotreeNode) -> FrozenSet[Tuple[FrozenSet[int], int]]:
    return frozenset((node.leaves, node.label) for node in tree.preorder() if not node.is_leaf)


# -- enumeration ------------------------------------------------------------

def _shapes(items: Tuple[int, ...]) -> Iterator[object]:
    """Unordered full binary trees over distinct items, as nested pairs; (2k-3)!! of them."""
    if len(items) == 1:
        yield items[0]
        return
    first, rest = items[0], items[1:]
    for size in range(len(rest)):
        for partner in combinations(rest, size):
            other = tuple(x for x in rest if x not in partner)
            for left in _shapes((first,) + partner):
                for right in _shapes(other):
                    yield (left, right)


def _materialize(shape, label: int, chosen: Sequence[CotreeNode]) -> CotreeNode:
    if isinstance(shape, int):
        return chosen[shape]
    return CotreeNode(label=label, children=tuple(_materialize(s, label, chosen) for s in shape))


def _refinements(node: CotreeNode) -> Iterator[CotreeNode]:
    if node.is_leaf:
        yield node
        return
    factories = [(lambda c=c: _refinements(c)) for c in node.children]
    for shape in _shapes(tuple(range(len(node.children)))):
        for chosen in _lazy_product(factories):
            yield _materialize(shape, node.label, chosen)


def _lazy_product(factories: Sequence[Callable[[], Iterator[CotreeNode]]]) -> Iterator[Tuple[CotreeNode, ...]]:
    if not factories:
        yield ()
        return
    for head in factories[0]():
        for tail in _lazy_product(factories[1:]):
            yield (head,) + tail


def enumerate_binary_cotrees(g: Graph, limit: Optional[int] = None) -> Iterator[CotreeNode]:
    """All binary cotrees of a cograph, each set system {(L(T(u)), t(u))} exactly once.

    A node with k children has (2k-3)!! binary shapes and the total is the product
    over nodes, so enumeration is only meant for small graphs; ``limit`` bounds it.
    """
    disc = discriminating_cotree(g)
    limit = settings.COTREE_ENUM_LIMIT if limit is None else limit
    return islice(_refinements(disc), limit)


# -- reconstruction and validation -----------------------------------------

def cograph_from_cotree(tree: CotreeNode) -> Graph:
    n = len(tree.leaves)
    if tree.leaves != frozenset(range(n)):
        raise InputError(f"cotree leaves must be exactly 0..{n - 1}")
    edges = []
    for node in tree.preorder():
        if node.label != JOIN:
            continue
        seen: List[int] = []
        for child in node.children:
            edges.extend((u, v) for u in child.leaves for v in seen)
            seen.extend(child.leaves)
    return graph_from_edges(n, edges)


def validate_cotree(g: Graph, tree: CotreeNode) -> Verdict:
    """Whether the cotree generates exactly G; the witness is the first failing node's leaf set."""
    if tree.leaves != frozenset(range(g.n)):
        return Verdict(False, sorted(tree.leaves), "leaf set differs from the vertex set")
    for node in tree.preorder():
        if node.is_leaf:
            continue
        for child in node.children:
            outside = len(node.leaves) - len(child.leaves)
            for v in child.leaves:
                cross = sum(1 for u in g.neighbors(v) if u in node.leaves and u not in child.leaves)
                expected = outside if node.label == JOIN else 0
                if cross != expected:
                    return Verdict(False, sorted(node.leaves), "cross pairs disagree with the label")
    return Verdict(True)


def require_cotree(g: Graph, tree: CotreeNode, binary: bool = False) -> None:
    verdict = validate_cotree(g, tree)
    if not verdict:
        raise DomainError(f"not a cotree of the graph: {verdict.reason} at {verdict.witness}")
    if binary and not tree.is_binary:
        raise DomainError("a binary cotree is required")


def hc_cotree_from_coloring(g: Graph, sigma: Coloring) -> Optional[CotreeNode]:
    """Binary cotree w.r.t. which sigma is an hc-coloring, built top-down.

    Join modules peel off their first co-component; union modules peel off the
    component with the fewest colors. None when sigma is not hc for that tree.
    """
    if len(sigma) != g.n:
        raise InputError(f"coloring has {len(sigma)} entries for a graph with {g.n} vertices")
    if not is_cograph(g):
        raise DomainError("graph is not a cograph")

    def build(x: FrozenSet[int]) -> Optional[CotreeNode]:
        if len(x) == 1:
            return leaf(next(iter(x)))
        comps = connected_components(g, within=x)
        if len(comps) > 1:
            first = min(comps, key=lambda c: len(sigma.palette(c)))
            rest = x - first
            a, b = sigma.palette(first), sigma.palette(rest)
            if not (a <= b or b <= a):
                return None
            label = UNION
        else:
            first = co_components(g, within=x)[0]
            rest = x - first
            if sigma.palette(first) & sigma.palette(rest):
                return None
            label = JOIN
        left, right = build(first), build(rest)
        if left is None or right is None:
            return None
        return CotreeNode(label=label, children=(left, right))

    return build(frozenset(range(g.n)))

