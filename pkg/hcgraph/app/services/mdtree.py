"""
Modular decomposition.

Parallel nodes come from connected components, series nodes from co-components,
and prime nodes from iterated module closure of vertex pairs. A caller may pass a
``prime_splitter`` that proposes the maximal modular partition of a module it can
prove prime (the P4-sparse pipeline uses spider recognition); it is consulted
before the component searches and a ``None`` answer falls back to them.

The decomposition works on a ModuleView whose adjacency loses the edges between
siblings as soon as their parent is split. A node settled by an isolated or
universal vertex or by the splitter costs O(|x|) plus the edges it drops. Other
parallel and series nodes add a search over the edges inside x; generic prime
nodes pay for their pair closures.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, FrozenSet, Iterable, Iterator, List, Optional, Set, Tuple

from ..core.errors import InputError
from .graph_core import Graph, co_components, connected_components, graph_from_edges

logger = logging.getLogger(__name__)

Module = FrozenSet[int]


class NodeKind(str, Enum):
    LEAF = "leaf"
    PARALLEL = "parallel"
    SERIES = "series"
    PRIME = "prime"


@dataclass(frozen=True)
class MDNode:
    kind: NodeKind
    vertices: Module
    children: Tuple["MDNode", ...] = ()
    vertex: Optional[int] = None

    @property
    def is_leaf(self) -> bool:
        return self.kind is NodeKind.LEAF

    def child_modules(self) -> List[Module]:
        return [c.vertices for c in self.children]

    def preorder(self) -> Iterator["MDNode"]:
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def postorder(self) -> Iterator["MDNode"]:
        # children before parents, siblings in child order
        stack: List[Tuple["MDNode", bool]] = [(self, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded or not node.children:
                yield node
                continue
            stack.append((node, True))
            for child in reversed(node.children):
                stack.append((child, False))


@dataclass(frozen=True)
class MDTree:
    graph: Graph = field(repr=False, compare=False)
    root: MDNode

    def nodes(self) -> Iterator[MDNode]:
        return self.root.preorder()

    def modules(self) -> Set[Module]:
        return {node.vertices for node in self.nodes()}

    def prime_nodes(self) -> List[MDNode]:
        return [node for node in self.nodes() if node.kind is NodeKind.PRIME]

    def parallel_nodes(self) -> List[MDNode]:
        return [node for node in self.nodes() if node.kind is NodeKind.PARALLEL]

    def series_nodes(self) -> List[MDNode]:
        return [node for node in self.nodes() if node.kind is NodeKind.SERIES]

    def find(self, module: Iterable[int]) -> Optional[MDNode]:
        target = frozenset(module)
        for node in self.nodes():
            if node.vertices == target:
                return node
        return None


def is_module(g: Graph, vertices: Iterable[int]) -> bool:
    x = frozenset(vertices)
    if not x:
        raise InputError("a module must be a nonempty vertex set")
    if min(x) < 0 or max(x) >= g.n:
        raise InputError(f"vertex set not contained in 0..{g.n - 1}")
    return _splitter_of(g, x) is None


def _splitter_of(g: Graph, x: Module, within: Optional[Module] = None) -> Optional[int]:
    """A vertex outside x (inside ``within``) that sees part of x but not all of it."""
    hits: Dict[int, int] = {}
    for v in x:
        for y in g.neighbors(v):
            if y in x or (within is not None and y not in within):
                continue
            hits[y] = hits.get(y, 0) + 1
    size = len(x)
    for y in sorted(hits):
        if hits[y] != size:
            return y
    return None


def module_closure(g: Graph, seed: Iterable[int], within: Optional[Module] = None) -> Module:
    """Smallest module of G[within] containing ``seed``.

    An outside vertex y distinguishes the current set exactly when its adjacency
    to some member differs from its adjacency to the first seed vertex, so each
    newly added member only needs to be compared against that reference.
    """
    seed = list(seed)
    if not seed:
        raise InputError("module closure needs a nonempty seed")
    universe = frozenset(range(g.n)) if within is None else within
    ref = seed[0]
    ref_adj = g.neighbor_set(ref)
    members: Set[int] = set()
    queue = deque()
    for v in seed:
        if v not in members:
            members.add(v)
            queue.append(v)
    while queue:
        z = queue.popleft()
        if len(members) == len(universe):
            break
        z_adj = g.neighbor_set(z)
        for y in universe:
            if y in members:
                continue
            if (y in z_adj) != (y in ref_adj):
                members.add(y)
                queue.append(y)
    return frozenset(members)


def _prime_partition(g: Graph, x: Module) -> List[Module]:
    """Maximal proper modules of a module x with G[x] and its complement connected.

    For such x every module other than x sits inside one member of Pmax, so the
    member containing v is v plus every w whose pair closure {v, w} stays proper.
    """
    remaining = set(x)
    parts: List[Module] = []
    while remaining:
        v = min(remaining)
        part = {v}
        for w in sorted(remaining):
            if w == v or w in part:
                continue
            closure = module_closure(g, (v, w), within=x)
            if len(closure) < len(x):
                part |= closure
        parts.append(frozenset(part))
        remaining -= part
    parts.sort(key=min)
    return parts


class ModuleView:
    """Working adjacency of G during one decomposition.

    Once a node is split, the edges between its children are dropped, so the
    neighbors listed for a vertex always lie in the module currently being split.
    Degrees are therefore local degrees and every scan stays inside the module.
    """

    def __init__(self, g: Graph):
        self.graph = g
        self.n = g.n
        self._adj: List[Set[int]] = [set(g.neighbors(v)) for v in range(g.n)]

    def neighbors(self, v: int) -> Set[int]:
        return self._adj[v]

    neighbor_set = neighbors

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def isolate(self, vertices: Iterable[int]) -> None:
        for v in vertices:
            for u in self._adj[v]:
                self._adj[u].discard(v)
            self._adj[v].clear()

    def detach(self, parts: List[Module], complete: bool = False) -> None:
        """Drop the edges between different parts; ``complete`` when every part sees every other."""
        self.isolate(v for part in parts if len(part) == 1 for v in part)
        big = [part for part in parts if len(part) > 1]
        if len(big) < 2:
            return
        if complete:
            whole = frozenset().union(*big)
            for part in big:
                others = whole - part
                for v in part:
                    self._adj[v].difference_update(others)
            return
        owner = {v: i for i, part in enumerate(big) for v in part}
        for i, part in enumerate(big):
            for v in part:
                self._adj[v] = {u for u in self._adj[v] if owner[u] == i}


PrimeSplitter = Callable[[ModuleView, Module], Optional[List[Module]]]


def _components(view: ModuleView, x: Module, prime_splitter: Optional[PrimeSplitter]) -> List[Module]:
    s = len(x)
    if s == 1 or any(view.degree(v) == s - 1 for v in x):
        return [x]
    if prime_splitter is not None and prime_splitter(view, x) is not None:
        return [x]
    return connected_components(view, within=x)


def _co_components(view: ModuleView, x: Module, prime_splitter: Optional[PrimeSplitter]) -> List[Module]:
    if len(x) == 1 or any(view.degree(v) == 0 for v in x):
        return [x]
    if prime_splitter is not None and prime_splitter(view, x) is not None:
        return [x]
    return co_components(view, within=x)


def _split(
    view: ModuleView,
    x: Module,
    prime_splitter: Optional[PrimeSplitter] = None,
) -> Tuple[List[Module], NodeKind]:
    """Pmax of x and the node kind; edges between the parts are dropped from the view.

    Isolated and universal vertices settle parallel and series nodes without a
    search, and the splitter answers only for modules it recognizes as prime.
    """
    s = len(x)
    lonely = [v for v in x if view.degree(v) == 0]
    if lonely:
        parts = [frozenset((v,)) for v in lonely]
        rest = x.difference(lonely)
        if rest:
            parts.extend(_components(view, rest, prime_splitter))
        return sorted(parts, key=min), NodeKind.PARALLEL
    hubs = [v for v in x if view.degree(v) == s - 1]
    if hubs:
        view.isolate(hubs)
        parts = [frozenset((v,)) for v in hubs]
        rest = x.difference(hubs)
        if rest:
            co = _co_components(view, rest, prime_splitter)
            view.detach(co, complete=True)
            parts.extend(co)
        return sorted(parts, key=min), NodeKind.SERIES

    parts = None
    if prime_splitter is not None:
        parts = prime_splitter(view, x)
        if parts is not None:
            parts = sorted(parts, key=min)
            logger.debug(f"prime module of size {s} split by hint into {len(parts)} parts")
    if parts is None:
        components = connected_components(view, within=x)
        if len(components) > 1:
            return components, NodeKind.PARALLEL
        co = co_components(view, within=x)
        if len(co) > 1:
            view.detach(co, complete=True)
            return co, NodeKind.SERIES
        parts = _prime_partition(view.graph, x)
    # 2 or 3 parts always leave G[x] or its complement disconnected
    assert len(parts) >= 4, f"prime module {sorted(x)} with {len(parts)} parts"
    view.detach(parts)
    return parts, NodeKind.PRIME


def maximal_modular_partition(
    g: Graph,
    prime_splitter: Optional[PrimeSplitter] = None,
) -> Tuple[List[Module], NodeKind]:
    if g.n < 2:
        raise InputError("maximal modular partition needs at least 2 vertices")
    return _split(ModuleView(g), frozenset(range(g.n)), prime_splitter)


def modular_decomposition(g: Graph, prime_splitter: Optional[PrimeSplitter] = None) -> MDTree:
    if g.n < 1:
        raise InputError("modular decomposition needs at least one vertex")
    # top-down pass records partitions, bottom-up pass builds frozen nodes
    view = ModuleView(g)
    order: List[Module] = []
    plan: Dict[Module, Tuple[NodeKind, List[Module]]] = {}
    stack = [frozenset(range(g.n))]
    while stack:
        x = stack.pop()
        order.append(x)
        if len(x) == 1:
            plan[x] = (NodeKind.LEAF, [])
            continue
        parts, kind = _split(view, x, prime_splitter)
        plan[x] = (kind, parts)
        stack.extend(parts)

    built: Dict[Module, MDNode] = {}
    for x in reversed(order):
        kind, parts = plan[x]
        if kind is NodeKind.LEAF:
            (v,) = tuple(x)
            built[x] = MDNode(NodeKind.LEAF, x, (), v)
        else:
            built[x] = MDNode(kind, x, tuple(built[p] for p in parts))
    root = built[frozenset(range(g.n))]
    logger.debug(f"modular decomposition of n={g.n}: {len(built)} nodes")
    return MDTree(graph=g, root=root)


def strong_modules(g: Graph, tree: Optional[MDTree] = None) -> Set[Module]:
    tree = tree or modular_decomposition(g)
    return tree.modules()


def quotient_graph(g: Graph, partition: List[Iterable[int]]) -> Graph:
    parts = [frozenset(p) for p in partition]
    seen: Set[int] = set()
    for part in parts:
        if not part:
            raise InputError("quotient partition contains an empty part")
        if seen & part:
            raise InputError("quotient partition parts overlap")
        seen |= part
    if seen != set(range(g.n)):
        raise InputError("quotient partition does not cover the vertex set")
    for part in parts:
        if not is_module(g, part):
            raise InputError(f"part {sorted(part)} is not a module")
    owner = {}
    for i, part in enumerate(parts):
        for v in part:
            owner[v] = i
    reps = [min(p) for p in parts]
    edges = []
    for i, r in enumerate(reps):
        for j in {owner[u] for u in g.neighbors(r)}:
            if j != i and i < j:
                edges.append((i, j))
    return graph_from_edges(len(parts), edges)


def node_quotient(g: Graph, node: MDNode) -> Graph:
    """Quotient of G[node] by the node's children; vertex i stands for child i.

    Singleton children scan their own neighbors, which charges each vertex of G
    to its parent only; pairs of larger children are settled by one adjacency test.
    """
    owner: Dict[int, int] = {}
    for i, child in enumerate(node.children):
        for v in child.vertices:
            owner[v] = i
    edges = set()
    big: List[Tuple[int, int]] = []
    for i, child in enumerate(node.children):
        if len(child.vertices) > 1:
            big.append((i, min(child.vertices)))
            continue
        (v,) = child.vertices
        for u in g.neighbors(v):
            j = owner.get(u)
            if j is not None and j != i:
                edges.add((min(i, j), max(i, j)))
    for a, (i, u) in enumerate(big):
        for j, w in big[a + 1:]:
            if g.has_edge(u, w):
                edges.add((i, j))
    return graph_from_edges(len(node.children), sorted(edges))
