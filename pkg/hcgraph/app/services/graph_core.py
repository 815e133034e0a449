"""
Undirected simple graphs, colorings and the elementary operations on them.

Vertices are always 0..n-1. Neighbor tuples are sorted, so every traversal in
the package visits vertices in ascending id order and results are deterministic.
"""
import logging
from collections import deque
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from ..core.errors import InputError

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


class Graph:
    """Immutable undirected simple graph on vertices 0..n-1."""

    __slots__ = ("n", "_adj", "_adj_sets", "_m")

    def __init__(self, n: int, adjacency: Sequence[Iterable[int]]):
        if n < 0 or len(adjacency) != n:
            raise InputError(f"adjacency must have exactly n={n} rows")
        self.n = n
        self._adj: Tuple[Tuple[int, ...], ...] = tuple(tuple(sorted(set(row))) for row in adjacency)
        self._adj_sets: Tuple[frozenset, ...] = tuple(frozenset(row) for row in self._adj)
        self._m = sum(len(row) for row in self._adj) // 2

    @property
    def m(self) -> int:
        return self._m

    @property
    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self._adj[v]

    def neighbor_set(self, v: int) -> frozenset:
        return self._adj_sets[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj_sets[u]

    def edges(self) -> Iterator[Edge]:
        for u, row in enumerate(self._adj):
            for v in row:
                if u < v:
                    yield (u, v)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        nodes = sorted(g.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        edges = [(index[u], index[v]) for u, v in g.edges() if u != v]
        return graph_from_edges(len(nodes), edges)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class Coloring:
    """Total map vertex -> positive color id, immutable."""

    __slots__ = ("_colors",)

    def __init__(self, colors: Iterable[int]):
        values = tuple(int(c) for c in colors)
        for v, c in enumerate(values):
            if c < 1:
                raise InputError(f"color of vertex {v} must be a positive integer, got {c}")
        self._colors = values

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int], n: int) -> "Coloring":
        missing = [v for v in range(n) if v not in mapping]
        if missing:
            raise InputError(f"coloring undefined on vertices {missing[:10]}")
        return cls(mapping[v] for v in range(n))

    @property
    def colors(self) -> Tuple[int, ...]:
        return self._colors

    def palette(self, vertices: Optional[Iterable[int]] = None) -> frozenset:
        """sigma(W): the exact set of colors on W (all vertices when W is omitted)."""
        if vertices is None:
            return frozenset(self._colors)
        return frozenset(self._colors[v] for v in vertices)

    @property
    def num_colors(self) -> int:
        return len(set(self._colors))

    def classes(self) -> Dict[int, List[int]]:
        out: Dict[int, List[int]] = {}
        for v, c in enumerate(self._colors):
            out.setdefault(c, []).append(v)
        return out

    def partition(self) -> frozenset:
        return frozenset(frozenset(vs) for vs in self.classes().values())

    def __getitem__(self, v: int) -> int:
        return self._colors[v]

    def __len__(self) -> int:
        return len(self._colors)

    def __iter__(self):
        return iter(self._colors)

    def __eq__(self, other) -> bool:
        return isinstance(other, Coloring) and self._colors == other._colors

    def __hash__(self) -> int:
        return hash(self._colors)

    def __repr__(self) -> str:
        return f"Coloring{self._colors}"


def graph_from_edges(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    if n < 0:
        raise InputError(f"vertex count must be >= 0, got {n}")
    adjacency: List[set] = [set() for _ in range(n)]
    for edge in edges:
        if len(edge) != 2:
            raise InputError(f"edge {tuple(edge)} is not a pair")
        u, v = int(edge[0]), int(edge[1])
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise InputError(f"self-loop on vertex {u}")
        # duplicates collapse in the sets
        adjacency[u].add(v)
        adjacency[v].add(u)
    return Graph(n, adjacency)


def empty_graph(n: int) -> Graph:
    return Graph(n, [() for _ in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [[u for u in range(n) if u != v] for v in range(n)])


def path_graph(n: int) -> Graph:
    return graph_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def disjoint_union(*graphs: Graph) -> Graph:
    edges: List[Edge] = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges())
        offset += g.n
    return graph_from_edges(offset, edges)


def join(*graphs: Graph) -> Graph:
    union = disjoint_union(*graphs)
    edges = list(union.edges())
    bounds = []
    offset = 0
    for g in graphs:
        bounds.append((offset, offset + g.n))
        offset += g.n
    for i, (a0, a1) in enumerate(bounds):
        for b0, b1 in bounds[i + 1:]:
            edges.extend((u, v) for u in range(a0, a1) for v in range(b0, b1))
    return graph_from_edges(offset, edges)


def complement(g: Graph) -> Graph:
    rows = []
    for v in range(g.n):
        adj = g.neighbor_set(v)
        rows.append([u for u in range(g.n) if u != v and u not in adj])
    return Graph(g.n, rows)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Tuple[Graph, Tuple[int, ...]]:
    """G[W] relabeled to 0..|W|-1; the returned tuple maps new ids to original ids."""
    index_map = tuple(sorted(set(vertices)))
    if not index_map:
        raise InputError("induced subgraph needs a nonempty vertex set")
    if index_map[0] < 0 or index_map[-1] >= g.n:
        raise InputError(f"vertex set not contained in 0..{g.n - 1}")
    local = {v: i for i, v in enumerate(index_map)}
    rows = [[local[u] for u in g.neighbors(v) if u in local] for v in index_map]
    return Graph(len(index_map), rows), index_map


def connected_components(g: Graph, within: Optional[Iterable[int]] = None) -> List[frozenset]:
    """Components of G (or of G[within]), ordered by their smallest vertex."""
    pool = set(range(g.n)) if within is None else set(within)
    components = []
    for start in sorted(pool):
        if start not in pool:
            continue
        pool.discard(start)
        comp = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if w in pool:
                    pool.discard(w)
                    comp.append(w)
                    queue.append(w)
        components.append(frozenset(comp))
    components.sort(key=min)
    return components


def co_components(g: Graph, within: Optional[Iterable[int]] = None) -> List[frozenset]:
    """Connected components of the complement of G[within], without building it.

    Each BFS step scans the still-unvisited vertices and keeps the ones adjacent
    to the current vertex; those scans are paid for by edges, so the whole pass
    stays O(n + m).
    """
    unvisited = set(range(g.n)) if within is None else set(within)
    components = []
    while unvisited:
        start = min(unvisited)
        unvisited.discard(start)
        comp = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            adj = g.neighbor_set(u)
            reached = [w for w in unvisited if w not in adj]
            for w in reached:
                unvisited.discard(w)
            comp.extend(reached)
            queue.extend(reached)
        components.append(frozenset(comp))
    components.sort(key=min)
    return components


def is_proper_coloring(g: Graph, sigma: Coloring) -> bool:
    if len(sigma) != g.n:
        raise InputError(f"coloring has {len(sigma)} entries for a graph with {g.n} vertices")
    return all(sigma[u] != sigma[v] for u, v in g.edges())


def monochromatic_edge(g: Graph, sigma: Coloring) -> Optional[Edge]:
    for u, v in g.edges():
        if sigma[u] == sigma[v]:
            return (u, v)
    return None


def canonicalize_coloring(sigma: Coloring) -> Coloring:
    """Rename colors to 1..k by first appearance in vertex-id order."""
    rename: Dict[int, int] = {}
    out = []
    for c in sigma:
        if c not in rename:
            rename[c] = len(rename) + 1
        out.append(rename[c])
    return Coloring(out)


def restrict_coloring(sigma: Coloring, index_map: Sequence[int]) -> Coloring:
    """Coloring of an induced subgraph, given the index map returned by induced_subgraph."""
    return Coloring(sigma[v] for v in index_map)


@dataclass(frozen=True)
class Verdict:
    """Answer of a predicate plus the evidence behind a negative answer."""

    ok: bool
    witness: Any = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok
