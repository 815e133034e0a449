"""
Seeded random instances. The same config always yields the same graph.
"""
import logging
import random
from typing import List, Tuple, Union

import networkx as nx
from pydantic import ValidationError

from ..core.errors import InputError
from ..core.schemas import (
    CographConfig,
    ErdosRenyiConfig,
    GeneratorConfig,
    P4SparseConfig,
    SpiderConfig,
    generator_config_adapter,
)
from .graph_core import Graph, complete_graph, graph_from_edges, path_graph
from .p4sparse import SpiderDecomposition, SpiderFlavor, construct_spider

logger = logging.getLogger(__name__)

Edges = List[Tuple[int, int]]


def parse_config(data: Union[dict, GeneratorConfig]) -> GeneratorConfig:
    if isinstance(data, (CographConfig, P4SparseConfig, ErdosRenyiConfig, SpiderConfig)):
        return data
    try:
        return generator_config_adapter.validate_python(data)
    except ValidationError as e:
        raise InputError(f"invalid generator config: {e.errors()[0]['msg']}") from e


def relabel(g: Graph, perm: List[int]) -> Graph:
    """Vertex v becomes perm[v]."""
    return graph_from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


def _shuffled(g: Graph, rng: random.Random) -> Graph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return relabel(g, perm)


def _random_cograph_edges(size: int, p_join: float, rng: random.Random, offset: int = 0) -> Edges:
    """Merge random pairs of pieces until one is left; each merge is a join with probability p_join."""
    pieces = [[offset + v] for v in range(size)]
    edges: Edges = []
    while len(pieces) > 1:
        i, j = sorted(rng.sample(range(len(pieces)), 2))
        b = pieces.pop(j)
        a = pieces.pop(i)
        if rng.random() < p_join:
            edges.extend((u, v) for u in a for v in b)
        pieces.append(a + b)
    return edges


def random_cograph(config: CographConfig) -> Graph:
    rng = random.Random(config.seed)
    return graph_from_edges(config.n, _random_cograph_edges(config.n, config.p_join, rng))


class _P4SparseBuilder:
    """Unions, joins and spiders whose head is again such a graph; the class is closed under all three."""

    def __init__(self, config: P4SparseConfig, rng: random.Random):
        self.config = config
        self.rng = rng
        self.next_id = 0
        self.edges: Edges = []

    def build(self, size: int) -> List[int]:
        cfg, rng = self.config, self.rng
        if size == 1:
            v = self.next_id
            self.next_id += 1
            return [v]
        if size >= 4 and rng.random() < cfg.spider_rate:
            k = rng.randint(2, size // 2)
            head_n = size - 2 * k
            if head_n <= cfg.max_head:
                return self._spider(k, head_n)
        left = rng.randint(1, size - 1)
        a = self.build(left)
        b = self.build(size - left)
        if rng.random() < cfg.p_join:
            self.edges.extend((u, v) for u in a for v in b)
        return a + b

    def _spider(self, k: int, head_n: int) -> List[int]:
        flavor = SpiderFlavor.THICK if k >= 3 and self.rng.random() < 0.5 else SpiderFlavor.THIN
        body = list(range(self.next_id, self.next_id + k))
        legs = list(range(self.next_id + k, self.next_id + 2 * k))
        self.next_id += 2 * k
        head = self.build(head_n) if head_n else []
        sd = construct_spider(k, flavor)
        layout = body + legs
        self.edges.extend((layout[u], layout[v]) for u, v in sd.graph.edges())
        self.edges.extend((b, r) for b in body for r in head)
        return body + legs + head


def random_p4sparse(config: P4SparseConfig) -> Graph:
    rng = random.Random(config.seed)
    builder = _P4SparseBuilder(config, rng)
    piece = config.component_size or config.n
    remaining = config.n
    while remaining:
        builder.build(min(piece, remaining))
        remaining -= min(piece, remaining)
    g = graph_from_edges(config.n, builder.edges)
    return _shuffled(g, rng)


def nested_spiders(n: int, seed: int = 0) -> Graph:
    """Connected P4-sparse graph: spiders with 2 to 4 legs nested through their heads, a small clique inside.

    The decomposition is a chain of about n/6 prime nodes and m grows like n^2.
    """
    if n < 1:
        raise InputError(f"nested spiders need n >= 1, got {n}")
    rng = random.Random(seed)
    edges: Edges = []
    start = 0
    while n - start >= 4:
        k = rng.randint(2, min(4, (n - start) // 2))
        flavor = SpiderFlavor.THICK if k >= 3 and rng.random() < 0.5 else SpiderFlavor.THIN
        layout = list(range(start, start + 2 * k))
        edges.extend((layout[u], layout[v]) for u, v in construct_spider(k, flavor).graph.edges())
        start += 2 * k
        edges.extend((b, r) for b in layout[:k] for r in range(start, n))
    edges.extend((u, v) for u in range(start, n) for v in range(u + 1, n))
    g = graph_from_edges(n, edges)
    logger.debug(f"nested spiders n={n} m={g.m} seed={seed}")
    return _shuffled(g, rng)


def random_erdos_renyi(config: ErdosRenyiConfig) -> Graph:
    return Graph.from_networkx(nx.gnp_random_graph(config.n, config.p, seed=config.seed))


def random_spider(config: SpiderConfig) -> SpiderDecomposition:
    """Exact spider with the requested head; vertices keep the construct_spider layout."""
    head = None
    if config.head_n:
        if config.head_kind == "path":
            head = path_graph(config.head_n)
        elif config.head_kind == "clique":
            head = complete_graph(config.head_n)
        else:
            head = Graph.from_networkx(nx.gnp_random_graph(config.head_n, 0.5, seed=config.seed))
    try:
        return construct_spider(config.k, SpiderFlavor(config.spider_flavor), head)
    except InputError:
        logger.warning(f"⚠️ spider config rejected: k={config.k} flavor={config.spider_flavor}")
        raise


def generate(config: Union[dict, GeneratorConfig]) -> Graph:
    config = parse_config(config)
    if isinstance(config, CographConfig):
        g = random_cograph(config)
    elif isinstance(config, P4SparseConfig):
        g = random_p4sparse(config)
    elif isinstance(config, ErdosRenyiConfig):
        g = random_erdos_renyi(config)
    else:
        g = _shuffled(random_spider(config).graph, random.Random(config.seed))
    logger.debug(f"generated {config.flavor} graph n={g.n} m={g.m} seed={config.seed}")
    return g
