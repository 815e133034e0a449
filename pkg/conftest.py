import os
import random
import sys
from pathlib import Path

import networkx as nx
import pytest

# same path insertion as the worker scripts: code imports the package as `app`
sys.path.insert(0, str(Path(__file__).parent / "hcgraph"))

from app.core.config import settings  # noqa: E402
from app.services.graph_core import Graph, complete_graph, disjoint_union, graph_from_edges, path_graph  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: exhaustive sweeps over larger graph families")
    config.addinivalue_line("markers", "bench: performance smoke tests (set HCGRAPH_RUN_BENCH=1)")


def pytest_collection_modifyitems(config, items):
    if os.getenv("HCGRAPH_RUN_BENCH") == "1":
        return
    skip = pytest.mark.skip(reason="set HCGRAPH_RUN_BENCH=1 to run benchmarks")
    for item in items:
        if "bench" in item.keywords:
            item.add_marker(skip)


def atlas(min_n: int = 1, max_n: int = 7):
    """Every graph on min_n..max_n vertices up to isomorphism (networkx atlas stops at 7)."""
    return [Graph.from_networkx(h) for h in nx.graph_atlas_g() if min_n <= h.number_of_nodes() <= max_n]


def random_graph(rng: random.Random, n: int, p: float = None) -> Graph:
    p = rng.random() if p is None else p
    return graph_from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


@pytest.fixture
def rng():
    return random.Random(20240501)


@pytest.fixture
def fig2():
    """K2 + K1 + K1"""
    return graph_from_edges(4, [(0, 1)])


@pytest.fixture
def k3_p3():
    """Triangle 0,1,2 and path 3-4-5"""
    return disjoint_union(complete_graph(3), path_graph(3))


@pytest.fixture
def k4_k2_k2():
    """K4 on 0..3, K2 on 4,5 and on 6,7"""
    return disjoint_union(complete_graph(4), complete_graph(2), complete_graph(2))


@pytest.fixture
def p4():
    return path_graph(4)


@pytest.fixture
def fresh_settings(monkeypatch):
    """Settings reloaded after the test so env/file overrides do not leak."""
    yield settings
    monkeypatch.undo()
    settings.reload()
