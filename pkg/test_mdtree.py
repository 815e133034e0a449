import networkx as nx
import pytest

from app.core.errors import InputError
from app.core.schemas import P4SparseConfig
from app.services.generators import generate
from app.services.graph_core import complete_graph, empty_graph, graph_from_edges, join, path_graph
from app.services.mdtree import (
    ModuleView,
    NodeKind,
    is_module,
    maximal_modular_partition,
    modular_decomposition,
    module_closure,
    node_quotient,
    quotient_graph,
    strong_modules,
)
from app.services.oracles import brute_force_strong_modules
from app.services.p4sparse import spider_splitter
from conftest import atlas, random_graph


def test_is_module(p4, fig2):
    assert not is_module(p4, [1, 2])
    assert is_module(p4, range(4))
    assert is_module(p4, [3])
    assert is_module(fig2, [2, 3])
    with pytest.raises(InputError):
        is_module(p4, [])


def test_module_closure_is_smallest_module(p4, fig2):
    assert module_closure(p4, [1, 2]) == frozenset(range(4))
    assert module_closure(fig2, [0, 1]) == frozenset({0, 1})
    assert module_closure(fig2, [0, 2]) == frozenset({0, 1, 2})


def test_maximal_modular_partition(fig2, p4):
    assert maximal_modular_partition(fig2) == ([frozenset({0, 1}), frozenset({2}), frozenset({3})], NodeKind.PARALLEL)
    parts, kind = maximal_modular_partition(complete_graph(3))
    assert kind is NodeKind.SERIES and parts == [frozenset({v}) for v in range(3)]
    parts, kind = maximal_modular_partition(p4)
    assert kind is NodeKind.PRIME and parts == [frozenset({v}) for v in range(4)]
    with pytest.raises(InputError):
        maximal_modular_partition(graph_from_edges(1, []))


def test_decomposition_single_vertex():
    tree = modular_decomposition(graph_from_edges(1, []))
    assert tree.root.is_leaf and tree.root.vertex == 0


def test_decomposition_of_cliques(k4_k2_k2):
    root = modular_decomposition(k4_k2_k2).root
    assert root.kind is NodeKind.PARALLEL
    assert [len(c.vertices) for c in root.children] == [4, 2, 2]
    assert all(c.kind is NodeKind.SERIES for c in root.children)
    assert all(leaf.is_leaf for c in root.children for leaf in c.children)


def test_strong_modules_small(p4, k3_p3):
    assert strong_modules(p4) == {frozenset({v}) for v in range(4)} | {frozenset(range(4))}
    mods = strong_modules(k3_p3)
    assert {frozenset({0, 1, 2}), frozenset({3, 4, 5}), frozenset(range(6))} <= mods
    # the two ends of the path form a parallel module under the series node
    assert frozenset({3, 5}) in mods
    assert mods == brute_force_strong_modules(k3_p3)


def test_strong_modules_agree_with_brute_force_on_small_atlas():
    for g in atlas(1, 6):
        assert strong_modules(g) == brute_force_strong_modules(g)


@pytest.mark.slow
def test_strong_modules_agree_with_brute_force_on_seven_vertices():
    for g in atlas(7, 7):
        assert strong_modules(g) == brute_force_strong_modules(g)


@pytest.mark.slow
def test_strong_modules_agree_on_random_graphs(rng):
    for _ in range(200):
        g = random_graph(rng, rng.randint(2, 9))
        assert strong_modules(g) == brute_force_strong_modules(g)


def test_tree_shape_invariants(rng):
    for _ in range(60):
        g = random_graph(rng, rng.randint(1, 10))
        tree = modular_decomposition(g)
        h = g.to_networkx()
        modules = sorted(tree.modules(), key=len)
        for i, a in enumerate(modules):
            for b in modules[i + 1:]:
                assert not (a & b) or a <= b
        for node in tree.nodes():
            assert is_module(g, node.vertices)
            if node.is_leaf:
                continue
            assert frozenset().union(*node.child_modules()) == node.vertices
            sub = h.subgraph(node.vertices)
            if node.kind is NodeKind.PARALLEL:
                assert not nx.is_connected(sub)
                assert all(c.kind is not NodeKind.PARALLEL for c in node.children)
            elif node.kind is NodeKind.SERIES:
                assert nx.is_connected(sub) and not nx.is_connected(nx.complement(sub))
                assert all(c.kind is not NodeKind.SERIES for c in node.children)
            else:
                assert len(node.children) >= 4


def test_postorder_visits_children_first(k3_p3):
    tree = modular_decomposition(k3_p3)
    seen = set()
    for node in tree.root.postorder():
        assert all(c.vertices in seen for c in node.children)
        seen.add(node.vertices)
    assert len(seen) == len(list(tree.nodes()))


def test_quotient_graph(k4_k2_k2):
    quotient = quotient_graph(k4_k2_k2, [range(4), [4, 5], [6, 7]])
    assert quotient == empty_graph(3)
    c4 = join(empty_graph(2), empty_graph(2))
    assert quotient_graph(c4, [[0, 1], [2, 3]]) == complete_graph(2)
    with pytest.raises(InputError):
        quotient_graph(c4, [[0, 2], [1, 3]])
    with pytest.raises(InputError):
        quotient_graph(c4, [[0, 1], [2]])
    with pytest.raises(InputError):
        quotient_graph(c4, [[0, 1], [1, 2, 3]])


def test_node_quotient_of_prime(p4):
    tree = modular_decomposition(p4)
    assert node_quotient(p4, tree.root) == p4


def test_spider_splitter_gives_the_same_tree():
    for seed in range(25):
        g = generate(P4SparseConfig(n=14, seed=seed, spider_rate=0.7, max_head=4))
        assert modular_decomposition(g, prime_splitter=spider_splitter) == modular_decomposition(g)


def test_module_view_detach():
    c4 = join(empty_graph(2), empty_graph(2))
    view = ModuleView(c4)
    view.detach([frozenset({0, 1}), frozenset({2, 3})], complete=True)
    assert all(view.degree(v) == 0 for v in range(4))
    view = ModuleView(path_graph(4))
    view.detach([frozenset({0}), frozenset({1, 2}), frozenset({3})])
    assert view.neighbors(1) == {2} and view.neighbors(2) == {1}
    assert view.degree(0) == view.degree(3) == 0
    triangles = graph_from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])
    view = ModuleView(triangles)
    view.detach([frozenset({0, 1, 2}), frozenset({3, 4, 5})])
    assert view.neighbors(2) == {0, 1}
    assert view.neighbors(3) == {4, 5}
    assert triangles.has_edge(2, 3)


def test_decomposition_peels_isolated_and_universal_vertices():
    # K1 + (K1 join (K1 + P4))
    g = graph_from_edges(7, [(1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (3, 4), (4, 5), (5, 6)])
    tree = modular_decomposition(g)
    assert tree.root.kind is NodeKind.PARALLEL
    assert tree.root.child_modules() == [frozenset({0}), frozenset(range(1, 7))]
    series = tree.find(range(1, 7))
    assert series.kind is NodeKind.SERIES
    assert series.child_modules() == [frozenset({1}), frozenset(range(2, 7))]
    assert tree.find(range(3, 7)).kind is NodeKind.PRIME
    assert strong_modules(g) == brute_force_strong_modules(g)
