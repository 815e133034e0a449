import os

import pytest

from app.core.errors import DomainError, InputError, UnsupportedPrimeError
from app.core.schemas import CographConfig, P4SparseConfig, SpiderConfig
from app.services.bench import run_bench
from app.services.coloring_engine import is_modularly_minimal, modularly_minimal_coloring
from app.services.generators import generate, nested_spiders
from app.services.graph_core import Coloring, complete_graph, cycle_graph, empty_graph, induced_subgraph, is_proper_coloring, path_graph
from app.services.mdtree import NodeKind, maximal_modular_partition, modular_decomposition, node_quotient, strong_modules
from app.services.oracles import brute_force_is_p4_sparse, brute_force_strong_modules, chi_bruteforce, exact_coloring
from app.services.p4sparse import (
    SpiderFlavor,
    color_spider,
    construct_spider,
    is_p4_sparse,
    p4sparse_modmin_coloring,
    recognize_spider,
    spider_splitter,
)
from conftest import atlas

HEADS = {
    "none": None,
    "k1": complete_graph(1),
    "k2": complete_graph(2),
    "p3": path_graph(3),
    "p4": path_graph(4),
}


def _spider_cases(max_n=12):
    for flavor in SpiderFlavor:
        for k in range(2, 6):
            if flavor is SpiderFlavor.THICK and k < 3:
                continue
            for name, head in HEADS.items():
                if 2 * k + (head.n if head else 0) <= max_n:
                    yield pytest.param(k, flavor, head, id=f"{flavor.value}-k{k}-{name}")


def test_recognize_p4(p4):
    sd = recognize_spider(p4)
    assert sd.flavor is SpiderFlavor.THIN
    assert sd.body == (1, 2)
    assert sd.legs == (0, 3)
    assert sd.head == ()
    assert sd.matching == ((1, 0), (2, 3))


@pytest.mark.parametrize("graph", [cycle_graph(5), complete_graph(4), empty_graph(4), path_graph(5), path_graph(3)])
def test_recognize_rejects(graph):
    assert recognize_spider(graph) is None


@pytest.mark.parametrize("k, flavor, head", list(_spider_cases()))
def test_recognize_constructed_spider(k, flavor, head):
    built = construct_spider(k, flavor, head)
    found = recognize_spider(built.graph)
    assert found is not None
    assert found.flavor is flavor
    assert (found.body, found.legs, found.head) == (built.body, built.legs, built.head)
    assert found.matching == built.matching


def test_construct_spider_rejects_bad_parameters():
    with pytest.raises(InputError):
        construct_spider(1)
    with pytest.raises(InputError):
        construct_spider(2, SpiderFlavor.THICK)


def test_recognize_shuffled_spiders():
    for seed in range(20):
        config = SpiderConfig(k=2 + seed % 4, spider_flavor="thick" if seed % 2 else "thin", head_n=seed % 3, seed=seed)
        sd = recognize_spider(generate(config))
        assert sd is not None
        assert sd.k == config.k
        assert len(sd.head) == config.head_n


def test_color_spider_p4(p4):
    sigma = color_spider(recognize_spider(p4))
    assert [sigma[v] for v in (1, 2)] == [1, 2]
    assert [sigma[v] for v in (0, 3)] == [2, 1]
    assert color_spider(construct_spider(2)) == Coloring((1, 2, 2, 1))


def test_color_spider_small_heads():
    sd = construct_spider(2, SpiderFlavor.THIN, complete_graph(1))
    sigma = color_spider(sd, Coloring((1,)))
    assert sigma.num_colors == 3
    assert is_proper_coloring(sd.graph, sigma)
    thick = construct_spider(3, SpiderFlavor.THICK)
    sigma = color_spider(thick)
    assert sigma.num_colors == 3 == chi_bruteforce(thick.graph)


@pytest.mark.parametrize("k, flavor, head", list(_spider_cases()))
def test_color_spider_is_minimal(k, flavor, head):
    sd = construct_spider(k, flavor, head)
    head_coloring = exact_coloring(head) if head else None
    sigma = color_spider(sd, head_coloring)
    assert is_proper_coloring(sd.graph, sigma)
    head_chi = head_coloring.num_colors if head_coloring else 0
    assert sigma.num_colors == chi_bruteforce(sd.graph) == head_chi + k
    assert sigma.palette(sd.legs) == sigma.palette(sd.body)
    assert [sigma[v] for v in sd.head] == list(head_coloring or ())


def test_color_spider_rejects_bad_head_coloring():
    sd = construct_spider(3, SpiderFlavor.THIN, path_graph(3))
    with pytest.raises(DomainError):
        color_spider(sd, Coloring((1, 2, 3)))
    with pytest.raises(DomainError):
        color_spider(sd, Coloring((1, 1, 2)))
    with pytest.raises(DomainError):
        color_spider(sd)


def _random_spider_configs(count, max_n=9):
    for seed in range(count):
        k = 2 + seed % 3
        yield SpiderConfig(
            k=k,
            spider_flavor="thick" if k >= 3 and seed % 2 else "thin",
            head_n=seed % (max_n + 1 - 2 * k),
            head_kind=("path", "clique", "random")[(seed // 3) % 3],
            seed=seed,
        )


def test_spider_strong_modules_include_the_head():
    sd = construct_spider(3, SpiderFlavor.THIN, path_graph(3))
    parts, kind = maximal_modular_partition(sd.graph)
    assert kind is NodeKind.PRIME
    assert frozenset(sd.head) in parts
    assert len(parts) == 2 * sd.k + 1
    assert strong_modules(sd.graph) == brute_force_strong_modules(sd.graph)


def test_random_spider_strong_modules_agree_with_brute_force():
    for config in _random_spider_configs(90):
        g = generate(config)
        expected = brute_force_strong_modules(g)
        assert strong_modules(g) == expected
        assert modular_decomposition(g, prime_splitter=spider_splitter).modules() == expected


def test_node_quotient_of_spider_has_the_spider_shape():
    for config in _random_spider_configs(60):
        g = generate(config)
        root = modular_decomposition(g, prime_splitter=spider_splitter).root
        assert root.kind is NodeKind.PRIME
        quotient = node_quotient(g, root)
        shape = recognize_spider(quotient)
        assert shape is not None
        assert shape.k == config.k
        assert shape.flavor.value == config.spider_flavor
        assert len(shape.head) == (1 if config.head_n else 0)
        assert quotient.n == 2 * config.k + len(shape.head)
        for i in shape.body + shape.legs:
            assert len(root.children[i].vertices) == 1
        for i in shape.head:
            assert len(root.children[i].vertices) == config.head_n


def test_is_p4_sparse_small(p4, k4_k2_k2):
    assert is_p4_sparse(p4)
    assert is_p4_sparse(k4_k2_k2)
    verdict = is_p4_sparse(cycle_graph(5))
    assert not verdict
    assert verdict.witness == [0, 1, 2, 3, 4]


def test_is_p4_sparse_agrees_with_five_vertex_scan():
    for g in atlas(1, 6):
        assert is_p4_sparse(g).ok == brute_force_is_p4_sparse(g)


@pytest.mark.slow
def test_is_p4_sparse_agrees_on_seven_vertices():
    for g in atlas(7, 7):
        assert is_p4_sparse(g).ok == brute_force_is_p4_sparse(g)


def test_generated_p4sparse_graphs_pass_both_checks():
    for seed in range(30):
        g = generate(P4SparseConfig(n=5 + seed % 5, seed=seed, spider_rate=0.8))
        assert brute_force_is_p4_sparse(g)
        assert is_p4_sparse(g)


def test_p4sparse_coloring_p4(p4):
    assert p4sparse_modmin_coloring(p4) == Coloring((1, 2, 1, 2))


def test_p4sparse_coloring_on_cographs_matches_modmin():
    for seed in range(20):
        g = generate(CographConfig(n=2 + seed % 9, seed=seed))
        assert p4sparse_modmin_coloring(g) == modularly_minimal_coloring(g)


def test_p4sparse_coloring_is_modularly_minimal():
    for seed in range(100):
        g = generate(P4SparseConfig(n=4 + seed % 6, seed=seed, spider_rate=0.7))
        sigma = p4sparse_modmin_coloring(g)
        assert is_modularly_minimal(g, sigma)
        assert sigma.num_colors == chi_bruteforce(g)


def test_p4sparse_coloring_rejects_other_graphs():
    with pytest.raises(UnsupportedPrimeError) as excinfo:
        p4sparse_modmin_coloring(cycle_graph(5))
    assert excinfo.value.module == frozenset(range(5))


def test_p4sparse_coloring_of_spider_with_head():
    sd = construct_spider(4, SpiderFlavor.THICK, path_graph(4))
    sigma = p4sparse_modmin_coloring(sd.graph)
    assert sigma.num_colors == 4 + 2
    assert is_modularly_minimal(sd.graph, sigma)


@pytest.mark.bench
def test_large_instance_runs_quickly():
    (row,) = run_bench([100_000], seed=1)
    assert row.millis < 10_000


@pytest.mark.bench
def test_growth_is_near_linear():
    workers = min(4, os.cpu_count() or 1)
    rows = run_bench([10_000, 20_000, 40_000, 80_000], seed=2, workers=workers)
    for prev, cur in zip(rows, rows[1:]):
        assert cur.millis / prev.millis <= 2.5


def _peeled_chi(g):
    """Chromatic number of nested spiders, peeling one spider at a time."""
    chi = 0
    while g.n >= 4:
        sd = recognize_spider(g)
        assert sd is not None
        chi += sd.k
        if not sd.head:
            return chi
        g, _ = induced_subgraph(g, sd.head)
    return chi + g.n


def test_nested_spiders_small():
    for seed in range(10):
        g = nested_spiders(4 + seed % 9, seed=seed)
        assert brute_force_is_p4_sparse(g)
        sigma = p4sparse_modmin_coloring(g)
        assert is_modularly_minimal(g, sigma)
        assert sigma.num_colors == chi_bruteforce(g) == _peeled_chi(g)


def test_nested_spiders_decompose_into_a_chain():
    g = nested_spiders(200, seed=4)
    tree = modular_decomposition(g, prime_splitter=spider_splitter)
    assert tree.root.kind is NodeKind.PRIME
    assert len(tree.prime_nodes()) >= 200 // 8
    small = nested_spiders(40, seed=5)
    assert modular_decomposition(small, prime_splitter=spider_splitter) == modular_decomposition(small)
    assert is_p4_sparse(g)
    sigma = p4sparse_modmin_coloring(g)
    assert is_proper_coloring(g, sigma)
    assert sigma.num_colors == _peeled_chi(g)


@pytest.mark.bench
def test_nested_spiders_time_tracks_edges():
    rows = run_bench([400, 800, 1600], seed=3, flavor="nested-spiders")
    for prev, cur in zip(rows, rows[1:]):
        per_edge = cur.millis / (cur.n + cur.m)
        assert per_edge <= 2.0 * prev.millis / (prev.n + prev.m)
