import json

import pytest

from app.core.config import settings
from app.core.errors import DomainError, InputError, OracleCapExceeded
from app.core.schemas import CographConfig, ErdosRenyiConfig, P4SparseConfig, SpiderConfig
from app.services.coloring_engine import chromatic_number
from app.services.cotree import is_cograph
from app.services.formats import format_edge_list
from app.services.generators import generate, parse_config, random_spider, relabel
from app.services.graph_core import Coloring, complete_graph, cycle_graph, graph_from_edges, is_proper_coloring, path_graph
from app.services.oracles import (
    brute_force_is_greedy,
    brute_force_is_p4_sparse,
    brute_force_strong_modules,
    chi_bruteforce,
    enumerate_colorings,
    exact_coloring,
    grundy_bruteforce,
)
from app.services.p4sparse import SpiderFlavor, is_p4_sparse, recognize_spider
from conftest import atlas


# -- oracles ------------------------------------------------------------------

def test_chi_bruteforce_examples(p4):
    assert chi_bruteforce(complete_graph(4)) == 4
    assert chi_bruteforce(p4) == 2
    assert chi_bruteforce(cycle_graph(5)) == 3
    assert chi_bruteforce(graph_from_edges(3, [])) == 1
    assert chi_bruteforce(graph_from_edges(0, [])) == 0


def test_exact_coloring_is_optimal_and_proper():
    for g in atlas(1, 6):
        sigma = exact_coloring(g)
        assert is_proper_coloring(g, sigma)
        assert sigma.palette() == frozenset(range(1, sigma.num_colors + 1))


def test_oracle_caps(monkeypatch):
    monkeypatch.setattr(settings, "CHI_BRUTEFORCE_MAX_N", 3)
    with pytest.raises(OracleCapExceeded) as excinfo:
        chi_bruteforce(complete_graph(4))
    assert (excinfo.value.size, excinfo.value.cap) == (4, 3)
    monkeypatch.setattr(settings, "GRUNDY_MAX_N", 3)
    with pytest.raises(OracleCapExceeded):
        grundy_bruteforce(complete_graph(4))
    monkeypatch.setattr(settings, "STRONG_MODULES_MAX_N", 3)
    with pytest.raises(OracleCapExceeded):
        brute_force_strong_modules(complete_graph(4))


def test_grundy_examples(p4):
    assert grundy_bruteforce(p4) == 3
    assert grundy_bruteforce(graph_from_edges(1, [])) == 1
    assert grundy_bruteforce(complete_graph(4)) == 4


def test_grundy_bounds():
    for g in atlas(1, 6):
        chi = chi_bruteforce(g)
        grundy = grundy_bruteforce(g)
        assert chi <= grundy <= max(g.degree(v) for v in range(g.n)) + 1
        if is_cograph(g):
            assert grundy == chi


def test_brute_force_is_greedy_fig2(fig2):
    assert brute_force_is_greedy(fig2, Coloring((1, 2, 1, 1)))
    assert brute_force_is_greedy(fig2, Coloring((1, 2, 1, 1)), literal=True)
    assert not brute_force_is_greedy(fig2, Coloring((1, 2, 1, 2)))
    with pytest.raises(DomainError):
        brute_force_is_greedy(fig2, Coloring((1, 1, 2, 3)))


def test_brute_force_strong_modules(p4):
    assert brute_force_strong_modules(p4) == {frozenset({v}) for v in range(4)} | {frozenset(range(4))}
    assert brute_force_strong_modules(graph_from_edges(1, [])) == {frozenset({0})}


def test_enumerate_colorings(fig2):
    assert len(list(enumerate_colorings(complete_graph(2), 2))) == 2
    assert list(enumerate_colorings(complete_graph(3), 2)) == []
    assert len(list(enumerate_colorings(fig2, 2))) == 8
    assert len(list(enumerate_colorings(fig2, 3, surjective=True))) == 54 - 24
    with pytest.raises(OracleCapExceeded):
        list(enumerate_colorings(graph_from_edges(7, []), 10))


def test_enumerate_colorings_of_the_empty_graph():
    empty = graph_from_edges(0, [])
    assert list(enumerate_colorings(empty, 0)) == [Coloring(())]
    assert list(enumerate_colorings(empty, 3)) == [Coloring(())]
    assert list(enumerate_colorings(empty, 0, surjective=True)) == [Coloring(())]
    assert list(enumerate_colorings(empty, 2, surjective=True)) == []


def test_enumerate_colorings_is_lexicographic():
    colorings = list(enumerate_colorings(path_graph(3), 2))
    assert colorings == [Coloring((1, 2, 1)), Coloring((2, 1, 2))]


def test_brute_force_is_p4_sparse(p4):
    assert brute_force_is_p4_sparse(p4)
    assert not brute_force_is_p4_sparse(cycle_graph(5))
    assert brute_force_is_p4_sparse(complete_graph(5))


# -- generators -----------------------------------------------------------------

def test_generators_respect_their_class():
    assert is_cograph(generate(CographConfig(n=6, seed=1)))
    sd = recognize_spider(generate(SpiderConfig(k=3, seed=4)))
    assert sd.flavor is SpiderFlavor.THIN and sd.k == 3
    assert is_p4_sparse(generate(P4SparseConfig(n=50, seed=7)))
    assert generate(ErdosRenyiConfig(n=10, p=0.0)).m == 0
    assert generate(ErdosRenyiConfig(n=5, p=1.0)) == complete_graph(5)


def test_generators_are_reproducible():
    for config in (
        {"flavor": "cograph", "n": 12, "seed": 3},
        {"flavor": "p4sparse", "n": 30, "seed": 3, "component_size": 10},
        {"flavor": "erdos-renyi", "n": 12, "p": 0.4, "seed": 3},
        {"flavor": "spider", "k": 4, "head_n": 3, "head_kind": "random", "seed": 3},
    ):
        assert format_edge_list(generate(config)) == format_edge_list(generate(json.loads(json.dumps(config))))


def test_generated_p4sparse_respects_component_size():
    g = generate(P4SparseConfig(n=40, seed=11, component_size=8, p_join=1.0))
    assert g.n == 40
    assert chromatic_number(g) <= 8


@pytest.mark.parametrize(
    "config",
    [
        {"flavor": "cograph", "n": 5, "p_join": 2.0},
        {"flavor": "cograph", "n": 0},
        {"flavor": "spider", "k": 1},
        {"flavor": "nope", "n": 3},
        {"flavor": "cograph", "n": 3, "extra": True},
    ],
)
def test_parse_config_rejects(config):
    with pytest.raises(InputError):
        parse_config(config)


def test_random_spider_thick_needs_three_legs():
    with pytest.raises(InputError):
        random_spider(SpiderConfig(k=2, spider_flavor="thick"))


def test_relabel_preserves_structure(p4):
    h = relabel(p4, [3, 1, 0, 2])
    assert set(h.edges()) == {(1, 3), (0, 1), (0, 2)}
