"""
Brute-force ground truth. Every oracle refuses beyond its configured cap
(``settings.*_MAX_N``) by raising OracleCapExceeded.
"""
import logging
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Set, Tuple

from ..core.config import settings
from ..core.errors import DomainError, OracleCapExceeded
from .cotree import find_induced_p4, induces_p4
from .graph_core import Coloring, Graph, is_proper_coloring

logger = logging.getLogger(__name__)


def _check_cap(oracle: str, size: int, cap: int, what: Optional[str] = None) -> None:
    if size > cap:
        logger.warning(f"⚠️ {oracle} refused: size {size} > cap {cap}")
        raise OracleCapExceeded(oracle, size, cap, what)


def _k_coloring(g: Graph, k: int) -> Optional[List[int]]:
    """Backtracking k-coloring, vertices picked by saturation then degree (DSATUR)."""
    colors = [0] * g.n
    seen: List[Dict[int, int]] = [dict() for _ in range(g.n)]

    def pick() -> int:
        best, key = -1, None
        for v in range(g.n):
            if colors[v]:
                continue
            cand = (len(seen[v]), g.degree(v), -v)
            if key is None or cand > key:
                best, key = v, cand
        return best

    def assign(v: int, c: int, delta: int) -> None:
        for u in g.neighbors(v):
            bucket = seen[u]
            bucket[c] = bucket.get(c, 0) + delta
            if bucket[c] == 0:
                del bucket[c]

    def solve(done: int, used: int) -> bool:
        if done == g.n:
            return True
        v = pick()
        # a fresh color is interchangeable with any other unused one
        for c in range(1, min(used + 1, k) + 1):
            if c in seen[v]:
                continue
            colors[v] = c
            assign(v, c, 1)
            if solve(done + 1, max(used, c)):
                return True
            assign(v, c, -1)
            colors[v] = 0
        return False

    return colors if solve(0, 0) else None


def exact_coloring(g: Graph, max_n: Optional[int] = None) -> Coloring:
    """An optimal proper coloring with colors 1..chi(G)."""
    cap = settings.CHI_BRUTEFORCE_MAX_N if max_n is None else max_n
    _check_cap("exact_coloring", g.n, cap)
    if g.n == 0:
        return Coloring(())
    lower = 2 if g.m else 1
    for k in range(lower, g.n + 1):
        found = _k_coloring(g, k)
        if found is not None:
            return Coloring(found)
    raise AssertionError("n colors always suffice")


def chi_bruteforce(g: Graph) -> int:
    return exact_coloring(g).num_colors


def _greedy_color(g: Graph, state: Tuple[int, ...], v: int) -> int:
    taken = {state[u] for u in g.neighbors(v)}
    c = 1
    while c in taken:
        c += 1
    return c


def grundy_bruteforce(g: Graph) -> int:
    """Largest palette any vertex order gives to first-fit coloring."""
    _check_cap("grundy_bruteforce", g.n, settings.GRUNDY_MAX_N)
    if g.n == 0:
        return 0
    best = 0
    # orders reaching the same partial coloring have the same futures
    visited: Set[Tuple[int, ...]] = set()
    stack = [tuple([0] * g.n)]
    while stack:
        state = stack.pop()
        if state in visited:
            continue
        visited.add(state)
        if all(state):
            best = max(best, max(state))
            continue
        for v in range(g.n):
            if state[v]:
                continue
            nxt = list(state)
            nxt[v] = _greedy_color(g, state, v)
            stack.append(tuple(nxt))
    return best


def brute_force_is_greedy(g: Graph, sigma: Coloring, literal: bool = False) -> bool:
    """Whether some vertex order makes first-fit produce sigma (up to renaming colors unless literal)."""
    _check_cap("brute_force_is_greedy", g.n, settings.GRUNDY_MAX_N)
    if not is_proper_coloring(g, sigma):
        raise DomainError("greedy check needs a proper coloring")
    if g.n == 0:
        return True
    visited: Set[Tuple[int, ...]] = set()
    stack = [tuple([0] * g.n)]
    while stack:
        state = stack.pop()
        if state in visited:
            continue
        visited.add(state)
        if all(state):
            return True
        for v in range(g.n):
            if state[v]:
                continue
            c = _greedy_color(g, state, v)
            if literal:
                if c != sigma[v]:
                    continue
            elif any(state[u] and (state[u] == c) != (sigma[u] == sigma[v]) for u in range(g.n)):
                continue
            nxt = list(state)
            nxt[v] = c
            stack.append(tuple(nxt))
    return False


def brute_force_strong_modules(g: Graph) -> Set[frozenset]:
    _check_cap("brute_force_strong_modules", g.n, settings.STRONG_MODULES_MAX_N)
    masks = [0] * g.n
    for v in range(g.n):
        for u in g.neighbors(v):
            masks[v] |= 1 << u
    modules: List[int] = []
    for x in range(1, 1 << g.n):
        if all(
            not (masks[y] & x) or (masks[y] & x) == x
            for y in range(g.n)
            if not (x >> y) & 1
        ):
            modules.append(x)

    def overlaps(a: int, b: int) -> bool:
        both = a & b
        return both != 0 and both != a and both != b

    strong = set()
    for x in modules:
        if not any(overlaps(x, y) for y in modules):
            strong.add(frozenset(v for v in range(g.n) if (x >> v) & 1))
    return strong


def enumerate_colorings(g: Graph, k: int, surjective: bool = False) -> Iterator[Coloring]:
    """Every proper coloring with colors from 1..k, in lexicographic order."""
    _check_cap("enumerate_colorings", k ** g.n, settings.COLORINGS_MAX_STATES, "k^n")
    if g.n == 0:
        # the empty coloring is proper and uses none of the k colors
        if not surjective or k == 0:
            yield Coloring(())
        return
    if k < 1:
        return
    colors = [0] * g.n

    def extend(v: int) -> Iterator[Coloring]:
        if v == g.n:
            if not surjective or len(set(colors)) == k:
                yield Coloring(colors)
            return
        taken = {colors[u] for u in g.neighbors(v) if u < v}
        for c in range(1, k + 1):
            if c in taken:
                continue
            colors[v] = c
            yield from extend(v + 1)
        colors[v] = 0

    yield from extend(0)


def has_induced_p4(g: Graph) -> bool:
    _check_cap("has_induced_p4", g.n, settings.CHI_BRUTEFORCE_MAX_N)
    return find_induced_p4(g) is not None


def brute_force_is_p4_sparse(g: Graph) -> bool:
    """Every 5 vertices induce at most one P4."""
    _check_cap("brute_force_is_p4_sparse", g.n, settings.CHI_BRUTEFORCE_MAX_N)
    for five in combinations(range(g.n), 5):
        count = sum(1 for quad in combinations(five, 4) if induces_p4(g, quad))
        if count > 1:
            return False
    return True
