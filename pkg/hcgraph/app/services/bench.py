"""
Timing of the P4-sparse coloring pipeline on generated instances.

``p4sparse`` draws many small components; ``nested-spiders`` is one connected
instance whose decomposition is a long chain of spider nodes.
"""
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional, Sequence

from ..core.config import settings
from ..core.errors import InputError
from ..core.schemas import BenchRow, P4SparseConfig
from .generators import generate, nested_spiders
from .p4sparse import p4sparse_modmin_coloring

logger = logging.getLogger(__name__)

BENCH_FLAVORS = ("p4sparse", "nested-spiders")


def parse_sizes(raw: str) -> List[int]:
    """'1e3,1e4,2000' -> [1000, 10000, 2000]"""
    sizes = []
    for token in raw.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            value = float(token)
        except ValueError:
            raise InputError(f"invalid size {token!r}") from None
        if value < 1 or value != int(value):
            raise InputError(f"size must be a positive integer, got {token!r}")
        sizes.append(int(value))
    if not sizes:
        raise InputError("no sizes given")
    return sizes


def time_instance(flavor: str, n: int, seed: int, component_size: Optional[int] = None) -> BenchRow:
    if flavor not in BENCH_FLAVORS:
        raise InputError(f"unknown bench flavor {flavor!r}")
    if flavor == "nested-spiders":
        g = nested_spiders(n, seed)
    else:
        g = generate(P4SparseConfig(n=n, seed=seed, component_size=component_size or settings.BENCH_COMPONENT_SIZE))
    started = time.perf_counter()
    p4sparse_modmin_coloring(g)
    millis = (time.perf_counter() - started) * 1000
    return BenchRow(flavor=flavor, n=g.n, m=g.m, millis=round(millis, 3))


def run_bench(
    sizes: Sequence[int],
    seed: int = 0,
    flavor: str = "p4sparse",
    workers: int = 1,
    component_size: Optional[int] = None,
) -> List[BenchRow]:
    """One row per size, in the order given; workers > 1 spreads sizes over processes."""
    if workers <= 1:
        rows = [time_instance(flavor, n, seed, component_size) for n in sizes]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(time_instance, flavor, n, seed, component_size) for n in sizes]
            rows = [f.result() for f in futures]
    for row in rows:
        logger.info(f"📊 {row.flavor} n={row.n} m={row.m}: {row.millis:.1f} ms")
    return rows


def rows_to_csv(rows: Sequence[BenchRow]) -> str:
    lines = ["flavor,n,m,millis"]
    lines.extend(f"{r.flavor},{r.n},{r.m},{r.millis}" for r in rows)
    return "\n".join(lines) + "\n"
