"""
Ligne de commande hcgraph.

    python -m app.cli chi k3_p3.graph
    python -m app.cli check fig2.graph colB.col --property greedy

Exit codes: 0 success / true, 1 property false, 2 usage or input error.
Logs go to stderr, results to stdout.
"""
import argparse
import json
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from .core.config import settings
from .core.errors import HcGraphError, InputError
from .core.schemas import ColoringOut, CountOut, VerdictOut
from .services.bench import BENCH_FLAVORS, parse_sizes, rows_to_csv, run_bench
from .services.formats import (
    cotree_from_json,
    format_coloring,
    format_edge_list,
    mdtree_to_dot,
    mdtree_to_json,
    parse_coloring,
    parse_edge_list,
    read_source,
    spider_to_dict,
)
from .services.generators import generate
from .services.mdtree import modular_decomposition
from .services.p4sparse import spider_splitter
from .services.pipeline import CLASSES, COLOR_MODES, PROPERTIES, check_property, color_graph, compute_chi, count, recognize

logger = logging.getLogger("hcgraph.cli")

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_ERROR = 2


def _load_graph(path: str):
    return parse_edge_list(read_source(path))


def _load_tree(path: Optional[str]):
    return cotree_from_json(read_source(path)) if path else None


def _parse_order(raw: Optional[str]) -> Optional[List[int]]:
    if raw is None:
        return None
    try:
        return [int(x) for x in raw.replace(",", " ").split()]
    except ValueError:
        raise InputError(f"invalid --order {raw!r}") from None


def _print_verdict(verdict, fmt: str, extra: Optional[dict] = None) -> int:
    if fmt == "json":
        payload = VerdictOut(ok=verdict.ok, witness=verdict.witness, reason=verdict.reason).model_dump()
        payload.update(extra or {})
        print(json.dumps(payload))
    else:
        print("true" if verdict.ok else "false")
        if not verdict.ok:
            print(f"witness: {json.dumps(verdict.witness)}" + (f" ({verdict.reason})" if verdict.reason else ""))
        for key, value in (extra or {}).items():
            print(f"{key}: {json.dumps(value)}")
    return EXIT_OK if verdict.ok else EXIT_FALSE


def cmd_decompose(args) -> int:
    g = _load_graph(args.graph)
    tree = modular_decomposition(g, prime_splitter=spider_splitter if args.spiders else None)
    sys.stdout.write(mdtree_to_dot(tree) if args.format == "dot" else mdtree_to_json(tree) + "\n")
    return EXIT_OK


def cmd_chi(args) -> int:
    g = _load_graph(args.graph)
    print(compute_chi(g, args.method))
    return EXIT_OK


def cmd_color(args) -> int:
    g = _load_graph(args.graph)
    sigma = color_graph(g, args.mode, order=_parse_order(args.order), tree=_load_tree(args.tree), seed=args.seed)
    if args.format == "json":
        print(ColoringOut(colors=list(sigma), num_colors=sigma.num_colors).model_dump_json())
    else:
        sys.stdout.write(format_coloring(sigma))
    return EXIT_OK


def cmd_check(args) -> int:
    if args.graph == "-" and args.coloring == "-":
        raise InputError("only one input may come from stdin")
    g = _load_graph(args.graph)
    sigma = parse_coloring(read_source(args.coloring), g.n)
    verdict = check_property(g, sigma, args.property, _load_tree(args.tree))
    return _print_verdict(verdict, args.format)


def cmd_count(args) -> int:
    g = _load_graph(args.graph)
    z, chi = count(g, _load_tree(args.tree))
    if args.format == "json":
        print(CountOut(z=str(z), chi=chi).model_dump_json())
    else:
        print(z)
    return EXIT_OK


def cmd_recognize(args) -> int:
    g = _load_graph(args.graph)
    verdict, sd = recognize(g, args.graph_class)
    extra = {"spider": spider_to_dict(sd)} if sd is not None else None
    return _print_verdict(verdict, args.format, extra)


def cmd_gen(args) -> int:
    if args.config:
        try:
            config = json.loads(read_source(args.config))
        except json.JSONDecodeError as e:
            raise InputError(f"generator config is not JSON: {e}") from e
    else:
        config = {"flavor": args.flavor, "seed": args.seed}
        options = {
            "n": args.n,
            "p_join": args.p_join,
            "spider_rate": args.spider_rate,
            "max_head": args.max_head,
            "component_size": args.component_size,
            "p": args.p,
            "k": args.k,
            "spider_flavor": args.spider_flavor,
            "head_n": args.head_n,
            "head_kind": args.head_kind,
        }
        config.update({key: value for key, value in options.items() if value is not None})
        if args.flavor == "spider":
            config.pop("n", None)
    sys.stdout.write(format_edge_list(generate(config)))
    return EXIT_OK


def cmd_bench(args) -> int:
    rows = run_bench(
        parse_sizes(args.sizes),
        seed=args.seed,
        flavor=args.flavor,
        workers=args.workers,
        component_size=args.component_size,
    )
    sys.stdout.write(rows_to_csv(rows))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hcgraph", description="Colorations hiérarchiques et décomposition modulaire.")
    parser.add_argument("--log-level", default=None, help="Niveau de log (défaut: LOG_LEVEL ou INFO)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="Arbre de décomposition modulaire")
    p.add_argument("graph", help="Fichier liste d'arêtes, '-' pour stdin")
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.add_argument("--spiders", action="store_true", help="Découpe les modules premiers via les araignées")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("chi", help="Nombre chromatique")
    p.add_argument("graph")
    p.add_argument("--method", choices=["md", "brute"], default="md")
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("color", help="Construit une coloration")
    p.add_argument("graph")
    p.add_argument("--mode", choices=COLOR_MODES, required=True)
    p.add_argument("--order", help="Ordre des sommets pour greedy, ex: 0,2,1,3")
    p.add_argument("--tree", help="Cotree JSON pour tt-minimal")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("check", help="Vérifie une propriété d'une coloration")
    p.add_argument("graph")
    p.add_argument("coloring")
    p.add_argument("--property", choices=PROPERTIES, required=True)
    p.add_argument("--tree", help="Cotree JSON (requis pour hc et tt-minimal)")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("count", help="Nombre Z de hc-colorations")
    p.add_argument("graph")
    p.add_argument("--tree", help="Cotree binaire JSON (défaut: chenille triée par chi)")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("recognize", help="Reconnaissance de classe")
    p.add_argument("graph")
    p.add_argument("--class", dest="graph_class", choices=CLASSES, required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("gen", help="Génère une instance aléatoire (liste d'arêtes sur stdout)")
    p.add_argument("--flavor", choices=["cograph", "p4sparse", "erdos-renyi", "spider"], default="cograph")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p-join", type=float, default=None)
    p.add_argument("--spider-rate", type=float, default=None)
    p.add_argument("--max-head", type=int, default=None)
    p.add_argument("--component-size", type=int, default=None)
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--spider-flavor", choices=["thin", "thick"], default=None)
    p.add_argument("--head-n", type=int, default=None)
    p.add_argument("--head-kind", choices=["path", "clique", "random"], default=None)
    p.add_argument("--config", help="Config JSON du générateur (remplace les options)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="Chronomètre le pipeline P4-sparse (CSV)")
    p.add_argument("--flavor", choices=BENCH_FLAVORS, default="p4sparse")
    p.add_argument("--sizes", default="1e3,1e4,1e5")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--component-size", type=int, default=None)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = (args.log_level or settings.LOG_LEVEL).upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (HcGraphError, ValidationError) as e:
        logger.error(f"❌ {args.command}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
