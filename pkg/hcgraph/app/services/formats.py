"""
Text and JSON formats: edge lists, coloring files, MD trees (JSON / DOT),
cotrees (JSON / Newick) and spider decompositions.
"""
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List

from pydantic import ValidationError

from ..core.errors import InputError
from ..core.schemas import CotreeModel, GraphIn, GraphOut, MDNodeOut, SpiderOut
from .cotree import CotreeNode
from .graph_core import Coloring, Graph, graph_from_edges
from .mdtree import MDTree
from .p4sparse import SpiderDecomposition, spider_to_dict

logger = logging.getLogger(__name__)


def read_source(path: str) -> str:
    """File contents, or stdin when path is '-'."""
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from e
    except UnicodeDecodeError as e:
        raise InputError(f"{path} is not UTF-8 text ({e.reason} at byte {e.start})") from e


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _ints(lineno: int, line: str, count: int) -> List[int]:
    parts = line.split()
    if len(parts) != count:
        raise InputError(f"line {lineno}: expected {count} integers, got {line!r}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise InputError(f"line {lineno}: not an integer in {line!r}") from None


def parse_edge_list(text: str) -> Graph:
    lines = list(_content_lines(text))
    if not lines:
        raise InputError("empty edge list: expected a header 'n m'")
    lineno, header = lines[0]
    n, m = _ints(lineno, header, 2)
    if n < 0 or m < 0:
        raise InputError(f"line {lineno}: negative counts in header")
    body = lines[1:]
    if len(body) != m:
        raise InputError(f"header announces {m} edges, found {len(body)}")
    edges = []
    for lineno, line in body:
        u, v = _ints(lineno, line, 2)
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"line {lineno}: vertex outside 0..{n - 1}")
        if u == v:
            raise InputError(f"line {lineno}: self-loop on vertex {u}")
        edges.append((u, v))
    return graph_from_edges(n, edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in sorted(g.edges()))
    return "\n".join(lines) + "\n"


def parse_coloring(text: str, n: int) -> Coloring:
    mapping: Dict[int, int] = {}
    for lineno, line in _content_lines(text):
        v, c = _ints(lineno, line, 2)
        if not 0 <= v < n:
            raise InputError(f"line {lineno}: vertex {v} outside 0..{n - 1}")
        if v in mapping:
            raise InputError(f"line {lineno}: vertex {v} colored twice")
        if c < 1:
            raise InputError(f"line {lineno}: color must be positive")
        mapping[v] = c
    return Coloring.from_mapping(mapping, n)


def format_coloring(sigma: Coloring) -> str:
    return "".join(f"{v} {c}\n" for v, c in enumerate(sigma))


def mdtree_to_dict(tree: MDTree) -> Dict[str, Any]:
    done: Dict[int, Dict[str, Any]] = {}
    for node in tree.root.postorder():
        done[id(node)] = {
            "kind": node.kind.value,
            "vertices": sorted(node.vertices),
            "children": [done[id(c)] for c in node.children],
        }
    return done[id(tree.root)]


def mdtree_to_json(tree: MDTree) -> str:
    return MDNodeOut.model_validate(mdtree_to_dict(tree)).model_dump_json(indent=2)


def mdtree_to_dot(tree: MDTree) -> str:
    lines = ["graph mdtree {"]
    ids = {}
    for i, node in enumerate(tree.nodes()):
        ids[id(node)] = i
        label = str(node.vertex) if node.is_leaf else node.kind.value
        shape = "circle" if node.is_leaf else "box"
        lines.append(f'  n{i} [label="{label}", shape={shape}];')
    for node in tree.nodes():
        for child in node.children:
            lines.append(f"  n{ids[id(node)]} -- n{ids[id(child)]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cotree_to_dict(tree: CotreeNode) -> Dict[str, Any]:
    done: Dict[int, Dict[str, Any]] = {}
    for node in tree.postorder():
        if node.is_leaf:
            done[id(node)] = {"label": node.vertex}
        else:
            done[id(node)] = {"label": node.label, "children": [done[id(c)] for c in node.children]}
    return done[id(tree)]


def cotree_from_model(model: CotreeModel) -> CotreeNode:
    done: Dict[int, CotreeNode] = {}
    stack = [(model, False)]
    while stack:
        item, expanded = stack.pop()
        if not item.children:
            done[id(item)] = CotreeNode(vertex=item.label)
            continue
        if not expanded:
            stack.append((item, True))
            stack.extend((c, False) for c in item.children)
            continue
        done[id(item)] = CotreeNode(label=item.label, children=tuple(done[id(c)] for c in item.children))
    return done[id(model)]


def cotree_from_dict(data: Dict[str, Any]) -> CotreeNode:
    try:
        model = CotreeModel.model_validate(data)
    except ValidationError as e:
        raise InputError(f"invalid cotree JSON: {e.errors()[0]['msg']}") from e
    return cotree_from_model(model)


def cotree_to_json(tree: CotreeNode) -> str:
    return json.dumps(cotree_to_dict(tree))


def cotree_from_json(text: str) -> CotreeNode:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"cotree file is not JSON: {e}") from e
    return cotree_from_dict(data)


def cotree_to_newick(tree: CotreeNode) -> str:
    """Inner nodes print as (children)label, e.g. ((0,1)1,2,3)0;"""
    done: Dict[int, str] = {}
    for node in tree.postorder():
        if node.is_leaf:
            done[id(node)] = str(node.vertex)
        else:
            done[id(node)] = "(" + ",".join(done[id(c)] for c in node.children) + f"){node.label}"
    return done[id(tree)] + ";"


def spider_to_json(sd: SpiderDecomposition) -> str:
    return SpiderOut.model_validate(spider_to_dict(sd)).model_dump_json()


def graph_from_model(model: GraphIn) -> Graph:
    return graph_from_edges(model.n, model.edges)


def graph_to_model(g: Graph) -> GraphOut:
    return GraphOut(n=g.n, m=g.m, edges=sorted(g.edges()))
