from fastapi import APIRouter

from ..core.schemas import CheckRequest, ColoringOut, ColorRequest, CountOut, CountRequest, VerdictOut
from ..services.formats import cotree_from_model, graph_from_model
from ..services.graph_core import Coloring
from ..services.pipeline import check_property, color_graph, count

router = APIRouter(prefix="/colorings", tags=["colorings"])


@router.post("/color", response_model=ColoringOut)
def color(body: ColorRequest):
    """Construit une coloration (greedy, tt-minimal, modmin, p4sparse)"""
    g = graph_from_model(body.graph)
    tree = cotree_from_model(body.tree) if body.tree is not None else None
    sigma = color_graph(g, body.mode, order=body.order, tree=tree, seed=body.seed)
    return ColoringOut(colors=list(sigma), num_colors=sigma.num_colors)


@router.post("/check", response_model=VerdictOut)
def check(body: CheckRequest):
    """Vérifie une propriété; le témoin est renvoyé quand elle est fausse"""
    g = graph_from_model(body.graph)
    tree = cotree_from_model(body.tree) if body.tree is not None else None
    verdict = check_property(g, Coloring(body.colors), body.check_property, tree)
    return VerdictOut(ok=verdict.ok, witness=verdict.witness, reason=verdict.reason)


@router.post("/count", response_model=CountOut)
def count_hc(body: CountRequest):
    g = graph_from_model(body.graph)
    tree = cotree_from_model(body.tree) if body.tree is not None else None
    z, chi = count(g, tree)
    return CountOut(z=str(z), chi=chi)
