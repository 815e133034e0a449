from fastapi import APIRouter, Query

from ..core.schemas import ChiOut, ChiRequest, GraphIn, MDNodeOut, RecognizeOut, RecognizeRequest, SpiderOut
from ..services.formats import graph_from_model, mdtree_to_dict
from ..services.mdtree import modular_decomposition
from ..services.p4sparse import spider_splitter, spider_to_dict
from ..services.pipeline import compute_chi, recognize

router = APIRouter(prefix="/graphs", tags=["graphs"])


# sync handlers: pure CPU work, FastAPI runs them in its threadpool
@router.post("/decompose", response_model=MDNodeOut)
def decompose(body: GraphIn, spiders: bool = Query(False, description="Découpe les modules premiers via les araignées")):
    """Arbre de décomposition modulaire (JSON récursif kind/vertices/children)"""
    g = graph_from_model(body)
    tree = modular_decomposition(g, prime_splitter=spider_splitter if spiders else None)
    return mdtree_to_dict(tree)


@router.post("/chi", response_model=ChiOut)
def chi(body: ChiRequest):
    g = graph_from_model(body.graph)
    return ChiOut(chi=compute_chi(g, body.method), method=body.method)


@router.post("/recognize", response_model=RecognizeOut)
def recognize_class(body: RecognizeRequest):
    g = graph_from_model(body.graph)
    verdict, sd = recognize(g, body.graph_class)
    return RecognizeOut(
        ok=verdict.ok,
        witness=verdict.witness,
        reason=verdict.reason,
        graph_class=body.graph_class,
        spider=SpiderOut(**spider_to_dict(sd)) if sd is not None else None,
    )
