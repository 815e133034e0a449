from typing import Annotated

from fastapi import APIRouter, Body

from ..core.schemas import GeneratorUnion, GraphOut
from ..services.formats import graph_to_model
from ..services.generators import generate

router = APIRouter(tags=["generate"])


@router.post("/generate", response_model=GraphOut)
def generate_graph(config: Annotated[GeneratorUnion, Body(discriminator="flavor")]):
    """Instance aléatoire reproductible (même config, même graphe)"""
    return graph_to_model(generate(config))
