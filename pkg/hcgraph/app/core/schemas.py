from typing import Annotated, Any, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, TypeAdapter


class GraphIn(BaseModel):
    n: int = Field(ge=0)
    edges: List[Tuple[int, int]] = []


class GraphOut(GraphIn):
    m: int


class ColoringOut(BaseModel):
    colors: List[int]
    num_colors: int


class MDNodeOut(BaseModel):
    kind: str
    vertices: List[int]
    children: List["MDNodeOut"] = []


class CotreeModel(BaseModel):
    """Leaf: label = vertex id, no children. Inner: label 0 (union) or 1 (join)."""
    label: int
    children: List["CotreeModel"] = []


class SpiderOut(BaseModel):
    flavor: Literal["thin", "thick"]
    K: List[int]
    S: List[int]
    R: List[int]
    matching: List[Tuple[int, int]]


class VerdictOut(BaseModel):
    ok: bool
    witness: Optional[Any] = None
    reason: str = ""


class ChiRequest(BaseModel):
    graph: GraphIn
    method: Literal["md", "brute"] = "md"


class ChiOut(BaseModel):
    chi: int
    method: str


class RecognizeRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    graph: GraphIn
    graph_class: Literal["cograph", "p4sparse", "spider"] = Field("cograph", alias="class")


class RecognizeOut(VerdictOut):
    graph_class: str
    spider: Optional[SpiderOut] = None


class ColorRequest(BaseModel):
    graph: GraphIn
    mode: Literal["greedy", "tt-minimal", "modmin", "p4sparse"] = "modmin"
    order: Optional[List[int]] = None
    tree: Optional[CotreeModel] = None
    seed: Optional[int] = None


class CheckRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    graph: GraphIn
    colors: List[int]
    check_property: Literal["proper", "greedy", "hierarchical", "strict", "modmin", "hc", "tt-minimal"] = Field(
        "proper", alias="property"
    )
    tree: Optional[CotreeModel] = None


class CountRequest(BaseModel):
    graph: GraphIn
    tree: Optional[CotreeModel] = None


class CountOut(BaseModel):
    # decimal string: Z outgrows every fixed-width integer
    z: str
    chi: int


class _GeneratorBase(BaseModel):
    model_config = ConfigDict(extra="forbid")

    seed: int = Field(0, ge=0, lt=2**64)


class CographConfig(_GeneratorBase):
    flavor: Literal["cograph"] = "cograph"
    n: int = Field(ge=1)
    p_join: float = Field(0.5, ge=0.0, le=1.0)


class P4SparseConfig(_GeneratorBase):
    flavor: Literal["p4sparse"] = "p4sparse"
    n: int = Field(ge=1)
    spider_rate: float = Field(0.5, ge=0.0, le=1.0)
    max_head: int = Field(3, ge=0)
    p_join: float = Field(0.5, ge=0.0, le=1.0)
    component_size: Optional[int] = Field(None, ge=1)


class ErdosRenyiConfig(_GeneratorBase):
    flavor: Literal["erdos-renyi"] = "erdos-renyi"
    n: int = Field(ge=1)
    p: float = Field(0.3, ge=0.0, le=1.0)


class SpiderConfig(_GeneratorBase):
    flavor: Literal["spider"] = "spider"
    k: int = Field(ge=2)
    spider_flavor: Literal["thin", "thick"] = "thin"
    head_n: int = Field(0, ge=0)
    head_kind: Literal["path", "clique", "random"] = "path"


GeneratorUnion = Union[CographConfig, P4SparseConfig, ErdosRenyiConfig, SpiderConfig]

GeneratorConfig = Annotated[GeneratorUnion, Field(discriminator="flavor")]

generator_config_adapter = TypeAdapter(GeneratorConfig)


class BenchRow(BaseModel):
    flavor: str
    n: int
    m: int
    millis: float


MDNodeOut.model_rebuild()
CotreeModel.model_rebuild()
