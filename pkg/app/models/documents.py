from typing import Annotated, Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, StringConstraints

# Cela števila (uteži, eksponenti, razdalja) kot desetiški nizi
IntString = Annotated[str, StringConstraints(pattern=r"^-?[0-9]+$")]
Weights = List[IntString]


class Envelope(BaseModel):
    kind: str
    version: int
    payload: Dict[str, Any]
    # SHA-256 kanoničnega zapisa brez tega polja
    digest: Optional[str] = None


class TriangulationDoc(BaseModel):
    faces: List[Tuple[int, int, int]]
    vertices_are_punctures: bool = True


class CurveDoc(BaseModel):
    triangulation: TriangulationDoc
    weights: Weights


class SystemDoc(BaseModel):
    curves: List[Weights]
    duals: Optional[List[Weights]] = None


class SwitchDoc(BaseModel):
    name: str
    incoming: List[Tuple[str, int]]
    outgoing: List[Tuple[str, int]]


class TagDoc(BaseModel):
    branch: str
    kind: str
    owner: int
    data: List[int] = []


class TrackDoc(BaseModel):
    genus: int
    pattern: str = "default"
    branches: List[str]
    switches: List[SwitchDoc]
    cores: List[Tuple[str, str]]
    tags: List[TagDoc]


class SplitDoc(BaseModel):
    branch: str
    heavy: str
    a_left: str
    a_right: str
    b_left: str
    b_right: str


class TwistLetterDoc(BaseModel):
    curve: Weights
    exponent: IntString
    base_loop: Tuple[int, int]
    component: int
    level: str


class LedgerEntry(BaseModel):
    kind: str
    subject: str
    statement: str
    verified: bool = False


class CheckDoc(BaseModel):
    name: str
    passed: bool
    detail: str | None = None


class VerdictDoc(BaseModel):
    valid: bool
    checks: List[CheckDoc]


class CertificateDoc(BaseModel):
    genus: int
    distance: IntString
    seed: IntString
    window: Optional[IntString] = None
    triangulation: TriangulationDoc
    D: SystemDoc
    E: SystemDoc
    track: TrackDoc
    tower: List[List[SplitDoc]]
    aux_pattern: str = "default"
    aux_tower: List[List[SplitDoc]]
    k: Weights
    global_exponent: IntString
    candidates: List[IntString]
    chosen_candidate: int
    twist_word: List[TwistLetterDoc]
    image_D: List[Weights]
    ledger: List[LedgerEntry]
    verdict: VerdictDoc | None = None


class TowerDoc(BaseModel):
    genus: int
    length: int
    seed: IntString
    guide: Weights
    track: TrackDoc
    steps: List[List[SplitDoc]]


class SurgeryLoopDoc(BaseModel):
    index: int
    base_loop: Tuple[int, int]
    component: int
    level: str
    loop: Weights
    projection: Weights
    slope: str
    twist_exponent: IntString


class SurgeryDoc(BaseModel):
    genus: int
    distance: IntString
    loops: List[SurgeryLoopDoc]
    summary: str
    ledger: List[LedgerEntry]


class VerifyResponse(BaseModel):
    valid: bool
    exit_code: int
    checks: List[CheckDoc]
    unverified: List[LedgerEntry] = []


class PantsFaceDoc(BaseModel):
    kind: str
    boundary: List[Tuple[int, int]]
    punctures: List[int]


class PathEntryDoc(BaseModel):
    index: int
    betas: List[Tuple[int, int]]
    pants: List[PantsFaceDoc]
    swapped: Optional[Tuple[Tuple[int, int], Tuple[int, int]]] = None


class LoopDoc(BaseModel):
    i: int
    j: int
    level_class: int
    level: str


class ARegionDoc(BaseModel):
    step: int
    bottom_loop: Tuple[int, int]
    top_loop: Tuple[int, int]
    holes: List[Tuple[str, List[int]]]
    euler: int


class PathDoc(BaseModel):
    n: int
    length: int
    entries: List[PathEntryDoc]
    loops: List[LoopDoc]
    regions: List[ARegionDoc]


class LiftedLoopDoc(BaseModel):
    base: Tuple[int, int]
    level: str
    component: int
    curve: Weights


class LiftedTypeDoc(BaseModel):
    step: int
    name: str
    genus: int
    boundary_circles: int
    punctures: int
    euler: int
    copies: int = 1


class LiftDoc(BaseModel):
    genus: int
    triangulation: TriangulationDoc
    loops: List[LiftedLoopDoc]
    pants_census: Dict[str, int]
    region_types: List[LiftedTypeDoc]
