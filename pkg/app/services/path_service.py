"""Dokumenta poti hlačnih razcepov in dvignjenega sistema zank."""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Any, Dict, List

from app.core.errors import MalformedDocumentError
from app.models.documents import (
    ARegionDoc,
    LiftDoc,
    LiftedLoopDoc,
    LiftedTypeDoc,
    LoopDoc,
    PantsFaceDoc,
    PathDoc,
    PathEntryDoc,
)
from app.services.agol_path import (
    Loop,
    LoopComplex,
    PantsFace,
    PolygonModel,
    assign_levels,
    classify_pants,
    complement_regions,
    full_path,
    swapped_pair,
)
from app.services.branched_cover import (
    BranchData,
    build_cover,
    lift_pants_type,
    lift_region_boundary_type,
    lift_system,
)
from app.services.codec import LIFT_KIND, PATH_KIND, encode_weights, envelope, open_envelope, triangulation_doc
from app.utils.logging_utils import get_logger

logger = get_logger(__name__)


def _face_doc(face: PantsFace) -> PantsFaceDoc:
    return PantsFaceDoc(kind=face.kind, boundary=list(face.boundary), punctures=list(face.punctures))


def path_document(n: int) -> Dict[str, Any]:
    model = PolygonModel(n)
    path = full_path(model)
    complex_ = assign_levels(model)
    entries: List[PathEntryDoc] = []
    for idx, entry in enumerate(path):
        swapped = None
        if idx + 1 < len(path):
            out, into = swapped_pair(entry, path[idx + 1])
            swapped = (out.key, into.key)
        entries.append(
            PathEntryDoc(
                index=entry.index,
                betas=sorted(b.key for b in entry.betas),
                pants=[_face_doc(f) for f in classify_pants(model, entry)],
                swapped=swapped,
            )
        )
    regions = [
        ARegionDoc(
            step=r.step,
            bottom_loop=r.bottom_loop,
            top_loop=r.top_loop,
            holes=[(kind, list(h)) for kind, h in r.holes],
            euler=r.euler,
        )
        for r in complement_regions(model, complex_)
    ]
    doc = PathDoc(
        n=n,
        length=len(path),
        entries=entries,
        loops=[
            LoopDoc(i=l.i, j=l.j, level_class=l.level_class, level=str(l.level))
            for l in complex_.ordered_loops()
        ],
        regions=regions,
    )
    logger.info("Pot za n=%d: %d vnosov, %d regij", n, len(entries), len(regions))
    return envelope(PATH_KIND, doc)


def lift_pants_census(complex_: LoopComplex) -> Dict[str, int]:
    return dict(Counter(lift_pants_type(face.kind).name for face in complex_.pants))


def lift_document(genus: int, document: Dict[str, Any]) -> Dict[str, Any]:
    path = open_envelope(document, PATH_KIND, PathDoc)
    branch = BranchData(genus)
    if path.n != branch.n:
        raise MalformedDocumentError(f"pot za n={path.n} ne ustreza rodu {genus} (n={branch.n})")
    model = branch.model
    complex_ = assign_levels(model)
    given = sorted((l.i, l.j, l.level) for l in path.loops)
    expected = sorted((l.i, l.j, str(l.level)) for l in complex_.loops)
    if given != expected:
        raise MalformedDocumentError("zanke v dokumentu poti se ne ujemajo z modelom")
    # vrstni red in nivoji iz dokumenta
    loops = tuple(Loop(l.i, l.j, l.level_class, Fraction(l.level)) for l in path.loops)
    cover = build_cover(branch)
    lifted = lift_system(cover, LoopComplex(complex_.n, loops, complex_.pants))
    types = []
    for region in complement_regions(model, complex_):
        t = lift_region_boundary_type(model.n, region)
        types.append(
            LiftedTypeDoc(
                step=region.step,
                name=t.name,
                genus=t.genus,
                boundary_circles=t.boundary_circles,
                punctures=t.punctures,
                euler=t.euler,
                copies=t.copies,
            )
        )
    doc = LiftDoc(
        genus=genus,
        triangulation=triangulation_doc(cover.triangulation),
        loops=[
            LiftedLoopDoc(base=l.base, level=str(l.level), component=l.component, curve=encode_weights(l.curve.weights))
            for l in lifted
        ],
        pants_census=lift_pants_census(complex_),
        region_types=types,
    )
    return envelope(LIFT_KIND, doc)
