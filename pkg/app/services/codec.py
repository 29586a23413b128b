"""
Verzionirani JSON dokumenti.

Ovojnica {kind, version, payload}; kanonično kodiranje s sortiranimi ključi
in brez presledkov, zaključeno z novo vrstico, zato je ponovni zapis
bajtno enak.
"""
from __future__ import annotations

import hashlib
import json
from typing import Any, Dict, List, Sequence, Type, TypeVar

from pydantic import BaseModel, ValidationError

from app.core.config import get_settings
from app.core.errors import MalformedDocumentError, TopologyError
from app.models.documents import (
    Envelope,
    SplitDoc,
    SwitchDoc,
    SystemDoc,
    TagDoc,
    TrackDoc,
    TriangulationDoc,
)
from app.services.curves import NormalMulticurve
from app.services.pants_system import DecompositionSystem
from app.services.train_track import FatTrainTrack, SplitRecord, Switch
from app.services.triangulation import Triangulation

M = TypeVar("M", bound=BaseModel)

CERTIFICATE_KIND = "distance-certificate"
TOWER_KIND = "derived-tower"
PATH_KIND = "pants-path"
LIFT_KIND = "lifted-system"
SURGERY_KIND = "surgery-description"


def encode_int(value: int) -> str:
    return str(int(value))


def decode_int(value: Any) -> int:
    if not isinstance(value, str):
        raise MalformedDocumentError(f"celo število mora biti niz, ne {type(value).__name__}")
    try:
        return int(value, 10)
    except ValueError as exc:
        raise MalformedDocumentError(f"neveljavno celo število {value!r}") from exc


def encode_weights(weights: Sequence[int]) -> List[str]:
    return [encode_int(w) for w in weights]


def decode_weights(values: Sequence[Any]) -> tuple:
    return tuple(decode_int(v) for v in values)


# ----------------------------------------------------------------------
# ovojnica


def envelope(kind: str, payload: BaseModel | Dict[str, Any]) -> Dict[str, Any]:
    body = payload.model_dump(mode="json") if isinstance(payload, BaseModel) else payload
    return {"kind": kind, "version": get_settings().document_version, "payload": body}


def canonical_json(document: Dict[str, Any]) -> str:
    return json.dumps(document, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def digest(document: Dict[str, Any]) -> str:
    body = {k: v for k, v in document.items() if k != "digest"}
    return hashlib.sha256(canonical_json(body).encode("utf-8")).hexdigest()


def seal(document: Dict[str, Any]) -> Dict[str, Any]:
    sealed = {k: v for k, v in document.items() if k != "digest"}
    sealed["digest"] = digest(sealed)
    return sealed


def digest_matches(document: Dict[str, Any]) -> bool:
    return document.get("digest") == digest(document)


def loads(text: str) -> Dict[str, Any]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocumentError(f"neveljaven JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise MalformedDocumentError("dokument mora biti JSON objekt")
    return data


def open_envelope(document: Dict[str, Any], kind: str, model: Type[M]) -> M:
    try:
        env = Envelope.model_validate(document)
    except ValidationError as exc:
        raise MalformedDocumentError(f"neveljavna ovojnica: {exc.errors()[0]['msg']}") from exc
    if env.kind != kind:
        raise MalformedDocumentError(f"pričakovan dokument vrste {kind}, dobljen {env.kind}")
    if env.version != get_settings().document_version:
        raise MalformedDocumentError(f"nepodprta verzija dokumenta {env.version}")
    try:
        return model.model_validate(env.payload)
    except ValidationError as exc:
        first = exc.errors()[0]
        raise MalformedDocumentError(f"neveljavna vsebina pri {first['loc']}: {first['msg']}") from exc


# ----------------------------------------------------------------------
# domenski objekti <-> dokumenti


def triangulation_doc(tri: Triangulation) -> TriangulationDoc:
    return TriangulationDoc(faces=[tuple(f) for f in tri.faces], vertices_are_punctures=tri.vertices_are_punctures)


def triangulation_from(doc: TriangulationDoc) -> Triangulation:
    try:
        return Triangulation(doc.faces, doc.vertices_are_punctures)
    except TopologyError as exc:
        raise MalformedDocumentError(f"neveljavna triangulacija: {exc}") from exc


def curve_from(tri: Triangulation, weights: Sequence[Any]) -> NormalMulticurve:
    try:
        return NormalMulticurve(tri, decode_weights(weights))
    except MalformedDocumentError:
        raise
    except TopologyError as exc:
        raise MalformedDocumentError(str(exc)) from exc


def system_doc(system: DecompositionSystem) -> SystemDoc:
    return SystemDoc(
        curves=[encode_weights(c.weights) for c in system.curves],
        duals=[encode_weights(d.weights) for d in system.duals] if system.duals else None,
    )


def system_from(tri: Triangulation, doc: SystemDoc) -> DecompositionSystem:
    curves = tuple(curve_from(tri, w) for w in doc.curves)
    duals = tuple(curve_from(tri, w) for w in doc.duals) if doc.duals else None
    if not curves:
        raise MalformedDocumentError("sistem brez krivulj")
    return DecompositionSystem(curves, duals)


def track_doc(track: FatTrainTrack, pattern: str = "default") -> TrackDoc:
    tags = []
    for branch, tag in track.tags:
        kind, owner, data = tag
        tags.append(TagDoc(branch=branch, kind=kind, owner=owner, data=list(data) if isinstance(data, tuple) else [data]))
    return TrackDoc(
        genus=track.genus,
        pattern=pattern,
        branches=list(track.branches),
        switches=[
            SwitchDoc(name=s.name, incoming=list(s.incoming), outgoing=list(s.outgoing))
            for s in track.switches
        ],
        cores=list(track.cores),
        tags=tags,
    )


def track_from(doc: TrackDoc) -> FatTrainTrack:
    tags = []
    for tag in doc.tags:
        data = tuple(tag.data) if tag.kind == "seam" else (tag.data[0] if tag.data else 0)
        tags.append((tag.branch, (tag.kind, tag.owner, data)))
    track = FatTrainTrack(
        doc.genus,
        tuple(doc.branches),
        tuple(Switch(s.name, tuple(map(tuple, s.incoming)), tuple(map(tuple, s.outgoing))) for s in doc.switches),
        tuple(tuple(c) for c in doc.cores),
        tuple(tags),
    )
    try:
        track.validate()
    except TopologyError as exc:
        raise MalformedDocumentError(f"neveljavna tirnica: {exc}") from exc
    return track


def split_doc(record: SplitRecord) -> SplitDoc:
    return SplitDoc(
        branch=record.branch,
        heavy=record.heavy,
        a_left=record.a_left,
        a_right=record.a_right,
        b_left=record.b_left,
        b_right=record.b_right,
    )


def split_from(doc: SplitDoc) -> SplitRecord:
    return SplitRecord(doc.branch, doc.heavy, doc.a_left, doc.a_right, doc.b_left, doc.b_right)


def steps_doc(steps) -> List[List[SplitDoc]]:
    return [[split_doc(r) for r in step] for step in steps]


def steps_from(docs: Sequence[Sequence[SplitDoc]]) -> tuple:
    return tuple(tuple(split_from(d) for d in step) for step in docs)
