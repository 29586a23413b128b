"""
Neodvisno preverjanje certifikata razdalje.

Uporablja samo podatke iz certifikata in deterministične operacije jedra
(ploskve, hlače, tirnice). Generatorja ne kliče.
"""
from __future__ import annotations

from typing import Any, Dict, List, Optional

from app.core.errors import MalformedDocumentError, TopologyError
from app.models.documents import CertificateDoc, CheckDoc, VerifyResponse
from app.services.codec import (
    CERTIFICATE_KIND,
    curve_from,
    decode_int,
    digest_matches,
    open_envelope,
    steps_from,
    track_from,
    triangulation_from,
)
from app.services.heegaard import canonical_systems
from app.services.pants_system import image_wave_free
from app.services.tower import Tower, is_derived, replay
from app.services.track_coordinates import TrackChart
from app.services.train_track import PATTERNS, is_complete, standard_complete_track
from app.services.twists import TwistWord
from app.utils.logging_utils import get_logger

logger = get_logger(__name__)

EXIT_VALID = 0
EXIT_INVALID = 1
EXIT_MALFORMED = 2


class _Checklist:
    def __init__(self) -> None:
        self.checks: List[CheckDoc] = []

    def record(self, name: str, passed: bool, detail: Optional[str] = None) -> bool:
        if not passed:
            logger.warning("Preverjanje %s ni uspelo: %s", name, detail)
        self.checks.append(CheckDoc(name=name, passed=passed, detail=detail))
        return passed

    @property
    def valid(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)


def load_certificate(document: Dict[str, Any]) -> CertificateDoc:
    return open_envelope(document, CERTIFICATE_KIND, CertificateDoc)


def verify_certificate(document: Dict[str, Any]) -> VerifyResponse:
    """
    Ponovno preveri vse predpostavke izreka o spodnji meji razdalje:

    - E_τ = E in τ je polna (complete) debela tirnica,
    - vsak korak stolpa je izpeljan,
    - n >= 2 in n je dolžina stolpa,
    - vsaka krivulja f(D) je nošena s τ_n (f(D) izračunamo znova),
    - f(D) in E nimata valov drug glede na drugega.

    Nepravilno oblikovan dokument sproži MalformedDocumentError.
    """
    cert = load_certificate(document)
    checklist = _Checklist()
    checklist.record("digest", digest_matches(document), "zgoščena vrednost se ne ujema z vsebino")

    tri = triangulation_from(cert.triangulation)
    D_curves = [curve_from(tri, w) for w in cert.D.curves]
    E_curves = [curve_from(tri, w) for w in cert.E.curves]
    try:
        n = decode_int(cert.distance)
        steps = steps_from(cert.tower)
        track = track_from(cert.track)
        letters = tuple((curve_from(tri, l.curve), decode_int(l.exponent)) for l in cert.twist_word)
        claimed_image = [curve_from(tri, w) for w in cert.image_D]
    except MalformedDocumentError:
        raise
    except TopologyError as exc:
        raise MalformedDocumentError(str(exc)) from exc

    response = _run_checks(checklist, cert, tri, D_curves, E_curves, n, steps, track, letters, claimed_image)
    logger.info("Certifikat za rod %d, n=%s: %s", cert.genus, cert.distance, "veljaven" if response.valid else "neveljaven")
    return response


def _finish(checklist: _Checklist, cert: CertificateDoc) -> VerifyResponse:
    valid = checklist.valid
    return VerifyResponse(
        valid=valid,
        exit_code=EXIT_VALID if valid else EXIT_INVALID,
        checks=checklist.checks,
        unverified=[entry for entry in cert.ledger if not entry.verified],
    )


def _run_checks(checklist, cert, tri, D_curves, E_curves, n, steps, track, letters, claimed_image) -> VerifyResponse:
    try:
        description = canonical_systems(cert.genus)
    except TopologyError as exc:
        checklist.record("systems", False, str(exc))
        return _finish(checklist, cert)
    D, E = description.D, description.E
    same = (
        tri == description.cover.triangulation
        and [c.weights for c in D_curves] == [c.weights for c in D.curves]
        and [c.weights for c in E_curves] == [c.weights for c in E.curves]
    )
    if not checklist.record("systems", same, "D ali E nista standardna sistema razcepa S³"):
        return _finish(checklist, cert)

    # (a) E_τ = E in polnost
    if cert.track.pattern not in PATTERNS:
        checklist.record("complete_track", False, f"neznan vzorec {cert.track.pattern}")
        return _finish(checklist, cert)
    standard = standard_complete_track(E, cert.track.pattern)
    if not checklist.record("track_system", track.structure() == standard.structure(), "tirnica ni zgrajena nad E"):
        return _finish(checklist, cert)
    report = is_complete(track, E)
    if not checklist.record("complete_track", report.complete, report.reason):
        return _finish(checklist, cert)

    # (b) izpeljani koraki
    before = track
    for level, step in enumerate(steps, start=1):
        try:
            after = replay(before, step)
        except TopologyError as exc:
            checklist.record("derived_steps", False, f"korak {level}: {exc}")
            return _finish(checklist, cert)
        if not is_derived(before, after, step):
            checklist.record("derived_steps", False, f"korak {level} ni izpeljan")
            return _finish(checklist, cert)
        before = after
    checklist.record("derived_steps", True)

    # (c) dolžina stolpa
    checklist.record("tower_length", n >= 2 and n == len(steps), f"trditev n={n}, stolp ima {len(steps)} korakov")

    # (d) f(D) znova izračunan in nošen s τ_n
    word = TwistWord(letters)
    try:
        shorts = word.shorts()
    except TopologyError as exc:
        checklist.record("twist_word", False, str(exc))
        return _finish(checklist, cert)
    image = [word.apply(c, shorts) for c in D.curves]
    checklist.record(
        "image_recomputed",
        [c.weights for c in image] == [c.weights for c in claimed_image],
        "shranjen f(D) se ne ujema z izračunanim",
    )
    tower = Tower(TrackChart(E, track), steps)
    level = len(steps)
    carried = [tower.carried_at(level, c, connected=True) for c in image]
    checklist.record("carried", all(carried), f"nošene krivulje: {carried}")

    # (e) brez valov
    inverse = word.inverse()
    inverse_shorts = tuple(reversed(shorts))
    try:
        waves = image_wave_free(
            D,
            E,
            lambda c: word.apply(c, shorts),
            lambda c: inverse.apply(c, inverse_shorts),
        )
        checklist.record("wave_free", waves.wave_free, f"val pri {waves.offending}" if waves.offending else None)
    except TopologyError as exc:
        checklist.record("wave_free", False, str(exc))
    return _finish(checklist, cert)
