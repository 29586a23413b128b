"""
Izdelava certifikata razdalje Heegaardovega razcepa.

Koraki: vodilna krivulja k, stolp izpeljanih tirnic nad τ_E, pomožna
izpeljana tirnica nad τ_D, globalni eksponent m, eksponenti n_1..n_p za
zasuke vzdolž dvignjenih zank in na koncu certifikat, ki se pred izdajo
sam preveri.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from itertools import count, islice
from typing import Any, Dict, List, Optional, Sequence, Tuple

from app.core.config import get_settings
from app.core.errors import (
    CoverSearchError,
    BadExponentSetError,
    PipelineError,
    TowerError,
)
from app.models.documents import CertificateDoc, LedgerEntry, TowerDoc, TwistLetterDoc, VerdictDoc, VerifyResponse
from app.services.agol_path import assign_levels
from app.services.branched_cover import LiftedLoop, conjugated_involution, lift_system
from app.services.codec import (
    CERTIFICATE_KIND,
    TOWER_KIND,
    encode_int,
    encode_weights,
    envelope,
    seal,
    steps_doc,
    system_doc,
    track_doc,
    triangulation_doc,
)
from app.services.curves import NormalMulticurve
from app.services.heegaard import HeegaardDescription, canonical_systems
from app.services.pants_system import DecompositionSystem, twist_coordinate
from app.services.tower import Tower
from app.services.tower_search import build_aux_tower, build_tower, check_bad_set, twisted, window_range
from app.services.track_coordinates import TrackChart, covers
from app.services.twists import ShortPosition, TwistWord, intersection_with, short_position
from app.services.verifier import verify_certificate
from app.utils.logging_utils import get_logger

logger = get_logger(__name__)

AUX_PATTERN = "default"
CANDIDATE_COUNT = 5
MIDDLE_EXPONENT = 1
RAISE_ROUNDS = 3


@dataclass(frozen=True)
class GuideChoice:
    guide: NormalMulticurve
    tower: Tower
    aux_tower: Optional[Tower]
    attempt: int


@dataclass(frozen=True)
class ExponentSelection:
    exponents: Tuple[int, ...]
    candidates: Tuple[int, ...]
    chosen: int
    ledger: Tuple[LedgerEntry, ...]


# ----------------------------------------------------------------------
# vodilna krivulja


def _random_word(rng: random.Random, pool: Sequence[ShortPosition], length: int) -> List[Tuple[ShortPosition, int]]:
    return [(rng.choice(pool), rng.choice((-2, -1, 1, 2))) for _ in range(length)]


def _apply_letters(letters: Sequence[Tuple[ShortPosition, int]], curve: NormalMulticurve) -> NormalMulticurve:
    for short, power in reversed(letters):
        curve = twisted(short, power, curve)
    return curve


def raise_twists(system: DecompositionSystem, curve: NormalMulticurve) -> NormalMulticurve:
    """Zasuka c okoli krivulj sistema, dokler ni vsak zasučni parameter vsaj 1."""
    for idx, short in enumerate(system.shorts):
        m = intersection_with(curve, short)
        if m == 0:
            continue
        t = twist_coordinate(system, idx, curve)
        if t >= 1:
            continue
        s = math.ceil((1 - t) / m)
        for power in (s, -s):
            moved = twisted(short, power, curve)
            if twist_coordinate(system, idx, moved) >= 1:
                curve = moved
                break
    return curve


def search_guide(
    description: HeegaardDescription,
    chart: TrackChart,
    length: int,
    rng: random.Random,
    aux_chart: Optional[TrackChart] = None,
    loop_shorts: Sequence[ShortPosition] = (),
    attempts: Optional[int] = None,
) -> GuideChoice:
    attempts = attempts or get_settings().guide_attempts
    pool = list(description.D.shorts) + list(description.E.shorts)
    start = description.E.duals[0]  # type: ignore[index]
    charts = [chart] + ([aux_chart] if aux_chart is not None else [])
    for attempt in range(1, attempts + 1):
        guide = _apply_letters(_random_word(rng, pool, rng.randint(4, 8)), start)
        for _ in range(RAISE_ROUNDS):
            for c in charts:
                guide = raise_twists(c.system, guide)
            if all(covers(c, guide, connected=True) for c in charts):
                break
        else:
            logger.debug("Poskus %d: vodilna krivulja ne pokrije τ_0", attempt)
            continue
        if any(intersection_with(guide, s) == 0 for s in loop_shorts):
            logger.debug("Poskus %d: vodilna krivulja je disjunktna z dvignjeno zanko", attempt)
            continue
        try:
            tower = build_tower(chart, guide, length)
            aux_tower = build_aux_tower(aux_chart, guide) if aux_chart is not None else None
        except TowerError as exc:
            logger.debug("Poskus %d: %s", attempt, exc)
            continue
        logger.info("Vodilna krivulja najdena v poskusu %d (skupna utež %d)", attempt, guide.total)
        return GuideChoice(guide, tower, aux_tower, attempt)
    raise CoverSearchError(f"v {attempts} poskusih ni vodilne krivulje, ki pokrije tirnice")


def choose_k(
    tower: Tower,
    aux_tower: Tower,
    candidate: NormalMulticurve,
    loops: Sequence[LiftedLoop],
    loop_shorts: Optional[Sequence[ShortPosition]] = None,
) -> NormalMulticurve:
    loop_shorts = loop_shorts or [short_position(l.curve) for l in loops]
    problems = []
    if not tower.covers_at(tower.length, candidate, connected=True):
        problems.append(f"ne pokrije τ_{tower.length}")
    if not aux_tower.covers_at(aux_tower.length, candidate, connected=True):
        problems.append("ne pokrije pomožne tirnice τ'")
    disjoint = [l.base for l, s in zip(loops, loop_shorts) if intersection_with(candidate, s) == 0]
    if disjoint:
        problems.append(f"disjunktna z zankami {disjoint}")
    if problems:
        raise CoverSearchError("kandidat za k zavrnjen: " + "; ".join(problems))
    return candidate


# ----------------------------------------------------------------------
# eksponenti


def loop_bad_sets(
    tower: Tower,
    k_short: ShortPosition,
    loops: Sequence[LiftedLoop],
    window: int,
) -> Dict[Tuple[int, int, int], List[int]]:
    """Za vsako zanko eksponenti iz okna, pri katerih δ_k^m(l) ne pokrije τ_n."""
    level = tower.length
    bad_sets = {}
    for loop in loops:
        bad = [
            m for m in range(-window, window + 1)
            if not tower.covers_at(level, twisted(k_short, m, loop.curve), connected=True)
        ]
        check_bad_set(bad)
        bad_sets[(loop.base[0], loop.base[1], loop.component)] = bad
    return bad_sets


def global_twist_exponent(
    k_short: ShortPosition,
    tower: Tower,
    loops: Sequence[LiftedLoop],
    window: Optional[int] = None,
) -> int:
    window = window if window is not None else get_settings().twist_window
    level = tower.length
    for m in window_range(window):
        if all(tower.covers_at(level, twisted(k_short, m, l.curve), connected=True) for l in loops):
            logger.info("Globalni eksponent m=%d", m)
            return m
    bad_sets = loop_bad_sets(tower, k_short, loops, window)
    raise CoverSearchError(f"okno ±{window} izčrpano; slabi eksponenti po zankah: {bad_sets}")


def candidate_exponents(m: int) -> Tuple[int, ...]:
    return tuple(islice((v for v in count(1) if v != m), CANDIDATE_COUNT))


def _word(curves: Sequence[NormalMulticurve], exponents: Sequence[int]) -> TwistWord:
    return TwistWord(tuple(zip(curves, exponents)))


def select_exponents(
    description: HeegaardDescription,
    tower: Tower,
    aux_tower: Tower,
    loop_curves: Sequence[NormalMulticurve],
    m: int,
    window: Optional[int] = None,
) -> ExponentSelection:
    window = window if window is not None else get_settings().twist_window
    p = len(loop_curves)
    if p < 3:
        raise PipelineError(f"sistem zank ima {p} krivulj, potrebne so vsaj 3")
    if tower.length < 2:
        raise PipelineError("stolp mora imeti vsaj dva koraka")
    shorts = [short_position(c) for c in loop_curves]
    middle = [MIDDLE_EXPONENT] * (p - 2)
    candidates = candidate_exponents(m)
    level = tower.length

    # g_j = δ_2^{n_2} ∘ ... ∘ δ_p^{m_j}
    g_images = []
    for mj in candidates:
        tail = _word(loop_curves[1:], middle + [mj])
        g_images.append([tail.apply(c, shorts[1:]) for c in description.D.curves])

    n1 = None
    for value in window_range(window):
        if value == 0:
            continue
        if all(
            tower.covers_system_at(level, [twisted(shorts[0], value, c) for c in images])
            for images in g_images
        ):
            n1 = value
            break
    if n1 is None:
        raise CoverSearchError(f"v oknu ±{window} ni n_1, pri katerem δ_1^n_1(g_j(D)) pokrije τ_{level}")

    chosen = None
    for idx, mj in enumerate(candidates):
        inverse = _word(loop_curves, [n1] + middle + [mj]).inverse()
        images = [inverse.apply(c, list(reversed(shorts))) for c in description.E.curves]
        if aux_tower.covers_system_at(aux_tower.length, images):
            chosen = idx
            break
    if chosen is None:
        raise BadExponentSetError(f"nobeden od kandidatov {candidates} ne pokrije pomožne tirnice")

    ledger = [
        LedgerEntry(
            kind="forward-cover",
            subject="n_1",
            statement=f"δ_1^{n1}(g_j(D)) pokrije τ_{level} za vse kandidate {list(candidates)}",
            verified=True,
        ),
        LedgerEntry(
            kind="reverse-cover",
            subject=f"m_{chosen + 1}",
            statement=f"δ_p^-{candidates[chosen]}(h(E)) pokrije pomožno tirnico τ'",
            verified=True,
        ),
    ]
    for i in range(2, p):
        ledger.append(
            LedgerEntry(
                kind="middle-slope",
                subject=f"n_{i}",
                statement=f"naklon 1/{MIDDLE_EXPONENT} na l_{i} ni robni naklon orientabilne nestisljive ploskve",
            )
        )
    for j, mj in enumerate(candidates, start=1):
        ledger.append(
            LedgerEntry(
                kind="boundary-slope",
                subject=f"m_{j}",
                statement=f"naklon 1/{mj} na l_p ni robni naklon",
            )
        )
    exponents = tuple([n1] + middle + [candidates[chosen]])
    logger.info("Eksponenti: n_1=%d, n_p=%d (kandidat %d)", n1, exponents[-1], chosen + 1)
    return ExponentSelection(exponents, candidates, chosen, tuple(ledger))


# ----------------------------------------------------------------------
# certifikat


def closing_ledger() -> List[LedgerEntry]:
    return [
        LedgerEntry(kind="non-haken", subject="M", statement="M ne vsebuje vložene nestisljive ploskve"),
        LedgerEntry(kind="hyperbolic", subject="M", statement="M je hiperbolična"),
    ]


def assemble_certificate(
    description: HeegaardDescription,
    seed: int,
    chart: TrackChart,
    choice: GuideChoice,
    k: NormalMulticurve,
    m: int,
    lifted: Sequence[LiftedLoop],
    loop_curves: Sequence[NormalMulticurve],
    selection: ExponentSelection,
    extra_ledger: Sequence[LedgerEntry] = (),
    window: Optional[int] = None,
) -> Dict[str, Any]:
    word = _word(loop_curves, selection.exponents)
    shorts = word.shorts()
    image = [word.apply(c, shorts) for c in description.D.curves]
    letters = [
        TwistLetterDoc(
            curve=encode_weights(curve.weights),
            exponent=encode_int(power),
            base_loop=loop.base,
            component=loop.component,
            level=str(loop.level),
        )
        for (curve, power), loop in zip(word.letters, lifted)
    ]
    doc = CertificateDoc(
        genus=description.genus,
        distance=encode_int(choice.tower.length),
        seed=encode_int(seed),
        window=encode_int(window) if window is not None else None,
        triangulation=triangulation_doc(description.cover.triangulation),
        D=system_doc(description.D),
        E=system_doc(description.E),
        track=track_doc(chart.track, "default"),
        tower=steps_doc(choice.tower.steps),
        aux_pattern=AUX_PATTERN,
        aux_tower=steps_doc(choice.aux_tower.steps if choice.aux_tower else ()),
        k=encode_weights(k.weights),
        global_exponent=encode_int(m),
        candidates=[encode_int(c) for c in selection.candidates],
        chosen_candidate=selection.chosen,
        twist_word=letters,
        image_D=[encode_weights(c.weights) for c in image],
        ledger=list(extra_ledger) + list(selection.ledger) + closing_ledger(),
    )
    document = seal(envelope(CERTIFICATE_KIND, doc))
    response = verify_certificate(document)
    doc.verdict = VerdictDoc(valid=response.valid, checks=response.checks)
    if not response.valid:
        failed = [c.name for c in response.checks if not c.passed]
        logger.error("Certifikat se ni preveril: %s", failed)
    return seal(envelope(CERTIFICATE_KIND, doc))


def forge(genus: int, distance: int, seed: int, window: Optional[int] = None) -> Dict[str, Any]:
    if distance < 2:
        raise PipelineError("razdalja certifikata mora biti vsaj 2")
    window = window if window is not None else get_settings().twist_window
    description = canonical_systems(genus)
    rng = random.Random(seed)
    chart = TrackChart.standard(description.E)
    aux_chart = TrackChart.standard(description.D, AUX_PATTERN)
    lifted = lift_system(description.cover, assign_levels(description.cover.branch.model))
    loop_shorts = [short_position(l.curve) for l in lifted]

    choice = search_guide(description, chart, distance, rng, aux_chart, loop_shorts)
    k = choose_k(choice.tower, choice.aux_tower, choice.guide, lifted, loop_shorts)  # type: ignore[arg-type]
    k_short = short_position(k)
    m = global_twist_exponent(k_short, choice.tower, lifted, window)
    loop_curves = [twisted(k_short, m, l.curve) for l in lifted]

    # ConstructionError iz preizkusa invariantnosti se ne ujame
    conjugated_involution(description.cover, k, m, lifted)
    involution = LedgerEntry(
        kind="involution",
        subject="ι'",
        statement="δ_k^m ∘ ι ∘ δ_k^-m ohranja zasukan sistem zank",
        verified=True,
    )

    selection = select_exponents(description, choice.tower, choice.aux_tower, loop_curves, m, window)  # type: ignore[arg-type]
    entries = [
        LedgerEntry(
            kind="guide",
            subject="k",
            statement=f"k pokrije τ_{choice.tower.length} in τ' ter seka vse dvignjene zanke (poskus {choice.attempt})",
            verified=True,
        ),
        involution,
    ]
    return assemble_certificate(description, seed, chart, choice, k, m, lifted, loop_curves, selection, entries, window)


def build_tower_document(genus: int, length: int, seed: int) -> Dict[str, Any]:
    description = canonical_systems(genus)
    chart = TrackChart.standard(description.E)
    choice = search_guide(description, chart, length, random.Random(seed))
    doc = TowerDoc(
        genus=genus,
        length=length,
        seed=encode_int(seed),
        guide=encode_weights(choice.guide.weights),
        track=track_doc(chart.track),
        steps=steps_doc(choice.tower.steps),
    )
    return envelope(TOWER_KIND, doc)


def distance_bound(response: VerifyResponse, document: Dict[str, Any]) -> Optional[str]:
    """Le spodnja meja; natančne razdalje certifikat ne trdi."""
    if not response.valid:
        return None
    return f"d(V, W) >= {document['payload']['distance']}"
