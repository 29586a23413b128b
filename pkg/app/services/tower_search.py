"""
Gradnja stolpov in iskanje eksponentov zasukov.

En izpeljan korak je zaporedje razcepov, ki jih vodi mera vodilne krivulje,
dokler unija lokov razpetja ne pokrije vseh vej tirnice. Preverjevalnik tega
modula ne potrebuje: koraka le ponovi in preveri prek app.services.tower.
"""
from __future__ import annotations

from typing import List, Mapping, Optional, Sequence, Set, Tuple

from app.core.config import get_settings
from app.core.errors import BadExponentSetError, TowerError
from app.services.curves import NormalMulticurve
from app.services.tower import Step, Tower
from app.services.track_coordinates import TrackChart, is_positive
from app.services.train_track import FatTrainTrack, Measure, SplitRecord
from app.services.twists import ShortPosition
from app.utils.logging_utils import get_logger

logger = get_logger(__name__)


def derived_step(track: FatTrainTrack, guide: Mapping[str, int], limit: Optional[int] = None) -> Tuple[Step, FatTrainTrack, Measure]:
    limit = limit or get_settings().split_limit
    covered: Set[str] = set()
    records: List[SplitRecord] = []
    measure: Measure = dict(guide)
    everything = set(track.branches)
    while not covered >= everything:
        if len(records) >= limit:
            raise TowerError(f"izpeljan korak presegel {limit} razcepov")
        candidates = []
        for b in track.large_branches():
            (al, _), (bl, _), _, _ = track.split_frame(b)
            if measure[al[0]] != measure[bl[0]]:
                candidates.append((-measure[b], b, "left" if measure[al[0]] > measure[bl[0]] else "right"))
        if not candidates:
            raise TowerError("vodilna krivulja ne določa nobenega razcepa")
        _, branch, heavy = min(candidates)
        record = track.split_record(branch, heavy)
        new_measure = track.split_measure(measure, record)
        if new_measure is None:
            raise TowerError("vodilna krivulja ni nošena po razcepu")
        measure = new_measure
        track = track.split(branch, heavy)
        records.append(record)
        covered.update(record.support)
    return tuple(records), track, measure


def build_tower(chart: TrackChart, guide: NormalMulticurve, n: int) -> Tower:
    if n < 2:
        raise TowerError("stolp za certifikat mora imeti vsaj dva koraka")
    return _derive(chart, guide, n)


def build_aux_tower(chart: TrackChart, guide: NormalMulticurve) -> Tower:
    """Pomožna tirnica τ': en izpeljan korak nad τ_D."""
    return _derive(chart, guide, 1)


def _derive(chart: TrackChart, guide: NormalMulticurve, n: int) -> Tower:
    measure = chart.measure(guide, connected=True)
    if not is_positive(measure):
        raise TowerError("vodilna krivulja ne pokrije τ_0")
    track = chart.track
    steps: List[Step] = []
    for level in range(n):
        step, track, measure = derived_step(track, measure)  # type: ignore[arg-type]
        steps.append(step)
        logger.info("Izpeljan korak %d: %d razcepov", level + 1, len(step))
    return Tower(chart, tuple(steps))


# ----------------------------------------------------------------------
# iskanje dobrih eksponentov


def twisted(short: ShortPosition, m: int, c: NormalMulticurve) -> NormalMulticurve:
    return c.with_weights(short.restore(short.twist(short.transport(c.weights), m)))


def window_range(window: int) -> List[int]:
    """Eksponenti po naraščajoči |m|, pozitivni pred negativnimi."""
    values = [0]
    for m in range(1, window + 1):
        values.extend([m, -m])
    return values


def check_bad_set(bad: Sequence[int]) -> None:
    if bad and (len(bad) > 4 or max(bad) - min(bad) > 3):
        raise BadExponentSetError(f"slabi eksponenti {sorted(bad)} niso v štirih zaporednih celih številih")


def twist_cover_search(
    tower: Tower,
    level: int,
    short: ShortPosition,
    curves: Sequence[NormalMulticurve],
    window: Optional[int] = None,
) -> List[int]:
    """Množica m iz okna, za katere δ_k^m(curves) pokrije τ_level."""
    window = window if window is not None else get_settings().twist_window
    if not tower.covers_at(level, short.curve, connected=True):
        raise TowerError("krivulja zasuka ne pokrije tirnice")
    good, bad = [], []
    for m in range(-window, window + 1):
        images = [twisted(short, m, c) for c in curves]
        (good if tower.covers_system_at(level, images) else bad).append(m)
    check_bad_set(bad)
    return good


def arc_cover_check(tower: Tower, level: int, arc_cover: NormalMulticurve, curve: NormalMulticurve) -> bool:
    """Navzkrižno preverjanje: krivulja, ki vsebuje pokrivajoč lok, pokrije τ_level."""
    if not tower.covers_at(level, arc_cover, connected=True):
        raise TowerError("lok ne pokrije tirnice; predpostavka ni izpolnjena")
    return tower.covers_at(level, curve, connected=True)
