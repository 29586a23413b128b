"""
Stolpi izpeljanih tirnic τ_0 ⊃ τ_1 ⊃ ... ⊃ τ_n.

Stolp hrani le zapise razcepov; ponovitev in preverjanje izpeljanih korakov
sta del jedra, ki ga uporablja preverjevalnik. Lok razcepa teče po
razcepljeni veji in naprej po težki vhodni veji; sosednje veje niso
pokrite.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence, Set, Tuple

from app.core.errors import SplitError
from app.services.curves import NormalMulticurve
from app.services.track_coordinates import TrackChart, add_measures, is_positive
from app.services.train_track import FatTrainTrack, Measure, SplitRecord

Step = Tuple[SplitRecord, ...]


def replay(track: FatTrainTrack, step: Sequence[SplitRecord]) -> FatTrainTrack:
    for record in step:
        expected = track.split_record(record.branch, record.heavy)
        if expected != record:
            raise SplitError(f"zapis razcepa veje {record.branch} se ne ujema s tirnico")
        track = track.split(record.branch, record.heavy)
    return track


def transport_measure(measure: Optional[Measure], steps: Iterable[Sequence[SplitRecord]]) -> Optional[Measure]:
    for step in steps:
        for record in step:
            if measure is None:
                return None
            measure = FatTrainTrack.split_measure(measure, record)
    return measure


def step_support(step: Sequence[SplitRecord]) -> Set[str]:
    return {b for record in step for b in record.support}


def is_derived(before: FatTrainTrack, after: FatTrainTrack, step: Sequence[SplitRecord]) -> bool:
    try:
        replayed = replay(before, step)
    except SplitError:
        return False
    return replayed.structure() == after.structure() and step_support(step) >= set(before.branches)


@dataclass(frozen=True)
class Tower:
    chart: TrackChart
    steps: Tuple[Step, ...]

    @property
    def length(self) -> int:
        return len(self.steps)

    @cached_property
    def tracks(self) -> Tuple[FatTrainTrack, ...]:
        tracks = [self.chart.track]
        for step in self.steps:
            tracks.append(replay(tracks[-1], step))
        return tuple(tracks)

    def measure_at(self, level: int, c: NormalMulticurve, connected: bool = False) -> Optional[Measure]:
        return transport_measure(self.chart.measure(c, connected), self.steps[:level])

    def carried_at(self, level: int, c: NormalMulticurve, connected: bool = False) -> bool:
        return self.measure_at(level, c, connected) is not None

    def covers_at(self, level: int, c: NormalMulticurve, connected: bool = False) -> bool:
        return is_positive(self.measure_at(level, c, connected))

    def covers_system_at(self, level: int, curves: Sequence[NormalMulticurve]) -> bool:
        """Unija pokrije: vsaka komponenta nošena in vsota pozitivna."""
        total: Optional[Measure] = None
        for c in curves:
            m = self.measure_at(level, c, connected=True)
            if m is None:
                return False
            total = m if total is None else add_measures(total, m)
        return is_positive(total)

    def carries_system_at(self, level: int, curves: Sequence[NormalMulticurve]) -> bool:
        return all(self.carried_at(level, c, connected=True) for c in curves)

