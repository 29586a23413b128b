"""
Nošenje krivulj s standardno polno tirnico prek koordinat, prilagojenih hlačam.

Število presečišč z robovi hlač določi šive in snope, zasučni parameter pa
veji jedra: t1 = floor(σ / 2 i_d), t2 = t1 + m.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Mapping, Optional, Tuple

from app.services.curves import NormalMulticurve
from app.services.pants_system import (
    DecompositionSystem,
    _slot_numbers,
    classify_triple,
    triple_has_no_waves,
    twist_coordinate,
)
from app.services.train_track import FatTrainTrack, Measure, bundle_name, standard_complete_track


@dataclass(frozen=True)
class TrackChart:
    system: DecompositionSystem
    track: FatTrainTrack

    @classmethod
    def standard(cls, system: DecompositionSystem, pattern: str = "default") -> "TrackChart":
        return cls(system, standard_complete_track(system, pattern))

    @cached_property
    def seam_lookup(self) -> Dict[Tuple[int, FrozenSet[int]], str]:
        lookup = {}
        for name, tag in self.track.tags:
            if tag[0] == "seam":
                lookup[(tag[1], frozenset(tag[2]))] = name
        return lookup

    def zero(self) -> Measure:
        return {b: 0 for b in self.track.branches}

    def single_measure(self, c: NormalMulticurve) -> Optional[Measure]:
        """Mera povezane krivulje c na τ_0 ali None, če c ni nošena."""
        numbers = self.system.boundary_numbers(c)
        measure = self.zero()
        if not any(numbers):
            if c.total == 0:
                return measure
            for idx, curve in enumerate(self.system.curves):
                if curve.weights == c.weights:
                    t1, t2 = self.track.cores[idx]
                    measure[t1] = measure[t2] = 1
                    return measure
            return None

        for pants in self.system.pants:
            m = _slot_numbers(pants, numbers)
            if not triple_has_no_waves(m):
                return None
            (x01, x02, x12), _ = classify_triple(m)
            for (k, l), value in (((0, 1), x01), ((0, 2), x02), ((1, 2), x12)):
                measure[self.seam_lookup[(pants.index, frozenset((k, l)))]] = value
            for k in range(3):
                measure[bundle_name(pants.index, k)] = m[k]

        for idx, (t1, t2) in enumerate(self.track.cores):
            if numbers[idx] == 0:
                continue
            twist = math.floor(twist_coordinate(self.system, idx, c))
            if twist < 0:
                return None
            measure[t1] = twist
            measure[t2] = twist + numbers[idx]
        return measure

    def measure(self, c: NormalMulticurve, connected: bool = False) -> Optional[Measure]:
        if connected:
            return self.single_measure(c)
        total = self.zero()
        for component in c.components():
            m = self.single_measure(component)
            if m is None:
                return None
            total = add_measures(total, m)
        return total


def add_measures(a: Mapping[str, int], b: Mapping[str, int]) -> Measure:
    return {k: a[k] + b[k] for k in a}


def is_positive(measure: Optional[Mapping[str, int]]) -> bool:
    return measure is not None and all(v > 0 for v in measure.values())


def carries(chart: TrackChart, c: NormalMulticurve, connected: bool = False) -> Optional[Measure]:
    return chart.measure(c, connected)


def covers(chart: TrackChart, c: NormalMulticurve, connected: bool = False) -> bool:
    return is_positive(chart.measure(c, connected))
