"""
Debele tirnice (fat train tracks) kot abstraktni trakovni grafi.

Kretnica ima tangento; `incoming` so konci vej zadaj, `outgoing` konci vej
spredaj, oboje od leve proti desni gledano v smeri tangente. Konec veje je
par (ime veje, 0|1); veja teče od konca 0 proti koncu 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from app.core.errors import SplitError, TrackError
from app.services.pants_system import DecompositionSystem, Pants
from app.utils.logging_utils import get_logger

logger = get_logger(__name__)

End = Tuple[str, int]
Measure = Dict[str, int]


@dataclass(frozen=True)
class Switch:
    name: str
    incoming: Tuple[End, ...]
    outgoing: Tuple[End, ...]

    def ends(self) -> Tuple[End, ...]:
        return self.incoming + self.outgoing


@dataclass(frozen=True)
class Region:
    cusps: int
    sides: Tuple[Tuple[str, int], ...]  # (veja, smer) z regijo na levi


@dataclass(frozen=True)
class SplitRecord:
    branch: str
    heavy: str  # "left" | "right"
    a_left: str
    a_right: str
    b_left: str
    b_right: str

    @property
    def support(self) -> Tuple[str, str]:
        """Veje, po katerih teče lok razpetja: razcepljena veja in težka vhodna veja."""
        return (self.branch, self.a_left if self.heavy == "left" else self.a_right)


@dataclass(frozen=True)
class FatTrainTrack:
    genus: int
    branches: Tuple[str, ...]
    switches: Tuple[Switch, ...]
    # ciklična izjemna vlakna: (t1, t2) za vsako krivuljo sistema
    cores: Tuple[Tuple[str, str], ...] = ()
    # veja -> (vrsta, hlače ali krivulja, podatek)
    tags: Tuple[Tuple[str, Tuple], ...] = ()

    # --------------------------------------------------------------
    # osnovno

    @cached_property
    def switch_map(self) -> Dict[str, Switch]:
        return {s.name: s for s in self.switches}

    @cached_property
    def end_location(self) -> Dict[End, Tuple[str, str, int]]:
        """Konec veje -> (kretnica, 'in'|'out', indeks)."""
        where: Dict[End, Tuple[str, str, int]] = {}
        for s in self.switches:
            for side, ends in (("in", s.incoming), ("out", s.outgoing)):
                for k, end in enumerate(ends):
                    if end in where:
                        raise TrackError(f"konec {end} je pripet dvakrat")
                    where[end] = (s.name, side, k)
        for b in self.branches:
            for x in (0, 1):
                if (b, x) not in where:
                    raise TrackError(f"konec {(b, x)} ni pripet")
        return where

    @cached_property
    def tag_map(self) -> Dict[str, Tuple]:
        return dict(self.tags)

    def validate(self) -> None:
        _ = self.end_location
        for s in self.switches:
            if not s.incoming or not s.outgoing:
                raise TrackError(f"kretnica {s.name} nima vej na obeh straneh")

    def switch_condition_holds(self, measure: Mapping[str, int]) -> bool:
        for s in self.switches:
            back = sum(measure[b] for b, _ in s.incoming)
            front = sum(measure[b] for b, _ in s.outgoing)
            if back != front:
                return False
        return all(measure[b] >= 0 for b in self.branches)

    def structure(self) -> Tuple:
        return tuple(sorted((s.name, s.incoming, s.outgoing) for s in self.switches))

    def euler_characteristic_regions(self) -> int:
        return len(self.switches) - len(self.branches) + len(self.regions)

    # --------------------------------------------------------------
    # komplementarne regije

    def _step(self, branch: str, direction: int) -> Tuple[str, int, bool]:
        """Prehod na naslednjo stran regije; vrne (veja, smer, ali je bil obrat v konici)."""
        end = (branch, 1 if direction > 0 else 0)
        name, side, k = self.end_location[end]
        s = self.switch_map[name]
        if side == "in":
            if k > 0:
                nxt, cusp = s.incoming[k - 1], True
            else:
                nxt, cusp = s.outgoing[0], False
        else:
            if k < len(s.outgoing) - 1:
                nxt, cusp = s.outgoing[k + 1], True
            else:
                nxt, cusp = s.incoming[-1], False
        b, x = nxt
        return b, (1 if x == 0 else -1), cusp

    @cached_property
    def regions(self) -> Tuple[Region, ...]:
        unvisited = {(b, d) for b in self.branches for d in (1, -1)}
        regions = []
        for start in sorted(unvisited):
            if start not in unvisited:
                continue
            sides = []
            cusps = 0
            cur = start
            while cur in unvisited:
                unvisited.discard(cur)
                sides.append(cur)
                b, d, cusp = self._step(*cur)
                cusps += int(cusp)
                cur = (b, d)
            if cur != start:
                raise TrackError("hoja po robu regije se ni zaprla")
            regions.append(Region(cusps, tuple(sides)))
        return tuple(regions)

    def census(self) -> Tuple[Tuple[int, int], ...]:
        """Popis (število konic, število strani) regij, urejen."""
        return tuple(sorted((r.cusps, len(r.sides)) for r in self.regions))

    def is_maximal(self) -> bool:
        if any(r.cusps != 3 for r in self.regions):
            return False
        # vse regije so diski natanko tedaj, ko se Eulerjeva karakteristika ujema
        return self.euler_characteristic_regions() == 2 - 2 * self.genus

    # --------------------------------------------------------------
    # razcepi

    def large_branches(self) -> List[str]:
        large = []
        for b in self.branches:
            s0, side0, _ = self.end_location[(b, 0)]
            s1, side1, _ = self.end_location[(b, 1)]
            if s0 == s1:
                continue
            sw0, sw1 = self.switch_map[s0], self.switch_map[s1]
            if len(getattr(sw0, "incoming" if side0 == "in" else "outgoing")) == 1 and len(
                getattr(sw1, "incoming" if side1 == "in" else "outgoing")
            ) == 1:
                large.append(b)
        return large

    def split_frame(self, branch: str) -> Tuple[Tuple[End, End], Tuple[End, End], str, str]:
        """Konci (A_l, A_r) pri začetku in (B_l, B_r) pri koncu, gledano v smeri veje."""
        s1_name, side1, _ = self.end_location[(branch, 0)]
        s2_name, side2, _ = self.end_location[(branch, 1)]
        s1, s2 = self.switch_map[s1_name], self.switch_map[s2_name]
        a = s1.incoming if side1 == "out" else tuple(reversed(s1.outgoing))
        b = s2.outgoing if side2 == "in" else tuple(reversed(s2.incoming))
        if len(a) != 2 or len(b) != 2:
            raise SplitError(f"veja {branch} ni velika trivalentna veja")
        return (a[0], a[1]), (b[0], b[1]), s1_name, s2_name

    def split_record(self, branch: str, heavy: str) -> SplitRecord:
        (al, ar), (bl, br), _, _ = self.split_frame(branch)
        return SplitRecord(branch, heavy, al[0], ar[0], bl[0], br[0])

    def split(self, branch: str, heavy: str) -> "FatTrainTrack":
        if heavy not in ("left", "right"):
            raise SplitError(f"neznana vrsta razcepa {heavy}")
        if branch not in self.large_branches():
            raise SplitError(f"veja {branch} ni velika")
        (al, ar), (bl, br), s1, s2 = self.split_frame(branch)
        e0, e1 = (branch, 0), (branch, 1)
        if heavy == "left":
            x = Switch(s1, (al,), (bl, e0))
            y = Switch(s2, (e1, ar), (br,))
        else:
            x = Switch(s1, (ar,), (e0, br))
            y = Switch(s2, (al, e1), (bl,))
        switches = tuple(x if s.name == s1 else y if s.name == s2 else s for s in self.switches)
        return FatTrainTrack(self.genus, self.branches, switches, self.cores, self.tags)

    # --------------------------------------------------------------
    # mere

    @staticmethod
    def split_measure(measure: Mapping[str, int], record: SplitRecord) -> Optional[Measure]:
        """Mera na razcepljeni tirnici ali None, če krivulja ni nošena."""
        new = dict(measure)
        if record.heavy == "left":
            value = measure[record.a_left] - measure[record.b_left]
        else:
            value = measure[record.a_right] - measure[record.b_right]
        if value < 0:
            return None
        new[record.branch] = value
        return new

    @staticmethod
    def pushforward(measure: Mapping[str, int], record: SplitRecord) -> Measure:
        new = dict(measure)
        new[record.branch] = measure[record.a_left] + measure[record.a_right]
        return new

    def reconstruct(self, measure: Mapping[str, int]) -> List[Tuple[Tuple[str, int], ...]]:
        """Zaprte poti po tirnici, ki realizirajo celoštevilsko mero."""
        if not self.switch_condition_holds(measure):
            raise TrackError("mera ne zadošča pogojem kretnic")
        graph = nx.Graph()
        for b in self.branches:
            for j in range(measure[b]):
                graph.add_node((b, j))

        def strands(end: End, side: str) -> List[Tuple[str, int]]:
            b, x = end
            count = measure[b]
            # vrstni red pramenov vzdolž veje se ujema s tangento, če veja
            # v kretnico vstopa naprej (konec 1 zadaj ali konec 0 spredaj)
            aligned = (side == "in" and x == 1) or (side == "out" and x == 0)
            order = range(count) if aligned else range(count - 1, -1, -1)
            return [(b, j) for j in order]

        for s in self.switches:
            back = [p for end in s.incoming for p in strands(end, "in")]
            front = [p for end in s.outgoing for p in strands(end, "out")]
            for p, q in zip(back, front):
                graph.add_edge(p, q, switch=s.name)

        paths = []
        for component in sorted((sorted(c) for c in nx.connected_components(graph)), key=lambda c: c[0]):
            counts: Dict[str, int] = {}
            for b, _ in component:
                counts[b] = counts.get(b, 0) + 1
            paths.append(tuple(sorted(counts.items())))
        return paths


def component_measures(track: FatTrainTrack, measure: Mapping[str, int]) -> List[Measure]:
    """Mere posameznih zaprtih poti rekonstrukcije."""
    result = []
    for path in track.reconstruct(measure):
        m = {b: 0 for b in track.branches}
        m.update(dict(path))
        result.append(m)
    return result


# ----------------------------------------------------------------------
# standardna polna tirnica


PATTERNS = ("default", "mirror")


def core_names(curve: int) -> Tuple[str, str]:
    return f"c{curve}.1", f"c{curve}.2"


def bundle_name(pants: int, slot: int) -> str:
    return f"b{pants}.{slot}"


def seam_name(pants: int, k: int, l: int) -> str:
    return f"s{pants}.{k}{l}"


def standard_complete_track(system: DecompositionSystem, pattern: str = "default") -> FatTrainTrack:
    """
    Polna debela tirnica s pozitivnim zasukom okoli krivulj sistema.

    V vsakih hlačah trije šivi povezujejo tri robne kretnice; snop povezuje
    robno kretnico z jedrom krivulje; jedro je krog iz vej t1 in t2.
    """
    if pattern not in PATTERNS:
        raise TrackError(f"neznan vzorec {pattern}")
    pants_list: Sequence[Pants] = system.pants
    genus = system.triangulation.genus

    occurrences: Dict[int, List[Tuple[int, int]]] = {}
    for p in pants_list:
        for k, (curve, _) in enumerate(p.slots):
            if curve < 0:
                raise TrackError("sistem s punkcijami nima polne tirnice")
            occurrences.setdefault(curve, []).append((p.index, k))

    branches: List[str] = []
    tags: List[Tuple[str, Tuple]] = []
    switches: List[Switch] = []
    cores: List[Tuple[str, str]] = []

    for p in pants_list:
        order = [0, 1, 2] if pattern == "default" else [0, 2, 1]
        pos = {slot: i for i, slot in enumerate(order)}
        for i in range(3):
            k, l = order[i], order[(i + 1) % 3]
            name = seam_name(p.index, k, l)
            branches.append(name)
            tags.append((name, ("seam", p.index, (k, l))))
        for k in range(3):
            name = bundle_name(p.index, k)
            branches.append(name)
            tags.append((name, ("bundle", p.index, k)))
        for k in range(3):
            i = pos[k]
            prev_slot, next_slot = order[(i - 1) % 3], order[(i + 1) % 3]
            # šiv (prev, k) se tu konča s koncem 1, šiv (k, next) začne s koncem 0
            left = (seam_name(p.index, prev_slot, k), 1)
            right = (seam_name(p.index, k, next_slot), 0)
            switches.append(Switch(f"rho{p.index}.{k}", ((bundle_name(p.index, k), 1),), (left, right)))

    for curve in sorted(occurrences):
        where = occurrences[curve]
        if len(where) != 2:
            raise TrackError(f"krivulja {curve} mora imeti dve strani")
        (pp, kp), (pq, kq) = where
        t1, t2 = core_names(curve)
        branches.extend([t1, t2])
        tags.append((t1, ("core", curve, 1)))
        tags.append((t2, ("core", curve, 2)))
        cores.append((t1, t2))
        # hlače P so levo od smeri jedra
        switches.append(
            Switch(f"sig{curve}+", ((bundle_name(pp, kp), 0), (t1, 1)), ((t2, 0),))
        )
        switches.append(
            Switch(f"sig{curve}-", ((t2, 1),), ((t1, 0), (bundle_name(pq, kq), 0)))
        )

    track = FatTrainTrack(genus, tuple(branches), tuple(switches), tuple(cores), tuple(tags))
    track.validate()
    logger.debug("Standardna tirnica: %d vej, %d kretnic", len(branches), len(switches))
    return track


# ----------------------------------------------------------------------
# polnost


@dataclass(frozen=True)
class CompletenessReport:
    complete: bool
    reason: Optional[str] = None
    triangles: int = 0


def is_complete(track: FatTrainTrack, system: DecompositionSystem) -> CompletenessReport:
    try:
        pants_list = system.pants
        track.validate()
    except Exception as exc:  # neveljaven sistem ali tirnica
        return CompletenessReport(False, f"neveljaven vhod: {exc}")

    if len(track.cores) != len(system):
        return CompletenessReport(False, "jedra tirnice se ne ujemajo s krivuljami sistema")
    for t1, t2 in track.cores:
        s_a = track.end_location[(t1, 1)][0]
        s_b = track.end_location[(t2, 0)][0]
        s_c = track.end_location[(t2, 1)][0]
        s_d = track.end_location[(t1, 0)][0]
        if s_a != s_b or s_c != s_d:
            return CompletenessReport(False, f"izjemno vlakno {t1}/{t2} ni ciklično")

    if not track.is_maximal():
        return CompletenessReport(False, "tirnica ni maksimalna")

    tag_map = track.tag_map
    per_pants: Dict[int, int] = {}
    for region in track.regions:
        owners = {tag_map[b][1] for b, _ in region.sides if tag_map.get(b, ("",))[0] == "seam"}
        if len(owners) != 1:
            return CompletenessReport(False, "regija ne pripada natanko enim hlačam")
        owner = owners.pop()
        per_pants[owner] = per_pants.get(owner, 0) + 1
    if sorted(per_pants) != [p.index for p in pants_list] or any(v != 2 for v in per_pants.values()):
        return CompletenessReport(False, "hlače nimajo natanko dveh trikotnikov")

    for b in track.branches:
        tag = tag_map.get(b)
        if tag and tag[0] == "seam":
            k, l = tag[2]
            if k == l:
                return CompletenessReport(False, f"veja {b} je val")
            rho_k = track.end_location[(b, 0)][0]
            rho_l = track.end_location[(b, 1)][0]
            if rho_k == rho_l:
                return CompletenessReport(False, f"veja {b} je val")

    return CompletenessReport(True, None, len(track.regions))
