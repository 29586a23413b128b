"""
Poligonski model n-krat preluknjane sfere, krivulje β_{i,j}, zaprta pot hlačnih
razcepov P_0 ... P_{n(n-3)}, nivojske zanke in A-regije.

Robovi poligona so oštevilčeni 1..n. Oglišče P_k leži med robovoma k in k+1
(P_n med n in 1). β_{i,j} obkroža oglišča P_i, ..., P_{j-1} (ciklično).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, List, Optional, Tuple

from app.core.errors import ConstructionError, InvalidCurveError
from app.services.curves import NormalMulticurve
from app.services.pants_system import DecompositionSystem
from app.services.triangulation import Triangulation
from app.utils.logging_utils import get_logger

logger = get_logger(__name__)

TWICE_PUNCTURED_DISK = "twice-punctured disk"
PUNCTURED_ANNULUS = "once-punctured annulus"


class PolygonModel:
    """Dva n-kotnika, zlepljena vzdolž ekvatorja γ, s pahljačama iz P_n."""

    def __init__(self, n: int):
        if n < 5:
            raise InvalidCurveError("poligonski model potrebuje n >= 5")
        self.n = n

    def __repr__(self) -> str:
        return f"PolygonModel(n={self.n})"

    # oznake robov triangulacije
    def equator_edge(self, i: int) -> int:
        return (i - 1) % self.n

    def top_diagonal(self, k: int) -> int:
        return self.n + (k - 2)

    def bottom_diagonal(self, k: int) -> int:
        return 2 * self.n - 3 + (k - 2)

    @cached_property
    def triangulation(self) -> Triangulation:
        n = self.n
        g, top, bottom = self.equator_edge, self.top_diagonal, self.bottom_diagonal
        faces = []
        for k in range(1, n - 1):
            first = g(1) if k == 1 else top(k)
            last = g(n) if k + 1 == n - 1 else ~top(k + 1)
            faces.append((first, g(k + 1), last))
        for k in range(1, n - 1):
            first = ~g(n) if k + 1 == n - 1 else bottom(k + 1)
            last = ~g(1) if k == 1 else ~bottom(k)
            faces.append((first, ~g(k + 1), last))
        return Triangulation(faces, vertices_are_punctures=True)

    def vertex_of(self, k: int) -> int:
        """Oglišče triangulacije, ki ustreza P_k."""
        return self.triangulation.tail(self.equator_edge(k % self.n + 1))

    def equator_crossings(self, curve: NormalMulticurve) -> int:
        """Presečišča z γ; γ je unija ekvatorskih robov triangulacije."""
        return sum(curve.weights[self.equator_edge(i)] for i in range(1, self.n + 1))

    def normalize(self, i: int) -> int:
        return (i - 1) % self.n + 1

    def enclosed(self, i: int, j: int) -> FrozenSet[int]:
        i, j = self.normalize(i), self.normalize(j)
        size = (j - i) % self.n
        return frozenset(self.normalize(i + t) for t in range(size))

    def realize(self, i: int, j: int) -> NormalMulticurve:
        n = self.n
        i, j = self.normalize(i), self.normalize(j)
        w = [0] * self.triangulation.zeta
        w[self.equator_edge(i)] = 1
        w[self.equator_edge(j)] = 1
        for k in range(2, n - 1):
            if (i <= k) != (j <= k):
                w[self.top_diagonal(k)] = 1
                w[self.bottom_diagonal(k)] = 1
        return NormalMulticurve(self.triangulation, tuple(w))


@dataclass(frozen=True)
class BetaCurve:
    n: int
    i: int
    j: int
    enclosed: FrozenSet[int]
    curve: NormalMulticurve

    @property
    def canonical(self) -> FrozenSet[int]:
        """Stran, ki ne vsebuje P_n; enaka za β_{i,j} in β_{j,i}."""
        if self.n in self.enclosed:
            return frozenset(range(1, self.n + 1)) - self.enclosed
        return self.enclosed

    @property
    def key(self) -> Tuple[int, int]:
        return canonical_pair(self.n, self.canonical)

    @property
    def parity(self) -> int:
        return len(self.enclosed) % 2

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BetaCurve) and self.n == other.n and self.canonical == other.canonical

    def __hash__(self) -> int:
        return hash((self.n, self.canonical))

    def __repr__(self) -> str:
        return f"β({self.i},{self.j})"


def canonical_pair(n: int, interval: FrozenSet[int]) -> Tuple[int, int]:
    """Interval {P_a..P_b} ustreza β_{a,b+1}."""
    a, b = interval_ends(n, interval)
    return a, b % n + 1


def interval_ends(n: int, interval: FrozenSet[int]) -> Tuple[int, int]:
    for a in interval:
        if (a - 2) % n + 1 not in interval:
            b = a
            while b % n + 1 in interval:
                b = b % n + 1
            return a, b
    raise ConstructionError(f"{sorted(interval)} ni ciklični interval")


def beta_curve(model: PolygonModel, i: int, j: int) -> BetaCurve:
    n = model.n
    i, j = model.normalize(i), model.normalize(j)
    if (j - i) % n in (0, 1, n - 1):
        raise InvalidCurveError(f"robova {i} in {j} sta enaka ali sosednja")
    enclosed = model.enclosed(i, j)
    return BetaCurve(n, i, j, enclosed, model.realize(i, j))


# ----------------------------------------------------------------------
# pot


@dataclass(frozen=True)
class PathEntry:
    index: int
    betas: Tuple[BetaCurve, ...]

    def system(self) -> DecompositionSystem:
        return DecompositionSystem(tuple(b.curve for b in self.betas))

    @property
    def keys(self) -> FrozenSet[Tuple[int, int]]:
        return frozenset(b.key for b in self.betas)


def path_length(n: int) -> int:
    return n * (n - 3)


def path_entry(model: PolygonModel, k: int) -> PathEntry:
    n = model.n
    if not 0 <= k <= path_length(n):
        raise InvalidCurveError(f"indeks {k} izven [0, {path_length(n)}]")
    j, r = divmod(k, n - 3)
    betas = [beta_curve(model, j + 2, j + t) for t in range(4, r + 4)]
    betas += [beta_curve(model, j + 1, j + t) for t in range(r + 3, n)]
    return PathEntry(k, tuple(betas))


def full_path(model: PolygonModel) -> List[PathEntry]:
    return [path_entry(model, k) for k in range(path_length(model.n) + 1)]


def swapped_pair(before: PathEntry, after: PathEntry) -> Tuple[BetaCurve, BetaCurve]:
    out = [b for b in before.betas if b not in after.betas]
    into = [b for b in after.betas if b not in before.betas]
    if len(out) != 1 or len(into) != 1:
        raise ConstructionError(f"koraka {before.index}->{after.index} nista elementarni premik")
    return out[0], into[0]


# ----------------------------------------------------------------------
# hlače


@dataclass(frozen=True)
class PantsFace:
    kind: str
    boundary: Tuple[Tuple[int, int], ...]
    punctures: Tuple[int, ...]

    @property
    def euler(self) -> int:
        return -1


def _pieces(n: int, family: List[FrozenSet[int]]):
    """Kosi laminarne družine: (zunanja množica ali None, otroci, proste punkcije)."""
    whole = whole_set(n)
    members = sorted(set(family), key=lambda s: (len(s), sorted(s)))
    pieces = []
    for outer in members + [whole]:
        inside = [s for s in members if s < outer]
        children = [s for s in inside if not any(s < t for t in inside)]
        covered = frozenset().union(*children) if children else frozenset()
        free = tuple(sorted(outer - covered))
        pieces.append((None if outer == whole else outer, children, free))
    return pieces


def whole_set(n: int) -> FrozenSet[int]:
    return frozenset(range(1, n + 1))


def _punctured_annulus(n: int, x: FrozenSet[int], y: FrozenSet[int], p: int) -> bool:
    """
    x in y sta strani robnih krivulj, obrnjeni stran od kosa. Kos je obroč s
    punkcijo p, če je notranja stran x natanko y ∪ {p} in p leži ob krajišču
    cikličnega intervala y (indeksi po modulu n).
    """
    if whole_set(n) - x != y | {p}:
        return False
    a, b = interval_ends(n, y)
    return p in (b % n + 1, (a - 2) % n + 1)


def classify_pants(model: PolygonModel, entry: PathEntry) -> List[PantsFace]:
    n = model.n
    faces = []
    family = [b.canonical for b in entry.betas]
    for outer, children, free in _pieces(n, family):
        curves = ([outer] if outer is not None else []) + children
        boundary = tuple(canonical_pair(n, c) for c in curves)
        if len(curves) + len(free) != 3:
            raise ConstructionError(f"kos {boundary} + {free} ni hlače")
        if len(curves) == 1 and len(free) == 2:
            i, j = boundary[0]
            if (i - j) % n not in (2, n - 2):
                raise ConstructionError(f"disk β{boundary[0]} ne obkroža dveh punkcij")
            faces.append(PantsFace(TWICE_PUNCTURED_DISK, boundary, free))
        elif len(curves) == 2 and len(free) == 1:
            away = ([whole_set(n) - outer] if outer is not None else []) + children
            if not _punctured_annulus(n, away[0], away[1], free[0]):
                raise ConstructionError(f"obroč {boundary} ne ustreza vzorcu")
            faces.append(PantsFace(PUNCTURED_ANNULUS, tuple(sorted(boundary)), free))
        else:
            raise ConstructionError(f"kos {boundary} + {free} ni ne disk ne obroč")
    return faces


# ----------------------------------------------------------------------
# nivoji in kompleks X


@dataclass(frozen=True)
class Loop:
    i: int
    j: int
    level_class: int
    level: Fraction


@dataclass(frozen=True)
class ARegion:
    step: int
    bottom_loop: Tuple[int, int]
    top_loop: Tuple[int, int]
    bottom_pants: Tuple[PantsFace, PantsFace]
    top_pants: Tuple[PantsFace, PantsFace]
    # luknje G: krivulje in punkcije
    holes: Tuple[Tuple[str, Tuple[int, ...]], ...]

    @property
    def euler(self) -> int:
        return -2


@dataclass(frozen=True)
class LoopComplex:
    n: int
    loops: Tuple[Loop, ...]
    pants: Tuple[PantsFace, ...]

    def ordered_loops(self) -> List[Loop]:
        return sorted(self.loops, key=lambda l: (l.level, l.i, l.j))

    def level_of(self, i: int, j: int) -> Fraction:
        key = (min(i, j), max(i, j))
        for loop in self.loops:
            if (loop.i, loop.j) == key:
                return loop.level
        raise InvalidCurveError(f"zanka ({i},{j}) ne obstaja")


def level_class(n: int, i: int, j: int) -> int:
    return (i + j) % n


def assign_levels(model: PolygonModel) -> LoopComplex:
    n = model.n
    pairs = [
        (i, j)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        if (j - i) % n not in (1, n - 1)
    ]
    classes = sorted({level_class(n, i, j) for i, j in pairs})
    rank = {c: r for r, c in enumerate(classes)}
    loops = tuple(
        Loop(i, j, level_class(n, i, j), Fraction(rank[level_class(n, i, j)] + 1, len(classes) + 1))
        for i, j in pairs
    )

    seen: Dict[Tuple, PantsFace] = {}
    for entry in full_path(model):
        for face in classify_pants(model, entry):
            seen.setdefault((face.kind, face.boundary, face.punctures), face)
    pants = tuple(seen[k] for k in sorted(seen))
    logger.info("Kompleks X za n=%d: %d zank, %d hlač", n, len(loops), len(pants))
    return LoopComplex(n, loops, pants)


def _adjacent(faces: List[PantsFace], key: Tuple[int, int]) -> Tuple[PantsFace, PantsFace]:
    found = [f for f in faces if key in f.boundary]
    if len(found) != 2:
        raise ConstructionError(f"zanka {key} ne meji na natanko dvoje hlač")
    return found[0], found[1]


def _holes(pair: Tuple[PantsFace, PantsFace], tube: Tuple[int, int]):
    holes = []
    for face in pair:
        holes.extend(("curve", b) for b in face.boundary if b != tube)
        holes.extend(("puncture", (p,)) for p in face.punctures)
    return tuple(sorted(holes))


def complement_regions(model: PolygonModel, complex_: Optional[LoopComplex] = None) -> List[ARegion]:
    """A-regije G × J: za vsak korak poti dvoje hlač, zlepljenih vzdolž zamenjane zanke."""
    path = full_path(model)
    regions = []
    for before, after in zip(path, path[1:]):
        out, into = swapped_pair(before, after)
        bottom = _adjacent(classify_pants(model, before), out.key)
        top = _adjacent(classify_pants(model, after), into.key)
        holes = _holes(bottom, out.key)
        if holes != _holes(top, into.key):
            raise ConstructionError(f"korak {before.index}: robova G × J se ne ujemata")
        regions.append(ARegion(before.index, out.key, into.key, bottom, top, holes))
    if complex_ is not None:
        known = set(complex_.pants)
        for region in regions:
            for face in region.bottom_pants + region.top_pants:
                if face not in known:
                    raise ConstructionError("hlače regije niso v kompleksu X")
    return regions
