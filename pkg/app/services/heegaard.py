"""
Standardni Heegaardov razcep S³ roda g kot dvojni razvejani krov nad
trivialnima tangloma.

Zgornji loki povezujejo razvejišča (1,2), (3,4), ...; spodnji (2,3), (4,5),
..., (2g+2,1). Krivulje na sferi, ki omejujejo diske, disjunktne z loki ene
strani, se dvignejo v sistem krivulj, ki omejujejo diske v ročajniku.

Modul je del jedra, ki ga uporablja tudi preverjevalnik, zato ne uvaža
modulov za izdelavo (pipeline, tower_search).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, List, Optional, Sequence, Tuple

from app.core.errors import ConstructionError, InvalidCurveError
from app.services.agol_path import PolygonModel, beta_curve, canonical_pair
from app.services.branched_cover import BranchData, CoverTriangulation, build_cover, lift_curve
from app.services.curves import NormalMulticurve
from app.services.pants_system import DecompositionSystem, mutually_wave_free
from app.services.twists import intersection_number
from app.utils.logging_utils import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class SystemCurve:
    """Krivulja sistema: interval razvejišč na sferi in izbrana komponenta dviga."""

    interval: Tuple[int, ...]
    component: int
    dual_interval: Tuple[int, ...]


@dataclass(frozen=True)
class HeegaardDescription:
    genus: int
    cover: CoverTriangulation
    D: DecompositionSystem
    E: DecompositionSystem
    D_curves: Tuple[SystemCurve, ...]
    E_curves: Tuple[SystemCurve, ...]
    D_bounds_disks: bool = True
    E_bounds_disks: bool = True


def sphere_family(genus: int, shift: int) -> List[FrozenSet[int]]:
    """Intervali družine: pari (2i-1+shift, 2i+shift) in gnezdeni {1+shift..2j+shift}."""
    n = 2 * genus + 2

    def cyc(values):
        return frozenset((v - 1) % n + 1 for v in values)

    family = [cyc((2 * i - 1 + shift, 2 * i + shift)) for i in range(1, genus + 1)]
    family += [cyc(range(1 + shift, 2 * j + shift + 1)) for j in range(2, genus + 1)]
    return family


def _canonical(n: int, s: FrozenSet[int]) -> FrozenSet[int]:
    return frozenset(range(1, n + 1)) - s if n in s else s


def _holes(n: int, family: Sequence[FrozenSet[int]], outer: Optional[FrozenSet[int]]):
    whole = frozenset(range(1, n + 1))
    region = outer if outer is not None else whole
    inside = [s for s in family if s < region]
    children = [s for s in inside if not any(s < t for t in inside)]
    covered = frozenset().union(*children) if children else frozenset()
    return children + [frozenset([p]) for p in sorted(region - covered)]


def dual_interval(n: int, family: Sequence[FrozenSet[int]], member: FrozenSet[int]) -> FrozenSet[int]:
    """Partner krivulje v štiriluknjičasti sferi obeh sosednjih kosov."""
    canon = [_canonical(n, s) for s in family]
    A = _canonical(n, member)
    inner = sorted(_holes(n, canon, A), key=min)
    if len(inner) != 2:
        raise ConstructionError(f"kos znotraj {sorted(A)} ni hlače")
    parents = [s for s in canon if A < s]
    Z = min(parents, key=len) if parents else None
    outside = [h for h in _holes(n, canon, Z) if h != A]
    after = max(A) % n + 1
    before = (min(A) - 2) % n + 1
    for hole in outside:
        if min(hole) == after:
            return inner[1] | hole
    for hole in outside:
        if max(hole) == before:
            return hole | inner[0]
    raise ConstructionError(f"krivulja {sorted(A)} nima sosednje luknje za partnerja")


def _lift_choice(cover: CoverTriangulation, model: PolygonModel, interval: FrozenSet[int]):
    i, j = canonical_pair(model.n, _canonical(model.n, interval))
    return lift_curve(cover, beta_curve(model, i, j).curve)


def _build_system(cover: CoverTriangulation, genus: int, shift: int):
    n = 2 * genus + 2
    model = cover.branch.model
    family = sphere_family(genus, shift)
    curves: List[NormalMulticurve] = []
    duals: List[NormalMulticurve] = []
    records: List[SystemCurve] = []
    for member in family:
        lift = _lift_choice(cover, model, member)
        small_side = len(member) == 2 or n - len(member) == 2
        chosen = [0] if small_side else list(range(lift.count))
        partner = dual_interval(n, family, member)
        partner_lift = _lift_choice(cover, model, partner)
        for comp in chosen:
            curve = lift.components[comp]
            dual = next(
                (d for d in partner_lift.components if intersection_number(d, curve) > 0),
                None,
            )
            if dual is None:
                raise ConstructionError(f"dual krivulje {sorted(member)} je ne seka")
            curves.append(curve)
            duals.append(dual)
            records.append(SystemCurve(tuple(sorted(member)), comp, tuple(sorted(partner))))
    return DecompositionSystem(tuple(curves), tuple(duals)), tuple(records)


@lru_cache(maxsize=8)
def canonical_systems(genus: int) -> HeegaardDescription:
    if genus < 2:
        raise InvalidCurveError("rod Heegaardovega razcepa mora biti vsaj 2")
    cover = build_cover(BranchData(genus))
    D, d_records = _build_system(cover, genus, 0)
    E, e_records = _build_system(cover, genus, 1)
    _ = D.pants, E.pants
    report = mutually_wave_free(D, E)
    if not report.wave_free:
        raise ConstructionError(f"kanonična sistema imata val: {report.offending}")
    logger.info("Kanonična sistema za rod %d: %d + %d krivulj", genus, len(D), len(E))
    return HeegaardDescription(genus, cover, D, E, d_records, e_records)
