"""
Hipereliptični dvojni razvejani krov F -> S² z 2g+2 razvejišči.

Krov zlepimo iz dveh listov poligonskega modela vzdolž mod-2 kocikla, ki je
1 na ekvatorskih robovih s sodim indeksom. Rob (e, t) krova ima oznako 2e+t.
Stran +e na listu t je rob (e, t); stran ~e na listu t je ~(e, t + c(e)).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from app.core.errors import ConstructionError, InvalidCurveError
from app.services.agol_path import (
    PUNCTURED_ANNULUS,
    TWICE_PUNCTURED_DISK,
    ARegion,
    LoopComplex,
    PolygonModel,
    beta_curve,
)
from app.services.curves import NormalMulticurve
from app.services.triangulation import Triangulation, norm
from app.services.twists import ShortPosition, short_position
from app.utils.logging_utils import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class BranchData:
    genus: int
    n: Optional[int] = None

    def __post_init__(self) -> None:
        n = self.n if self.n is not None else 2 * self.genus + 2
        if self.genus < 2:
            raise InvalidCurveError("rod krova mora biti vsaj 2")
        if n % 2:
            raise InvalidCurveError(f"število razvejišč mora biti sodo, ne {n}")
        if n != 2 * self.genus + 2:
            raise InvalidCurveError(f"rod {self.genus} zahteva {2 * self.genus + 2} razvejišč, ne {n}")
        object.__setattr__(self, "n", n)

    @cached_property
    def model(self) -> PolygonModel:
        return PolygonModel(self.n)  # type: ignore[arg-type]

    @cached_property
    def cocycle(self) -> Tuple[int, ...]:
        c = [0] * self.model.triangulation.zeta
        for i in range(2, self.n + 1, 2):  # type: ignore[operator]
            c[self.model.equator_edge(i)] = 1
        return tuple(c)

    def monodromy(self, enclosed_count: int) -> int:
        return enclosed_count % 2


@dataclass(frozen=True)
class CoverTriangulation:
    branch: BranchData
    triangulation: Triangulation

    @property
    def base(self) -> Triangulation:
        return self.branch.model.triangulation

    @property
    def genus(self) -> int:
        return self.triangulation.genus

    def lift_weights(self, weights: Sequence[int]) -> Tuple[int, ...]:
        return tuple(weights[e // 2] for e in range(self.triangulation.zeta))

    def project_weights(self, weights: Sequence[int]) -> Tuple[int, ...]:
        return tuple(weights[2 * e] + weights[2 * e + 1] for e in range(self.base.zeta))

    def deck(self, curve: NormalMulticurve) -> NormalMulticurve:
        """Krovna involucija ι zamenja lista."""
        w = curve.weights
        return curve.with_weights(tuple(w[e ^ 1] for e in range(len(w))))


def build_cover(branch: BranchData) -> CoverTriangulation:
    base = branch.model.triangulation
    cocycle = branch.cocycle
    faces = []
    for face in base.faces:
        for sheet in (0, 1):
            lifted = []
            for s in face:
                if s >= 0:
                    lifted.append(2 * s + sheet)
                else:
                    e = ~s
                    lifted.append(~(2 * e + (sheet + cocycle[e]) % 2))
            faces.append(tuple(lifted))
    tri = Triangulation(faces, vertices_are_punctures=False)
    expected = 2 * base.euler_characteristic - branch.n  # type: ignore[operator]
    if tri.euler_characteristic != expected or tri.num_vertices != branch.n:
        raise ConstructionError(
            f"krov ima χ={tri.euler_characteristic} in {tri.num_vertices} oglišč, pričakovano χ={expected}"
        )
    logger.info("Krov roda %d: %d robov, %d ploskev", tri.genus, tri.zeta, len(tri.faces))
    return CoverTriangulation(branch, tri)


@dataclass(frozen=True)
class Lift:
    count: int
    curve: NormalMulticurve
    components: Tuple[NormalMulticurve, ...]


def lift_curve(cover: CoverTriangulation, c: NormalMulticurve) -> Lift:
    if c.triangulation != cover.base:
        raise InvalidCurveError("krivulja ni na osnovni sferi krova")
    lifted = NormalMulticurve(cover.triangulation, cover.lift_weights(c.weights))
    components = tuple(sorted(lifted.components(), key=lambda x: x.weights))
    return Lift(len(components), lifted, components)


# ----------------------------------------------------------------------
# tipi dvignjenih kosov


@dataclass(frozen=True)
class LiftedType:
    name: str
    genus: int
    boundary_circles: int
    punctures: int
    euler: int
    copies: int = 1


def lift_pants_type(kind: str) -> LiftedType:
    if kind == TWICE_PUNCTURED_DISK:
        return LiftedType("annulus with two punctures", 0, 2, 2, -2)
    if kind == PUNCTURED_ANNULUS:
        return LiftedType("pants with one puncture", 0, 3, 1, -2)
    raise InvalidCurveError(f"neznan tip hlač: {kind}")


ONE_HOLE_TORUS = "one-hole torus"
FOUR_HOLE_SPHERE = "4-hole sphere"
TWO_HOLE_TORUS = "two-hole torus"


def lift_region_boundary_type(n: int, region: ARegion) -> LiftedType:
    """Tip praslike G × {0} (in G × {1}); punkcije nad Γ zapolnimo."""
    curves = [h for kind, h in region.holes if kind == "curve"]
    punctures = sum(1 for kind, _ in region.holes if kind == "puncture")
    parities = [((j - i) % n) % 2 for i, j in curves]
    boundary = sum(1 if p else 2 for p in parities)
    connected = punctures > 0 or any(parities)
    if not connected:
        if len(curves) == 4:
            return LiftedType(FOUR_HOLE_SPHERE, 0, 4, 0, -2, copies=2)
        raise ConstructionError(f"regija {region.step}: nepričakovana nepovezana praslika")
    euler = 2 * (2 - len(curves)) - punctures
    genus = (2 - euler - boundary) // 2
    if (genus, boundary) == (1, 1):
        name = ONE_HOLE_TORUS
    elif (genus, boundary) == (0, 4):
        name = FOUR_HOLE_SPHERE
    elif (genus, boundary) == (1, 2):
        name = TWO_HOLE_TORUS
    else:
        raise ConstructionError(
            f"regija {region.step}: praslika roda {genus} z {boundary} robovi ni med znanimi tipi"
        )
    return LiftedType(name, genus, boundary, punctures, euler)


# ----------------------------------------------------------------------
# dvignjen sistem zank


@dataclass(frozen=True)
class LiftedLoop:
    base: Tuple[int, int]
    level: Fraction
    component: int
    curve: NormalMulticurve


def lift_system(cover: CoverTriangulation, complex_: LoopComplex) -> List[LiftedLoop]:
    model = cover.branch.model
    lifted: List[LiftedLoop] = []
    for loop in complex_.ordered_loops():
        beta = beta_curve(model, loop.i, loop.j)
        lift = lift_curve(cover, beta.curve)
        if (lift.count == 2) != (beta.parity == 0):
            raise ConstructionError(f"β({loop.i},{loop.j}): število komponent krši zakon parnosti")
        for idx, comp in enumerate(lift.components):
            lifted.append(LiftedLoop((loop.i, loop.j), loop.level, idx, comp))
    logger.info("Dvignjen sistem: %d zank iz %d osnovnih", len(lifted), len(complex_.loops))
    return lifted


# ----------------------------------------------------------------------
# konjugirana involucija


@dataclass(frozen=True)
class ConjugatedInvolution:
    """ι' = δ_k^m ∘ ι ∘ δ_k^-m."""

    cover: CoverTriangulation
    k: NormalMulticurve
    m: int
    short: Optional[ShortPosition] = None

    def apply(self, curve: NormalMulticurve) -> NormalMulticurve:
        if self.m == 0:
            return self.cover.deck(curve)
        short = self.short or short_position(self.k)
        w = short.restore(short.twist(short.transport(curve.weights), -self.m))
        w = self.cover.deck(curve.with_weights(w)).weights
        w = short.restore(short.twist(short.transport(w), self.m))
        return curve.with_weights(w)

    def preserves(self, system: Sequence[NormalMulticurve]) -> bool:
        weights = {c.weights for c in system}
        return all(self.apply(c).weights in weights for c in system)


def conjugated_involution(
    cover: CoverTriangulation,
    k: NormalMulticurve,
    m: int,
    lifted: Optional[Sequence[LiftedLoop]] = None,
) -> ConjugatedInvolution:
    record = ConjugatedInvolution(cover, k, m, short_position(k) if m else None)
    if lifted is not None:
        short = record.short
        moved = [
            c.curve if short is None
            else c.curve.with_weights(short.restore(short.twist(short.transport(c.curve.weights), m)))
            for c in lifted
        ]
        if not record.preserves(moved):
            raise ConstructionError("ι' ne ohranja zasukanega sistema zank")
    return record
