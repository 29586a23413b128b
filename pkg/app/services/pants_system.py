"""
Hlačni razcepi (decomposition systems), razvrstitev lokov na šive in valove
ter elementarni premiki na preluknjani sferi.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from app.core.errors import DecompositionError, DegenerateProfileError, TriangulationMismatchError
from app.services.curves import NormalMulticurve, complement_regions, validate
from app.services.twists import ShortPosition, intersection_with, short_position
from app.utils.logging_utils import get_logger

logger = get_logger(__name__)

Slot = Tuple[int, str]  # (indeks krivulje, stran)


@dataclass(frozen=True)
class Pants:
    index: int
    slots: Tuple[Slot, Slot, Slot]
    marked_points: int = 0

    @property
    def curve_indices(self) -> Tuple[int, int, int]:
        return tuple(s[0] for s in self.slots)  # type: ignore[return-value]


@dataclass(frozen=True)
class DecompositionReport:
    valid: bool
    reason: Optional[str] = None
    pair: Optional[Tuple[int, int]] = None
    pants: Tuple[Pants, ...] = ()


@dataclass(frozen=True)
class DecompositionSystem:
    curves: Tuple[NormalMulticurve, ...]
    # dualne krivulje za ničlo zasučnega parametra (neobvezno)
    duals: Optional[Tuple[NormalMulticurve, ...]] = None
    # ko je sistem slika drugega sistema, hlače podedujemo
    inherited_pants: Optional[Tuple[Pants, ...]] = None

    def __post_init__(self) -> None:
        if not self.curves:
            raise DecompositionError("sistem mora imeti vsaj eno krivuljo")
        tri = self.curves[0].triangulation
        for c in self.curves[1:] + tuple(self.duals or ()):
            if c.triangulation != tri:
                raise TriangulationMismatchError("krivulje sistema niso na isti triangulaciji")

    @property
    def triangulation(self):
        return self.curves[0].triangulation

    def __len__(self) -> int:
        return len(self.curves)

    @cached_property
    def shorts(self) -> Tuple[ShortPosition, ...]:
        return tuple(short_position(c) for c in self.curves)

    @cached_property
    def dual_shorts(self) -> Tuple[ShortPosition, ...]:
        if not self.duals:
            raise DecompositionError("sistem nima dualnih krivulj")
        return tuple(short_position(d) for d in self.duals)

    @cached_property
    def pants(self) -> Tuple[Pants, ...]:
        if self.inherited_pants is not None:
            return self.inherited_pants
        report = validate_decomposition(self)
        if not report.valid:
            raise DecompositionError(report.reason or "neveljaven razcep")
        return report.pants

    def image(self, curves: Sequence[NormalMulticurve]) -> "DecompositionSystem":
        """Sistem slik krivulj pod homeomorfizmom; hlače ostanejo iste po indeksih."""
        if len(curves) != len(self.curves):
            raise DecompositionError("slika mora imeti enako število krivulj")
        return DecompositionSystem(tuple(curves), None, self.pants)

    def boundary_numbers(self, c: NormalMulticurve) -> Tuple[int, ...]:
        return tuple(intersection_with(c, s) for s in self.shorts)


# ----------------------------------------------------------------------
# validacija


def expected_size(tri) -> int:
    return 3 * tri.genus - 3 + tri.punctures


def validate_decomposition(system: DecompositionSystem) -> DecompositionReport:
    tri = system.triangulation
    curves = system.curves
    for idx, c in enumerate(curves):
        report = validate(c)
        if not report.valid:
            return DecompositionReport(False, f"krivulja {idx}: {report.reason}")
        if not c.is_connected:
            return DecompositionReport(False, f"krivulja {idx} ni povezana")
    if len(curves) != expected_size(tri):
        return DecompositionReport(
            False, f"pričakovanih {expected_size(tri)} krivulj, podanih {len(curves)}"
        )

    for a in range(len(curves)):
        for b in range(a + 1, len(curves)):
            if curves[a].weights == curves[b].weights:
                return DecompositionReport(False, "izotopni krivulji", (a, b))
            if intersection_with(curves[a], system.shorts[b]) != 0:
                return DecompositionReport(False, "krivulji se sekata", (a, b))

    union = NormalMulticurve(tri, tuple(sum(ws) for ws in zip(*(c.weights for c in curves))))
    by_weights = {c.weights: idx for idx, c in enumerate(curves)}
    component_to_curve = {
        comp_idx: by_weights[comp.weights] for comp_idx, comp in enumerate(union.components())
    }

    pants: List[Pants] = []
    punctures_count = tri.vertices_are_punctures
    for region in complement_regions(union):
        slots = tuple((component_to_curve[comp], side) for comp, side in region.boundary)
        if not punctures_count:
            if region.closed_euler == 1:
                return DecompositionReport(False, "komponenta omejuje disk")
            if region.closed_euler == 0 and len(slots) == 2:
                pair = tuple(sorted(s[0] for s in slots))
                return DecompositionReport(False, "izotopni krivulji v zaprti ploskvi", pair)  # type: ignore[arg-type]
        if not region.is_pants(punctures_count):
            return DecompositionReport(
                False,
                f"regija {region.index} ni hlače (χ={region.punctured_euler}, robov={len(slots)})",
            )
        padded = slots + tuple((-1, "puncture") for _ in range(3 - len(slots)))
        pants.append(Pants(len(pants), padded, region.marked_points))  # type: ignore[arg-type]
    return DecompositionReport(True, pants=tuple(pants))


# ----------------------------------------------------------------------
# šivi in valovi


@dataclass(frozen=True)
class PantsProfile:
    pants: int
    boundary: Tuple[int, int, int]
    seams: Tuple[int, int, int]  # x12, x13, x23
    waves: Tuple[int, int, int]  # x11, x22, x33

    @property
    def has_waves(self) -> bool:
        return any(self.waves)


@dataclass(frozen=True)
class PantsArcProfile:
    pants: Tuple[PantsProfile, ...]
    twists: Optional[Tuple[Fraction, ...]] = None

    @property
    def has_waves(self) -> bool:
        return any(p.has_waves for p in self.pants)


def classify_triple(m: Sequence[int]) -> Tuple[Tuple[int, int, int], Tuple[int, int, int]]:
    """Enolična nenegativna rešitev m_i = x_ij + x_ik + 2 x_ii z največ enim valom."""
    m1, m2, m3 = m
    if (m1 + m2 + m3) % 2:
        raise DegenerateProfileError(f"liha vsota presečišč {tuple(m)}")
    waves = [0, 0, 0]
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        if m[i] > m[j] + m[k]:
            waves[i] = (m[i] - m[j] - m[k]) // 2
            # vsi loki z robov j in k gredo na rob i
            seams = {(i, j): m[j], (i, k): m[k], (j, k): 0}
            return _seam_tuple(seams), tuple(waves)  # type: ignore[return-value]
    seams = {
        (0, 1): (m1 + m2 - m3) // 2,
        (0, 2): (m1 + m3 - m2) // 2,
        (1, 2): (m2 + m3 - m1) // 2,
    }
    return _seam_tuple(seams), (0, 0, 0)


def _seam_tuple(seams: Dict[Tuple[int, int], int]) -> Tuple[int, int, int]:
    norm = {tuple(sorted(k)): v for k, v in seams.items()}
    return norm[(0, 1)], norm[(0, 2)], norm[(1, 2)]


def triple_has_no_waves(m: Sequence[int]) -> bool:
    m1, m2, m3 = m
    return (m1 + m2 + m3) % 2 == 0 and m1 <= m2 + m3 and m2 <= m1 + m3 and m3 <= m1 + m2


def _slot_numbers(pants: Pants, numbers: Sequence[int]) -> Tuple[int, int, int]:
    return tuple(numbers[idx] if idx >= 0 else 0 for idx, _ in pants.slots)  # type: ignore[return-value]


def classify_arcs(system: DecompositionSystem, c: NormalMulticurve) -> PantsArcProfile:
    numbers = system.boundary_numbers(c)
    if not any(numbers):
        raise DegenerateProfileError("krivulja ne seka sistema")
    profiles = []
    for pants in system.pants:
        m = _slot_numbers(pants, numbers)
        seams, waves = classify_triple(m)
        profiles.append(PantsProfile(pants.index, m, seams, waves))
    twists = None
    if system.duals:
        twists = tuple(
            twist_coordinate(system, idx, c) if numbers[idx] else Fraction(0)
            for idx in range(len(system))
        )
    return PantsArcProfile(tuple(profiles), twists)


def has_no_waves(system: DecompositionSystem, c: NormalMulticurve) -> bool:
    numbers = system.boundary_numbers(c)
    if not any(numbers):
        # krivulja, disjunktna s sistemom: prazen profil nima valov
        logger.debug("Prazen profil: krivulja ne seka sistema")
        return True
    return all(triple_has_no_waves(_slot_numbers(p, numbers)) for p in system.pants)


@dataclass(frozen=True)
class WaveReport:
    wave_free: bool
    offending: Optional[Tuple[str, int]] = None
    vacuous: Tuple[Tuple[str, int], ...] = field(default_factory=tuple)


def mutually_wave_free(D: DecompositionSystem, E: DecompositionSystem) -> WaveReport:
    if D.triangulation != E.triangulation:
        raise TriangulationMismatchError("sistema nista na isti ploskvi")
    if sorted(c.weights for c in D.curves) == sorted(c.weights for c in E.curves):
        raise DegenerateProfileError("sistema sta enaka in se ne sekata bistveno")
    vacuous = []
    for name, source, target in (("D", D, E), ("E", E, D)):
        for idx, c in enumerate(source.curves):
            if not any(target.boundary_numbers(c)):
                vacuous.append((name, idx))
                continue
            if not has_no_waves(target, c):
                return WaveReport(False, (name, idx), tuple(vacuous))
    return WaveReport(True, None, tuple(vacuous))


def _profile_free(system: DecompositionSystem, numbers: Sequence[int]) -> bool:
    return all(triple_has_no_waves(_slot_numbers(p, numbers)) for p in system.pants)


def image_wave_free(
    D: DecompositionSystem,
    E: DecompositionSystem,
    forward: Callable[[NormalMulticurve], NormalMulticurve],
    backward: Callable[[NormalMulticurve], NormalMulticurve],
) -> WaveReport:
    """
    mutually_wave_free(f(D), E), kjer f podamo s parom (f, f^-1).

    Števila i(e, f(d)) beremo kot i(f^-1(e), d), zato slik f(D) nikoli ne
    krajšamo; hlače f(D) so slike hlač D.
    """
    if D.triangulation != E.triangulation:
        raise TriangulationMismatchError("sistema nista na isti ploskvi")
    images = [forward(c) for c in D.curves]
    if sorted(c.weights for c in images) == sorted(c.weights for c in E.curves):
        raise DegenerateProfileError("sistema sta enaka in se ne sekata bistveno")
    vacuous = []
    for idx, c in enumerate(images):
        numbers = E.boundary_numbers(c)
        if not any(numbers):
            vacuous.append(("D", idx))
        elif not _profile_free(E, numbers):
            return WaveReport(False, ("D", idx), tuple(vacuous))
    for idx, e in enumerate(E.curves):
        numbers = D.boundary_numbers(backward(e))
        if not any(numbers):
            vacuous.append(("E", idx))
        elif not _profile_free(D, numbers):
            return WaveReport(False, ("E", idx), tuple(vacuous))
    return WaveReport(True, None, tuple(vacuous))


# ----------------------------------------------------------------------
# zasučni parameter


def twist_coordinate(system: DecompositionSystem, index: int, c: NormalMulticurve) -> Fraction:
    """
    Zasuk c okoli krivulje sistema glede na dualno krivuljo.

    σ = i(T^J c, d) - i(T^-J c, d) za J daleč v linearnem režimu; deljeno z
    2·i(d, e) to šteje zasuke posameznega pramena.
    """
    short = system.shorts[index]
    dual_short = system.dual_shorts[index]
    m = intersection_with(c, short)
    if m == 0:
        raise DegenerateProfileError("krivulja ne seka krivulje sistema")
    i_d = intersection_with(system.duals[index], short)  # type: ignore[index]
    if i_d == 0:
        raise DecompositionError("dualna krivulja ne seka krivulje sistema")
    i_cd = intersection_with(c, dual_short)
    J = i_cd + 3
    moved = short.transport(c.weights)
    plus = short.restore(short.twist(moved, J))
    minus = short.restore(short.twist(moved, -J))
    sigma = dual_short.intersection(dual_short.transport(plus)) - dual_short.intersection(
        dual_short.transport(minus)
    )
    return Fraction(sigma, 2 * i_d)


# ----------------------------------------------------------------------
# elementarni premik


@dataclass(frozen=True)
class MoveReport:
    valid: bool
    reason: Optional[str] = None
    removed: Optional[int] = None
    added: Optional[int] = None
    intersection: Optional[int] = None


def elementary_move_check(P: DecompositionSystem, Q: DecompositionSystem) -> MoveReport:
    if P.triangulation != Q.triangulation:
        raise TriangulationMismatchError("razcepa nista na isti ploskvi")
    p_w = [c.weights for c in P.curves]
    q_w = [c.weights for c in Q.curves]
    removed = [i for i, w in enumerate(p_w) if w not in q_w]
    added = [i for i, w in enumerate(q_w) if w not in p_w]
    if not removed and not added:
        return MoveReport(False, "razcepa sta enaka")
    if len(removed) != 1 or len(added) != 1:
        return MoveReport(False, f"razcepa se razlikujeta v {max(len(removed), len(added))} krivuljah")
    i = intersection_with(P.curves[removed[0]], Q.shorts[added[0]])
    if i != 2:
        return MoveReport(False, f"zamenjani krivulji se sekata v {i} točkah", removed[0], added[0], i)
    return MoveReport(True, None, removed[0], added[0], i)
