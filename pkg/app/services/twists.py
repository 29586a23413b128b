"""
Dehnovi zasuki in presečna števila prek krajšanja krivulje.

Krivuljo k s preklopi skrajšamo, dokler ne seka natanko dveh robov e in f po
enkrat. Takrat je k jedro obroča iz dveh trikotnikov; zasuk vzdolž k na
utežeh (w_e, w_f) deluje v zaprti obliki. Presečno število je število lokov,
ki prečkajo obroč od roba g do roba h:

    i(a, k) = max(|w_e - w_f|, w_g + w_h - w_e - w_f)
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from app.core.config import get_settings
from app.core.errors import InvalidCurveError, ShorteningError
from app.services.curves import NormalMulticurve, validate
from app.services.triangulation import Triangulation, norm
from app.utils.logging_utils import get_logger

logger = get_logger(__name__)

Weights = Tuple[int, ...]


def _total(weights: Sequence[int]) -> int:
    return sum(weights)


def _best_reducing_flip(tri: Triangulation, weights: Weights) -> Optional[Tuple[int, Weights]]:
    best: Optional[Tuple[int, int, Weights]] = None
    for e, w in enumerate(weights):
        if w == 0 or not tri.is_flippable(e):
            continue
        new = tri.flip_weights(e, weights)
        gain = w - new[e]
        if gain > 0 and (best is None or gain > best[0]):
            best = (gain, e, new)
    return (best[1], best[2]) if best else None


def _plateau_search(tri: Triangulation, weights: Weights, depth: int) -> Optional[List[int]]:
    """Zaporedje preklopov, ki ne povečajo uteži in se konča s strogim zmanjšanjem."""
    queue = deque([(tri, weights, [])])
    seen = {(tri.faces, weights)}
    while queue:
        cur_tri, cur_w, path = queue.popleft()
        if len(path) >= depth:
            continue
        for e, w in enumerate(cur_w):
            if w == 0 or not cur_tri.is_flippable(e):
                continue
            new = cur_tri.flip_weights(e, cur_w)
            if new[e] < w:
                return path + [e]
            if new[e] > w:
                continue
            nxt = cur_tri.flip(e)
            key = (nxt.faces, new)
            if key not in seen:
                seen.add(key)
                queue.append((nxt, new, path + [e]))
    return None


@dataclass(frozen=True)
class ShortPosition:
    """Zaporedje preklopov, ki krivuljo k prestavi v kratek položaj."""

    curve: NormalMulticurve
    # triangulacije T_0 .. T_r, T_{i+1} = T_i.flip(edges[i])
    triangulations: Tuple[Triangulation, ...]
    edges: Tuple[int, ...]
    e: int
    f: int
    g: int
    h: int

    @property
    def target(self) -> Triangulation:
        return self.triangulations[-1]

    def transport(self, weights: Sequence[int]) -> Weights:
        w = tuple(weights)
        for tri, edge in zip(self.triangulations, self.edges):
            w = tri.flip_weights(edge, w)
        return w

    def restore(self, weights: Sequence[int]) -> Weights:
        w = tuple(weights)
        for i in range(len(self.edges) - 1, -1, -1):
            w = self.triangulations[i + 1].flip_weights(self.edges[i], w)
        return w

    def intersection(self, transported: Sequence[int]) -> int:
        we, wf = transported[self.e], transported[self.f]
        # loki, ki se vrnejo na isti rob obroča, jedra ne sekajo
        return max(abs(we - wf), transported[self.g] + transported[self.h] - we - wf)

    def twist(self, transported: Sequence[int], power: int) -> Weights:
        w = list(transported)
        a, b = w[self.e], w[self.f]
        G = w[self.g] + w[self.h]
        if power >= 0:
            a, b = _twist_forward(a, b, G, power)
        else:
            b, a = _twist_forward(b, a, G, -power)
        w[self.e], w[self.f] = a, b
        return tuple(w)


def _twist_forward(a: int, b: int, G: int, steps: int) -> Tuple[int, int]:
    # (a, b) -> (max(2a, G) - b, a); ko je a >= b in 2a >= G, je zaporedje aritmetično
    while steps > 0:
        if a >= b and 2 * a >= G:
            d = a - b
            return a + steps * d, a + (steps - 1) * d
        a, b = max(2 * a, G) - b, a
        steps -= 1
    return a, b


def _core_labels(tri: Triangulation, weights: Weights) -> Tuple[int, int, int, int]:
    ones = [e for e, w in enumerate(weights) if w == 1]
    if len(ones) != 2 or _total(weights) != 2:
        raise ShorteningError("krivulja ni v kratkem položaju")
    x, y = ones
    boundary: List[int] = []
    follows: List[int] = []
    for label in (x, ~x):
        f_idx, _ = tri.side_position(label)
        face = tri.faces[f_idx]
        edges = [norm(s) for s in face]
        if y not in edges:
            raise ShorteningError("robova kratkega položaja nista na skupnih ploskvah")
        third = next(i for i, s in enumerate(face) if norm(s) not in (x, y))
        boundary.append(norm(face[third]))
        follows.append(norm(face[(third + 1) % 3]))
    if follows[0] != follows[1]:
        raise ShorteningError("neskladna orientacija obroča")
    e = follows[0]
    f = y if e == x else x
    return e, f, boundary[0], boundary[1]


def short_position(curve: NormalMulticurve) -> ShortPosition:
    report = validate(curve, allow_peripheral=True)
    if not report.valid:
        raise InvalidCurveError(report.reason or "neveljavna krivulja")
    if not curve.is_connected:
        raise InvalidCurveError("krivulja za zasuk mora biti povezana")
    if curve.is_peripheral:
        raise InvalidCurveError("periferne krivulje ne moremo uporabiti za zasuk")

    settings = get_settings()
    tri = curve.triangulation
    weights = curve.weights
    triangulations = [tri]
    edges: List[int] = []

    def apply(edge: int) -> None:
        nonlocal tri, weights
        weights = tri.flip_weights(edge, weights)
        tri = tri.flip(edge)
        triangulations.append(tri)
        edges.append(edge)

    while _total(weights) > 2:
        step = _best_reducing_flip(tri, weights)
        if step is not None:
            apply(step[0])
            continue
        path = _plateau_search(tri, weights, settings.shorten_depth)
        if path is None:
            raise ShorteningError(f"krajšanje obstalo pri skupni uteži {_total(weights)}")
        for edge in path:
            apply(edge)

    e, f, g, h = _core_labels(tri, weights)
    logger.debug("Kratek položaj po %d preklopih (e=%d, f=%d)", len(edges), e, f)
    return ShortPosition(curve, tuple(triangulations), tuple(edges), e, f, g, h)


def dehn_twist(
    k: NormalMulticurve,
    power: int,
    a: NormalMulticurve,
    short: Optional[ShortPosition] = None,
) -> NormalMulticurve:
    """Normalne koordinate δ_k^power(a)."""
    k.same_surface(a)
    short = short or short_position(k)
    w = short.transport(a.weights)
    w = short.twist(w, power)
    return a.with_weights(short.restore(w))


def intersection_number(a: NormalMulticurve, b: NormalMulticurve) -> int:
    a.same_surface(b)
    total = 0
    for component in b.components():
        if component.is_peripheral:
            continue
        short = short_position(component)
        total += short.intersection(short.transport(a.weights))
    return total


def intersection_with(a: NormalMulticurve, short: ShortPosition) -> int:
    """Presečno število z že skrajšano povezano krivuljo."""
    return short.intersection(short.transport(a.weights))


@dataclass(frozen=True)
class TwistWord:
    """
    Beseda δ_1^{n_1} ∘ δ_2^{n_2} ∘ ... ∘ δ_p^{n_p}.

    Črke so shranjene v zapisanem vrstnem redu; uporabijo se od desne proti
    levi, torej δ_p prva.
    """

    letters: Tuple[Tuple[NormalMulticurve, int], ...]

    def __len__(self) -> int:
        return len(self.letters)

    def shorts(self) -> Tuple[ShortPosition, ...]:
        return tuple(short_position(curve) for curve, _ in self.letters)

    def apply(
        self,
        curve: NormalMulticurve,
        shorts: Optional[Sequence[ShortPosition]] = None,
    ) -> NormalMulticurve:
        shorts = shorts or self.shorts()
        w = curve.weights
        for (_, power), short in reversed(list(zip(self.letters, shorts))):
            w = short.restore(short.twist(short.transport(w), power))
        return curve.with_weights(w)

    def inverse(self) -> "TwistWord":
        return TwistWord(tuple((c, -p) for c, p in reversed(self.letters)))
