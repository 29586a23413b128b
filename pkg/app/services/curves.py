"""
Normalne multikrivulje na triangulaciji: validacija, komponente, periferne
komponente in komplementarne regije.

Točke krivulje na robu e so oštevilčene 0..w_e-1 od repa proti glavi.
Na strani s ima točka položaj p (od začetka strani); za s=+e je to indeks p,
za s=~e pa w_e-1-p.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from app.core.errors import MalformedWeightsError, TriangulationMismatchError
from app.services.triangulation import Triangulation, norm


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    reason: Optional[str] = None
    face: Optional[int] = None


@dataclass(frozen=True)
class NormalMulticurve:
    triangulation: Triangulation
    weights: Tuple[int, ...]

    def __post_init__(self) -> None:
        weights = tuple(int(w) for w in self.weights)
        object.__setattr__(self, "weights", weights)
        if len(weights) != self.triangulation.zeta:
            raise MalformedWeightsError(
                f"pričakovanih {self.triangulation.zeta} uteži, dobljenih {len(weights)}"
            )
        if any(w < 0 for w in weights):
            raise MalformedWeightsError("uteži morajo biti nenegativne")

    @property
    def total(self) -> int:
        return sum(self.weights)

    def with_weights(self, weights: Sequence[int]) -> "NormalMulticurve":
        return NormalMulticurve(self.triangulation, tuple(weights))

    def same_surface(self, other: "NormalMulticurve") -> None:
        if self.triangulation != other.triangulation:
            raise TriangulationMismatchError("krivulji nista na isti triangulaciji")

    def side_weight(self, label: int) -> int:
        return self.weights[norm(label)]

    def corner_counts(self, face_index: int) -> Tuple[int, int, int]:
        """Število lokov v kotih j=0,1,2 (kot j med stranema j-1 in j)."""
        face = self.triangulation.faces[face_index]
        w = [self.side_weight(s) for s in face]
        return tuple((w[j - 1] + w[j] - w[(j + 1) % 3]) // 2 for j in range(3))  # type: ignore[return-value]

    @cached_property
    def _tracing(self) -> "_Tracing":
        return _trace(self)

    def components(self) -> List["NormalMulticurve"]:
        return [self.with_weights(w) for w in self._tracing.component_weights]

    @property
    def is_connected(self) -> bool:
        return len(self._tracing.component_weights) == 1

    def peripheral_vertex(self) -> Optional[int]:
        """Oglišče, okoli katerega je krivulja periferna, sicer None."""
        if not self.is_connected:
            return None
        link = vertex_link(self.triangulation)
        for v, weights in link.items():
            if weights == self.weights:
                return v
        return None

    @property
    def is_peripheral(self) -> bool:
        return self.peripheral_vertex() is not None


def vertex_link(tri: Triangulation) -> Dict[int, Tuple[int, ...]]:
    """Uteži periferne krivulje okoli vsakega oglišča."""
    links: Dict[int, List[int]] = {}
    for e in range(tri.zeta):
        for v in (tri.tail(e), tri.head(e)):
            links.setdefault(v, [0] * tri.zeta)[e] += 1
    return {v: tuple(w) for v, w in links.items()}


def validate(curve: NormalMulticurve, allow_peripheral: bool = False) -> ValidationReport:
    tri = curve.triangulation
    for f, face in enumerate(tri.faces):
        a, b, c = (curve.side_weight(s) for s in face)
        if (a + b + c) % 2:
            return ValidationReport(False, "liha vsota uteži na ploskvi", f)
        if a > b + c or b > a + c or c > a + b:
            return ValidationReport(False, "kršena trikotniška neenakost", f)
    if not allow_peripheral:
        for component in curve.components():
            v = component.peripheral_vertex()
            if v is not None:
                return ValidationReport(False, f"periferna komponenta okoli oglišča {v}")
    return ValidationReport(True)


def peripheral_components(curve: NormalMulticurve) -> Dict[int, int]:
    """Oglišče -> število vzporednih perifernih kopij okoli njega."""
    counts: Dict[int, int] = {}
    for component in curve.components():
        v = component.peripheral_vertex()
        if v is not None:
            counts[v] = counts.get(v, 0) + 1
    return counts


# ----------------------------------------------------------------------
# sledenje lokom


@dataclass
class _Tracing:
    component_weights: List[Tuple[int, ...]]
    # (ploskev, kot, indeks loka) -> komponenta
    arc_component: Dict[Tuple[int, int, int], int] = field(default_factory=dict)


def _edge_point(curve: NormalMulticurve, label: int, position: int) -> Tuple[int, int]:
    e = norm(label)
    return (e, position) if label >= 0 else (e, curve.weights[e] - 1 - position)


def _trace(curve: NormalMulticurve) -> _Tracing:
    tri = curve.triangulation
    graph = nx.Graph()
    for e, w in enumerate(curve.weights):
        graph.add_nodes_from((e, p) for p in range(w))

    arcs: Dict[Tuple[int, int, int], Tuple[int, int]] = {}
    for f, face in enumerate(tri.faces):
        counts = curve.corner_counts(f)
        for j in range(3):
            before, after = face[j - 1], face[j]
            w_before = curve.side_weight(before)
            for k in range(counts[j]):
                p = _edge_point(curve, before, w_before - 1 - k)
                q = _edge_point(curve, after, k)
                graph.add_edge(p, q)
                arcs[(f, j, k)] = p

    components = sorted(
        (sorted(c) for c in nx.connected_components(graph)),
        key=lambda c: c[0],
    )
    index: Dict[Tuple[int, int], int] = {}
    weights: List[Tuple[int, ...]] = []
    for i, component in enumerate(components):
        w = [0] * tri.zeta
        for e, p in component:
            w[e] += 1
            index[(e, p)] = i
        weights.append(tuple(w))

    return _Tracing(
        component_weights=weights,
        arc_component={arc: index[p] for arc, p in arcs.items()},
    )


# ----------------------------------------------------------------------
# komplementarne regije


@dataclass(frozen=True)
class Region:
    index: int
    punctured_euler: int
    marked_points: int
    # (komponenta, stran) za vsako stran krivulje, ki meji na regijo
    boundary: Tuple[Tuple[int, str], ...]

    @property
    def closed_euler(self) -> int:
        """Eulerjeva karakteristika, ko označene točke zapolnimo."""
        return self.punctured_euler + self.marked_points

    @property
    def boundary_count(self) -> int:
        return len(self.boundary)

    def is_pants(self, punctures_count: bool) -> bool:
        if punctures_count:
            return self.punctured_euler == -1 and self.boundary_count + self.marked_points == 3
        return self.closed_euler == -1 and self.boundary_count == 3


def _piece_of_segment(counts: Tuple[int, int, int], f: int, j: int, q: int, w: int):
    """Kos ploskve f, ki vsebuje segment q (0..w) na strani j."""
    c_start, c_end = counts[j], counts[(j + 1) % 3]
    if q < c_start:
        return ("T", f, j) if q == 0 else ("S", f, j, q)
    if q > w - c_end:
        r = w - q
        return ("T", f, (j + 1) % 3) if r == 0 else ("S", f, (j + 1) % 3, r)
    return ("C", f)


def complement_regions(curve: NormalMulticurve) -> List[Region]:
    tri = curve.triangulation
    tracing = curve._tracing
    graph = nx.Graph()

    for f, face in enumerate(tri.faces):
        counts = curve.corner_counts(f)
        graph.add_node(("C", f))
        for j in range(3):
            if counts[j] >= 1:
                graph.add_node(("T", f, j))
                graph.add_nodes_from(("S", f, j, k) for k in range(1, counts[j]))
        for j, label in enumerate(face):
            w = curve.side_weight(label)
            e = norm(label)
            for q in range(w + 1):
                segment = ("E", e, q if label >= 0 else w - q)
                graph.add_edge(segment, _piece_of_segment(counts, f, j, q, w))

    components = sorted(
        (sorted(c, key=repr) for c in nx.connected_components(graph)),
        key=lambda c: repr(c[0]),
    )
    region_of: Dict[tuple, int] = {}
    for i, component in enumerate(components):
        for node in component:
            region_of[node] = i

    marked = [0] * len(components)
    seen_vertices = set()
    for f, j, v in tri.corners():
        if v in seen_vertices:
            continue
        seen_vertices.add(v)
        counts = curve.corner_counts(f)
        piece = ("T", f, j) if counts[j] >= 1 else ("C", f)
        marked[region_of[piece]] += 1

    boundary: List[List[Tuple[int, str]]] = [[] for _ in components]
    represented = set()
    for (f, j, k), comp in sorted(tracing.arc_component.items()):
        if comp in represented:
            continue
        represented.add(comp)
        counts = curve.corner_counts(f)
        inner = ("T", f, j) if k == 0 else ("S", f, j, k)
        outer = ("S", f, j, k + 1) if k + 1 <= counts[j] - 1 else ("C", f)
        boundary[region_of[inner]].append((comp, "inner"))
        boundary[region_of[outer]].append((comp, "outer"))

    regions = []
    for i, component in enumerate(components):
        pieces = sum(1 for node in component if node[0] != "E")
        segments = len(component) - pieces
        regions.append(
            Region(
                index=i,
                punctured_euler=pieces - segments,
                marked_points=marked[i],
                boundary=tuple(sorted(boundary[i])),
            )
        )
    return regions


def flip(
    tri: Triangulation, edge: int, curves: Sequence[NormalMulticurve] = ()
) -> Tuple[Triangulation, List[NormalMulticurve]]:
    """Preklop roba skupaj s preračunom uteži vseh podanih krivulj."""
    new_tri = tri.flip(edge)
    moved = []
    for curve in curves:
        if curve.triangulation != tri:
            raise TriangulationMismatchError("krivulja ni na triangulaciji, ki jo preklapljamo")
        moved.append(NormalMulticurve(new_tri, tri.flip_weights(edge, curve.weights)))
    return new_tri, moved
