"""
Idealne triangulacije orientabilnih ploskev.

Rob z oznako e ima dve strani: +e (oznaka e) in ~e (oznaka ~e = -e-1).
Vsaka ploskev je trojica strani v pozitivnem (ccw) vrstnem redu. Stran +e
teče od repa k glavi roba, stran ~e v obratni smeri.
"""
from __future__ import annotations

from functools import cached_property
from typing import Dict, Iterable, List, Sequence, Tuple

import networkx as nx

from app.core.errors import (
    MalformedWeightsError,
    TriangulationMismatchError,
    UnflippableEdgeError,
)

Face = Tuple[int, int, int]


def norm(label: int) -> int:
    """Rob, ki mu pripada stran z dano oznako."""
    return label if label >= 0 else ~label


class Triangulation:
    def __init__(self, faces: Iterable[Sequence[int]], vertices_are_punctures: bool = True):
        self.faces: Tuple[Face, ...] = tuple(tuple(int(x) for x in face) for face in faces)  # type: ignore[misc]
        self.vertices_are_punctures = vertices_are_punctures

        labels = [x for face in self.faces for x in face]
        if any(len(face) != 3 for face in self.faces):
            raise MalformedWeightsError("vsaka ploskev mora imeti natanko tri strani")
        zeta = len(labels) // 2
        if sorted(labels) != sorted(list(range(zeta)) + [~e for e in range(zeta)]):
            raise MalformedWeightsError("vsak rob mora nastopiti natanko enkrat z obema stranema")
        self.zeta = zeta

        # stran -> (ploskev, mesto)
        self._side: Dict[int, Tuple[int, int]] = {}
        for f, face in enumerate(self.faces):
            for i, s in enumerate(face):
                self._side[s] = (f, i)

    # ------------------------------------------------------------------
    # osnovno

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Triangulation) and self.faces == other.faces and (
            self.vertices_are_punctures == other.vertices_are_punctures
        )

    def __hash__(self) -> int:
        return hash((self.faces, self.vertices_are_punctures))

    def __repr__(self) -> str:
        return f"Triangulation(zeta={self.zeta}, faces={len(self.faces)}, vertices={self.num_vertices})"

    def side_position(self, label: int) -> Tuple[int, int]:
        return self._side[label]

    def require_same(self, other: "Triangulation") -> None:
        if self != other:
            raise TriangulationMismatchError("krivulji nista na isti triangulaciji")

    # ------------------------------------------------------------------
    # oglišča

    @cached_property
    def _vertex_maps(self) -> Tuple[Dict[int, int], Dict[int, int]]:
        # vozlišča grafa: ("t", e) rep roba e, ("h", e) glava roba e
        def start(s: int) -> Tuple[str, int]:
            return ("t", s) if s >= 0 else ("h", ~s)

        def end(s: int) -> Tuple[str, int]:
            return ("h", s) if s >= 0 else ("t", ~s)

        graph = nx.Graph()
        for e in range(self.zeta):
            graph.add_node(("t", e))
            graph.add_node(("h", e))
        for face in self.faces:
            for i in range(3):
                graph.add_edge(end(face[i]), start(face[(i + 1) % 3]))

        classes = sorted(
            (sorted(component) for component in nx.connected_components(graph)),
            key=lambda c: (c[0][1], c[0][0]),
        )
        tail: Dict[int, int] = {}
        head: Dict[int, int] = {}
        for v, component in enumerate(classes):
            for kind, e in component:
                (tail if kind == "t" else head)[e] = v
        return tail, head

    @property
    def num_vertices(self) -> int:
        tail, head = self._vertex_maps
        return len(set(tail.values()) | set(head.values()))

    def tail(self, edge: int) -> int:
        return self._vertex_maps[0][edge]

    def head(self, edge: int) -> int:
        return self._vertex_maps[1][edge]

    def side_start(self, label: int) -> int:
        return self.tail(label) if label >= 0 else self.head(~label)

    def corners(self) -> List[Tuple[int, int, int]]:
        """Vsi koti kot (ploskev, mesto, oglišče); kot j leži med stranema j-1 in j."""
        return [
            (f, j, self.side_start(face[j]))
            for f, face in enumerate(self.faces)
            for j in range(3)
        ]

    @property
    def euler_characteristic(self) -> int:
        """Eulerjeva karakteristika zaprte ploskve (oglišča zapolnjena)."""
        return self.num_vertices - self.zeta + len(self.faces)

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic) // 2

    @property
    def punctures(self) -> int:
        return self.num_vertices if self.vertices_are_punctures else 0

    # ------------------------------------------------------------------
    # preklopi

    def is_flippable(self, edge: int) -> bool:
        return self._side[edge][0] != self._side[~edge][0]

    def square(self, edge: int) -> Tuple[int, int, int, int]:
        """Stranice štirikotnika okoli roba: ploskvi (e,a,b) in (~e,c,d)."""
        if not self.is_flippable(edge):
            raise UnflippableEdgeError(f"rob {edge} ima obe strani na isti ploskvi")
        f, i = self._side[edge]
        g, j = self._side[~edge]
        face, other = self.faces[f], self.faces[g]
        a, b = face[(i + 1) % 3], face[(i + 2) % 3]
        c, d = other[(j + 1) % 3], other[(j + 2) % 3]
        return a, b, c, d

    def flip(self, edge: int) -> "Triangulation":
        """(e,a,b),(~e,c,d) -> (e,b,c),(~e,d,a); ostale ploskve ostanejo."""
        a, b, c, d = self.square(edge)
        f, _ = self._side[edge]
        g, _ = self._side[~edge]
        faces = list(self.faces)
        faces[f] = (edge, b, c)
        faces[g] = (~edge, d, a)
        return Triangulation(faces, self.vertices_are_punctures)

    def flip_weights(self, edge: int, weights: Sequence[int]) -> Tuple[int, ...]:
        a, b, c, d = self.square(edge)
        w = list(weights)
        wa, wb, wc, wd = (w[norm(x)] for x in (a, b, c, d))
        w[edge] = max(wa + wc, wb + wd) - w[edge]
        return tuple(w)

    # ------------------------------------------------------------------
    # serializacija

    def to_payload(self) -> dict:
        return {
            "faces": [list(face) for face in self.faces],
            "vertices_are_punctures": self.vertices_are_punctures,
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "Triangulation":
        return cls(payload["faces"], bool(payload.get("vertices_are_punctures", True)))


def one_vertex_surface(genus: int) -> Triangulation:
    """
    Triangulacija zaprte ploskve roda g z enim (označenim) ogliščem.

    Lepljenje 4g-kotnika a1 b1 ~a1 ~b1 ... razrežemo na pahljačo iz oglišča 0.
    """
    if genus < 1:
        raise MalformedWeightsError("rod mora biti vsaj 1")
    sides: List[int] = []
    for i in range(genus):
        a, b = 2 * i, 2 * i + 1
        sides.extend([a, b, ~a, ~b])
    polygon = len(sides)
    next_label = 2 * genus
    faces: List[Face] = []
    # diagonale iz oglišča 0 do oglišč 2..polygon-2
    diagonals = {k: next_label + (k - 2) for k in range(2, polygon - 1)}
    for k in range(1, polygon - 1):
        first = sides[0] if k == 1 else diagonals[k]
        last = sides[polygon - 1] if k + 1 == polygon - 1 else ~diagonals[k + 1]
        faces.append((first, sides[k], last))
    return Triangulation(faces, vertices_are_punctures=False)
