"""
Testi za app/services/triangulation.py

Pokriva:
- oznake strani in norm
- oglišča, Eulerjevo karakteristiko in rod
- preklope robov in uteži
- one_vertex_surface
- serializacijo triangulacije
"""
import random

import pytest


def sphere(n: int = 6):
    from app.services.agol_path import PolygonModel

    return PolygonModel(n).triangulation


class TestLabels:
    def test_norm(self):
        """~e in e pripadata istemu robu."""
        from app.services.triangulation import norm

        assert norm(4) == 4
        assert norm(~4) == 4
        assert ~4 == -5

    def test_rejects_missing_side(self):
        """Vsak rob mora nastopiti z obema stranema."""
        from app.core.errors import MalformedWeightsError
        from app.services.triangulation import Triangulation

        with pytest.raises(MalformedWeightsError):
            Triangulation([(0, 1, 2), (~0, ~1, 3)])


class TestTopology:
    def test_punctured_sphere(self):
        """Poligonski model n=6: 6 punkcij, rod 0."""
        tri = sphere(6)
        assert tri.zeta == 12
        assert len(tri.faces) == 8
        assert tri.num_vertices == 6
        assert tri.euler_characteristic == 2
        assert tri.genus == 0
        assert tri.punctures == 6

    @pytest.mark.parametrize("genus", [1, 2, 3])
    def test_one_vertex_surface(self, genus):
        """4g-kotnik z enim ogliščem da ploskev roda g."""
        from app.services.triangulation import one_vertex_surface

        tri = one_vertex_surface(genus)
        assert tri.num_vertices == 1
        assert tri.genus == genus
        assert tri.punctures == 0
        assert tri.zeta == 6 * genus - 3

    def test_one_vertex_rejects_sphere(self):
        from app.core.errors import MalformedWeightsError
        from app.services.triangulation import one_vertex_surface

        with pytest.raises(MalformedWeightsError):
            one_vertex_surface(0)


class TestFlips:
    def test_flip_preserves_surface(self):
        """Preklop ohrani število oglišč in rod."""
        tri = sphere(7)
        for e in range(tri.zeta):
            if tri.is_flippable(e):
                flipped = tri.flip(e)
                assert flipped.num_vertices == tri.num_vertices
                assert flipped.genus == tri.genus

    def test_flip_weights_involution(self):
        """Dvojni preklop uteži vrne prvotne uteži."""
        rng = random.Random(11)
        tri = sphere(6)
        for _ in range(20):
            w = tuple(rng.randint(0, 9) for _ in range(tri.zeta))
            e = rng.randrange(tri.zeta)
            once = tri.flip_weights(e, w)
            assert tri.flip(e).flip_weights(e, once) == w

    def test_four_flips_restore_faces(self):
        """Ploskvi, zapisani z e na prvem mestu, se po štirih preklopih vrneta."""
        from app.services.triangulation import Triangulation

        tri = Triangulation([(0, 1, 2), (~0, ~2, ~1)])
        assert tri.flip(0).flip(0).flip(0).flip(0) == tri

    def test_unflippable_edge(self):
        """Rob z obema stranema na isti ploskvi ni preklopljiv."""
        from app.core.errors import UnflippableEdgeError
        from app.services.triangulation import Triangulation, one_vertex_surface

        tri = one_vertex_surface(1)
        # trikotnik (0, 1, ~2) in (2, ~0, ~1): vsi robovi so med različnima ploskvama
        assert all(tri.is_flippable(e) for e in range(tri.zeta))
        with pytest.raises(UnflippableEdgeError):
            Triangulation([(0, ~0, 1), (~1, 2, ~2)]).square(0)


class TestPayload:
    def test_payload_round_trip(self):
        from app.services.triangulation import Triangulation

        tri = sphere(5)
        assert Triangulation.from_payload(tri.to_payload()) == tri
