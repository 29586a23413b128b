"""
Testi za app/services/curves.py

Pokriva:
- konstrukcijo NormalMulticurve (dolžina, negativne uteži)
- validate (parnost, trikotniška neenakost, periferne komponente)
- components in peripheral_components
- complement_regions
- flip skupaj s krivuljami
"""
import pytest


def model(n: int = 6):
    from app.services.agol_path import PolygonModel

    return PolygonModel(n)


class TestConstruction:
    def test_wrong_length(self):
        from app.core.errors import MalformedWeightsError
        from app.services.curves import NormalMulticurve

        tri = model().triangulation
        with pytest.raises(MalformedWeightsError):
            NormalMulticurve(tri, (0,) * (tri.zeta - 1))

    def test_negative_weight(self):
        from app.core.errors import MalformedWeightsError
        from app.services.curves import NormalMulticurve

        tri = model().triangulation
        with pytest.raises(MalformedWeightsError):
            NormalMulticurve(tri, (-1,) + (0,) * (tri.zeta - 1))

    def test_malformed_is_value_error(self):
        """Napačen vhod je hkrati ValueError."""
        from app.core.errors import MalformedWeightsError, TopologyError

        assert issubclass(MalformedWeightsError, ValueError)
        assert issubclass(MalformedWeightsError, TopologyError)


class TestValidate:
    def test_beta_curve_valid(self):
        """β(1,3) je veljavna, povezana, neperiferna krivulja."""
        from app.services.curves import validate

        beta = model().realize(1, 3)
        assert validate(beta).valid
        assert beta.is_connected
        assert not beta.is_peripheral
        assert beta.total == 4

    def test_odd_face_sum(self):
        from app.services.curves import NormalMulticurve, validate

        tri = model().triangulation
        w = [0] * tri.zeta
        w[0] = 1
        report = validate(NormalMulticurve(tri, tuple(w)))
        assert not report.valid
        assert report.face is not None

    def test_triangle_inequality(self):
        from app.services.curves import NormalMulticurve, validate

        tri = model().triangulation
        w = [0] * tri.zeta
        w[0] = 2
        report = validate(NormalMulticurve(tri, tuple(w)))
        assert not report.valid

    def test_peripheral_rejected(self):
        """Vezna krivulja oglišča je periferna."""
        from app.services.curves import NormalMulticurve, validate, vertex_link

        tri = model().triangulation
        v, weights = next(iter(vertex_link(tri).items()))
        curve = NormalMulticurve(tri, weights)
        assert curve.peripheral_vertex() == v
        assert not validate(curve).valid
        assert validate(curve, allow_peripheral=True).valid


class TestComponents:
    def test_disjoint_union(self):
        from app.services.curves import NormalMulticurve

        m = model()
        a, b = m.realize(1, 3), m.realize(4, 6)
        union = NormalMulticurve(m.triangulation, tuple(x + y for x, y in zip(a.weights, b.weights)))
        weights = sorted(c.weights for c in union.components())
        assert weights == sorted([a.weights, b.weights])
        assert not union.is_connected

    def test_parallel_copies(self):
        m = model()
        a = m.realize(2, 5)
        double = a.with_weights(tuple(2 * x for x in a.weights))
        assert [c.weights for c in double.components()] == [a.weights, a.weights]

    def test_peripheral_components(self):
        from app.services.curves import NormalMulticurve, peripheral_components, vertex_link

        m = model()
        link = vertex_link(m.triangulation)
        v = sorted(link)[0]
        beta = m.realize(1, 4)
        union = NormalMulticurve(m.triangulation, tuple(x + y for x, y in zip(beta.weights, link[v])))
        assert peripheral_components(union) == {v: 1}


class TestComplementRegions:
    def test_twice_punctured_disk(self):
        """β(1,3) loči disk z dvema punkcijama od diska s štirimi."""
        from app.services.curves import complement_regions

        regions = complement_regions(model().realize(1, 3))
        assert len(regions) == 2
        by_marked = {r.marked_points: r for r in regions}
        small, large = by_marked[2], by_marked[4]
        assert small.punctured_euler == -1
        assert small.is_pants(True)
        assert large.punctured_euler == -3
        assert small.boundary_count == large.boundary_count == 1

    def test_regions_account_for_every_vertex(self):
        from app.services.curves import complement_regions

        m = model(7)
        regions = complement_regions(m.realize(2, 5))
        assert sum(r.marked_points for r in regions) == 7


class TestFlip:
    def test_flip_moves_curves(self):
        from app.services.curves import flip, validate

        m = model()
        beta = m.realize(1, 3)
        new_tri, (moved,) = flip(m.triangulation, m.top_diagonal(2), [beta])
        assert moved.triangulation == new_tri
        assert validate(moved).valid

    def test_flip_rejects_foreign_curve(self):
        from app.core.errors import TriangulationMismatchError
        from app.services.curves import flip

        with pytest.raises(TriangulationMismatchError):
            flip(model(6).triangulation, 0, [model(7).realize(1, 3)])
