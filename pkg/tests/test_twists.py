"""
Testi za app/services/twists.py

Pokriva:
- short_position (kratek položaj, prenos in povratek uteži)
- intersection_number na krivuljah β_{i,j}
- dehn_twist: i(δ_k^m(a), a) = |m| i(a,k)^2, inverz, fiksne krivulje
- TwistWord (vrstni red črk in inverz)
"""
import random

import pytest


def model(n: int = 6):
    from app.services.agol_path import PolygonModel

    return PolygonModel(n)


def all_betas(m):
    n = m.n
    return [
        m.realize(i, j)
        for i in range(1, n + 1)
        for j in range(i + 2, n + 1)
        if (j - i) % n != n - 1
    ]


class TestShortPosition:
    def test_short_position_total_two(self):
        from app.services.twists import short_position

        beta = model().realize(1, 4)
        short = short_position(beta)
        moved = short.transport(beta.weights)
        assert sum(moved) == 2
        assert moved[short.e] == moved[short.f] == 1

    def test_restore_inverts_transport(self):
        from app.services.twists import short_position

        m = model()
        short = short_position(m.realize(1, 3))
        other = m.realize(2, 5)
        assert short.restore(short.transport(other.weights)) == other.weights

    def test_rejects_multicurve(self):
        from app.core.errors import InvalidCurveError
        from app.services.curves import NormalMulticurve
        from app.services.twists import short_position

        m = model()
        a, b = m.realize(1, 3), m.realize(4, 6)
        union = NormalMulticurve(m.triangulation, tuple(x + y for x, y in zip(a.weights, b.weights)))
        with pytest.raises(InvalidCurveError):
            short_position(union)

    def test_rejects_peripheral(self):
        from app.core.errors import InvalidCurveError
        from app.services.curves import NormalMulticurve, vertex_link
        from app.services.twists import short_position

        tri = model().triangulation
        weights = next(iter(vertex_link(tri).values()))
        with pytest.raises(InvalidCurveError):
            short_position(NormalMulticurve(tri, weights))


class TestIntersection:
    def test_elementary_pair(self):
        """Prekrivajoča se intervala dolžine 2 se sekata v dveh točkah."""
        from app.services.twists import intersection_number

        m = model()
        assert intersection_number(m.realize(1, 3), m.realize(2, 4)) == 2

    def test_disjoint_and_self(self):
        from app.services.twists import intersection_number

        m = model()
        a = m.realize(1, 3)
        assert intersection_number(a, m.realize(4, 6)) == 0
        assert intersection_number(a, a) == 0

    def test_symmetric(self):
        from app.services.twists import intersection_number

        m = model(7)
        a, b = m.realize(1, 4), m.realize(3, 6)
        assert intersection_number(a, b) == intersection_number(b, a)

    def test_flip_invariance(self):
        """Presečno število ni odvisno od triangulacije."""
        from app.services.curves import flip
        from app.services.twists import intersection_number

        m = model()
        a, b = m.realize(1, 3), m.realize(2, 5)
        before = intersection_number(a, b)
        tri, (a2, b2) = flip(m.triangulation, m.equator_edge(3), [a, b])
        assert intersection_number(a2, b2) == before



    def test_wrapping_pair_both_orders(self):
        """β(1,5) obkroža {5,6}, β(2,6) obkroža {6,1}; sekata se dvakrat."""
        from app.services.twists import intersection_number

        m = model()
        a, b = m.realize(1, 5), m.realize(2, 6)
        assert intersection_number(a, b) == 2
        assert intersection_number(b, a) == 2

    def test_symmetric_random(self):
        from app.services.twists import intersection_number

        rng = random.Random(11)
        m = model(7)
        curves = all_betas(m)
        for _ in range(40):
            a, b = rng.choice(curves), rng.choice(curves)
            assert intersection_number(a, b) == intersection_number(b, a)

    def test_random_flip_invariance(self):
        from app.services.curves import flip
        from app.services.twists import intersection_number

        rng = random.Random(5)
        m = model(7)
        curves = all_betas(m)
        for _ in range(10):
            a, b = rng.choice(curves), rng.choice(curves)
            before = intersection_number(a, b)
            tri, moved = m.triangulation, [a, b]
            for _ in range(6):
                edge = rng.choice([e for e in range(tri.zeta) if tri.is_flippable(e)])
                tri, moved = flip(tri, edge, moved)
            assert intersection_number(*moved) == before


class TestDehnTwist:
    def test_twist_formula(self):
        """i(δ_k^m(a), a) = |m| i(a, k)^2."""
        from app.services.twists import dehn_twist, intersection_number, short_position

        m = model()
        k, a = m.realize(1, 3), m.realize(2, 4)
        short = short_position(k)
        for power in (-3, -1, 1, 2, 5):
            image = dehn_twist(k, power, a, short)
            assert intersection_number(image, a) == abs(power) * 4

    def test_twist_formula_random_sphere(self):
        """Naključne trojice (k, a, m) na šestkrat preluknjani sferi."""
        from app.services.twists import dehn_twist, intersection_number, short_position

        rng = random.Random(2)
        curves = all_betas(model())
        shorts = {}
        for _ in range(150):
            k, a = rng.choice(curves), rng.choice(curves)
            power = rng.choice([p for p in range(-4, 5) if p])
            if k.weights not in shorts:
                shorts[k.weights] = short_position(k)
            short = shorts[k.weights]
            image = dehn_twist(k, power, a, short)
            assert intersection_number(image, a) == abs(power) * intersection_number(a, k) ** 2

    def test_twist_formula_random_genus2(self, genus2):
        """Naključne trojice na zaprti ploskvi roda 2 z dvignjenimi krivuljami."""
        from app.services.twists import dehn_twist, intersection_number, short_position

        rng = random.Random(4)
        curves = list(genus2.D.curves + genus2.E.curves + genus2.D.duals + genus2.E.duals)
        shorts = {}
        for _ in range(60):
            k, a = rng.choice(curves), rng.choice(curves)
            power = rng.choice([-3, -2, -1, 1, 2, 3])
            if k.weights not in shorts:
                shorts[k.weights] = short_position(k)
            short = shorts[k.weights]
            image = dehn_twist(k, power, a, short)
            assert intersection_number(image, a) == abs(power) * intersection_number(a, k) ** 2

    def test_inverse(self):
        from app.services.twists import dehn_twist, short_position

        rng = random.Random(3)
        m = model(7)
        pairs = [(1, 3), (2, 5), (3, 6), (1, 5), (4, 7)]
        for _ in range(10):
            k = m.realize(*rng.choice(pairs))
            a = m.realize(*rng.choice(pairs))
            power = rng.randint(1, 5)
            short = short_position(k)
            there = dehn_twist(k, power, a, short)
            assert dehn_twist(k, -power, there, short).weights == a.weights

    def test_fixes_disjoint_curves(self):
        from app.services.twists import dehn_twist

        m = model()
        k = m.realize(1, 3)
        assert dehn_twist(k, 4, k).weights == k.weights
        assert dehn_twist(k, 4, m.realize(4, 6)).weights == m.realize(4, 6).weights

    def test_zero_power_is_identity(self):
        from app.services.twists import dehn_twist

        m = model()
        a = m.realize(2, 4)
        assert dehn_twist(m.realize(1, 3), 0, a).weights == a.weights


class TestTwistWord:
    def test_rightmost_letter_first(self):
        from app.services.twists import TwistWord, dehn_twist

        m = model()
        k1, k2, a = m.realize(1, 3), m.realize(2, 4), m.realize(3, 5)
        word = TwistWord(((k1, 1), (k2, 2)))
        expected = dehn_twist(k1, 1, dehn_twist(k2, 2, a))
        assert word.apply(a).weights == expected.weights
        assert len(word) == 2

    def test_inverse_word(self):
        from app.services.twists import TwistWord

        m = model()
        word = TwistWord(((m.realize(1, 3), 2), (m.realize(2, 4), -1), (m.realize(3, 5), 1)))
        a = m.realize(1, 4)
        assert word.inverse().apply(word.apply(a)).weights == a.weights
