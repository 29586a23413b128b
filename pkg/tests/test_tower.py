"""
Testi za app/services/tower.py in app/services/tower_search.py

Pokriva:
- window_range (vrstni red eksponentov)
- check_bad_set (največ štiri zaporedna cela števila)
- replay in is_derived, podpora loka razpetja
- build_tower in build_aux_tower (napačni vhodi, gradnja s pravo vodilno krivuljo)
"""
import random

import pytest


class TestWindow:
    def test_order(self):
        from app.services.tower_search import window_range

        assert window_range(2) == [0, 1, -1, 2, -2]
        assert window_range(0) == [0]


class TestBadSet:
    @pytest.mark.parametrize("bad", [[], [7], [3, 4, 5, 6], [-1, 0, 2]])
    def test_allowed(self, bad):
        from app.services.tower_search import check_bad_set

        check_bad_set(bad)

    @pytest.mark.parametrize("bad", [[0, 5], [1, 2, 3, 4, 5], [-2, 2]])
    def test_violation(self, bad):
        from app.core.errors import BadExponentSetError
        from app.services.tower_search import check_bad_set

        with pytest.raises(BadExponentSetError):
            check_bad_set(bad)


class TestReplay:
    def test_single_split_is_not_derived(self, genus2):
        """En razcep ne dotakne vseh vej, zato ni izpeljan korak."""
        from app.services.tower import is_derived, replay
        from app.services.train_track import standard_complete_track

        track = standard_complete_track(genus2.E)
        t2 = track.cores[0][1]
        record = track.split_record(t2, "right")
        after = replay(track, (record,))
        assert after.structure() == track.split(t2, "right").structure()
        assert not is_derived(track, after, (record,))

    def test_foreign_record(self, genus2):
        from app.core.errors import SplitError
        from app.services.tower import is_derived, replay
        from app.services.train_track import standard_complete_track

        track = standard_complete_track(genus2.E)
        t2 = track.cores[0][1]
        record = track.split_record(t2, "right")
        after = track.split(t2, "right")
        # isti zapis na že razcepljeni tirnici ne velja več
        with pytest.raises(SplitError):
            replay(after, (record,))
        assert not is_derived(after, after, (record,))


class TestSupport:
    def test_support_follows_heavy_side(self, genus2):
        from app.services.train_track import standard_complete_track

        track = standard_complete_track(genus2.E)
        t2 = track.cores[0][1]
        record = track.split_record(t2, "right")
        assert record.support == (t2, record.a_right)

    def test_neighbours_do_not_cover(self, genus2, monkeypatch):
        """Koraki, ki se vej le dotaknejo s sosednjimi konci, niso izpeljani."""
        from app.services import tower as tower_module
        from app.services.train_track import SplitRecord, standard_complete_track

        track = standard_complete_track(genus2.E)
        first = track.branches[0]
        monkeypatch.setattr(tower_module, "replay", lambda before, step: before)

        neighbours_only = tuple(SplitRecord(first, "left", first, b, b, b) for b in track.branches)
        assert set(track.branches) <= {
            x for r in neighbours_only for x in (r.branch, r.a_left, r.a_right, r.b_left, r.b_right)
        }
        assert not tower_module.is_derived(track, track, neighbours_only)

        along_arcs = tuple(SplitRecord(b, "right", first, b, first, first) for b in track.branches)
        assert tower_module.is_derived(track, track, along_arcs)


class TestBuildTower:
    @pytest.mark.parametrize("n", [0, 1])
    def test_certificate_tower_needs_two_steps(self, genus2, n):
        """En sam korak je rezerviran za pomožno tirnico."""
        from app.core.errors import TowerError
        from app.services.tower_search import build_tower
        from app.services.track_coordinates import TrackChart

        with pytest.raises(TowerError, match="vsaj dva"):
            build_tower(TrackChart.standard(genus2.E), genus2.E.duals[0], n)

    def test_guide_must_cover(self, genus2):
        """Krivulja sistema je nošena le na svojem jedru in ne pokrije τ_0."""
        from app.core.errors import TowerError
        from app.services.tower_search import build_tower
        from app.services.track_coordinates import TrackChart

        with pytest.raises(TowerError):
            build_tower(TrackChart.standard(genus2.E), genus2.E.curves[0], 2)

    def test_aux_guide_must_cover(self, genus2):
        from app.core.errors import TowerError
        from app.services.tower_search import build_aux_tower
        from app.services.track_coordinates import TrackChart

        with pytest.raises(TowerError, match="ne pokrije"):
            build_aux_tower(TrackChart.standard(genus2.D, "default"), genus2.D.curves[0])

    @pytest.mark.slow
    def test_searched_tower(self, genus2):
        from app.services.pipeline import search_guide
        from app.services.tower import is_derived
        from app.services.track_coordinates import TrackChart

        chart = TrackChart.standard(genus2.E)
        choice = search_guide(genus2, chart, 2, random.Random(0))
        tower = choice.tower
        assert tower.length == 2
        assert tower.covers_at(0, choice.guide, connected=True)
        for before, after, step in zip(tower.tracks, tower.tracks[1:], tower.steps):
            assert is_derived(before, after, step)
            assert after.is_maximal()

    @pytest.mark.slow
    def test_twist_search_needs_covering_curve(self, genus2):
        """Krivulja sistema E ne pokrije tirnice, zato iskanje zasukov zavrne vhod."""
        from app.core.errors import TowerError
        from app.services.pipeline import search_guide
        from app.services.tower_search import arc_cover_check, twist_cover_search
        from app.services.track_coordinates import TrackChart

        chart = TrackChart.standard(genus2.E)
        tower = search_guide(genus2, chart, 2, random.Random(0)).tower
        core = genus2.E.curves[0]
        with pytest.raises(TowerError):
            twist_cover_search(tower, 0, genus2.E.shorts[0], genus2.D.curves, window=1)
        with pytest.raises(TowerError):
            arc_cover_check(tower, 0, core, genus2.D.curves[0])
