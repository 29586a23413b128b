"""
Testi za app/services/pipeline.py, app/services/verifier.py in app/services/surgery.py

Pokriva:
- kandidatne eksponente in zaključno knjigo
- zavrnitev napačnih parametrov (razdalja < 2, premalo zank)
- celoten cevovod rodu 2 (počasni testi): veljavnost, determinizem,
  ponarejen in ponovno zapečaten certifikat, kirurški opis, razdalje 2..5
- slabe množice eksponentov in monotonost stolpa
- napaka invariantnosti ι' ustavi izdelavo
"""
import copy

import pytest


class TestExponents:
    def test_candidates_skip_global_exponent(self):
        from app.services.pipeline import candidate_exponents

        assert candidate_exponents(2) == (1, 3, 4, 5, 6)
        assert candidate_exponents(0) == (1, 2, 3, 4, 5)
        assert candidate_exponents(-1) == (1, 2, 3, 4, 5)

    def test_too_few_loops(self, genus2):
        from app.core.errors import PipelineError
        from app.services.pipeline import select_exponents

        with pytest.raises(PipelineError):
            select_exponents(genus2, None, None, [], 0, window=2)

    def test_closing_ledger_unverified(self):
        from app.services.pipeline import closing_ledger

        entries = closing_ledger()
        assert {e.kind for e in entries} == {"non-haken", "hyperbolic"}
        assert not any(e.verified for e in entries)


class TestForgeArguments:
    def test_distance_one_rejected(self):
        from app.core.errors import PipelineError
        from app.services.pipeline import forge

        with pytest.raises(PipelineError):
            forge(2, 1, 0)

    def test_no_bound_for_invalid(self):
        from app.models.documents import VerifyResponse
        from app.services.pipeline import distance_bound

        response = VerifyResponse(valid=False, exit_code=1, checks=[])
        assert distance_bound(response, {"payload": {"distance": "2"}}) is None


class TestVerifierInput:
    def test_malformed_certificate(self):
        from app.core.errors import MalformedDocumentError
        from app.services.verifier import verify_certificate

        with pytest.raises(MalformedDocumentError):
            verify_certificate({"kind": "distance-certificate", "version": 1, "payload": {"genus": 2}})

    def test_wrong_kind(self):
        from app.core.errors import MalformedDocumentError
        from app.services.path_service import path_document
        from app.services.verifier import verify_certificate

        with pytest.raises(MalformedDocumentError):
            verify_certificate(path_document(5))


@pytest.fixture(scope="module")
def certificate():
    from app.services.pipeline import forge

    return forge(2, 2, 0, window=6)


@pytest.mark.slow
class TestPipeline:
    def test_certificate_verifies(self, certificate):
        from app.services.verifier import EXIT_VALID, verify_certificate

        response = verify_certificate(certificate)
        assert response.valid, [c for c in response.checks if not c.passed]
        assert response.exit_code == EXIT_VALID
        assert certificate["payload"]["verdict"]["valid"]

    def test_unverified_entries_listed(self, certificate):
        from app.services.verifier import verify_certificate

        kinds = {e.kind for e in verify_certificate(certificate).unverified}
        assert {"non-haken", "hyperbolic", "boundary-slope"} <= kinds

    def test_deterministic(self, certificate):
        from app.services.codec import canonical_json
        from app.services.pipeline import forge

        assert canonical_json(forge(2, 2, 0, window=6)) == canonical_json(certificate)

    def test_exponents(self, certificate):
        from app.services.codec import decode_int

        payload = certificate["payload"]
        m = decode_int(payload["global_exponent"])
        candidates = [decode_int(c) for c in payload["candidates"]]
        assert m not in candidates
        exponents = [decode_int(letter["exponent"]) for letter in payload["twist_word"]]
        assert exponents[-1] == candidates[payload["chosen_candidate"]]
        assert all(e == 1 for e in exponents[1:-1])

    def test_tampered_distance(self, certificate):
        """Povečana razdalja brez novih korakov stolpa ne prestane preverjanja."""
        from app.services.verifier import EXIT_INVALID, verify_certificate

        forged = copy.deepcopy(certificate)
        forged["payload"]["distance"] = "3"
        response = verify_certificate(forged)
        assert not response.valid
        assert response.exit_code == EXIT_INVALID
        failed = {c.name for c in response.checks if not c.passed}
        assert {"digest", "tower_length"} <= failed

    def test_distance_bound(self, certificate):
        from app.services.pipeline import distance_bound
        from app.services.verifier import verify_certificate

        assert distance_bound(verify_certificate(certificate), certificate) == "d(V, W) >= 2"

    def test_surgery_description(self, certificate):
        from app.services.codec import SURGERY_KIND
        from app.services.surgery import emit_surgery_description

        doc = emit_surgery_description(certificate)
        assert doc["kind"] == SURGERY_KIND
        loops = doc["payload"]["loops"]
        assert len(loops) == len(certificate["payload"]["twist_word"])
        assert all(loop["slope"] == f"1/{loop['twist_exponent']}" for loop in loops)

    def test_surgery_refuses_invalid(self, certificate):
        from app.core.errors import PipelineError
        from app.services.surgery import emit_surgery_description

        forged = copy.deepcopy(certificate)
        forged["payload"]["distance"] = "3"
        with pytest.raises(PipelineError):
            emit_surgery_description(forged)

    def test_resealed_distance(self, certificate):
        """Ponovno zapečaten dokument prestane digest, pade pa na dolžini stolpa."""
        from app.services.codec import seal
        from app.services.verifier import verify_certificate

        forged = copy.deepcopy(certificate)
        forged["payload"]["distance"] = "3"
        failed = failed_checks(verify_certificate(seal(forged)))
        assert "digest" not in failed
        assert "tower_length" in failed

    def test_resealed_dropped_step(self, certificate):
        from app.services.codec import seal
        from app.services.verifier import verify_certificate

        forged = copy.deepcopy(certificate)
        forged["payload"]["tower"] = forged["payload"]["tower"][:-1]
        failed = failed_checks(verify_certificate(seal(forged)))
        assert "digest" not in failed
        assert "tower_length" in failed

    def test_resealed_twist_exponent(self, certificate):
        """Spremenjen eksponent n_1 da drugačen f(D) od shranjenega."""
        from app.services.codec import seal
        from app.services.verifier import verify_certificate

        forged = copy.deepcopy(certificate)
        forged["payload"]["twist_word"][0]["exponent"] = "0"
        failed = failed_checks(verify_certificate(seal(forged)))
        assert "digest" not in failed
        assert failed & {"image_recomputed", "carried", "wave_free"}

    def test_resealed_mutations(self, certificate):
        """Naključne spremembe uteži in števil po ponovnem pečatenju vedno zavrne."""
        import random

        from app.core.errors import MalformedDocumentError
        from app.services.codec import seal
        from app.services.verifier import verify_certificate

        rng = random.Random(23)
        n = len(certificate["payload"]["tower"])
        for _ in range(40):
            forged = copy.deepcopy(certificate)
            payload = forged["payload"]
            target = rng.choice(["image_D", "D", "E", "distance"])
            if target == "distance":
                payload["distance"] = str(rng.choice([v for v in range(0, 8) if v != n]))
            else:
                curves = payload[target]["curves"] if target in ("D", "E") else payload[target]
                weights = rng.choice(curves)
                idx = rng.randrange(len(weights))
                weights[idx] = str(int(weights[idx]) + rng.choice([1, 2, 3]))
            try:
                response = verify_certificate(seal(forged))
            except MalformedDocumentError:
                continue
            assert not response.valid, target
            assert "digest" not in failed_checks(response)

    def test_bad_sets_on_pipeline_instance(self, genus2):
        """Za vsako dvignjeno zanko je slabih eksponentov največ štiri zaporedna cela števila."""
        import random

        from app.services.agol_path import assign_levels
        from app.services.branched_cover import lift_system
        from app.services.pipeline import AUX_PATTERN, choose_k, loop_bad_sets, search_guide
        from app.services.track_coordinates import TrackChart
        from app.services.twists import short_position

        chart = TrackChart.standard(genus2.E)
        aux_chart = TrackChart.standard(genus2.D, AUX_PATTERN)
        lifted = lift_system(genus2.cover, assign_levels(genus2.cover.branch.model))
        loop_shorts = [short_position(l.curve) for l in lifted]
        choice = search_guide(genus2, chart, 2, random.Random(0), aux_chart, loop_shorts)
        k = choose_k(choice.tower, choice.aux_tower, choice.guide, lifted, loop_shorts)
        bad_sets = loop_bad_sets(choice.tower, short_position(k), lifted, window=8)
        assert len(bad_sets) == len(lifted)
        for bad in bad_sets.values():
            assert len(bad) <= 4
            assert not bad or max(bad) - min(bad) <= 3

    def test_tower_monotone(self, genus2):
        """Krivulja, nošena s τ_n, je nošena z vsemi τ_i."""
        import random

        from app.services.pipeline import search_guide
        from app.services.track_coordinates import TrackChart
        from app.services.twists import dehn_twist

        chart = TrackChart.standard(genus2.E)
        choice = search_guide(genus2, chart, 3, random.Random(1))
        tower = choice.tower
        rng = random.Random(8)
        pool = list(genus2.D.curves + genus2.E.curves)
        curves = [choice.guide] + list(genus2.D.curves)
        for _ in range(20):
            curves.append(dehn_twist(rng.choice(pool), rng.choice([-2, -1, 1, 2]), rng.choice(curves)))
        carried_at_top = [c for c in curves if tower.carried_at(tower.length, c, connected=True)]
        assert choice.guide in carried_at_top
        for c in carried_at_top:
            assert all(tower.carried_at(level, c, connected=True) for level in range(tower.length + 1))


def failed_checks(response):
    return {c.name for c in response.checks if not c.passed}


@pytest.mark.slow
class TestDistances:
    @pytest.mark.parametrize("distance", [3, 4, 5])
    def test_longer_distances(self, distance):
        from app.services.pipeline import forge
        from app.services.verifier import verify_certificate

        certificate = forge(2, distance, 0)
        response = verify_certificate(certificate)
        assert response.valid, failed_checks(response)
        assert certificate["payload"]["distance"] == str(distance)


class TestInvolutionFailure:
    def test_construction_error_propagates(self, monkeypatch):
        """Neuspešen preizkus invariantnosti ι' ustavi izdelavo certifikata."""
        from app.core.errors import ConstructionError
        from app.services import pipeline

        def broken(*args, **kwargs):
            raise ConstructionError("ι' ne ohranja zasukanega sistema zank")

        monkeypatch.setattr(pipeline, "search_guide", lambda *a, **kw: pipeline.GuideChoice(None, None, None, 1))
        monkeypatch.setattr(pipeline, "choose_k", lambda *a, **kw: "k")
        monkeypatch.setattr(pipeline, "short_position", lambda curve: curve)
        monkeypatch.setattr(pipeline, "global_twist_exponent", lambda *a, **kw: 1)
        monkeypatch.setattr(pipeline, "twisted", lambda short, m, curve: curve)
        monkeypatch.setattr(pipeline, "lift_system", lambda *a, **kw: [])
        monkeypatch.setattr(pipeline, "assign_levels", lambda model: None)
        monkeypatch.setattr(pipeline, "conjugated_involution", broken)
        with pytest.raises(ConstructionError):
            pipeline.forge(2, 2, 0, window=1)
