"""
Testi za app/services/codec.py

Pokriva:
- kodiranje celih števil kot nizov
- kanonični JSON in izvleček (seal, digest_matches)
- open_envelope (vrsta, verzija, neveljavna vsebina)
- pretvorbo tirnice, sistema in razcepov v dokumente in nazaj
"""
import pytest


class TestIntegers:
    def test_big_integer_survives(self):
        from app.services.codec import decode_int, encode_int

        big = 3 ** 200
        assert encode_int(big) == str(big)
        assert decode_int(encode_int(-big)) == -big

    @pytest.mark.parametrize("value", [7, 1.5, None, "12a", ""])
    def test_rejects_non_strings(self, value):
        from app.core.errors import MalformedDocumentError
        from app.services.codec import decode_int

        with pytest.raises(MalformedDocumentError):
            decode_int(value)


class TestCanonicalJson:
    def test_key_order_irrelevant(self):
        from app.services.codec import canonical_json

        a = {"b": 1, "a": [1, 2], "c": {"y": 1, "x": 2}}
        b = {"c": {"x": 2, "y": 1}, "a": [1, 2], "b": 1}
        assert canonical_json(a) == canonical_json(b)
        assert canonical_json(a).endswith("\n")
        assert " " not in canonical_json(a)

    def test_seal_and_tamper(self):
        from app.services.codec import digest_matches, envelope, seal

        doc = seal(envelope("pants-path", {"n": 5}))
        assert len(doc["digest"]) == 64
        assert digest_matches(doc)
        doc["payload"]["n"] = 6
        assert not digest_matches(doc)

    def test_reseal_is_stable(self):
        from app.services.codec import envelope, seal

        doc = seal(envelope("pants-path", {"n": 5}))
        assert seal(doc)["digest"] == doc["digest"]

    def test_loads_rejects_non_objects(self):
        from app.core.errors import MalformedDocumentError
        from app.services.codec import loads

        with pytest.raises(MalformedDocumentError):
            loads("[1, 2]")
        with pytest.raises(MalformedDocumentError):
            loads("{ni json")


class TestEnvelope:
    def test_wrong_kind(self):
        from app.core.errors import MalformedDocumentError
        from app.models.documents import TowerDoc
        from app.services.codec import envelope, open_envelope

        with pytest.raises(MalformedDocumentError):
            open_envelope(envelope("pants-path", {}), "derived-tower", TowerDoc)

    def test_wrong_version(self):
        from app.core.errors import MalformedDocumentError
        from app.models.documents import TowerDoc
        from app.services.codec import open_envelope

        doc = {"kind": "derived-tower", "version": 99, "payload": {}}
        with pytest.raises(MalformedDocumentError):
            open_envelope(doc, "derived-tower", TowerDoc)

    def test_missing_fields(self):
        from app.core.errors import MalformedDocumentError
        from app.models.documents import TowerDoc
        from app.services.codec import envelope, open_envelope

        with pytest.raises(MalformedDocumentError):
            open_envelope(envelope("derived-tower", {"genus": 2}), "derived-tower", TowerDoc)
        with pytest.raises(MalformedDocumentError):
            open_envelope({"kind": "derived-tower"}, "derived-tower", TowerDoc)


class TestConverters:
    def test_track_document(self, genus2):
        from app.services.codec import track_doc, track_from
        from app.services.train_track import standard_complete_track

        track = standard_complete_track(genus2.E, "mirror")
        doc = track_doc(track, "mirror")
        assert doc.pattern == "mirror"
        restored = track_from(doc)
        assert restored.structure() == track.structure()
        assert restored.cores == track.cores

    def test_broken_track(self, genus2):
        from app.core.errors import MalformedDocumentError
        from app.services.codec import track_doc, track_from
        from app.services.train_track import standard_complete_track

        doc = track_doc(standard_complete_track(genus2.E))
        doc.switches = doc.switches[1:]
        with pytest.raises(MalformedDocumentError):
            track_from(doc)

    def test_system_document(self, genus2):
        from app.services.codec import system_doc, system_from

        doc = system_doc(genus2.E)
        assert all(isinstance(w, str) for w in doc.curves[0])
        system = system_from(genus2.cover.triangulation, doc)
        assert [c.weights for c in system.curves] == [c.weights for c in genus2.E.curves]

    def test_negative_weights_malformed(self, genus2):
        from app.core.errors import MalformedDocumentError
        from app.services.codec import curve_from

        tri = genus2.cover.triangulation
        weights = ["-2"] + ["0"] * (tri.zeta - 1)
        with pytest.raises(MalformedDocumentError):
            curve_from(tri, weights)

    def test_split_records(self, genus2):
        from app.services.codec import steps_doc, steps_from
        from app.services.train_track import standard_complete_track

        track = standard_complete_track(genus2.E)
        record = track.split_record(track.cores[0][1], "left")
        assert steps_from(steps_doc([(record,)])) == ((record,),)
