"""
Kirurški opis 3-mnogoterosti M iz veljavnega certifikata.

Kirurgija 1/n_i na l'_i v okolici Heegaardove ploskve je enaka n_i-kratnemu
Dehnovemu zasuku vzdolž projekcije l_i, zato je M = V ∪_f W.
"""
from __future__ import annotations

from typing import Any, Dict

from app.core.errors import PipelineError
from app.models.documents import SurgeryDoc, SurgeryLoopDoc
from app.services.codec import SURGERY_KIND, curve_from, decode_int, encode_weights, envelope, triangulation_from
from app.services.heegaard import canonical_systems
from app.services.verifier import load_certificate, verify_certificate
from app.utils.logging_utils import get_logger

logger = get_logger(__name__)


def emit_surgery_description(document: Dict[str, Any]) -> Dict[str, Any]:
    response = verify_certificate(document)
    if not response.valid:
        failed = ", ".join(c.name for c in response.checks if not c.passed)
        raise PipelineError(f"certifikat ni veljaven ({failed})")
    cert = load_certificate(document)
    cover = canonical_systems(cert.genus).cover
    tri = triangulation_from(cert.triangulation)

    loops = []
    for index, letter in enumerate(cert.twist_word, start=1):
        n_i = decode_int(letter.exponent)
        loop = curve_from(tri, letter.curve)
        loops.append(
            SurgeryLoopDoc(
                index=index,
                base_loop=letter.base_loop,
                component=letter.component,
                level=letter.level,
                loop=letter.curve,
                projection=encode_weights(cover.project_weights(loop.weights)),
                slope=f"1/{n_i}",
                twist_exponent=letter.exponent,
            )
        )
    summary = (
        f"M: standardni Heegaardov razcep S³ roda {cert.genus}, kirurgija 1/n_i na {len(loops)} "
        f"dvignjenih zankah po nivojih; Heegaardova razdalja je vsaj {cert.distance}"
    )
    logger.info("Kirurški opis: %d zank", len(loops))
    doc = SurgeryDoc(
        genus=cert.genus,
        distance=cert.distance,
        loops=loops,
        summary=summary,
        ledger=response.unverified,
    )
    return envelope(SURGERY_KIND, doc)
