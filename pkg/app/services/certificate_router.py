from typing import Any, Dict

from fastapi import APIRouter, HTTPException

from app.core.errors import MalformedDocumentError, TopologyError
from app.models.documents import VerifyResponse
from app.services.path_service import path_document
from app.services.surgery import emit_surgery_description
from app.services.verifier import verify_certificate
from app.utils.logging_utils import get_logger

router = APIRouter(tags=["certificates"])
logger = get_logger(__name__)


def _http_error(exc: TopologyError) -> HTTPException:
    if isinstance(exc, MalformedDocumentError):
        return HTTPException(status_code=422, detail=str(exc))
    return HTTPException(status_code=400, detail=str(exc))


@router.get("/agol-path/{n}")
def agol_path(n: int) -> Dict[str, Any]:
    try:
        return path_document(n)
    except TopologyError as exc:
        logger.info("Pot za n=%d zavrnjena: %s", n, exc)
        raise _http_error(exc)


@router.post("/certificates/verify", response_model=VerifyResponse)
def verify(document: Dict[str, Any]) -> VerifyResponse:
    try:
        return verify_certificate(document)
    except TopologyError as exc:
        raise _http_error(exc)


@router.post("/certificates/surgery")
def surgery(document: Dict[str, Any]) -> Dict[str, Any]:
    try:
        return emit_surgery_description(document)
    except TopologyError as exc:
        raise _http_error(exc)
