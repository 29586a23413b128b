import logging
from typing import Optional

from app.core.config import get_settings


def get_logger(name: Optional[str] = None) -> logging.Logger:
    logging.basicConfig(
        level=getattr(logging, get_settings().log_level.upper(), logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
    return logging.getLogger(name)
