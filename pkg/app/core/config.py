from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # Nastavitve branja iz .env
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",  # Ignoriraj dodatne env spremenljivke
    )

    project_name: str = Field(default="Heegaard Distance Forge")

    # Verzija JSON dokumentov (certifikat, pot, stolp)
    document_version: int = Field(default=1, alias="HEEGAARD_DOC_VERSION")

    # Meja pregledovanja eksponentov: [-window, window]
    twist_window: int = Field(default=50, alias="HEEGAARD_TWIST_WINDOW")

    # Globina iskanja po "planoti" pri krajšanju krivulje
    shorten_depth: int = Field(default=3, alias="HEEGAARD_SHORTEN_DEPTH")

    # Največ elementarnih razcepov za en izpeljan korak stolpa
    split_limit: int = Field(default=400, alias="HEEGAARD_SPLIT_LIMIT")

    # Koliko vodilnih krivulj poskusimo, preden obupamo
    guide_attempts: int = Field(default=40, alias="HEEGAARD_GUIDE_ATTEMPTS")

    log_level: str = Field(default="INFO", alias="HEEGAARD_LOG_LEVEL")


@lru_cache
def get_settings() -> Settings:
    return Settings()
