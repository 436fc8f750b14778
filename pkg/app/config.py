import os
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field


class Settings(BaseModel):
    """Resource caps and server settings"""

    model_config = ConfigDict(frozen=True)

    max_vertices: int = Field(default=10**7, ge=1)
    max_cycle_length: int = Field(default=10**7, ge=1)
    max_alphabet: int = Field(default=2**20, ge=1)
    max_brute_force: int = Field(default=10**6, ge=1)
    host: str = "0.0.0.0"
    port: int = 8000

    @classmethod
    def from_env(cls) -> "Settings":
        """Build settings from the environment (and a .env file, if present)"""
        load_dotenv()
        defaults = cls()
        return cls(
            max_vertices=int(os.getenv("DEBRUIJN_MAX_VERTICES", defaults.max_vertices)),
            max_cycle_length=int(os.getenv("DEBRUIJN_MAX_CYCLE_LENGTH", defaults.max_cycle_length)),
            max_alphabet=int(os.getenv("DEBRUIJN_MAX_ALPHABET", defaults.max_alphabet)),
            max_brute_force=int(os.getenv("DEBRUIJN_MAX_BRUTE_FORCE", defaults.max_brute_force)),
            host=os.getenv("HOST", defaults.host),
            port=int(os.getenv("PORT", defaults.port)),
        )


@lru_cache()
def get_settings() -> Settings:
    return Settings.from_env()
