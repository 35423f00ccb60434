"""
Runtime settings for the counting index.

Values come from the environment (optionally a .env file in the working
directory); CLI flags override them.
"""

import os
from dataclasses import dataclass

from dotenv import load_dotenv

load_dotenv()

DEFAULT_DATABASE_URL = "sqlite:///./isub_bench.db"


@dataclass(frozen=True)
class Settings:
    max_pattern_size: int = 5
    member_cap: int = 1_000_000
    min_cap: int = 4
    log_level: str = "WARNING"
    seed: int = 0
    database_url: str = DEFAULT_DATABASE_URL


def load_settings() -> Settings:
    """Build Settings from ISUB_* environment variables and DATABASE_URL."""
    return Settings(
        max_pattern_size=int(os.getenv("ISUB_MAX_PATTERN_SIZE", "5")),
        member_cap=int(os.getenv("ISUB_MEMBER_CAP", "1000000")),
        min_cap=int(os.getenv("ISUB_MIN_CAP", "4")),
        log_level=os.getenv("ISUB_LOG_LEVEL", "WARNING").upper(),
        seed=int(os.getenv("ISUB_SEED", "0")),
        database_url=os.getenv("DATABASE_URL", DEFAULT_DATABASE_URL),
    )
