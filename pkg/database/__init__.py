"""Database package for benchmark recording."""

from .models import (
    Base,
    BenchMetric,
    BenchRun,
    get_engine,
    get_session_maker,
    init_db,
)
from . import tracking

__all__ = [
    "Base",
    "BenchMetric",
    "BenchRun",
    "get_engine",
    "get_session_maker",
    "init_db",
    "tracking",
]
