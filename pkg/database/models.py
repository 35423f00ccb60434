"""
Database models for benchmark recording.

Includes models for:
- Benchmark runs (generator parameters and the index shape)
- Per-run metrics (latency percentiles, work counters, cascade statistics)
"""

from datetime import datetime

from sqlalchemy import (
    Column,
    DateTime,
    Float,
    ForeignKey,
    Integer,
    String,
    Text,
    create_engine,
)
from sqlalchemy.ext.declarative import declarative_base
from sqlalchemy.orm import relationship, sessionmaker

from config.settings import DEFAULT_DATABASE_URL

Base = declarative_base()


class BenchRun(Base):
    """One `bench` invocation."""

    __tablename__ = "bench_runs"

    id = Column(Integer, primary_key=True, index=True)
    started_at = Column(DateTime, default=datetime.utcnow, nullable=False, index=True)
    seed = Column(Integer, nullable=False)
    n = Column(Integer, nullable=False)  # host vertices
    degeneracy = Column(Integer, nullable=False)  # generator bound
    pattern = Column(String(50), nullable=False)  # e.g., 'tri', 'p3', 'k2'
    ops = Column(Integer, nullable=False)
    h = Column(Integer, nullable=True)  # augmentation depth
    engines = Column(Integer, nullable=True)
    meta_data = Column(Text, nullable=True)  # JSON for additional data

    metrics = relationship("BenchMetric", back_populates="run", cascade="all, delete-orphan")

    def __repr__(self):
        return f"<BenchRun(id={self.id}, n={self.n}, pattern={self.pattern}, seed={self.seed})>"


class BenchMetric(Base):
    """A named measurement of a bench run."""

    __tablename__ = "bench_metrics"

    id = Column(Integer, primary_key=True, index=True)
    run_id = Column(Integer, ForeignKey("bench_runs.id", ondelete="CASCADE"), nullable=False, index=True)
    metric_type = Column(String(100), nullable=False, index=True)  # e.g., 'update_p50_us', 'work_per_insert'
    metric_value = Column(Float, nullable=False)
    context = Column(String(200), nullable=True)  # e.g., 'engine', 'recount'

    run = relationship("BenchRun", back_populates="metrics")

    def __repr__(self):
        return f"<BenchMetric(type={self.metric_type}, value={self.metric_value}, run={self.run_id})>"


# Database session management
def get_engine(database_url: str = DEFAULT_DATABASE_URL):
    """
    Create and return database engine.

    SQLite (the default) gets check_same_thread=False; other URLs get
    pre-ping so stale pooled connections are replaced.

    Args:
        database_url: Database connection URL

    Returns:
        SQLAlchemy engine instance
    """
    if database_url.startswith("sqlite"):
        return create_engine(database_url, connect_args={"check_same_thread": False}, echo=False)
    return create_engine(database_url, pool_pre_ping=True, echo=False)


def get_session_maker(engine):
    """Create and return session maker."""
    return sessionmaker(autocommit=False, autoflush=False, bind=engine)


def init_db(database_url: str = DEFAULT_DATABASE_URL):
    """Initialize database tables."""
    engine = get_engine(database_url)
    Base.metadata.create_all(bind=engine)
    return engine
