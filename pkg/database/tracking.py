"""
Benchmark recording utilities.

Failures are rolled back and logged; recording never aborts a benchmark.
"""

import json
import logging
from datetime import datetime
from typing import Any, Dict, List, Optional

from sqlalchemy.orm import Session

from database.models import BenchMetric, BenchRun

logger = logging.getLogger("isub.bench")


def track_bench_run(db: Session, summary: Dict[str, Any]) -> Optional[int]:
    """
    Record a bench run.

    Args:
        db: Database session
        summary: Run parameters; seed, n, degeneracy, pattern and ops are
            required, h and engines optional, anything else goes to meta_data

    Returns:
        The new run id, or None when recording failed
    """
    known = {"seed", "n", "degeneracy", "pattern", "ops", "h", "engines"}
    extra = {key: value for key, value in summary.items() if key not in known}
    try:
        run = BenchRun(
            seed=summary["seed"],
            n=summary["n"],
            degeneracy=summary["degeneracy"],
            pattern=summary["pattern"],
            ops=summary["ops"],
            h=summary.get("h"),
            engines=summary.get("engines"),
            meta_data=json.dumps(extra) if extra else None,
            started_at=datetime.utcnow(),
        )
        db.add(run)
        db.commit()
        return run.id
    except Exception as e:
        db.rollback()
        logger.error("Error tracking bench run: %s", e)
        return None


def track_bench_metric(
    db: Session,
    run_id: int,
    metric_type: str,
    metric_value: float,
    context: Optional[str] = None,
):
    """
    Record one metric of a bench run.

    Args:
        db: Database session
        run_id: Run the metric belongs to
        metric_type: Metric name (e.g., 'update_p50_us', 'recount_p50_us')
        metric_value: Value
        context: Which side measured it (e.g., 'engine', 'recount')
    """
    try:
        metric = BenchMetric(
            run_id=run_id,
            metric_type=metric_type,
            metric_value=float(metric_value),
            context=context,
        )
        db.add(metric)
        db.commit()
    except Exception as e:
        db.rollback()
        logger.error("Error tracking bench metric: %s", e)


def get_run_metrics(db: Session, run_id: int) -> List[Dict[str, Any]]:
    """Metrics of one run as plain dicts, ordered by id."""
    rows = db.query(BenchMetric).filter(BenchMetric.run_id == run_id).order_by(BenchMetric.id).all()
    return [
        {"metric_type": row.metric_type, "metric_value": row.metric_value, "context": row.context}
        for row in rows
    ]
