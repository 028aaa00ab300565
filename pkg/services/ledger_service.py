# services/ledger_service.py
import json
import logging
from typing import Dict, List, Optional

from db.connection import init_db, ledger_session
from db.models import ExperimentRecord
from services.report_service import Report, render_json

logger = logging.getLogger(__name__)

DEFAULT_HISTORY_LIMIT = 10


class RunLedger:
    """
    Persists reports as ExperimentRecord rows and lists them back
    """

    def __init__(self):
        init_db()
        logger.info("RunLedger initialized")

    def record(self, report: Report) -> str:
        """
        Store a report

        Args:
            report: any rendered-to-be report (run, separations, finite)

        Returns:
            Id of the new record
        """
        seed = report.invocation.get("seed")
        entry = ExperimentRecord(
            command=report.command,
            seed=seed if isinstance(seed, int) else None,
            passed=report.passed,
            schema_version=report.schema_version,
            report_json=render_json(report),
        )
        with ledger_session() as session:
            session.add(entry)
            session.flush()
            record_id = entry.id
        logger.info(f"✅ Recorded {report.command} report {record_id} (passed={report.passed})")
        return record_id

    def recent(self, limit: int = DEFAULT_HISTORY_LIMIT) -> List[Dict]:
        """Most recent records first, without their report bodies"""
        with ledger_session() as session:
            rows = (
                session.query(ExperimentRecord)
                .order_by(ExperimentRecord.created_at.desc())
                .limit(limit)
                .all()
            )
            return [self._summary(row) for row in rows]

    def get(self, record_id: str) -> Optional[Dict]:
        with ledger_session() as session:
            row = session.query(ExperimentRecord).filter_by(id=record_id).first()
            if row is None:
                logger.info(f"❌ No ledger record {record_id}")
                return None
            entry = self._summary(row)
            entry["report"] = json.loads(row.report_json)
            return entry

    @staticmethod
    def _summary(row: ExperimentRecord) -> Dict:
        return {
            "id": row.id,
            "command": row.command,
            "seed": row.seed,
            "passed": row.passed,
            "schema_version": row.schema_version,
            "created_at": row.created_at.isoformat() if row.created_at else None,
        }
