# db/models.py
from sqlalchemy import Column, String, Integer, DateTime, Text, Boolean
from sqlalchemy.orm import declarative_base
import uuid
from datetime import datetime

Base = declarative_base()


class ExperimentRecord(Base):
    """One persisted report (a run, a battery or a finite-class analysis)"""
    __tablename__ = 'experiment_records'

    id = Column(String(36), primary_key=True, default=lambda: str(uuid.uuid4()))
    command = Column(String(32), nullable=False, index=True)
    seed = Column(Integer)
    passed = Column(Boolean, nullable=False)
    schema_version = Column(String(8), nullable=False)

    # Full report, rendered as deterministic JSON
    report_json = Column(Text, nullable=False)

    created_at = Column(DateTime, default=datetime.utcnow, index=True)

    def __repr__(self):
        return f"<ExperimentRecord {self.command} {self.id}>"
