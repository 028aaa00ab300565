from contextlib import contextmanager
from typing import Iterator

from sqlalchemy import create_engine, text
from sqlalchemy.engine import Engine
from sqlalchemy.orm import sessionmaker, Session
from sqlalchemy.pool import StaticPool
from config.settings import settings
from db.models import Base
import logging

logger = logging.getLogger(__name__)

_IN_MEMORY = ("sqlite://", "sqlite:///:memory:")


def make_engine(url: str, echo: bool = False) -> Engine:
    """Engine for the run ledger; SQLite files, in-memory SQLite or a server URL"""
    if not url.startswith("sqlite"):
        return create_engine(url, echo=echo, pool_pre_ping=True, pool_size=5, max_overflow=10)
    options = {"connect_args": {"check_same_thread": False}}
    if url in _IN_MEMORY:
        # one shared connection, or every session would see its own empty database
        options["poolclass"] = StaticPool
    return create_engine(url, echo=echo, **options)


engine = make_engine(settings.DATABASE_URL, echo=settings.DEBUG)
SessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=engine)


@contextmanager
def ledger_session() -> Iterator[Session]:
    """Session that commits on success and rolls back on error"""
    session = SessionLocal()
    try:
        yield session
        session.commit()
    except Exception as e:
        logger.error(f"❌ Ledger transaction rolled back: {e}")
        session.rollback()
        raise
    finally:
        session.close()


def init_db():
    """Create the ledger tables if missing"""
    try:
        Base.metadata.create_all(bind=engine)
        logger.info("✅ Ledger tables ready")
    except Exception as e:
        logger.error(f"❌ Error creating ledger tables: {e}")
        raise


def ledger_reachable() -> bool:
    try:
        with ledger_session() as session:
            session.execute(text("SELECT 1"))
        logger.info(f"✅ Ledger reachable at {engine.url.drivername}")
        return True
    except Exception as e:
        logger.error(f"❌ Ledger unreachable: {e}")
        return False
