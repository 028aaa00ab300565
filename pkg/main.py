# main.py
from fastapi import FastAPI, Depends, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel
from functools import lru_cache
from typing import List, Optional
import json
import logging

from config.settings import settings
from core.errors import LabError
from services.finite_service import FINITE_ANALYSES, analyze
from services.ledger_service import RunLedger
from services.report_service import Report, render_json
from services.run_service import build_run_config, run_report
from services.separation_service import SeparationService

logging.basicConfig(level=getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO))
logger = logging.getLogger(__name__)

app = FastAPI(title="OGIS Lab API", version="1.0.0")

app.add_middleware(
    CORSMiddleware,
    allow_origins=["http://localhost:3000"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@lru_cache(maxsize=1)
def get_ledger() -> RunLedger:
    return RunLedger()


class RunRequest(BaseModel):
    target: str
    learner: str
    family: Optional[str] = None
    verifier: str = "check"
    strategy: str = "ascending"
    order: str = "ascending"
    budget: Optional[int] = None
    window: Optional[int] = None
    memory_bound: Optional[int] = None
    seed: Optional[int] = None
    concepts: Optional[List[str]] = None
    record: bool = False


class SeparationsRequest(BaseModel):
    seed: Optional[int] = None
    quick: bool = True
    only: Optional[List[str]] = None
    record: bool = False


def _respond(report: Report, record: bool, ledger: RunLedger, **extra) -> dict:
    body = {"report": json.loads(render_json(report)), **extra}
    if record:
        body["record_id"] = ledger.record(report)
    return body


@app.get("/")
def root():
    return {
        "message": "OGIS Lab API is running",
        "version": "1.0.0",
        "environment": settings.APP_ENV,
        "status": "healthy"
    }


@app.get("/health")
def health_check():
    return {"status": "ok"}


# ============================================
# EXPERIMENT ENDPOINTS
# ============================================

@app.post("/api/runs")
def create_run(request: RunRequest, ledger: RunLedger = Depends(get_ledger)):
    """One CEGIS run; same configuration, same result as `ogis-lab run`"""
    try:
        config = build_run_config(**request.model_dump(exclude={"record"}))
    except (ValueError, LabError) as e:
        raise HTTPException(status_code=400, detail=str(e))

    try:
        result, report = run_report(config)
    except LabError as e:
        logger.error(f"Run failed: {e}")
        raise HTTPException(status_code=500, detail=f"Run failed: {e}")

    return _respond(report, request.record, ledger, exit_code=result.exit_code)


@app.post("/api/separations")
def run_separations(request: SeparationsRequest, ledger: RunLedger = Depends(get_ledger)):
    """The separation battery (quick by default)"""
    service = SeparationService(seed=request.seed, quick=request.quick)
    try:
        report = service.run_battery(request.only)
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    return _respond(report, request.record, ledger)


async def _body_text(request: Request) -> str:
    return (await request.body()).decode("utf-8")


@app.post("/api/finite/{analysis}")
def finite_analysis(
    analysis: str,
    text: str = Depends(_body_text),
    target: Optional[int] = None,
    record: bool = False,
    ledger: RunLedger = Depends(get_ledger),
):
    """Body: `.cls` file text (`.scv` for reduce)"""
    if analysis not in FINITE_ANALYSES:
        raise HTTPException(status_code=404, detail=f"Unknown analysis: {analysis}")
    try:
        outcome = analyze(analysis, text, source="request", target=target)
    except ValueError as e:
        raise HTTPException(status_code=422, detail=str(e))
    return _respond(outcome.report, record, ledger, headline=outcome.headline)


# ============================================
# LEDGER
# ============================================

@app.get("/api/ledger")
def list_ledger(limit: int = 10, ledger: RunLedger = Depends(get_ledger)):
    """Most recent recorded reports"""
    return ledger.recent(limit)


@app.get("/api/ledger/{record_id}")
def get_ledger_record(record_id: str, ledger: RunLedger = Depends(get_ledger)):
    """One recorded report with its full body"""
    entry = ledger.get(record_id)
    if entry is None:
        raise HTTPException(status_code=404, detail=f"No ledger record {record_id}")
    return entry


if __name__ == "__main__":
    import uvicorn
    uvicorn.run("main:app", host="0.0.0.0", port=8000, reload=settings.DEBUG)
