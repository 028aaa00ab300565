"""Run ledger on the in-memory database."""

from db.connection import ledger_reachable
from services.ledger_service import RunLedger
from services.report_service import Report


def _report(command: str = "finite td", seed=None, passed: bool = True) -> Report:
    invocation = {"file": "powerset3.cls"}
    if seed is not None:
        invocation["seed"] = seed
    return Report(command=command, invocation=invocation, summary={"td": {"passed": passed}}, passed=passed)


class TestRunLedger:
    def test_reachable(self):
        RunLedger()
        assert ledger_reachable()

    def test_record_and_get(self):
        ledger = RunLedger()
        record_id = ledger.record(_report(command="separations", seed=42))
        entry = ledger.get(record_id)
        assert entry["command"] == "separations"
        assert entry["seed"] == 42
        assert entry["passed"] is True
        assert entry["schema_version"] == "1.0"
        assert entry["report"]["summary"] == {"td": {"passed": True}}

    def test_seedless_report(self):
        ledger = RunLedger()
        entry = ledger.get(ledger.record(_report(passed=False)))
        assert entry["seed"] is None
        assert entry["passed"] is False

    def test_recent(self):
        ledger = RunLedger()
        ids = {ledger.record(_report()) for _ in range(3)}
        recent = ledger.recent(limit=50)
        assert ids <= {entry["id"] for entry in recent}
        assert "report" not in recent[0]
        assert len(ledger.recent(limit=2)) == 2

    def test_missing(self):
        assert RunLedger().get("no-such-record") is None
