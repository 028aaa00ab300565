"""HTTP surface: same parameters, same reports as the command line."""

import inspect
import json

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from cli.commands import main as cli
from main import app, finite_analysis
from tests.conftest import MALFORMED, POWERSET3


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


class TestApi:
    def test_root(self, client):
        response = client.get("/")
        assert response.status_code == 200
        assert response.json()["status"] == "healthy"
        assert client.get("/health").json() == {"status": "ok"}

    def test_run(self, client):
        response = client.post("/api/runs", json={"target": "3", "learner": "chain", "family": "notpb"})
        assert response.status_code == 200
        body = response.json()
        assert body["exit_code"] == 0
        assert body["report"]["summary"]["run"]["metrics"]["correctness_queries"] == 5
        assert "record_id" not in body

    def test_run_matches_cli(self, client, tmp_path):
        out = tmp_path / "run.json"
        CliRunner().invoke(
            cli,
            ["run", "--target", "UpTo(3)", "--learner", "chain", "--verifier", "hcheck", "--out", str(out)],
        )
        response = client.post("/api/runs", json={"target": "UpTo(3)", "learner": "chain", "verifier": "hcheck"})
        assert response.json()["exit_code"] == 3
        assert response.json()["report"] == json.loads(out.read_text())

    def test_run_bad_parameters(self, client):
        response = client.post("/api/runs", json={"target": "UpTo(3)", "learner": "telepath"})
        assert response.status_code == 400
        assert "telepath" in response.json()["detail"]

    def test_run_enumeration_without_concepts(self, client):
        response = client.post("/api/runs", json={"target": "UpTo(2)", "learner": "consistent-enum"})
        assert response.status_code == 400
        assert "needs explicit concepts" in response.json()["detail"]

    def test_finite(self, client):
        response = client.post("/api/finite/td", content=POWERSET3)
        assert response.status_code == 200
        assert response.json()["headline"] == "TD=3"
        assert response.json()["report"]["invocation"] == {"file": "request"}

    def test_finite_unknown_analysis(self, client):
        assert client.post("/api/finite/entropy", content=POWERSET3).status_code == 404

    def test_finite_malformed(self, client):
        response = client.post("/api/finite/td", content=MALFORMED)
        assert response.status_code == 422
        assert "line 2" in response.json()["detail"]

    def test_separations_recorded(self, client):
        response = client.post("/api/separations", json={"only": ["F1"], "record": True})
        assert response.status_code == 200
        body = response.json()
        assert body["report"]["passed"] is True
        ledger = client.get("/api/ledger", params={"limit": 50}).json()
        assert body["record_id"] in {entry["id"] for entry in ledger}
        stored = client.get(f"/api/ledger/{body['record_id']}").json()
        assert stored["report"] == body["report"]

    def test_ledger_record_missing(self, client):
        assert client.get("/api/ledger/no-such-record").status_code == 404

    def test_finite_route_runs_off_the_event_loop(self):
        assert not inspect.iscoroutinefunction(finite_analysis)

    def test_separations_unknown(self, client):
        assert client.post("/api/separations", json={"only": ["E42"]}).status_code == 400
