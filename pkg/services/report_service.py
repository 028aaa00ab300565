# services/report_service.py
"""Deterministic report rendering: JSON, CSV and Markdown."""
import io
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd
from pydantic import BaseModel, Field

from config.constants import FLOAT_DIGITS, REPORT_FORMATS, REPORT_SCHEMA_VERSION
from core.errors import LabError

logger = logging.getLogger(__name__)


class UnknownFormat(LabError, ValueError):
    """Raised for a report format other than json, csv or md"""
    pass


class Report(BaseModel):
    schema_version: str = REPORT_SCHEMA_VERSION
    command: str
    invocation: Dict[str, Any]
    results: List[Dict[str, Any]] = Field(default_factory=list)
    summary: Dict[str, Dict[str, Any]] = Field(default_factory=dict)
    passed: bool


def _normalize(value: Any) -> Any:
    """Round floats and make containers JSON-stable."""
    if isinstance(value, float):
        return round(value, FLOAT_DIGITS)
    if isinstance(value, dict):
        return {str(k): _normalize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_normalize(v) for v in value]
    return value


def _dumps(value: Any) -> str:
    return json.dumps(_normalize(value), sort_keys=True, ensure_ascii=False)


def render_json(report: Report) -> str:
    return json.dumps(_normalize(report.model_dump()), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _summary_rows(report: Report) -> List[Dict[str, Any]]:
    rows = []
    for experiment_id in sorted(report.summary):
        entry = report.summary[experiment_id]
        row: Dict[str, Any] = {"id": experiment_id, "passed": entry.get("passed")}
        if "version" in entry:
            row["version"] = entry["version"]
        for name, value in sorted(entry.get("metrics", {}).items()):
            row[name] = _dumps(value)
        rows.append(row)
    return rows


def render_csv(report: Report) -> str:
    """One row per summary entry; metric cells hold the JSON encoding of the value."""
    rows = _summary_rows(report)
    columns = ["id", "passed"] + sorted({k for row in rows for k in row} - {"id", "passed"})
    frame = pd.DataFrame(rows, columns=columns)
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def render_markdown(report: Report) -> str:
    rows = _summary_rows(report)
    columns = ["id", "passed"] + sorted({k for row in rows for k in row} - {"id", "passed"})
    lines = [
        f"# {report.command} report (schema {report.schema_version})",
        "",
        f"Invocation: `{_dumps(report.invocation)}`",
        "",
        "| " + " | ".join(columns) + " |",
        "|" + "---|" * len(columns),
    ]
    for row in rows:
        cells = [str(row.get(c, "")).replace("|", "\\|") for c in columns]
        lines.append("| " + " | ".join(cells) + " |")
    lines.append("")
    lines.append(f"**{'PASS' if report.passed else 'FAIL'}**")
    return "\n".join(lines) + "\n"


def render(report: Report, fmt: str = "json") -> str:
    renderers = {"json": render_json, "csv": render_csv, "md": render_markdown}
    if fmt not in REPORT_FORMATS:
        raise UnknownFormat(f"Unknown report format: {fmt!r} (known: {', '.join(REPORT_FORMATS)})")
    return renderers[fmt](report)


def write_report(report: Report, fmt: str = "json", out: Optional[str] = None) -> str:
    """Render and, when out is given, write to that file. Returns the rendering."""
    text = render(report, fmt)
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        logger.info(f"✅ Report written to {path} ({fmt})")
    return text
