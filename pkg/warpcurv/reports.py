"""
Reports Module

Job results, the canonical JSON report, CSV convergence tables and the
exit-code summary of a run.
"""

import csv
import io
import json
import logging
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Optional, Sequence

from warpcurv.errors import WarpcurvError

logger = logging.getLogger(__name__)

STATUS_PASSED = "passed"
STATUS_FAILED = "failed"
STATUS_ERROR = "error"

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2

CSV_COLUMNS = ("check", "family", "target", "resolution", "nodes", "value", "error", "monotone")


@dataclass
class JobResult:
    """Outcome of one (check, family) job."""

    check: str
    family: str
    status: str
    report: Optional[dict[str, Any]] = None
    error: Optional[dict[str, Any]] = None
    elapsed: float = 0.0

    @classmethod
    def from_report(cls, check: str, family: str, report: dict[str, Any], elapsed: float = 0.0) -> "JobResult":
        status = STATUS_PASSED if report.get("passed") else STATUS_FAILED
        return cls(check, family, status, report=report, elapsed=elapsed)

    @classmethod
    def from_error(cls, check: str, family: str, exc: BaseException, elapsed: float = 0.0) -> "JobResult":
        details = exc.details if isinstance(exc, WarpcurvError) else {}
        message = exc.message if isinstance(exc, WarpcurvError) else str(exc)
        return cls(
            check, family, STATUS_ERROR,
            error={"type": type(exc).__name__, "message": message or type(exc).__name__, "details": details},
            elapsed=elapsed,
        )

    def to_dict(self, include_timing: bool = True) -> dict[str, Any]:
        out: dict[str, Any] = {"check": self.check, "family": self.family, "status": self.status}
        if self.report is not None:
            out["report"] = self.report
        if self.error is not None:
            out["error"] = self.error
        if include_timing:
            out["elapsed_seconds"] = round(self.elapsed, 6)
        return out


def exit_code(results: Sequence[JobResult]) -> int:
    """0 if every verdict passes, 1 on a failed verdict, 2 on any error."""
    if any(r.status == STATUS_ERROR for r in results):
        return EXIT_ERROR
    if any(r.status == STATUS_FAILED for r in results):
        return EXIT_FAILED
    return EXIT_OK


@dataclass
class RunSummary:
    passed: int = 0
    failed: int = 0
    errors: int = 0
    exit_code: int = EXIT_OK

    @classmethod
    def of(cls, results: Sequence[JobResult]) -> "RunSummary":
        return cls(
            passed=sum(r.status == STATUS_PASSED for r in results),
            failed=sum(r.status == STATUS_FAILED for r in results),
            errors=sum(r.status == STATUS_ERROR for r in results),
            exit_code=exit_code(results),
        )


def build_document(results: Sequence[JobResult], meta: dict[str, Any], timestamp: bool = True) -> dict[str, Any]:
    """
    The canonical report object.

    With timestamp=False the document holds no wall-clock data, so equal
    runs produce byte-identical output.
    """
    summary = RunSummary.of(results)
    doc: dict[str, Any] = {
        "tool": "warpcurv",
        "meta": meta,
        "summary": {
            "passed": summary.passed,
            "failed": summary.failed,
            "errors": summary.errors,
            "exit_code": summary.exit_code,
        },
        "results": [r.to_dict(include_timing=timestamp) for r in results],
    }
    if timestamp:
        doc["generated_at"] = datetime.now(timezone.utc).isoformat()
    return doc


def render_json(doc: dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, default=str) + "\n"


def convergence_rows(results: Sequence[JobResult]) -> list[dict[str, Any]]:
    """Flat rows of every convergence table among the results."""
    rows = []
    for r in results:
        if r.report is None or "rows" not in r.report:
            continue
        for row in r.report["rows"]:
            rows.append({
                "check": r.check,
                "family": r.family,
                "target": r.report["target"],
                "resolution": row["resolution"],
                "nodes": row["nodes"],
                "value": repr(float(row["value"])),
                "error": repr(float(row["error"])),
                "monotone": r.report["monotone"],
            })
    return rows


def render_csv(results: Sequence[JobResult]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(convergence_rows(results))
    return buffer.getvalue()


def write_output(text: str, path: Optional[str]) -> None:
    """Write to path, or stdout when path is None."""
    if path is None:
        print(text, end="")
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")
    logger.info(f"📝 Report written to {target}")
