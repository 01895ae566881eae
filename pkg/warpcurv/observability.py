"""
Observability Module

Correlation context for verification runs. Jobs execute under a RunContext
that binds run id, check and family; a logging filter copies them onto
every record so interleaved logs from concurrent jobs stay attributable.
"""

import contextvars
import logging
import time
import uuid
from typing import Optional

logger = logging.getLogger(__name__)

_run_id: contextvars.ContextVar[str] = contextvars.ContextVar("warpcurv_run_id", default="-")
_check: contextvars.ContextVar[str] = contextvars.ContextVar("warpcurv_check", default="-")
_family: contextvars.ContextVar[str] = contextvars.ContextVar("warpcurv_family", default="-")

LOG_FORMAT = "%(levelname)s:%(name)s:[%(run_id)s %(check)s %(family)s] %(message)s"


def new_run_id() -> str:
    return uuid.uuid4().hex[:12]


class RunContextFilter(logging.Filter):
    """Stamp run_id, check and family onto log records."""

    def filter(self, record: logging.LogRecord) -> bool:
        record.run_id = _run_id.get()
        record.check = _check.get()
        record.family = _family.get()
        return True


def configure_observability(fmt: str = LOG_FORMAT) -> None:
    """
    Install the context filter and format on the root handlers.

    Call after Settings.configure_logging(); calling twice is harmless.
    """
    root = logging.getLogger()
    for handler in root.handlers:
        if not any(isinstance(f, RunContextFilter) for f in handler.filters):
            handler.addFilter(RunContextFilter())
        handler.setFormatter(logging.Formatter(fmt))
    logger.debug("Run context logging configured")


class RunContext:
    """
    Context manager binding correlation fields for the enclosed work.

    Usage:
        with RunContext(run_id, check="hk", family="slice-0") as ctx:
            report = check_hk(...)
        logger.info(f"took {ctx.elapsed:.2f}s")
    """

    def __init__(self, run_id: str, check: Optional[str] = None, family: Optional[str] = None):
        self.run_id = run_id
        self.check = check or "-"
        self.family = family or "-"
        self.elapsed = 0.0
        self._tokens: list[tuple[contextvars.ContextVar, contextvars.Token]] = []
        self._start = 0.0

    def __enter__(self) -> "RunContext":
        for var, value in ((_run_id, self.run_id), (_check, self.check), (_family, self.family)):
            self._tokens.append((var, var.set(value)))
        self._start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.elapsed = time.perf_counter() - self._start
        for var, token in reversed(self._tokens):
            var.reset(token)
        self._tokens.clear()
        return False


def current_context() -> dict[str, str]:
    """Correlation fields bound in the calling context."""
    return {"run_id": _run_id.get(), "check": _check.get(), "family": _family.get()}
