"""
Suite Host Module

Runs the jobs of a RunConfig: one job per (check, family) pair, executed
concurrently in worker threads under a semaphore and a per-job timeout.
Results come back in plan order whatever the scheduling, and a failing
job never aborts the others.
"""

import asyncio
import logging
from typing import Optional

from warpcurv.config import Settings, get_settings
from warpcurv.errors import WarpcurvError
from warpcurv.observability import RunContext, new_run_id
from warpcurv.quadrature import SampleCache
from warpcurv.reports import STATUS_ERROR, JobResult
from warpcurv.runconfig import RunConfig
from warpcurv.verifier import CheckSpec, ambient_selftest, run_check

logger = logging.getLogger(__name__)


def create_and_run_suite(cfg: RunConfig, threads: Optional[int] = None,
                         settings: Optional[Settings] = None) -> list[JobResult]:
    """
    Create a host for cfg and run it to completion.

    Example:
        cfg = load_config("configs/demo.toml")
        results = create_and_run_suite(cfg, threads=4)
    """
    host = SuiteHost(cfg, threads=threads, settings=settings)
    return asyncio.run(host.run())


class SuiteHost:
    """
    Host for one verification run.

    Provides:
    - Job planning in declaration order
    - Concurrent execution bounded by the thread count
    - Per-job timeout and error capture
    - A sample cache shared by every job of the run
    """

    def __init__(
        self,
        cfg: RunConfig,
        threads: Optional[int] = None,
        settings: Optional[Settings] = None,
        run_id: Optional[str] = None,
        cache: Optional[SampleCache] = None,
    ):
        self.settings = settings or get_settings()
        self.cfg = cfg
        self.threads = self.settings.execution.resolve_threads(threads)
        self.check_timeout = self.settings.execution.check_timeout
        self.run_id = run_id or new_run_id()
        self.cache = cache if cache is not None else SampleCache()

        self.ambient = cfg.build_ambient()
        self.families = dict(cfg.build_families())
        self.jobs = cfg.plan()
        logger.info(f"🚀 Run {self.run_id}: {len(self.jobs)} jobs on {self.threads} thread(s)")

    # =========================================================================
    # JOB EXECUTION
    # =========================================================================

    def _evaluate(self, spec: CheckSpec, family: Optional[str]) -> dict:
        cfg = self.cfg
        if spec.name == "ambient-selftest":
            report = ambient_selftest(self.ambient, cfg.selftest_samples, cfg.seed, cfg.tolerances)
        else:
            report = run_check(
                spec,
                self.families[family],
                self.ambient,
                cfg.resolution,
                cfg.tolerances,
                name=family,
                allow_constant_curvature=cfg.allow_constant_curvature,
                convergence_resolutions=cfg.convergence_resolutions,
                cache=self.cache,
            )
        return report.to_dict()

    def execute(self, spec: CheckSpec, family: Optional[str]) -> JobResult:
        """Run one job synchronously, turning exceptions into an error result."""
        label = family or "-"
        with RunContext(self.run_id, spec.id, label) as ctx:
            try:
                report = self._evaluate(spec, family)
                outcome: Optional[dict] = report
                failure: Optional[Exception] = None
            except WarpcurvError as e:
                logger.warning(f"⚠️ {spec.id} on {label}: {type(e).__name__}: {e.message}")
                outcome, failure = None, e
            except Exception as e:
                logger.error(f"❌ {spec.id} on {label} crashed: {e}")
                outcome, failure = None, e
        if failure is not None:
            return JobResult.from_error(spec.id, label, failure, ctx.elapsed)
        result = JobResult.from_report(spec.id, label, outcome, ctx.elapsed)
        logger.info(f"{'✅' if result.status == 'passed' else '❌'} {spec.id} on {label} "
                    f"{result.status} in {ctx.elapsed:.2f}s")
        return result

    async def _run_job(self, semaphore: asyncio.Semaphore, spec: CheckSpec, family: Optional[str]) -> JobResult:
        """
        Run one job in a worker thread under the per-job timeout.

        Worker threads cannot be interrupted: a job that times out keeps its
        semaphore slot until its thread returns, so at most `threads` checks
        compute at once. Its late report is discarded.
        """
        async with semaphore:
            worker = asyncio.ensure_future(asyncio.to_thread(self.execute, spec, family))
            try:
                async with asyncio.timeout(self.check_timeout):
                    return await asyncio.shield(worker)
            except TimeoutError:
                logger.warning(f"⚠️ {spec.id} on {family or '-'} timed out after {self.check_timeout}s, "
                               f"waiting for its worker to finish")
                await worker
                return JobResult(
                    spec.id, family or "-", STATUS_ERROR,
                    error={"type": "TimeoutError",
                           "message": f"job exceeded {self.check_timeout}s",
                           "details": {}},
                    elapsed=self.check_timeout,
                )

    async def run(self) -> list[JobResult]:
        """Run every planned job; results follow plan order."""
        semaphore = asyncio.Semaphore(self.threads)
        results = await asyncio.gather(
            *(self._run_job(semaphore, spec, family) for spec, family in self.jobs)
        )
        return list(results)
