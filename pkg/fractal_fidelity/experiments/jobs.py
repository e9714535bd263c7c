"""Bounded worker pool for independent jobs"""

from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Iterable, List, TypeVar

from fractal_fidelity.utils.logger import setup_logger

logger = setup_logger(__name__)

J = TypeVar("J")
R = TypeVar("R")


def run_jobs(fn: Callable[[J], R], jobs: Iterable[J], workers: int = 1) -> List[R]:
    """
    Run fn over jobs, returning results in job order

    fn must be a module-level function so it can be sent to worker processes. Jobs share
    nothing, so results do not depend on the worker count.
    """
    jobs = list(jobs)
    if workers <= 1 or len(jobs) <= 1:
        return [fn(job) for job in jobs]
    logger.info(f"Dispatching {len(jobs)} jobs to {workers} workers")
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(fn, jobs))


def pool_map(workers: int) -> Callable[[Callable[[Any], Any], Iterable[Any]], List[Any]]:
    """Order-preserving map bound to a worker count"""

    def _map(fn: Callable[[Any], Any], jobs: Iterable[Any]) -> List[Any]:
        return run_jobs(fn, jobs, workers)

    return _map
