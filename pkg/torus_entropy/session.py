"""
Sweep session management.

This module handles the worker pool used to fan out parameter sweeps.
"""

import asyncio
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Optional, TypeVar

from .classes import SweepConfig

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class SweepSession:
    """Manages a single thread pool for sweep workers."""

    def __init__(self, config: SweepConfig = None):
        self.config = config or SweepConfig()
        self.executor = None

    def get_executor(self) -> ThreadPoolExecutor:
        """Get or create the worker pool."""
        if self.executor is None:
            self.executor = ThreadPoolExecutor(
                max_workers=self.config.max_workers,
                thread_name_prefix="torus-sweep",
            )
            logger.debug("started sweep pool with %d workers", self.config.max_workers)
        return self.executor

    def close(self):
        """Shut the pool down and drop it."""
        if self.executor:
            try:
                self.executor.shutdown(wait=True)
            finally:
                self.executor = None
        else:
            self.executor = None

    def is_active(self) -> bool:
        return self.executor is not None

    def configure(self, config: SweepConfig):
        """Replace the configuration; an existing pool is closed first."""
        self.close()
        self.config = config


async def run_sweep(
    fn: Callable[[T], R],
    items: Iterable[T],
    session: Optional[SweepSession] = None,
) -> list[R]:
    """Apply `fn` to every item on the pool; results come back in input order."""
    session = session or sweep_session
    items = list(items)
    if not items:
        return []
    loop = asyncio.get_running_loop()
    executor = session.get_executor()
    return list(await asyncio.gather(*(loop.run_in_executor(executor, fn, item) for item in items)))


# Global sweep session instance
sweep_session = SweepSession()
