#!/usr/bin/env python3
"""
Worker pool module for repvar.
Runs independent oracle tasks with state tracking and deterministic result order.
"""

import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, List, Optional, Sequence

from .config import Config, TaskState


logger = logging.getLogger(__name__)


class ManagedTask:
    """
    A unit of work with thread-safe state tracking.

    Exceptions raised by the task are captured rather than propagated,
    so one failing candidate never aborts its siblings.
    """

    def __init__(self, name: str, func: Callable[..., Any], *args: Any):
        """
        Initialize a managed task.

        Args:
            name: Human-readable name for this task
            func: Callable to run
            args: Positional arguments for ``func``
        """
        self.name = name
        self.func = func
        self.args = args
        self.state = TaskState.PENDING
        self.result: Any = None
        self.error: Optional[BaseException] = None
        self.lock = threading.Lock()

    @property
    def is_done(self) -> bool:
        with self.lock:
            return self.state in (TaskState.DONE, TaskState.ERROR)

    def run(self) -> "ManagedTask":
        """Execute the task once."""
        with self.lock:
            if self.state != TaskState.PENDING:
                raise RuntimeError(f"Task {self.name} was already started")
            self.state = TaskState.RUNNING

        logger.debug(f"Running task: {self.name}")
        try:
            result = self.func(*self.args)
        except Exception as e:
            logger.error(f"Task {self.name} failed: {e}")
            with self.lock:
                self.error = e
                self.state = TaskState.ERROR
            return self

        with self.lock:
            self.result = result
            self.state = TaskState.DONE
        return self


class WorkerPool:
    """
    Thread pool returning task results in submission order.

    With one worker, tasks run inline in the calling thread.
    """

    def __init__(self, workers: int = Config.WORKERS):
        """
        Initialize the pool.

        Args:
            workers: Number of worker threads (at least 1)
        """
        if workers < 1:
            raise ValueError(f"Worker count must be positive, got {workers}")
        self.workers = workers
        self.tasks: List[ManagedTask] = []
        self.lock = threading.Lock()

    def submit_all(self, tasks: Sequence[ManagedTask]) -> List[ManagedTask]:
        """Run ``tasks`` and return them, finished, in the given order."""
        with self.lock:
            self.tasks.extend(tasks)
        if self.workers == 1 or len(tasks) <= 1:
            return [task.run() for task in tasks]
        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            return list(executor.map(lambda task: task.run(), tasks))

    def map(self, func: Callable[..., Any], items: Sequence[Any],
            names: Optional[Sequence[str]] = None) -> List[ManagedTask]:
        """One task per item; see ``submit_all``."""
        if names is None:
            names = [f"{getattr(func, '__name__', 'task')}[{i}]" for i in range(len(items))]
        return self.submit_all([ManagedTask(n, func, item) for n, item in zip(names, items)])

    def count(self, state: TaskState) -> int:
        """Number of tasks seen by this pool in ``state``."""
        with self.lock:
            return sum(1 for t in self.tasks if t.state == state)
