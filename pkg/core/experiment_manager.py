"""
Experiment Manager - Run independent verification tasks on a small worker pool
"""

import uuid
from dataclasses import dataclass
from enum import Enum
from threading import Lock, Thread
from typing import Any, Callable, Dict, List, Optional

from core.errors import ChoiceLabError


class ExperimentStatus(Enum):
    """Experiment task status"""
    QUEUED = "queued"
    RUNNING = "running"
    DONE = "done"
    FAILED = "failed"


@dataclass
class ExperimentTask:
    """One independent experiment"""
    id: str
    label: str
    job: Callable[[], Any]
    status: ExperimentStatus
    message: str = ""
    result: Any = None
    error: Optional[str] = None


class ExperimentManager:
    """Runs queued experiments on up to `jobs` worker threads"""

    def __init__(self, logger, jobs: int = 1):
        """
        Initialize experiment manager

        Args:
            logger: Application logger
            jobs: Number of worker threads
        """
        self.logger = logger
        self.jobs = max(1, jobs)

        self.tasks: Dict[str, ExperimentTask] = {}
        self.task_order: List[str] = []

        self.lock = Lock()
        self.queue: List[str] = []

        self.status_callbacks: List[Callable] = []

    def add_status_callback(self, callback: Callable):
        """Add a callback for status updates"""
        if callback not in self.status_callbacks:
            self.status_callbacks.append(callback)

    def add_experiment(self, label: str, job: Callable[[], Any]) -> str:
        """
        Add an experiment to the queue

        Args:
            label: Display name for the experiment
            job: Zero-argument callable producing the result

        Returns:
            Task ID
        """
        task_id = str(uuid.uuid4())
        task = ExperimentTask(id=task_id, label=label, job=job,
                              status=ExperimentStatus.QUEUED, message="Waiting in queue...")
        with self.lock:
            self.tasks[task_id] = task
            self.task_order.append(task_id)
            self.queue.append(task_id)
        self.logger.debug(f"Added experiment task: {task_id} - {label}")
        return task_id

    def _next_task(self) -> Optional[str]:
        with self.lock:
            return self.queue.pop(0) if self.queue else None

    def _worker(self):
        while True:
            task_id = self._next_task()
            if task_id is None:
                return
            self._run_task(task_id)

    def _run_task(self, task_id: str):
        task = self.tasks[task_id]
        with self.lock:
            task.status = ExperimentStatus.RUNNING
            task.message = "Running..."
        self._notify_status_change()

        def completion_callback(success: bool, result: Any, message: str):
            with self.lock:
                if success:
                    task.status = ExperimentStatus.DONE
                    task.result = result
                    task.message = "Complete"
                else:
                    task.status = ExperimentStatus.FAILED
                    task.error = message
                    task.message = f"Failed: {message}"
            self.logger.debug(f"Experiment {'completed' if success else 'failed'}: {task.label}")
            self._notify_status_change()

        try:
            completion_callback(True, task.job(), "")
        except ChoiceLabError as e:
            completion_callback(False, None, f"{e.name}: {e.message}")
        except Exception as e:
            self.logger.error(f"Experiment {task.label} crashed: {e}")
            completion_callback(False, None, f"{type(e).__name__}: {e}")

    def run_all(self) -> List[ExperimentTask]:
        """
        Drain the queue and wait for every worker

        Returns:
            All tasks in submission order
        """
        with self.lock:
            pending = len(self.queue)
        workers = [Thread(target=self._worker, daemon=True) for _ in range(min(self.jobs, pending))]
        self.logger.info(f"Running {pending} experiments on {len(workers)} workers")
        for thread in workers:
            thread.start()
        for thread in workers:
            thread.join()
        return self.get_all_tasks()

    def get_all_tasks(self) -> List[ExperimentTask]:
        """Get all tasks in order"""
        with self.lock:
            return [self.tasks[task_id] for task_id in self.task_order if task_id in self.tasks]

    def get_summary(self) -> Dict:
        """Get summary statistics"""
        with self.lock:
            statuses = [t.status for t in self.tasks.values()]
            return {
                'total': len(statuses),
                'queued': statuses.count(ExperimentStatus.QUEUED),
                'running': statuses.count(ExperimentStatus.RUNNING),
                'done': statuses.count(ExperimentStatus.DONE),
                'failed': statuses.count(ExperimentStatus.FAILED),
            }

    def _notify_status_change(self):
        """Notify all status callbacks of changes"""
        for callback in self.status_callbacks:
            try:
                callback()
            except Exception as e:
                self.logger.error(f"Error in status callback: {e}")
