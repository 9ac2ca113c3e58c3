#!/usr/bin/env python3
"""
Stage Tracer for Pipeline Runs

Records start and end times, progress, outputs and failures of each
pipeline stage, and exports them as the JSON run manifest.
"""

import json
import logging
import platform
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional

import numpy as np
import scipy
import simpy

logger = logging.getLogger(__name__)


class StageStatus(Enum):
    WAITING = "waiting"
    RUNNING = "running"
    COMPLETED = "completed"
    FAILED = "failed"
    SKIPPED = "skipped"


@dataclass
class StageTrace:
    """Timing, progress and outputs of one pipeline stage."""
    name: str
    status: StageStatus = StageStatus.WAITING
    start_time: Optional[float] = None
    end_time: Optional[float] = None
    total_items: int = 0
    completed_items: int = 0
    outputs: List[str] = field(default_factory=list)
    error_message: str = ""

    @property
    def progress_percent(self) -> float:
        if self.total_items == 0:
            return 0.0
        return (self.completed_items / self.total_items) * 100

    @property
    def elapsed_time(self) -> float:
        if not self.start_time:
            return 0.0
        end = self.end_time or time.time()
        return end - self.start_time

    @property
    def eta_seconds(self) -> float:
        if self.completed_items == 0 or self.completed_items >= self.total_items:
            return 0.0
        rate = self.completed_items / self.elapsed_time if self.elapsed_time else 0.0
        if rate == 0:
            return 0.0
        return (self.total_items - self.completed_items) / rate

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "status": self.status.value,
            "start_time": self.start_time,
            "end_time": self.end_time,
            "wall_seconds": self.elapsed_time,
            "outputs": list(self.outputs),
            "error": self.error_message,
        }


class StageTracer:
    """Tracks the stages of one pipeline run in execution order."""

    def __init__(self, run_name: str = "flowscope"):
        self.run_name = run_name
        self.stages: Dict[str, StageTrace] = {}
        self.start_time = time.time()

    def start_stage(self, name: str, total_items: int = 0) -> StageTrace:
        trace = StageTrace(name=name, status=StageStatus.RUNNING, start_time=time.time(),
                           total_items=total_items)
        self.stages[name] = trace
        logger.info(f"Stage '{name}' started")
        return trace

    def advance(self, name: str, completed: int, total: int) -> None:
        """Progress callback: `completed` of `total` items done."""
        trace = self.stages[name]
        trace.completed_items = completed
        trace.total_items = total
        logger.debug(f"Stage '{name}': {trace.progress_percent:.0f}% "
                     f"(ETA {trace.eta_seconds:.0f}s)")

    def add_output(self, name: str, path: str) -> None:
        self.stages[name].outputs.append(str(path))

    def complete_stage(self, name: str) -> None:
        trace = self.stages[name]
        trace.status = StageStatus.COMPLETED
        trace.end_time = time.time()
        logger.info(f"Stage '{name}' completed in {trace.elapsed_time:.2f}s")

    def fail_stage(self, name: str, error: BaseException) -> None:
        trace = self.stages[name]
        trace.status = StageStatus.FAILED
        trace.end_time = time.time()
        trace.error_message = str(error)
        logger.error(f"Stage '{name}' failed after {trace.elapsed_time:.2f}s: {error}")

    def skip_stage(self, name: str, reason: str = "") -> None:
        self.stages[name] = StageTrace(name=name, status=StageStatus.SKIPPED, error_message=reason)
        logger.info(f"Stage '{name}' skipped{': ' + reason if reason else ''}")

    @contextmanager
    def stage(self, name: str, total_items: int = 0) -> Iterator[StageTrace]:
        """Run a block as a stage; a raised exception marks it failed and propagates."""
        trace = self.start_stage(name, total_items)
        try:
            yield trace
        except BaseException as exc:
            self.fail_stage(name, exc)
            raise
        self.complete_stage(name)

    @property
    def succeeded(self) -> bool:
        return all(trace.status is not StageStatus.FAILED for trace in self.stages.values())

    def manifest(self, parameters: Dict[str, Any], seeds: Dict[str, int]) -> Dict[str, Any]:
        return {
            "run_name": self.run_name,
            "status": "success" if self.succeeded else "failed",
            "started": self.start_time,
            "wall_seconds": time.time() - self.start_time,
            "parameters": parameters,
            "seeds": seeds,
            "versions": package_versions(),
            "stages": [trace.to_dict() for trace in self.stages.values()],
        }

    def export_manifest(self, filename: str, parameters: Dict[str, Any],
                        seeds: Dict[str, int]) -> None:
        with open(filename, "w") as f:
            json.dump(self.manifest(parameters, seeds), f, indent=2, default=str)
        logger.info(f"Run manifest exported to {filename}")


def package_versions() -> Dict[str, str]:
    from .. import __version__

    return {
        "flowscope": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "simpy": getattr(simpy, "__version__", "unknown"),
    }
