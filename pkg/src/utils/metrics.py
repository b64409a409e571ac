"""
Metrics collection and reporting utilities.

This module provides counters for the search engines and campaigns,
per-command run records, and timing helpers.
"""

import functools
import logging
import time
from collections import defaultdict
from threading import Lock
from typing import Any, Dict, List, Optional

logger = logging.getLogger(__name__)


class MetricsCollector:
    """Collects and aggregates application metrics."""

    def __init__(self):
        self._runs: Dict[str, List[Dict[str, Any]]] = defaultdict(list)
        self._counters: Dict[str, int] = defaultdict(int)
        self._lock = Lock()

    def record_request(self, request_type: str, duration_ms: int,
                       status: str, metadata: Optional[Dict[str, Any]] = None) -> None:
        """Record one command run."""
        with self._lock:
            self._runs[request_type].append({
                'duration_ms': duration_ms,
                'status': status,
                'metadata': metadata or {}
            })
            self._counters[f"{request_type}:total"] += 1
            self._counters[f"{request_type}:{status}"] += 1

    def increment_counter(self, name: str, value: int = 1) -> None:
        """Increment a counter metric."""
        with self._lock:
            self._counters[name] += value

    def get_counter(self, name: str) -> int:
        """Get current counter value."""
        return self._counters.get(name, 0)

    def reset(self) -> None:
        """Forget all runs and counters."""
        with self._lock:
            self._runs.clear()
            self._counters.clear()

    def get_summary(self) -> Dict[str, Any]:
        """Get a summary of all recorded runs and counters."""
        with self._lock:
            summary = {
                'request_types': {},
                'counters': dict(self._counters)
            }
            for request_type, runs in self._runs.items():
                durations = [r['duration_ms'] for r in runs]
                error_count = sum(1 for r in runs if r['status'] == 'error')
                summary['request_types'][request_type] = {
                    'count': len(runs),
                    'error_count': error_count,
                    'avg_duration_ms': sum(durations) / len(durations),
                    'max_duration_ms': max(durations),
                }
            return summary

    def log_summary(self) -> None:
        """Log current metrics summary."""
        logger.debug("Metrics summary", extra={'metrics': self.get_summary()})


# Global metrics collector instance
metrics_collector = MetricsCollector()


class Timer:
    """Context manager for timing code execution."""

    def __init__(self, name: str, logger: Optional[logging.Logger] = None):
        """
        Initialize timer.

        Args:
            name: Name for the timing measurement
            logger: Optional logger for output
        """
        self.name = name
        self.logger = logger or logging.getLogger(__name__)
        self.start_time: Optional[float] = None
        self.end_time: Optional[float] = None

    def __enter__(self):
        self.start_time = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.end_time = time.perf_counter()
        self.logger.debug(
            f"{self.name} took {self.elapsed:.3f}s",
            extra={
                'timer_name': self.name,
                'duration_seconds': self.elapsed
            }
        )

    @property
    def elapsed(self) -> float:
        """Get elapsed time in seconds."""
        if self.start_time is None:
            return 0.0
        end = self.end_time if self.end_time is not None else time.perf_counter()
        return end - self.start_time


def track_execution_time(func):
    """Decorator to track function execution time."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        with Timer(f"{func.__module__}.{func.__name__}"):
            return func(*args, **kwargs)
    return wrapper
