"""
StringForge Metrics

Timing and counting of engine steps (cell fits, genus solves, oracle sweeps).
Durations feed the debug log and the ``verify`` report; they never enter
result payloads, which must stay byte-identical between runs.
"""

import threading
import time
from collections import defaultdict
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional

from .logger import StructuredLogger, get_logger


@dataclass
class PerformanceMetrics:
    """One timed operation"""

    operation: str
    duration_ms: float
    context: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "operation": self.operation,
            "duration_ms": round(self.duration_ms, 3),
            "context": dict(self.context),
        }


@dataclass
class CounterMetrics:
    """A named counter"""

    name: str
    value: int = 0

    def increment(self, amount: int = 1) -> None:
        self.value += amount

    def to_dict(self) -> Dict[str, Any]:
        return {"name": self.name, "value": self.value}


class Timer:
    """High-precision timer for performance measurement"""

    def __init__(self, name: str, context: Optional[Dict[str, Any]] = None):
        """
        Args:
            name: Timer name
            context: Additional context
        """
        self.name = name
        self.context = context or {}
        self.start_time: Optional[float] = None
        self.end_time: Optional[float] = None

    def start(self) -> "Timer":
        self.start_time = time.perf_counter()
        self.end_time = None
        return self

    def stop(self) -> float:
        """
        Stop timer and return duration

        Returns:
            Duration in milliseconds
        """
        if self.start_time is None:
            raise ValueError("Timer not started")
        self.end_time = time.perf_counter()
        return self.duration_ms

    @property
    def duration_ms(self) -> float:
        if self.start_time is None:
            return 0.0
        end_time = self.end_time or time.perf_counter()
        return (end_time - self.start_time) * 1000

    def __enter__(self) -> "Timer":
        return self.start()

    def __exit__(self, exc_type: Any, exc_val: Any, exc_tb: Any) -> None:
        self.stop()


class MetricsCollector:
    """
    Thread-safe collector for timings and counters
    """

    def __init__(self, logger: Optional[StructuredLogger] = None, max_records: int = 10000):
        self.logger = logger or get_logger("stringforge.metrics")
        self.max_records = max_records
        self._performance: List[PerformanceMetrics] = []
        self._counters: Dict[str, CounterMetrics] = {}
        self._lock = threading.RLock()

    def record_performance(
        self,
        operation: str,
        duration_ms: float,
        context: Optional[Dict[str, Any]] = None,
    ) -> PerformanceMetrics:
        metric = PerformanceMetrics(operation, duration_ms, dict(context or {}))
        with self._lock:
            self._performance.append(metric)
            if len(self._performance) > self.max_records:
                del self._performance[0]
        self.logger.log_performance(operation, duration_ms, **metric.context)
        return metric

    def increment_counter(self, name: str, amount: int = 1) -> None:
        with self._lock:
            counter = self._counters.setdefault(name, CounterMetrics(name))
            counter.increment(amount)

    def get_counter(self, name: str) -> int:
        with self._lock:
            counter = self._counters.get(name)
            return counter.value if counter else 0

    @contextmanager
    def time_operation(self, operation: str, context: Optional[Dict[str, Any]] = None) -> Iterator[Timer]:
        """
        Context manager for timing operations

        Yields:
            Timer instance
        """
        timer = Timer(operation, context)
        timer.start()
        try:
            yield timer
        finally:
            duration_ms = timer.stop()
            self.record_performance(operation, duration_ms, context)

    def get_stats(self) -> Dict[str, Any]:
        """Per-operation totals and counters"""
        with self._lock:
            totals: Dict[str, Dict[str, float]] = defaultdict(lambda: {"count": 0, "total_ms": 0.0})
            for metric in self._performance:
                entry = totals[metric.operation]
                entry["count"] += 1
                entry["total_ms"] += metric.duration_ms
            return {
                "operations": {
                    name: {"count": int(entry["count"]), "total_ms": round(entry["total_ms"], 3)}
                    for name, entry in sorted(totals.items())
                },
                "counters": {name: counter.value for name, counter in sorted(self._counters.items())},
            }

    def reset_metrics(self) -> None:
        with self._lock:
            self._performance.clear()
            self._counters.clear()


# Global metrics collector
_global_collector: Optional[MetricsCollector] = None
_global_lock = threading.Lock()


def get_metrics_collector() -> MetricsCollector:
    global _global_collector
    with _global_lock:
        if _global_collector is None:
            _global_collector = MetricsCollector()
        return _global_collector


def set_metrics_collector(collector: MetricsCollector) -> None:
    global _global_collector
    with _global_lock:
        _global_collector = collector


def time_operation(operation: str, context: Optional[Dict[str, Any]] = None) -> Any:
    """Time operation using the global collector"""
    return get_metrics_collector().time_operation(operation, context)


def increment_counter(name: str, amount: int = 1) -> None:
    get_metrics_collector().increment_counter(name, amount)


def get_stats() -> Dict[str, Any]:
    return get_metrics_collector().get_stats()


__all__ = [
    "PerformanceMetrics",
    "CounterMetrics",
    "Timer",
    "MetricsCollector",
    "get_metrics_collector",
    "set_metrics_collector",
    "time_operation",
    "increment_counter",
    "get_stats",
]
