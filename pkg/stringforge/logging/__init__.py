"""
StringForge structured logging

Basic usage:
    ```python
    from stringforge.logging import get_logger, setup_logging, time_operation

    setup_logging(level="INFO")
    logger = get_logger("stringforge.solver")
    logger.info("Solving genus", genus=2)

    with time_operation("solve_genus", {"genus": 2}):
        ...
    ```
"""

from .formatters import BaseFormatter, ConsoleFormatter, JSONFormatter
from .logger import (
    ContextManager,
    StructuredLogger,
    context_manager,
    get_logger,
    render_exact,
    setup_logging,
)
from .metrics import (
    CounterMetrics,
    MetricsCollector,
    PerformanceMetrics,
    Timer,
    get_metrics_collector,
    get_stats,
    increment_counter,
    set_metrics_collector,
    time_operation,
)

__all__ = [
    "StructuredLogger",
    "ContextManager",
    "context_manager",
    "get_logger",
    "setup_logging",
    "render_exact",
    "BaseFormatter",
    "JSONFormatter",
    "ConsoleFormatter",
    "CounterMetrics",
    "MetricsCollector",
    "PerformanceMetrics",
    "Timer",
    "get_metrics_collector",
    "set_metrics_collector",
    "time_operation",
    "increment_counter",
    "get_stats",
]
