"""
StringForge Structured Logger

Structured logging on top of structlog:
- bound context shared by every logger of a run (command, genus, cell)
- exact values rendered canonically (Fractions as p/q, expressions as text)
- events end up in stdlib handlers on stderr so stdout stays clean for results
"""

import logging
import sys
import threading
from contextvars import ContextVar
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union

import structlog
from structlog.types import FilteringBoundLogger


# Context shared by all loggers of a run
run_context: ContextVar[Dict[str, Any]] = ContextVar("run_context", default={})

_configure_lock = threading.Lock()
_configured = False


class ContextManager:
    """Context management for logging, safe across threads and tasks"""

    def set_context(self, **kwargs: Any) -> None:
        """Set context variables"""
        current = dict(run_context.get())
        current.update(kwargs)
        run_context.set(current)

    def get_context(self) -> Dict[str, Any]:
        """Get current context"""
        return dict(run_context.get())

    def clear_context(self) -> None:
        """Clear current context"""
        run_context.set({})


# Global context manager instance
context_manager = ContextManager()


def render_exact(value: Any) -> Any:
    """Render exact algebraic values as canonical strings.

    Fractions become ``p/q``; anything exposing ``to_text`` is rendered with
    it; containers are rendered recursively.
    """
    if isinstance(value, bool) or value is None or isinstance(value, (int, float, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if hasattr(value, "to_text"):
        return value.to_text()
    if isinstance(value, dict):
        return {str(key): render_exact(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [render_exact(item) for item in value]
    return str(value)


def add_timestamp(logger: FilteringBoundLogger, method_name: str, event_dict: Dict[str, Any]) -> Dict[str, Any]:
    """Add ISO timestamp to log events"""
    event_dict["timestamp"] = datetime.now(timezone.utc).isoformat()
    return event_dict


def add_context(logger: FilteringBoundLogger, method_name: str, event_dict: Dict[str, Any]) -> Dict[str, Any]:
    """Add run context to log events"""
    context = context_manager.get_context()
    if context:
        event_dict["context"] = context
    return event_dict


def add_logger_name(logger: FilteringBoundLogger, method_name: str, event_dict: Dict[str, Any]) -> Dict[str, Any]:
    """Add logger name to log events"""
    if hasattr(logger, "name"):
        event_dict["logger"] = logger.name
    return event_dict


def exact_value_processor(logger: FilteringBoundLogger, method_name: str, event_dict: Dict[str, Any]) -> Dict[str, Any]:
    """Render Fractions and symbolic values in the event dict"""
    for key, value in list(event_dict.items()):
        if key != "event":
            event_dict[key] = render_exact(value)
    return event_dict


def _configure_structlog(extra_processors: Optional[List[Any]] = None) -> None:
    global _configured
    with _configure_lock:
        if _configured and not extra_processors:
            return
        processors: List[Any] = [
            structlog.stdlib.filter_by_level,
            add_timestamp,
            add_context,
            add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            exact_value_processor,
        ]
        if extra_processors:
            processors.extend(extra_processors)
        processors.extend([
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.stdlib.ProcessorFormatter.wrap_for_formatter,
        ])
        structlog.configure(
            processors=processors,
            wrapper_class=structlog.stdlib.BoundLogger,
            logger_factory=structlog.stdlib.LoggerFactory(),
            cache_logger_on_first_use=True,
        )
        _configured = True


class StructuredLogger:
    """
    Structured logger for StringForge

    Thin wrapper over a structlog bound logger with helpers for the
    long-running steps of the engine.
    """

    def __init__(
        self,
        name: str,
        level: Optional[Union[str, int]] = None,
        extra_processors: Optional[List[Any]] = None,
    ):
        """
        Initialize structured logger

        Args:
            name: Logger name
            level: Log level (inherits from the root logger if omitted)
            extra_processors: Additional structlog processors
        """
        self.name = name
        _configure_structlog(extra_processors)
        self._logger = structlog.get_logger(name)

        if level is not None:
            if isinstance(level, str):
                level = getattr(logging, level.upper())
            logging.getLogger(name).setLevel(level)

    def set_context(self, **kwargs: Any) -> None:
        """Set logging context"""
        context_manager.set_context(**kwargs)

    def clear_context(self) -> None:
        """Clear logging context"""
        context_manager.clear_context()

    def debug(self, message: str, **kwargs: Any) -> None:
        self._logger.debug(message, **kwargs)

    def info(self, message: str, **kwargs: Any) -> None:
        self._logger.info(message, **kwargs)

    def warning(self, message: str, **kwargs: Any) -> None:
        self._logger.warning(message, **kwargs)

    def error(self, message: str, **kwargs: Any) -> None:
        self._logger.error(message, **kwargs)

    def critical(self, message: str, **kwargs: Any) -> None:
        self._logger.critical(message, **kwargs)

    def exception(self, message: str, **kwargs: Any) -> None:
        """Log exception with traceback"""
        self._logger.exception(message, **kwargs)

    def log_performance(
        self,
        operation: str,
        duration_ms: float,
        **kwargs: Any
    ) -> None:
        """
        Log the duration of an engine step

        Args:
            operation: Operation name
            duration_ms: Duration in milliseconds
            **kwargs: Additional context
        """
        self.debug(
            f"Performance: {operation}",
            operation=operation,
            duration_ms=round(duration_ms, 2),
            **kwargs
        )

    def bind(self, **kwargs: Any) -> "StructuredLogger":
        """
        Create a new logger with bound context

        Args:
            **kwargs: Context to bind

        Returns:
            New logger instance with bound context
        """
        bound_logger = StructuredLogger(name=self.name)
        bound_logger._logger = self._logger.bind(**kwargs)
        return bound_logger


def get_logger(name: str, level: Optional[Union[str, int]] = None) -> StructuredLogger:
    """
    Get or create a structured logger

    Args:
        name: Logger name
        level: Optional log level

    Returns:
        StructuredLogger instance
    """
    return StructuredLogger(name=name, level=level)


def setup_logging(
    level: Union[str, int] = logging.WARNING,
    fmt: str = "text",
    log_file: Optional[str] = None,
    stream: Any = None,
) -> None:
    """
    Setup global logging configuration

    Console output goes to stderr; stdout is reserved for command results.

    Args:
        level: Global log level
        fmt: ``text`` for the console formatter, ``json`` for JSON lines
        log_file: Optional file receiving JSON lines
        stream: Console stream (default ``sys.stderr``)
    """
    from .formatters import ConsoleFormatter, JSONFormatter

    root_logger = logging.getLogger()
    if isinstance(level, str):
        level = getattr(logging, level.upper())
    root_logger.setLevel(level)
    root_logger.handlers.clear()

    console_handler = logging.StreamHandler(stream or sys.stderr)
    console_handler.setFormatter(JSONFormatter() if fmt == "json" else ConsoleFormatter())
    root_logger.addHandler(console_handler)

    if log_file:
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setFormatter(JSONFormatter())
        root_logger.addHandler(file_handler)


__all__ = [
    "StructuredLogger",
    "ContextManager",
    "context_manager",
    "get_logger",
    "setup_logging",
    "render_exact",
]
