"""
StringForge Log Formatters

- JSON lines formatter for machine consumption
- Console formatter for interactive runs
"""

import json
import logging
from datetime import datetime, timezone
from logging import LogRecord
from typing import Any, Dict, Optional, Set, Tuple, Union

from .logger import render_exact

_STANDARD_ATTRS = {
    "name", "msg", "args", "levelname", "levelno", "pathname",
    "filename", "module", "lineno", "funcName", "created",
    "msecs", "relativeCreated", "thread", "threadName",
    "processName", "process", "exc_info", "exc_text", "stack_info",
    "taskName", "message",
}


class BaseFormatter(logging.Formatter):
    """Base formatter that understands structlog event dicts"""

    def __init__(
        self,
        exclude_fields: Optional[Set[str]] = None,
        include_fields: Optional[Set[str]] = None
    ):
        """
        Args:
            exclude_fields: Fields to exclude from output
            include_fields: Fields to include in output (if set, only these fields)
        """
        super().__init__()
        self.exclude_fields = set(exclude_fields or ())
        self.include_fields = include_fields

    def filter_fields(self, fields: Dict[str, Any]) -> Dict[str, Any]:
        """Filter fields based on include/exclude rules"""
        if self.include_fields:
            return {key: value for key, value in fields.items() if key in self.include_fields}
        return {key: value for key, value in fields.items() if key not in self.exclude_fields}

    def format_timestamp(self, timestamp: Union[float, datetime, str]) -> str:
        """Format timestamp consistently"""
        if isinstance(timestamp, str):
            return timestamp
        if isinstance(timestamp, datetime):
            return timestamp.isoformat()
        return datetime.fromtimestamp(timestamp, tz=timezone.utc).isoformat()

    def split_record(self, record: LogRecord) -> Tuple[str, Dict[str, Any]]:
        """Return the message and the structured fields of a record.

        structlog's ``wrap_for_formatter`` stores the event dict in
        ``record.msg``; plain stdlib records carry extras as attributes.
        """
        if isinstance(record.msg, dict):
            fields = dict(record.msg)
            message = str(fields.pop("event", ""))
        else:
            message = record.getMessage()
            fields = {
                key: value for key, value in record.__dict__.items()
                if key not in _STANDARD_ATTRS and not key.startswith("_")
            }
        for key in ("level", "logger", "timestamp"):
            fields.pop(key, None)
        return message, self.filter_fields(fields)


class JSONFormatter(BaseFormatter):
    """
    JSON lines formatter

    One sorted-key JSON object per record; exact values are rendered
    canonically so logs can be diffed between runs.
    """

    def __init__(
        self,
        exclude_fields: Optional[Set[str]] = None,
        include_fields: Optional[Set[str]] = None,
        sort_keys: bool = True
    ):
        super().__init__(exclude_fields=exclude_fields, include_fields=include_fields)
        self.sort_keys = sort_keys

    def format(self, record: LogRecord) -> str:
        message, fields = self.split_record(record)
        log_entry: Dict[str, Any] = {
            "timestamp": self.format_timestamp(record.created),
            "level": record.levelname,
            "logger": record.name,
            "message": message,
        }
        if record.exc_info:
            log_entry["exception"] = self.formatException(record.exc_info)
        for key, value in fields.items():
            log_entry.setdefault(key, render_exact(value))
        try:
            return json.dumps(log_entry, sort_keys=self.sort_keys, ensure_ascii=False)
        except (TypeError, ValueError) as e:
            log_entry = {key: str(value) for key, value in log_entry.items()}
            log_entry["_serialization_error"] = str(e)
            return json.dumps(log_entry, sort_keys=self.sort_keys, ensure_ascii=False)


class ConsoleFormatter(BaseFormatter):
    """
    Console formatter for interactive runs

    ``timestamp LEVEL [logger] message key=value ...``
    """

    COLORS = {
        "DEBUG": "\033[36m",
        "INFO": "\033[32m",
        "WARNING": "\033[33m",
        "ERROR": "\033[31m",
        "CRITICAL": "\033[35m",
        "RESET": "\033[0m",
    }

    def __init__(
        self,
        use_colors: bool = False,
        max_field_length: int = 120,
        exclude_fields: Optional[Set[str]] = None,
        include_fields: Optional[Set[str]] = None
    ):
        super().__init__(exclude_fields=exclude_fields, include_fields=include_fields)
        self.use_colors = use_colors
        self.max_field_length = max_field_length

    def format(self, record: LogRecord) -> str:
        message, fields = self.split_record(record)
        level = f"{record.levelname:<8}"
        if self.use_colors:
            level = f"{self.COLORS.get(record.levelname, '')}{level}{self.COLORS['RESET']}"

        logger_name = record.name
        if len(logger_name) > 24:
            logger_name = f"...{logger_name[-21:]}"

        parts = [f"{self.format_timestamp(record.created)} {level} [{logger_name:<24}] {message}"]
        for key in sorted(fields):
            value = str(render_exact(fields[key]))
            if len(value) > self.max_field_length:
                value = value[: self.max_field_length - 3] + "..."
            parts.append(f"{key}={value}")

        line = " ".join(parts)
        if record.exc_info:
            line += "\n" + self.formatException(record.exc_info)
        return line


__all__ = [
    "BaseFormatter",
    "JSONFormatter",
    "ConsoleFormatter",
]
