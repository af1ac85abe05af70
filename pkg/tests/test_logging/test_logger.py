"""
Structured logging tests: rendering, context, formatters and metrics.
"""

import io
import json
import logging
from fractions import Fraction

import pytest

from stringforge.logging import (
    ConsoleFormatter,
    JSONFormatter,
    MetricsCollector,
    Timer,
    context_manager,
    get_logger,
    render_exact,
    setup_logging,
)


class Expr:
    def to_text(self):
        return "z'^2 - z*u'^2"


def make_record(msg, level=logging.INFO):
    return logging.LogRecord("stringforge.test", level, __file__, 1, msg, None, None)


@pytest.mark.unit
@pytest.mark.logging
class TestRenderExact:
    """Canonical rendering of exact values."""

    def test_scalars(self):
        assert render_exact(Fraction(-2, 6)) == "-1/3"
        assert render_exact(Fraction(4)) == "4"
        assert render_exact(3) == 3
        assert render_exact(None) is None

    def test_symbolic_values(self):
        assert render_exact(Expr()) == "z'^2 - z*u'^2"

    def test_containers(self):
        assert render_exact({1: [Fraction(1, 2), Expr()]}) == {"1": ["1/2", "z'^2 - z*u'^2"]}


@pytest.mark.unit
@pytest.mark.logging
class TestStructuredLogger:
    """Logger output through the configured handlers."""

    def test_context(self, restore_root_logger):
        context_manager.set_context(command="solve")
        context_manager.set_context(genus=2)
        assert context_manager.get_context() == {"command": "solve", "genus": 2}
        context_manager.clear_context()
        assert context_manager.get_context() == {}

    def test_console_output(self, restore_root_logger):
        stream = io.StringIO()
        setup_logging(level="INFO", stream=stream)
        get_logger("stringforge.test").warning("Pivot chosen", pivot=Fraction(1, 3))
        line = stream.getvalue()
        assert "Pivot chosen" in line
        assert "pivot=1/3" in line
        assert "WARNING" in line

    def test_level_filter(self, restore_root_logger):
        stream = io.StringIO()
        setup_logging(level="WARNING", stream=stream)
        get_logger("stringforge.test").info("hidden")
        assert stream.getvalue() == ""

    def test_json_output(self, restore_root_logger):
        stream = io.StringIO()
        setup_logging(level="INFO", fmt="json", stream=stream)
        context_manager.set_context(command="table")
        get_logger("stringforge.test").info("Cell solved", weight=Fraction(2))
        entry = json.loads(stream.getvalue().splitlines()[-1])
        assert entry["message"] == "Cell solved"
        assert entry["weight"] == "2"
        assert entry["context"] == {"command": "table"}
        assert entry["level"] == "INFO"

    def test_bind(self, restore_root_logger):
        stream = io.StringIO()
        setup_logging(level="INFO", stream=stream)
        get_logger("stringforge.test").bind(genus=1).info("Bound")
        assert "genus=1" in stream.getvalue()

    def test_log_file(self, restore_root_logger, tmp_path):
        path = tmp_path / "run.log"
        setup_logging(level="INFO", stream=io.StringIO(), log_file=str(path))
        get_logger("stringforge.test").error("Written")
        for handler in logging.getLogger().handlers:
            handler.flush()
        assert json.loads(path.read_text(encoding="utf-8").splitlines()[-1])["message"] == "Written"


@pytest.mark.unit
@pytest.mark.logging
class TestFormatters:
    """Formatters on hand-built records."""

    def test_json_event_dict(self):
        record = make_record({"event": "Fit", "rank": 3, "level": "info", "logger": "x"})
        entry = json.loads(JSONFormatter().format(record))
        assert entry["message"] == "Fit"
        assert entry["rank"] == 3
        assert entry["logger"] == "stringforge.test"

    def test_json_plain_message(self):
        entry = json.loads(JSONFormatter().format(make_record("plain")))
        assert entry["message"] == "plain"

    def test_field_filters(self):
        record = make_record({"event": "Fit", "rank": 3, "cell": "a"})
        entry = json.loads(JSONFormatter(exclude_fields={"cell"}).format(record))
        assert "cell" not in entry
        assert "rank" in entry

    def test_console_truncates_long_fields(self):
        record = make_record({"event": "Long", "expr": "x" * 50})
        line = ConsoleFormatter(max_field_length=10).format(record)
        assert "expr=xxxxxxx..." in line


@pytest.mark.unit
@pytest.mark.logging
class TestMetrics:
    """Timers and counters."""

    def test_timer(self):
        with Timer("fit") as timer:
            pass
        assert timer.duration_ms >= 0
        with pytest.raises(ValueError):
            Timer("idle").stop()

    def test_collector(self):
        collector = MetricsCollector()
        with collector.time_operation("solve_genus", {"genus": 1}):
            pass
        with collector.time_operation("solve_genus"):
            pass
        collector.increment_counter("cells", 3)
        collector.increment_counter("cells")
        stats = collector.get_stats()
        assert stats["operations"]["solve_genus"]["count"] == 2
        assert stats["counters"] == {"cells": 4}
        assert collector.get_counter("missing") == 0
        collector.reset_metrics()
        assert collector.get_stats() == {"operations": {}, "counters": {}}

    def test_record_limit(self):
        collector = MetricsCollector(max_records=2)
        for name in ("a", "b", "c"):
            collector.record_performance(name, 1.0)
        assert sorted(collector.get_stats()["operations"]) == ["b", "c"]
