"""
StringForge test configuration.

Shared fixtures: the engine configuration, the generated string table, genus
tables and the test potentials.
"""

import logging

import pytest

from stringforge.config import EngineConfig, set_default_config
from stringforge.diffring import D_expr, DiffExpr, jet_ring
from stringforge.logging import MetricsCollector, context_manager, set_metrics_collector
from stringforge.solver import build_table
from stringforge.specialize import Potential
from stringforge.stringpoly import generate_table

QUARTIC = "0.5*l^2 + t4*l^4"
CUBIC = "0.5*l^2 + t3*l^3"
GAUSSIAN = "0.5*l^2"

# Connected one- and two-vertex maps of small profiles: (genus, faces) -> count
ORACLE_COUNTS = {
    "4:1": {(0, 3): 2, (1, 1): 1},
    "3:2": {(0, 3): 12, (1, 1): 3},
    "1:2": {(0, 1): 1},
    "4:2": {(0, 4): 36, (1, 2): 60},
}


@pytest.fixture(autouse=True)
def engine_config():
    """Single-threaded default configuration for every test."""
    config = EngineConfig(threads=1)
    set_default_config(config)
    set_metrics_collector(MetricsCollector())
    yield config


@pytest.fixture
def restore_root_logger():
    """Put the root logger's handlers and level back after ``setup_logging``."""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield root
    root.handlers[:] = handlers
    root.setLevel(level)
    context_manager.clear_context()


@pytest.fixture(scope="session")
def jets():
    return jet_ring(24)


@pytest.fixture(scope="session")
def strings():
    """String operators through weight 3 (enough for genus 1)."""
    return generate_table(3)


@pytest.fixture(scope="session")
def genus1_table(jets, strings):
    return build_table(1, jets, strings.get)


@pytest.fixture(scope="session")
def genus2_table(jets):
    strings = generate_table(5)
    return build_table(2, jets, strings.get)


@pytest.fixture
def quartic():
    return Potential.parse(QUARTIC)


@pytest.fixture
def cubic():
    return Potential.parse(CUBIC)


@pytest.fixture
def gaussian():
    return Potential.parse(GAUSSIAN)


@pytest.fixture
def atoms(jets):
    """Commonly used ring elements."""
    return {
        "x": DiffExpr.x(jets),
        "u": DiffExpr.u(0, jets),
        "du": DiffExpr.u(1, jets),
        "z": DiffExpr.z(0, jets),
        "dz": DiffExpr.z(1, jets),
        "D": D_expr(jets),
    }
