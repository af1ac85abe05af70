"""
Configuration tests: defaults, validation and source precedence.
"""

import pytest

from stringforge.config import (
    EngineConfig,
    get_default_config,
    merge_sources,
    read_config_file,
    read_env,
    resolve_config,
    set_default_config,
)
from stringforge.exceptions import ConfigurationError, InputError


@pytest.mark.unit
@pytest.mark.config
class TestEngineConfig:
    """Field defaults and validation."""

    def test_defaults(self):
        config = EngineConfig(threads=1)
        assert config.output_format == "text"
        assert config.max_weight == 4
        assert config.truncation_order == 6
        assert config.jet_order == 24
        assert config.max_darts == 16
        assert config.log_level == "WARNING"

    def test_case_insensitive_names(self):
        config = EngineConfig(threads=1, log_level="debug", output_format="JSON")
        assert config.log_level == "DEBUG"
        assert config.output_format == "json"

    @pytest.mark.parametrize(
        "overrides",
        [
            {"output_format": "xml"},
            {"max_weight": 9},
            {"threads": 0},
            {"jet_order": 3},
            {"max_darts": 15},
            {"log_level": "LOUD"},
            {"unknown": 1},
        ],
    )
    def test_invalid_values(self, overrides):
        with pytest.raises(ValueError):
            EngineConfig(**{"threads": 1, **overrides})

    def test_assignment_is_validated(self):
        config = EngineConfig(threads=1)
        with pytest.raises(ValueError):
            config.max_weight = -1

    def test_default_config_round_trip(self):
        config = EngineConfig(threads=2, seed=7)
        set_default_config(config)
        assert get_default_config() is config


@pytest.mark.unit
@pytest.mark.config
class TestSources:
    """Environment, flags and config files."""

    def test_read_env(self):
        environ = {"STRINGFORGE_FORMAT": "json", "STRINGFORGE_SEED": " 3 ", "STRINGFORGE_MAX_WEIGHT": "", "OTHER": "x"}
        assert read_env(environ) == {"output_format": "json", "seed": 3}

    def test_read_env_rejects_non_integers(self):
        with pytest.raises(ConfigurationError):
            read_env({"STRINGFORGE_THREADS": "many"})

    def test_read_config_file(self, tmp_path):
        path = tmp_path / "run.conf"
        path.write_text("# comment\n\nmax-weight = 3\nlog_level = info  # trailing\n", encoding="utf-8")
        assert read_config_file(path) == {"max_weight": 3, "log_level": "info"}

    @pytest.mark.parametrize("body", ["max_weight 3\n", "colour = blue\n", "seed = x\n"])
    def test_bad_config_file(self, tmp_path, body):
        path = tmp_path / "bad.conf"
        path.write_text(body, encoding="utf-8")
        with pytest.raises(ConfigurationError):
            read_config_file(path)

    def test_missing_config_file(self, tmp_path):
        with pytest.raises(ConfigurationError):
            read_config_file(tmp_path / "missing.conf")

    def test_merge_skips_none(self):
        assert merge_sources({"seed": 1, "threads": 2}, None, {"seed": None, "threads": 4}) == {"seed": 1, "threads": 4}

    def test_precedence(self, tmp_path):
        path = tmp_path / "run.conf"
        path.write_text("seed = 30\n", encoding="utf-8")
        environ = {"STRINGFORGE_SEED": "10", "STRINGFORGE_MAX_WEIGHT": "2", "STRINGFORGE_THREADS": "1"}
        config = resolve_config({"seed": 20, "jet_order": 12}, path, environ)
        assert config.seed == 30
        assert config.max_weight == 2
        assert config.jet_order == 12

    def test_flags_override_environment(self):
        config = resolve_config({"seed": 20}, None, {"STRINGFORGE_SEED": "10", "STRINGFORGE_THREADS": "1"})
        assert config.seed == 20

    def test_invalid_value_is_an_input_error(self):
        with pytest.raises(ConfigurationError) as exc_info:
            resolve_config({"threads": 0}, None, {})
        assert isinstance(exc_info.value, InputError)
        assert exc_info.value.exit_code == 3

    def test_odd_dart_bound_from_environment(self):
        with pytest.raises(ConfigurationError):
            resolve_config(None, None, {"STRINGFORGE_MAX_DARTS": "7", "STRINGFORGE_THREADS": "1"})
