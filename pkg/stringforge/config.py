"""Engine configuration.

Settings are resolved with a fixed precedence: built-in defaults, then
environment variables, then command line flags, then a ``key = value`` config
file. The last source to mention a field wins.
"""

import os
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator
from typing_extensions import Self

from .exceptions import ConfigurationError


def _default_threads() -> int:
    return os.cpu_count() or 1


class EngineConfig(BaseModel):
    """Configuration for a StringForge run.

    Attributes:
        output_format: ``text`` or ``json``
        max_weight: Largest |lambda| + |eta| of generated string operators
        truncation_order: Total coupling degree kept in specialization series
        threads: Worker processes for table generation and the map oracle
        seed: Seed for the randomized identity checks of ``verify``
        jet_order: Highest derivative order carried by the jet ring
        max_darts: Dart bound of the brute-force map oracle
        log_level: Log level name
    """

    output_format: str = Field(
        default="text",
        description="Output format",
        pattern=r"^(text|json)$",
    )

    max_weight: int = Field(
        default=4,
        description="Largest weight of generated string operators",
        ge=0,
        le=8,
    )

    truncation_order: int = Field(
        default=6,
        description="Total coupling degree kept in series",
        ge=0,
        le=16,
    )

    threads: int = Field(
        default_factory=_default_threads,
        description="Worker processes",
        ge=1,
        le=512,
    )

    seed: int = Field(
        default=0,
        description="Seed for randomized checks",
        ge=0,
    )

    jet_order: int = Field(
        default=24,
        description="Highest derivative order of u and z",
        ge=4,
        le=64,
    )

    max_darts: int = Field(
        default=16,
        description="Dart bound of the map oracle",
        ge=2,
        le=20,
    )

    log_level: str = Field(
        default="WARNING",
        description="Log level",
        pattern=r"^(DEBUG|INFO|WARNING|ERROR|CRITICAL)$",
    )

    model_config = {
        "validate_assignment": True,
        "extra": "forbid",
    }

    @field_validator("log_level", mode="before")
    @classmethod
    def validate_log_level(cls, v: Any) -> Any:
        """Log level names are case-insensitive."""
        return v.upper() if isinstance(v, str) else v

    @field_validator("output_format", mode="before")
    @classmethod
    def validate_output_format(cls, v: Any) -> Any:
        return v.lower() if isinstance(v, str) else v

    @model_validator(mode="after")
    def validate_oracle_bound(self) -> Self:
        """Dart counts are always even."""
        if self.max_darts % 2:
            raise ValueError("max_darts must be even")
        return self

    @classmethod
    def from_env(cls, **overrides: Any) -> Self:
        """Build a configuration from STRINGFORGE_* environment variables.

        Args:
            **overrides: Values that take precedence over the environment

        Example:
            >>> config = EngineConfig.from_env(output_format="json")
        """
        return cls(**merge_sources(read_env(), overrides))

    @classmethod
    def from_file(cls, path: Union[str, Path], **base: Any) -> Self:
        """Build a configuration from a ``key = value`` text file.

        Values from the file override ``base``.
        """
        return cls(**merge_sources(base, read_config_file(path)))


ENV_MAPPING: Dict[str, str] = {
    "STRINGFORGE_FORMAT": "output_format",
    "STRINGFORGE_MAX_WEIGHT": "max_weight",
    "STRINGFORGE_TRUNCATION_ORDER": "truncation_order",
    "STRINGFORGE_THREADS": "threads",
    "STRINGFORGE_SEED": "seed",
    "STRINGFORGE_JET_ORDER": "jet_order",
    "STRINGFORGE_MAX_DARTS": "max_darts",
    "STRINGFORGE_LOG_LEVEL": "log_level",
}

_INT_FIELDS = {"max_weight", "truncation_order", "threads", "seed", "jet_order", "max_darts"}


def _convert(field_name: str, raw: str) -> Any:
    if field_name in _INT_FIELDS:
        try:
            return int(raw)
        except ValueError as exc:
            raise ConfigurationError(
                f"{field_name} must be an integer",
                details={"field": field_name, "value": raw},
            ) from exc
    return raw


def read_env(environ: Optional[Mapping[str, str]] = None) -> Dict[str, Any]:
    """Collect configuration values from the environment."""
    environ = os.environ if environ is None else environ
    values: Dict[str, Any] = {}
    for env_key, field_name in ENV_MAPPING.items():
        raw = environ.get(env_key)
        if raw is not None and raw.strip():
            values[field_name] = _convert(field_name, raw.strip())
    return values


def read_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """Parse a ``key = value`` configuration file.

    Blank lines and ``#`` comments are ignored. Keys use the field names of
    :class:`EngineConfig`; dashes are accepted in place of underscores.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(
            f"Cannot read config file: {path}", details={"path": str(path)}
        ) from exc

    values: Dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(
                "Config lines must have the form key = value",
                details={"path": str(path), "line": lineno},
            )
        key, raw = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in EngineConfig.model_fields:
            raise ConfigurationError(
                f"Unknown config key: {key}", details={"path": str(path), "line": lineno}
            )
        values[key] = _convert(key, raw)
    return values


def merge_sources(*sources: Optional[Mapping[str, Any]]) -> Dict[str, Any]:
    """Merge config sources left to right; ``None`` values are skipped."""
    merged: Dict[str, Any] = {}
    for source in sources:
        if not source:
            continue
        merged.update({key: value for key, value in source.items() if value is not None})
    return merged


def resolve_config(
    flags: Optional[Mapping[str, Any]] = None,
    config_file: Optional[Union[str, Path]] = None,
    environ: Optional[Mapping[str, str]] = None,
) -> EngineConfig:
    """Resolve defaults < environment < flags < config file.

    Raises:
        ConfigurationError: If any source holds an invalid value
    """
    file_values = read_config_file(config_file) if config_file else {}
    try:
        return EngineConfig(**merge_sources(read_env(environ), flags, file_values))
    except ValidationError as exc:
        raise ConfigurationError(
            "Invalid configuration value", details={"errors": exc.error_count()}
        ) from exc


# Default configuration instance
_default_config: Optional[EngineConfig] = None


def get_default_config() -> EngineConfig:
    """Return the process-wide configuration, building it from the environment."""
    global _default_config
    if _default_config is None:
        _default_config = EngineConfig.from_env()
    return _default_config


def set_default_config(config: EngineConfig) -> None:
    """Install the process-wide configuration."""
    global _default_config
    _default_config = config


__all__ = [
    "EngineConfig",
    "ENV_MAPPING",
    "read_env",
    "read_config_file",
    "merge_sources",
    "resolve_config",
    "get_default_config",
    "set_default_config",
]
