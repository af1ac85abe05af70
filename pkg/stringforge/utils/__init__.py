"""
StringForge utilities: canonical serialization, input validation, helpers.
"""

from .helpers import generate_hash, parallel_map
from .serializers import (
    SCHEMA_VERSION,
    ExactJSONEncoder,
    dumps_canonical,
    dumps_envelope,
    envelope,
    format_fraction,
    parse_fraction,
)
from .validators import (
    ValidationError,
    parse_partition_text,
    parse_profile_text,
    validate_profile,
    validate_range,
)

__all__ = [
    "SCHEMA_VERSION",
    "ExactJSONEncoder",
    "dumps_canonical",
    "dumps_envelope",
    "envelope",
    "format_fraction",
    "parse_fraction",
    "ValidationError",
    "parse_partition_text",
    "parse_profile_text",
    "validate_profile",
    "validate_range",
    "generate_hash",
    "parallel_map",
]
