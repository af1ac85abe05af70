"""
StringForge Validation Module

Validation of user-facing inputs: genus and weight bounds, partition strings,
vertex profiles.
"""

import re
from typing import Any, Dict, Mapping, Optional, Tuple

from ..exceptions import InputError


class ValidationError(InputError):
    """Input validation error naming the offending field."""

    def __init__(self, message: str, field: Optional[str] = None, value: Any = None):
        """
        Args:
            message: Error message
            field: Name of the invalid field
            value: Invalid value
        """
        details: Dict[str, Any] = {}
        if field is not None:
            details["field"] = field
            details["value"] = value
        super().__init__(message=message, details=details)
        self.field = field
        self.value = value

    def __str__(self) -> str:
        if self.field:
            return f"[{self.field}] {self.message}"
        return self.message


def validate_range(
    value: Any,
    field: str,
    min_val: Optional[int] = None,
    max_val: Optional[int] = None,
) -> int:
    """
    Check that ``value`` is an integer inside ``[min_val, max_val]``.

    Raises:
        ValidationError: Not an integer or out of range
    """
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError("Value must be an integer", field=field, value=value)
    if min_val is not None and value < min_val:
        raise ValidationError(f"Value must be >= {min_val}", field=field, value=value)
    if max_val is not None and value > max_val:
        raise ValidationError(f"Value must be <= {max_val}", field=field, value=value)
    return value


_PARTITION_RE = re.compile(r"^\s*\d+(\s*\+\s*\d+)*\s*$")
EMPTY_PARTITION_SPELLINGS = {"", "0", "phi", "φ", "()", "empty"}


def parse_partition_text(text: str, field: str = "partition") -> Tuple[int, ...]:
    """
    Parse ``"2+1+1"`` (or an empty spelling such as ``"phi"``) into parts.

    Example:
        >>> parse_partition_text("1+2")
        (2, 1)
    """
    stripped = text.strip()
    if stripped.lower() in EMPTY_PARTITION_SPELLINGS:
        return ()
    if not _PARTITION_RE.match(stripped):
        raise ValidationError("Partition must look like 2+1+1", field=field, value=text)
    parts = tuple(sorted((int(part) for part in stripped.split("+")), reverse=True))
    if any(part <= 0 for part in parts):
        raise ValidationError("Partition parts must be positive", field=field, value=text)
    return parts


def validate_profile(profile: Mapping[int, int], field: str = "profile") -> Dict[int, int]:
    """
    Check a vertex profile ``{valence: count}``.

    Valences and counts are positive; zero counts are dropped.
    """
    cleaned: Dict[int, int] = {}
    for valence, count in profile.items():
        validate_range(valence, f"{field}.valence", min_val=1)
        validate_range(count, f"{field}[{valence}]", min_val=0)
        if count:
            cleaned[valence] = count
    return dict(sorted(cleaned.items()))


def parse_profile_text(text: str, field: str = "profile") -> Dict[int, int]:
    """
    Parse ``"4:2,3:1"`` into ``{3: 1, 4: 2}``.
    """
    profile: Dict[int, int] = {}
    for chunk in filter(None, (piece.strip() for piece in text.split(","))):
        if ":" not in chunk:
            raise ValidationError("Profile entries look like valence:count", field=field, value=text)
        valence_text, count_text = chunk.split(":", 1)
        try:
            valence, count = int(valence_text), int(count_text)
        except ValueError as exc:
            raise ValidationError("Profile entries must be integers", field=field, value=text) from exc
        profile[valence] = profile.get(valence, 0) + count
    return validate_profile(profile, field)


__all__ = [
    "ValidationError",
    "validate_range",
    "parse_partition_text",
    "validate_profile",
    "parse_profile_text",
    "EMPTY_PARTITION_SPELLINGS",
]
