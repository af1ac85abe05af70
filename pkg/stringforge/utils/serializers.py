"""
StringForge Serialization Module

Canonical JSON for command output. Exact rationals are written as ``"p/q"``
strings, symbolic values through their canonical text, keys are sorted, and
every payload is wrapped in a versioned envelope so identical configurations
give byte-identical output.
"""

import json
import re
from fractions import Fraction
from typing import Any, Dict, Optional, Union

from ..exceptions import InputError

SCHEMA_VERSION = 1

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")
_DECIMAL_RE = re.compile(r"^\s*[+-]?(\d+\.\d*|\.\d+)\s*$")


def format_fraction(value: Union[Fraction, int]) -> str:
    """Render an exact rational as ``p/q`` (``p`` when integral)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: str) -> Fraction:
    """
    Parse ``p``, ``p/q`` or a finite decimal into an exact rational.

    Raises:
        InputError: The text is not an exact rational literal

    Example:
        >>> parse_fraction("0.5")
        Fraction(1, 2)
        >>> parse_fraction("-3/12")
        Fraction(-1, 4)
    """
    match = _RATIONAL_RE.match(text)
    if match:
        numerator, denominator = match.groups()
        if denominator is not None and int(denominator) == 0:
            raise InputError("Zero denominator", details={"text": text})
        return Fraction(int(numerator), int(denominator or 1))
    if _DECIMAL_RE.match(text):
        return Fraction(text.strip())
    raise InputError("Not an exact rational literal", details={"text": text})


class ExactJSONEncoder(json.JSONEncoder):
    """
    JSON encoder for exact algebraic values.

    Fractions become ``"p/q"``; objects with ``to_text`` (expressions,
    operators, series) become their canonical text; pydantic models and
    objects with ``to_dict`` are expanded.
    """

    def default(self, obj: Any) -> Any:
        if isinstance(obj, Fraction):
            return format_fraction(obj)
        if hasattr(obj, "model_dump"):
            return obj.model_dump(mode="json", by_alias=True)
        if hasattr(obj, "to_dict"):
            return obj.to_dict()
        if hasattr(obj, "to_text"):
            return obj.to_text()
        if isinstance(obj, (set, frozenset)):
            return sorted(obj)
        return super().default(obj)


def dumps_canonical(data: Any, indent: Optional[int] = 2) -> str:
    """Serialize with sorted keys and the exact encoder."""
    try:
        return json.dumps(data, cls=ExactJSONEncoder, sort_keys=True, indent=indent, ensure_ascii=False)
    except (TypeError, ValueError) as e:
        raise ValueError(f"Failed to serialize data: {e}") from e


def envelope(command: str, result: Any) -> Dict[str, Any]:
    """Wrap a command result in the versioned output envelope."""
    return {"schema_version": SCHEMA_VERSION, "command": command, "result": result}


def dumps_envelope(command: str, result: Any, indent: Optional[int] = 2) -> str:
    return dumps_canonical(envelope(command, result), indent=indent)


__all__ = [
    "SCHEMA_VERSION",
    "format_fraction",
    "parse_fraction",
    "ExactJSONEncoder",
    "dumps_canonical",
    "envelope",
    "dumps_envelope",
]
