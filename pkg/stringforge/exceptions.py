"""Exception classes for the StringForge engine.

Every error carries a human readable message and a details dictionary. The
class attribute ``exit_code`` ties each family to the command line exit-code
contract: 1 verification failure, 2 generation failure, 3 input error.
"""

from typing import Any, Dict, Optional, Type

from typing_extensions import Self


class StringForgeError(Exception):
    """Base class for all engine errors.

    Args:
        message: Error message
        details: Additional structured context (parameters, offending terms)
    """

    exit_code: int = 2

    def __init__(
        self,
        message: str,
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def __str__(self) -> str:
        if self.details:
            context = ", ".join(f"{key}={value}" for key, value in sorted(self.details.items()))
            return f"{self.message} ({context})"
        return self.message

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__name__}("
            f"message={self.message!r}, "
            f"details={self.details})"
        )

    @classmethod
    def with_context(cls, message: str, **context: Any) -> Self:
        """Build the exception from keyword context."""
        return cls(message=message, details=context)

    def to_dict(self) -> Dict[str, Any]:
        """Structured error report used by the command line surface."""
        return {
            "error": self.__class__.__name__,
            "message": self.message,
            "details": {key: str(value) for key, value in sorted(self.details.items())},
            "exit_code": self.exit_code,
        }


class InputError(StringForgeError):
    """Malformed user input: potentials, partitions, config files, bounds."""

    exit_code = 3

    def __init__(
        self,
        message: str = "Invalid input",
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(message=message, details=details)


class PotentialSyntaxError(InputError):
    """The potential string does not follow the accepted grammar."""

    def __init__(
        self,
        message: str = "Cannot parse potential",
        details: Optional[Dict[str, Any]] = None,
        text: Optional[str] = None,
    ) -> None:
        super().__init__(message=message, details=details)
        self.text = text
        if text is not None:
            self.details.setdefault("text", text)


class ConfigurationError(InputError):
    """Configuration file or environment value is invalid."""

    def __init__(
        self,
        message: str = "Invalid configuration",
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(message=message, details=details)


class TooLarge(InputError):
    """A brute-force enumeration exceeds its dart bound."""

    def __init__(
        self,
        message: str = "Enumeration exceeds the dart bound",
        details: Optional[Dict[str, Any]] = None,
        darts: Optional[int] = None,
        limit: Optional[int] = None,
    ) -> None:
        super().__init__(message=message, details=details)
        self.darts = darts
        self.limit = limit
        if darts is not None:
            self.details.setdefault("darts", darts)
        if limit is not None:
            self.details.setdefault("limit", limit)


class GenerationError(StringForgeError):
    """A symbolic generation step could not produce its result."""

    exit_code = 2

    def __init__(
        self,
        message: str = "Generation failed",
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(message=message, details=details)


class AnsatzExhausted(GenerationError):
    """No operator inside the ansatz bounds reproduces the target polynomials."""

    def __init__(
        self,
        message: str = "Operator ansatz exhausted",
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(message=message, details=details)


class AnsatzRankDeficient(GenerationError):
    """The undetermined-coefficient system has more than one solution."""

    def __init__(
        self,
        message: str = "Operator ansatz is rank deficient",
        details: Optional[Dict[str, Any]] = None,
        free_columns: Optional[int] = None,
    ) -> None:
        super().__init__(message=message, details=details)
        self.free_columns = free_columns
        if free_columns is not None:
            self.details.setdefault("free_columns", free_columns)


class MissingLowerGenus(GenerationError):
    """A genus table lacks a prerequisite lower-order entry."""

    def __init__(
        self,
        message: str = "Genus table is missing a lower-order entry",
        details: Optional[Dict[str, Any]] = None,
        key: Optional[str] = None,
    ) -> None:
        super().__init__(message=message, details=details)
        self.key = key
        if key is not None:
            self.details.setdefault("key", key)


class SingularPivot(GenerationError):
    """Isolating an unknown produced a vanishing or contaminated pivot."""

    def __init__(
        self,
        message: str = "Singular pivot while isolating unknown",
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(message=message, details=details)


class NoConvergence(GenerationError):
    """Fixed-point iteration did not stabilize."""

    def __init__(
        self,
        message: str = "Fixed-point iteration did not converge",
        details: Optional[Dict[str, Any]] = None,
        rounds: Optional[int] = None,
    ) -> None:
        super().__init__(message=message, details=details)
        self.rounds = rounds
        if rounds is not None:
            self.details.setdefault("rounds", rounds)


class JetOrderExceeded(GenerationError):
    """A derivative would exceed the configured jet order of the ring."""

    def __init__(
        self,
        message: str = "Jet order exceeded",
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(message=message, details=details)


class HalfIntegerExponent(GenerationError):
    """A half-integer power of r survived into a residue evaluation."""

    def __init__(
        self,
        message: str = "Half-integer power of r in string operator",
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(message=message, details=details)


class Disconnected(GenerationError):
    """A rotation system splits into more than one orbit."""

    def __init__(
        self,
        message: str = "Rotation system is disconnected",
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(message=message, details=details)


class SeriesError(StringForgeError):
    """Coupling-series arithmetic failure."""

    exit_code = 2

    def __init__(
        self,
        message: str = "Series arithmetic failed",
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(message=message, details=details)


class DivisionByZeroSeries(SeriesError):
    """The divisor series has no invertible leading monomial."""

    def __init__(
        self,
        message: str = "Division by a series without invertible leading term",
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(message=message, details=details)


class NonIntegrableMonomial(SeriesError):
    """A termwise antiderivative hits x^-1 or x^-2."""

    def __init__(
        self,
        message: str = "Monomial cannot be integrated termwise",
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(message=message, details=details)


class TruncationExceeded(SeriesError):
    """A coefficient beyond the series truncation order was requested."""

    def __init__(
        self,
        message: str = "Requested coefficient lies beyond the truncation order",
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(message=message, details=details)


class NonCancellingLogarithm(SeriesError):
    """The log x contributions of a LogCombo do not cancel."""

    def __init__(
        self,
        message: str = "Coefficients of log x do not cancel",
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(message=message, details=details)


class VerificationFailure(StringForgeError):
    """An internal verification returned false."""

    exit_code = 1

    def __init__(
        self,
        message: str = "Verification failed",
        details: Optional[Dict[str, Any]] = None,
        check: Optional[str] = None,
    ) -> None:
        super().__init__(message=message, details=details)
        self.check = check
        if check is not None:
            self.details.setdefault("check", check)


_EXIT_CODES: Dict[Type[BaseException], int] = {
    ValueError: 3,
    TypeError: 3,
    FileNotFoundError: 3,
}


def exit_code_for(exc: BaseException) -> int:
    """Map an exception to the command line exit code.

    Engine errors carry their own code; a few builtin errors caused by bad
    input map to 3; everything else is a generation failure.
    """
    if isinstance(exc, StringForgeError):
        return exc.exit_code
    for exc_type, code in _EXIT_CODES.items():
        if isinstance(exc, exc_type):
            return code
    return 2


__all__ = [
    "StringForgeError",
    "InputError",
    "PotentialSyntaxError",
    "ConfigurationError",
    "TooLarge",
    "GenerationError",
    "AnsatzExhausted",
    "AnsatzRankDeficient",
    "MissingLowerGenus",
    "SingularPivot",
    "NoConvergence",
    "JetOrderExceeded",
    "HalfIntegerExponent",
    "Disconnected",
    "SeriesError",
    "DivisionByZeroSeries",
    "NonIntegrableMonomial",
    "TruncationExceeded",
    "NonCancellingLogarithm",
    "VerificationFailure",
    "exit_code_for",
]
