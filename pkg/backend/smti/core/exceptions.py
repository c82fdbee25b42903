"""
Custom Exception Classes

Defines domain-specific exceptions for SMTI instances, matchings, parsers and solvers.
Each exception carries the process exit code the command-line front end returns for it.
"""
from typing import Any, Dict, Optional


class SmtiException(Exception):
    """
    Base exception for all solver-specific errors.

    Attributes:
        message: Human-readable error message
        exit_code: Process exit code used by the CLI
        details: Additional context about the error
    """
    def __init__(
        self,
        message: str,
        exit_code: int = 1,
        details: Optional[Dict[str, Any]] = None
    ):
        self.message = message
        self.exit_code = exit_code
        self.details = details or {}
        super().__init__(self.message)


# ============================================================================
# Argument Errors
# ============================================================================

class ArgumentError(SmtiException):
    """Raised when an operation receives an out-of-domain argument"""
    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, details=details)


class IndexOutOfRangeError(ArgumentError):
    """Raised when an agent index does not exist in the instance"""
    def __init__(self, side: str, index: int, n: int):
        super().__init__(
            message=f"{side} index {index} out of range for n={n}",
            details={"side": side, "index": index, "n": n}
        )


class InvalidParameterError(ArgumentError):
    """Raised when a solver or generator parameter is invalid"""
    def __init__(self, parameter: str, value: Any, reason: str):
        super().__init__(
            message=f"Invalid value for {parameter}: {reason}",
            details={"parameter": parameter, "value": value}
        )


# ============================================================================
# Domain Errors
# ============================================================================

class DomainError(SmtiException):
    """Base class for operations that violate matching semantics"""
    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, details=details)


class NotAcceptableError(DomainError):
    """Raised when matching a pair that is not mutually acceptable"""
    def __init__(self, man: int, woman: int):
        super().__init__(
            message=f"m{man} and w{woman} are not mutually acceptable",
            details={"man": man, "woman": woman}
        )


class UnrankedAgentError(DomainError):
    """Raised when a comparison involves an agent missing from a preference list"""
    def __init__(self, agent: str, other: str):
        super().__init__(
            message=f"{other} is not in the preference list of {agent}",
            details={"agent": agent, "other": other}
        )


class NotBlockingPairError(DomainError):
    """Raised when a move is requested for a pair that does not block"""
    def __init__(self, man: int, woman: int):
        super().__init__(
            message=f"(m{man}, w{woman}) is not a blocking pair",
            details={"man": man, "woman": woman}
        )


# ============================================================================
# Validation Errors
# ============================================================================

class InvalidInstanceError(SmtiException):
    """Raised when rank tables do not describe a valid instance"""
    def __init__(self, message: str, agent: Optional[str] = None):
        details = {"agent": agent} if agent else {}
        super().__init__(message, details=details)


class EmptyPreferenceListError(InvalidInstanceError):
    """Raised when an agent ranks nobody"""
    def __init__(self, agent: str):
        super().__init__(
            message=f"Empty preference list for {agent}",
            agent=agent
        )


# ============================================================================
# Parse Errors
# ============================================================================

class ParseError(SmtiException):
    """Raised when a text artifact cannot be parsed"""
    def __init__(self, message: str, line: Optional[int] = None):
        details = {"line": line} if line is not None else {}
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message, details=details)


class InstanceParseError(ParseError):
    """Raised when a native instance file is malformed"""


class MatchingParseError(ParseError):
    """Raised when a matching file is malformed or not a matching"""


# ============================================================================
# Resource and I/O Errors
# ============================================================================

class InstanceTooLargeError(SmtiException):
    """Raised when exhaustive enumeration is requested beyond its size guard"""
    def __init__(self, n: int, limit: int):
        super().__init__(
            message=f"Instance size n={n} exceeds brute-force limit {limit}",
            details={"n": n, "limit": limit}
        )


class BenchConfigError(SmtiException):
    """Raised when a benchmark configuration file violates its schema"""
    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message, details=details)


class InputReadError(SmtiException):
    """Raised when an input file cannot be read"""
    def __init__(self, path: str, error: str):
        super().__init__(
            message=f"Cannot read {path}: {error}",
            details={"path": path, "error": error}
        )


class OutputWriteError(SmtiException):
    """Raised when an output file or directory cannot be written"""
    def __init__(self, path: str, error: str):
        super().__init__(
            message=f"Cannot write {path}",
            details={"path": path, "error": error}
        )
