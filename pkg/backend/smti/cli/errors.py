"""
CLI Error Handler

Maps exceptions to one-line stderr messages and process exit codes.
Integrates with structured logging so failures carry the run id.
"""
import sys

from pydantic import ValidationError

from smti.core.exceptions import SmtiException
from smti.core.logging import get_logger, get_run_id

logger = get_logger(__name__)


def handle_smti_exception(exc: SmtiException) -> int:
    """
    Handle custom solver exceptions.

    Args:
        exc: SmtiException instance

    Returns:
        Exit code carried by the exception
    """
    logger.error(
        f"{exc.__class__.__name__}: {exc.message}",
        extra={"extra_fields": {
            "exception_type": exc.__class__.__name__,
            "exit_code": exc.exit_code,
            "details": exc.details,
            "run_id": get_run_id()
        }}
    )
    print(f"error: {exc.__class__.__name__}: {exc.message}", file=sys.stderr)
    return exc.exit_code


def handle_validation_error(exc: ValidationError) -> int:
    """Parameter records rejected their arguments (p1 = 1.0, negative seed, ...)"""
    problems = "; ".join(
        f"{'.'.join(str(part) for part in error['loc'])}: {error['msg']}" for error in exc.errors()
    )
    logger.warning(
        "Parameter validation failed",
        extra={"extra_fields": {"error_count": exc.error_count(), "errors": exc.errors()}}
    )
    print(f"error: ValidationError: {problems}", file=sys.stderr)
    return 1
