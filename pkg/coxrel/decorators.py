"""
Decorators and helper functions shared by the library and the CLI
"""

import functools
import logging
import time
from typing import Any, Callable

from .errors import CapacityError, CoxrelError

logger = logging.getLogger("coxrel")

EXIT_OK = 0
EXIT_INPUT_ERROR = 2
EXIT_CAPACITY = 3


# ============================================================================
# Timing
# ============================================================================

def log_execution_time(func: Callable) -> Callable:
    """
    Decorator that logs execution time of a function at debug level

    Usage:
        @log_execution_time
        def decide(matrix):
            ...
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        start_time = time.perf_counter()
        result = func(*args, **kwargs)
        duration = (time.perf_counter() - start_time) * 1000
        logger.debug(f"{func.__name__} executed in {duration:.2f}ms")
        return result

    return wrapper


# ============================================================================
# Error Handling
# ============================================================================

def exit_status(error: CoxrelError) -> int:
    """Capacity errors map to 3, every other CoxrelError to 2"""
    return EXIT_CAPACITY if isinstance(error, CapacityError) else EXIT_INPUT_ERROR


def handle_exceptions(func: Callable[..., int]) -> Callable[..., int]:
    """
    Decorator for command handlers: turns coxrel errors into exit statuses

    The handler's own return value is passed through unchanged.
    """
    @functools.wraps(func)
    def wrapper(*args, **kwargs) -> int:
        try:
            return func(*args, **kwargs)
        except CapacityError as e:
            logger.error(f"Capacity exceeded in {func.__name__}: {e}")
            return exit_status(e)
        except CoxrelError as e:
            logger.error(f"Input error in {func.__name__}: {e}")
            return exit_status(e)

    return wrapper


# ============================================================================
# Helper Functions
# ============================================================================

def format_duration(seconds: float) -> str:
    """
    Format a duration for human-readable reports

    Args:
        seconds: Duration in seconds

    Returns:
        Formatted string (e.g., "840ms" or "2.31s")
    """
    if not seconds or seconds < 0:
        return "0ms"
    if seconds < 1:
        return f"{seconds * 1000:.0f}ms"
    return f"{seconds:.2f}s"


def error_payload(code: int, message: str, data: Any = None) -> dict:
    """
    Create a standardized error payload for --json output

    Args:
        code: Exit status the CLI returns
        message: Error message
        data: Optional extra data

    Returns:
        Dictionary with error details
    """
    return {
        "data": data,
        "code": code,
        "message": message,
        "success": False,
    }
