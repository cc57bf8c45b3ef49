import sys
from functools import wraps

import typer
from loguru import logger
from rich.console import Console

error_console = Console(stderr=True)


class AiryToolsError(RuntimeError):
    pass


class DomainError(AiryToolsError, ValueError):
    pass


class AiryOverflowError(AiryToolsError, OverflowError):
    pass


class ConvergenceError(AiryToolsError):
    pass


class BranchJumpError(AiryToolsError):
    pass


class StepFailure(AiryToolsError):
    pass


class SimplicityError(AiryToolsError):
    pass


class ContourOnZeroError(AiryToolsError):
    pass


class DegenerateScaleError(AiryToolsError):
    pass


class FrequencySolveError(AiryToolsError):
    pass


class EigenFailure(AiryToolsError):
    pass


class NearSpectrumError(AiryToolsError):
    pass


class DegenerateZeroError(AiryToolsError):
    pass


class NondegeneracyError(AiryToolsError):
    pass


class EmptyPerpSetError(AiryToolsError):
    pass


class GridResolutionError(AiryToolsError):
    pass


class QuadratureError(AiryToolsError):
    pass


def handle_exceptions():
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except (typer.Exit, typer.Abort, typer.BadParameter):
                raise
            except AiryToolsError as e:
                logger.debug(f"{type(e).__name__} raised in {func.__name__}")
                error_console.print(f"{type(e).__name__}: {e}", markup=False, highlight=False)
                sys.exit(1)
            except ValueError as e:
                error_console.print(f"Invalid argument: {e}", markup=False, highlight=False)
                sys.exit(2)
        return wrapper
    return decorator
