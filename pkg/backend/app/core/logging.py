"""
Structured logging for lab runs.

Events go to stderr; stdout belongs to reports. Every event carries the
lab version, and the experiment id and seed while a run is active.
"""
import logging
import sys
from contextlib import contextmanager
from typing import Any, Iterator

import numpy as np
import structlog
from structlog.typing import EventDict, WrappedLogger

from .config import settings


def add_lab_context(
    logger: WrappedLogger, method_name: str, event_dict: EventDict
) -> EventDict:
    event_dict["lab"] = settings.PROJECT_NAME
    event_dict["version"] = settings.VERSION
    if settings.ENVIRONMENT != "development":
        event_dict["environment"] = settings.ENVIRONMENT
    return event_dict


def coerce_numpy(
    logger: WrappedLogger, method_name: str, event_dict: EventDict
) -> EventDict:
    """numpy scalars and small arrays become plain Python values."""
    for key, value in event_dict.items():
        if isinstance(value, np.generic):
            event_dict[key] = value.item()
        elif isinstance(value, np.ndarray):
            event_dict[key] = value.tolist() if value.size <= 16 else f"<array shape={value.shape}>"
    return event_dict


def setup_logging() -> None:
    """
    Configure structlog over the stdlib root logger.

    JSON lines outside development, the console renderer otherwise.
    """
    shared_processors = [
        structlog.contextvars.merge_contextvars,
        add_lab_context,
        coerce_numpy,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.add_log_level,
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
    ]

    if settings.ENVIRONMENT == "development":
        renderer: Any = structlog.dev.ConsoleRenderer(colors=sys.stderr.isatty())
    else:
        shared_processors.append(structlog.processors.dict_tracebacks)
        renderer = structlog.processors.JSONRenderer()

    structlog.configure(
        processors=shared_processors + [renderer],
        wrapper_class=structlog.stdlib.BoundLogger,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )

    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=logging.DEBUG if settings.DEBUG else logging.INFO,
    )


@contextmanager
def run_context(**values: Any) -> Iterator[None]:
    """Bind run-level keys (experiment, seed, ...) to every event inside the block."""
    with structlog.contextvars.bound_contextvars(**values):
        yield


def get_logger(name: str) -> structlog.stdlib.BoundLogger:
    return structlog.get_logger(name)


setup_logging()
