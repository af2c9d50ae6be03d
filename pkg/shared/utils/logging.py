import logging
import sys
from typing import Optional

import structlog

from shared.utils.config import settings


def setup_logging(
    log_level: str = "WARNING",
    json_output: bool = False,
    service_name: str = "stm",
    stream: Optional[object] = None,
) -> structlog.BoundLogger:
    """
    Setup structured logging for the application.

    Logs go to stderr by default; stdout is reserved for command output.

    Args:
        log_level: Logging level
        json_output: Render JSON lines instead of key-value console output
        service_name: Name of the logger
        stream: Optional stream override (tests)

    Returns:
        Configured logger
    """
    renderer = (
        structlog.processors.JSONRenderer()
        if json_output
        else structlog.dev.ConsoleRenderer(colors=False)
    )

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            renderer,
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )

    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setFormatter(logging.Formatter("%(message)s"))
    root.addHandler(handler)
    root.setLevel(getattr(logging, log_level.upper(), logging.WARNING))

    return structlog.get_logger(service_name)


def set_log_level(log_level: str) -> None:
    """Change the root level after startup (CLI --log-level)."""
    logging.getLogger().setLevel(getattr(logging, log_level.upper(), logging.WARNING))


# Global logger instance
logger = setup_logging(
    log_level=settings.log_level,
    json_output=settings.log_json,
    service_name="stm",
)
