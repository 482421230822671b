"""
Logging for the action diagnosis toolkit.

Everything logs below the ``action_diagnosis`` namespace. ``setup_logging``
attaches a rotating file handler (plain or JSON lines) and a stderr
console handler to that namespace only, so library users who never call
it keep their own logging untouched.
"""

import functools
import json
import logging
import logging.config
import re
import time
from pathlib import Path
from typing import Any, Callable, Dict, Optional, TypeVar

LOGGER_NAMESPACE = "action_diagnosis"

F = TypeVar("F", bound=Callable[..., Any])

_SIZE_UNITS = {"": 1, "K": 1024, "M": 1024 ** 2, "G": 1024 ** 3}

FORMATTERS: Dict[str, Dict[str, str]] = {
    'detailed': {
        'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        'datefmt': '%Y-%m-%d %H:%M:%S'
    },
    'console': {
        'format': '%(levelname)s - %(message)s'
    },
    'json': {
        '()': 'pythonjsonlogger.jsonlogger.JsonFormatter',
        'format': '%(asctime)s %(name)s %(levelname)s %(message)s',
        'datefmt': '%Y-%m-%d %H:%M:%S'
    }
}


def setup_logging(log_level: str = "INFO",
                  log_file: Optional[str] = "logs/action_diagnosis.log",
                  max_file_size: str = "10MB",
                  backup_count: int = 5,
                  console_output: bool = True,
                  json_format: bool = False) -> None:
    """
    Configure the package loggers.

    Args:
        log_level: DEBUG, INFO, WARNING, ERROR or CRITICAL
        log_file: Rotating log file, or None for console only
        max_file_size: Rotation size such as '10MB' or '512K'
        backup_count: Rotated files kept
        console_output: Also log to stderr
        json_format: Write the file log as JSON lines
    """
    handlers: Dict[str, Dict[str, Any]] = {}
    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        handlers['file'] = {
            'class': 'logging.handlers.RotatingFileHandler',
            'filename': str(log_path),
            'maxBytes': parse_file_size(max_file_size),
            'backupCount': backup_count,
            'formatter': 'json' if json_format else 'detailed',
            'level': log_level
        }
    if console_output:
        handlers['console'] = {
            'class': 'logging.StreamHandler',
            'formatter': 'console',
            'level': log_level,
            'stream': 'ext://sys.stderr'
        }

    logging.config.dictConfig({
        'version': 1,
        'disable_existing_loggers': False,
        'formatters': {name: dict(fmt) for name, fmt in FORMATTERS.items()},
        'handlers': handlers,
        'loggers': {
            LOGGER_NAMESPACE: {
                'level': log_level,
                'handlers': list(handlers),
                'propagate': False
            }
        }
    })
    get_logger('setup').info(f"Logging at {log_level}, file: {log_file or 'none'}")


def parse_file_size(size: str) -> int:
    """
    Bytes in a size such as '10MB', '1.5G' or '4096'.

    Raises:
        ValueError: On an unreadable size
    """
    match = re.fullmatch(r"\s*(\d+(?:\.\d+)?)\s*([KMG]?)B?\s*", size.upper())
    if not match:
        raise ValueError(f"Unreadable file size: {size!r}")
    return int(float(match.group(1)) * _SIZE_UNITS[match.group(2)])


def get_logger(name: str) -> logging.Logger:
    """Logger below the package namespace; ``__name__`` passes through unchanged."""
    if name.startswith(LOGGER_NAMESPACE):
        return logging.getLogger(name)
    return logging.getLogger(f'{LOGGER_NAMESPACE}.{name}')


class StructuredLogger:
    """Writes ``message | key=value | ...`` lines, used for per-row progress."""

    def __init__(self, name: str):
        self.logger = get_logger(name)

    def debug(self, message: str, **fields: Any) -> None:
        self._log(logging.DEBUG, message, fields)

    def info(self, message: str, **fields: Any) -> None:
        self._log(logging.INFO, message, fields)

    def warning(self, message: str, **fields: Any) -> None:
        self._log(logging.WARNING, message, fields)

    def _log(self, level: int, message: str, fields: Dict[str, Any]) -> None:
        if not self.logger.isEnabledFor(level):
            return
        parts = [message] + [f"{key}={value}" for key, value in fields.items()]
        self.logger.log(level, " | ".join(parts))


def log_performance(func: F) -> F:
    """
    Log the wall time of a pipeline stage at DEBUG, or its failure at ERROR.

    The exception is re-raised unchanged.
    """
    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        logger = get_logger(func.__module__)
        start = time.perf_counter()
        try:
            result = func(*args, **kwargs)
        except Exception as e:
            logger.error(f"Performance: {func.__name__} failed after "
                         f"{time.perf_counter() - start:.3f}s - {e}")
            raise
        logger.debug(f"Performance: {func.__name__} completed in "
                     f"{time.perf_counter() - start:.3f}s")
        return result

    return wrapper  # type: ignore[return-value]


class ErrorLogger:
    """Errors with their context, logged as one JSON payload per record."""

    def __init__(self, name: str = "error"):
        self.logger = get_logger(name)

    def log_error_with_context(self, error: Exception, component: str,
                               context: Dict[str, Any]) -> None:
        payload: Dict[str, Any] = {
            "event": "error_with_context",
            "component": component,
            "error_type": type(error).__name__,
            "error_message": str(error),
            "context": context,
        }
        error_code = getattr(error, 'error_code', None)
        if error_code is not None:
            payload["error_code"] = error_code
        self.logger.error(f"Error with Context: {json.dumps(payload, default=str)}")
