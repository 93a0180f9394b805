"""Logging for torsioncert runs.

Modules ask ``get_logger(__name__)`` for a logger and never touch handlers;
``setup_logging`` installs them once per process (the CLI, then each worker of
a batch through its pool initializer). Every handler carries a ``TaskFilter``,
so lines emitted while a (d, p) task runs are stamped with ``[d=.. p=..]``.
"""

__all__ = [
    "setup_logging",
    "get_logger",
    "parse_level",
    "task_context",
    "TaskFilter",
    "DEFAULT_FORMAT",
    "DEBUG_FORMAT",
    "QUIET_LOGGERS",
]

import logging
import sys
from contextlib import contextmanager
from contextvars import ContextVar
from typing import Iterator, Optional

DEFAULT_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(task)s%(message)s'

# process id separates interleaved worker output
DEBUG_FORMAT = (
    '%(asctime)s - %(process)d - %(name)s:%(lineno)d - %(levelname)s - %(task)s%(message)s'
)

QUIET_LOGGERS = ('sympy',)
"""Third-party loggers held at WARNING; sympy's polys code logs every factorization."""

_current_task: ContextVar[str] = ContextVar('torsioncert_task', default='')


class TaskFilter(logging.Filter):
    """Adds ``record.task``: the running (d, p) label, or an empty string."""

    def filter(self, record: logging.LogRecord) -> bool:
        record.task = _current_task.get()
        return True


@contextmanager
def task_context(d: int, p: int) -> Iterator[None]:
    """Stamp log lines emitted inside the block with ``[d=<d> p=<p>]``."""
    token = _current_task.set(f"[d={d} p={p}] ")
    try:
        yield
    finally:
        _current_task.reset(token)


def setup_logging(
    level: int = logging.INFO,
    log_file: Optional[str] = None,
    debug: bool = False
) -> None:
    """Install stderr (and optional file) handlers on the root logger.

    Replaces whatever handlers were there, so calling it again in a worker or a
    test reconfigures cleanly.

    Args:
        level: Root level; DEBUG shows per-operator and per-cusp-sum progress
        log_file: Also append to this file
        debug: Use DEBUG_FORMAT (process id and line numbers)
    """
    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    for handler in handlers:
        handler.addFilter(TaskFilter())

    logging.basicConfig(
        level=level,
        format=DEBUG_FORMAT if debug else DEFAULT_FORMAT,
        handlers=handlers,
        force=True,
    )
    for name in QUIET_LOGGERS:
        logging.getLogger(name).setLevel(logging.WARNING)

    logging.getLogger(__name__).debug(
        "Logging initialized at level %s", logging.getLevelName(level)
    )


def parse_level(name: str) -> int:
    """Translate a level name such as ``"debug"`` into a logging constant.

    Unknown names fall back to INFO.
    """
    value = logging.getLevelName(name.strip().upper())
    return value if isinstance(value, int) else logging.INFO


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)
