"""Tests for core/logging_config.py."""

import logging

from torsioncert.core.logging_config import (
    TaskFilter,
    get_logger,
    parse_level,
    setup_logging,
    task_context,
)


def test_parse_level():
    assert parse_level("debug") == logging.DEBUG
    assert parse_level(" WARNING ") == logging.WARNING
    assert parse_level("chatty") == logging.INFO


def _flush():
    for handler in logging.getLogger().handlers:
        handler.flush()


def test_setup_logging_writes_file(tmp_path):
    log_file = tmp_path / "run.log"
    setup_logging(logging.DEBUG, str(log_file), debug=True)
    get_logger("torsioncert.test").debug("lattice rank %d", 15)
    _flush()
    assert "lattice rank 15" in log_file.read_text()
    assert logging.getLogger("sympy").level == logging.WARNING
    setup_logging(logging.WARNING)


def test_task_label_stamped_inside_context(tmp_path):
    log_file = tmp_path / "run.log"
    setup_logging(logging.INFO, str(log_file))
    logger = get_logger("torsioncert.test")
    with task_context(3, 19):
        logger.info("inside")
    logger.info("outside")
    _flush()
    lines = log_file.read_text().splitlines()
    assert lines[-2].endswith("[d=3 p=19] inside")
    assert lines[-1].endswith("INFO - outside")
    setup_logging(logging.WARNING)


def test_task_filter_resets_after_error():
    record = logging.LogRecord("x", logging.INFO, __file__, 1, "m", (), None)
    try:
        with task_context(7, 197):
            raise ValueError
    except ValueError:
        pass
    TaskFilter().filter(record)
    assert record.task == ""
