"""Tests for export/exporter.py."""

import pytest

from torsioncert.core.errors import InvalidInputError
from torsioncert.export import ReportExporter


def test_writes_and_creates_parent(tmp_path):
    target = tmp_path / "reports" / "table.txt"
    assert ReportExporter.export_text("d=3 M=29 PASS\n", target) == target
    assert target.read_text() == "d=3 M=29 PASS\n"
    assert not list(target.parent.glob(".torsioncert_report_*"))


def test_overwrites(tmp_path):
    target = tmp_path / "table.txt"
    target.write_text("old")
    ReportExporter.export_text("new", target)
    assert target.read_text() == "new"


def test_parent_is_a_file(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("")
    with pytest.raises(InvalidInputError, match="Not a directory"):
        ReportExporter.export_text("x", blocker / "table.txt")
