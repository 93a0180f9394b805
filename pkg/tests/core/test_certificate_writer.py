"""Tests for core/certificate_writer.py."""

import pytest

from torsioncert.core.certificate_writer import (
    CertificateWriter,
    atomic_write_text,
    body_digest,
)
from torsioncert.core.constants import CERTIFICATE_FORMAT_ID, MANIFEST_FORMAT_ID
from torsioncert.core.errors import InvalidInputError
from torsioncert.core.models import RunManifest, TaskRecord, TaskStatus, Verdict


class TestCertificateText:
    def test_sections_in_order(self, sample_certificate):
        lines = CertificateWriter.certificate_lines(sample_certificate)
        assert lines[0] == f"format = {CERTIFICATE_FORMAT_ID}"
        headers = [line for line in lines if line.startswith("# =======")]
        assert headers == [
            "# ======= Task =======",
            "# ======= Recipes =======",
            "# ======= Evidence =======",
            "# ======= Conditions =======",
            "# ======= Verdict =======",
        ]
        assert "condition.degree_bound = holds ; 2d = 6 < p" in lines
        assert "condition.condition3 = holds" in lines

    def test_digest_line_last(self, sample_certificate):
        text = CertificateWriter.render_certificate(sample_certificate)
        last = text.rstrip("\n").split("\n")[-1]
        lines = CertificateWriter.certificate_lines(sample_certificate)
        assert last == f"body_sha256 = {body_digest(lines)}"

    def test_digest_is_deterministic(self, sample_certificate):
        first = CertificateWriter.render_certificate(sample_certificate)
        assert CertificateWriter.render_certificate(sample_certificate) == first

    def test_digest_ignores_volatile_lines(self):
        assert body_digest(["a = 1", "seconds = 3.2"]) == body_digest(["a = 1", "seconds = 9"])
        assert body_digest(["a = 1"]) != body_digest(["a = 2"])


class TestWrite:
    def test_write_certificate(self, sample_certificate, output_dir):
        path = CertificateWriter.write_certificate(sample_certificate, output_dir)
        assert path == output_dir / "d3_p00043.cert"
        assert path.read_text().startswith(f"format = {CERTIFICATE_FORMAT_ID}")

    def test_rejects_file_as_directory(self, sample_certificate, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("")
        with pytest.raises(InvalidInputError):
            CertificateWriter.write_certificate(sample_certificate, blocker)

    def test_atomic_write_leaves_no_temp(self, tmp_path):
        target = tmp_path / "nested" / "out.txt"
        atomic_write_text("content", target)
        assert target.read_text() == "content"
        assert [p.name for p in target.parent.iterdir()] == ["out.txt"]


def test_manifest(tmp_path):
    manifest = RunManifest(version="0.1.0", command="exclude", parameters={"d": "7"})
    manifest.tasks += [
        TaskRecord(7, 199, TaskStatus.OK, Verdict.INCONCLUSIVE, 1.5, "d7_p00199.cert"),
        TaskRecord(7, 197, TaskStatus.OK, Verdict.EXCLUDED, 2.25, "d7_p00197.cert"),
    ]
    path = CertificateWriter.write_manifest(manifest, tmp_path / "manifest.txt")
    lines = path.read_text().splitlines()
    assert lines[0] == f"format = {MANIFEST_FORMAT_ID}"
    assert "d = 7" in lines
    assert "excluded = 1" in lines
    tasks = [line for line in lines if line.startswith("task.")]
    assert tasks[0].startswith("task.d7.p197 = status=ok verdict=excluded")
    assert "seconds=2.25" in tasks[0]
