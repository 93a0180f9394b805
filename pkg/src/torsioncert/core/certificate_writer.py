"""Certificate and manifest writer with atomic writes."""

__all__ = ["CertificateWriter", "atomic_write_text", "body_digest"]

import hashlib
import os
import tempfile
from pathlib import Path
from typing import Iterable, List, Tuple

from torsioncert import __version__
from torsioncert.core.constants import CERTIFICATE_FORMAT_ID, MANIFEST_FORMAT_ID
from torsioncert.core.errors import InvalidInputError
from torsioncert.core.logging_config import get_logger
from torsioncert.core.models import ExclusionCertificate, RunManifest
from torsioncert.core.validators import PathValidator

logger = get_logger(__name__)

# Lines starting with these keys are left out of the body digest.
VOLATILE_KEYS: Tuple[str, ...] = ("body_sha256", "written_at", "seconds")


def atomic_write_text(content: str, output_path: Path, prefix: str = ".torsioncert_tmp_") -> None:
    """Write text to ``output_path`` through a temp file in the same directory.

    Raises:
        IOError: If the write fails; the temp file is removed
    """
    output_path.parent.mkdir(parents=True, exist_ok=True)
    temp_fd, temp_path = tempfile.mkstemp(dir=output_path.parent, prefix=prefix, suffix=".tmp")
    try:
        with os.fdopen(temp_fd, "w", encoding="utf-8") as f:
            f.write(content)
            f.flush()
            os.fsync(f.fileno())
        os.replace(temp_path, output_path)
    except Exception as e:
        try:
            os.unlink(temp_path)
        except OSError as cleanup_error:
            logger.debug("Failed to cleanup temp file %s: %s", temp_path, cleanup_error)
        raise IOError(f"Failed to write {output_path}: {e}")


def body_digest(lines: Iterable[str]) -> str:
    """sha256 of the certificate lines that do not vary between runs."""
    kept = [line for line in lines if line.split(" = ", 1)[0].strip() not in VOLATILE_KEYS]
    return hashlib.sha256("\n".join(kept).encode("utf-8")).hexdigest()


def _value(value: object) -> str:
    if value is None:
        return "none"
    if isinstance(value, (list, tuple)):
        return ",".join(str(v) for v in value) if value else "none"
    if hasattr(value, "value"):
        return str(getattr(value, "value"))
    return str(value)


class CertificateWriter:
    """Renders certificates and manifests as sectioned ``key = value`` text."""

    @staticmethod
    def certificate_lines(cert: ExclusionCertificate) -> List[str]:
        """Certificate body without the digest line.

        Args:
            cert: Finalized certificate

        Returns:
            Lines in section order: header, model, recipes, evidence, conditions
        """
        lines = [
            f"format = {CERTIFICATE_FORMAT_ID}",
            f"tool_version = {__version__}",
            "",
            "# ======= Task =======",
            f"d = {cert.d}",
            f"p = {cert.p}",
            f"model = {cert.model.value}",
            f"subgroup = {_value(cert.subgroup)}",
            f"cusp_labels = {cert.cusp_labels}",
            "",
            "# ======= Recipes =======",
            f"variant = {_value(cert.variant)}",
            f"t1 = {cert.t1_recipe}",
            f"t2 = {cert.t2_recipe}",
            f"t2_prime = {_value(cert.t2_prime)}",
        ]
        ev = cert.evidence
        lines += ["", "# ======= Evidence ======="]
        if ev is None:
            lines.append("evidence = none")
        else:
            lines += [
                f"ell = {ev.ell}",
                f"rows = {ev.rows}",
                f"cols = {ev.cols}",
                f"rank = {ev.rank}",
                f"required = {ev.required}",
                f"cusp_sums = {ev.cusp_sums}",
                f"kernel_dimension = {_value(ev.kernel_dimension)}",
                f"min_dependency_weight = {_value(ev.min_dependency_weight)}",
                f"evidence_notes = {ev.notes or 'none'}",
            ]
        lines += ["", "# ======= Conditions ======="]
        for condition in cert.conditions:
            state = "holds" if condition.holds else "fails"
            detail = f" ; {condition.detail}" if condition.detail else ""
            lines.append(f"condition.{condition.name} = {state}{detail}")
        lines += [
            "",
            "# ======= Verdict =======",
            f"verdict = {cert.verdict.value}",
            f"failing_condition = {cert.failing_condition or 'none'}",
            f"method_note = {cert.method_note}",
        ]
        return lines

    @staticmethod
    def render_certificate(cert: ExclusionCertificate) -> str:
        lines = CertificateWriter.certificate_lines(cert)
        return "\n".join(lines + ["", f"body_sha256 = {body_digest(lines)}", ""])

    @staticmethod
    def write_certificate(
        cert: ExclusionCertificate, output_dir: Path, skip_validation: bool = False
    ) -> Path:
        """Write ``<output_dir>/<label>.cert`` atomically.

        Raises:
            InvalidInputError: If the directory is not writable
            IOError: If the write fails
        """
        if not skip_validation:
            path_error = PathValidator.validate_write_dir(output_dir)
            if path_error:
                logger.warning("Output path validation failed: %s (%s)", output_dir, path_error)
                raise InvalidInputError(path_error)
        path = output_dir / f"{cert.label}.cert"
        atomic_write_text(CertificateWriter.render_certificate(cert), path)
        logger.debug("Wrote certificate %s", path)
        return path

    @staticmethod
    def render_manifest(manifest: RunManifest) -> str:
        counts = manifest.counts()
        lines = [
            f"format = {MANIFEST_FORMAT_ID}",
            f"tool_version = {manifest.version}",
            f"command = {manifest.command}",
            "",
            "# ======= Parameters =======",
        ]
        lines += [f"{key} = {value}" for key, value in sorted(manifest.parameters.items())]
        lines += ["", "# ======= Summary ======="]
        lines += [f"{key} = {value}" for key, value in counts.items()]
        lines += ["", "# ======= Tasks ======="]
        for task in sorted(manifest.tasks, key=lambda t: (t.d, t.p)):
            verdict = task.verdict.value if task.verdict else "none"
            fields = [
                f"status={task.status.value}",
                f"verdict={verdict}",
                f"certificate={task.certificate or 'none'}",
                f"seconds={task.seconds:.2f}",
            ]
            if task.message:
                fields.append(f"message={task.message}")
            lines.append(f"task.d{task.d}.p{task.p} = {' '.join(fields)}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def write_manifest(manifest: RunManifest, path: Path) -> Path:
        atomic_write_text(CertificateWriter.render_manifest(manifest), path)
        logger.info("Wrote manifest %s", path)
        return path
