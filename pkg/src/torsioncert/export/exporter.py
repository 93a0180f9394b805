"""Write generated reports to disk."""

from pathlib import Path

from torsioncert.core.certificate_writer import atomic_write_text
from torsioncert.core.errors import InvalidInputError
from torsioncert.core.logging_config import get_logger
from torsioncert.core.validators import PathValidator

logger = get_logger(__name__)


class ReportExporter:
    """Atomically write report text produced by one of the generators."""

    @staticmethod
    def export_text(content: str, output_path: Path) -> Path:
        """
        Write ``content`` to ``output_path``.

        Raises:
            InvalidInputError: If the target directory is not writable
            IOError: If the write fails
        """
        path_error = PathValidator.validate_write_dir(output_path.parent)
        if path_error:
            raise InvalidInputError(path_error)
        atomic_write_text(content, output_path, prefix=".torsioncert_report_")
        logger.info("Wrote report %s", output_path)
        return output_path
