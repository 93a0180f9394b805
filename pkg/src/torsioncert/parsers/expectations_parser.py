"""Parse expectation files: one ``d p verdict`` triple per line, ``#`` starts a comment."""

from pathlib import Path
from typing import Dict, Tuple

from torsioncert.core.errors import InvalidInputError
from torsioncert.core.logging_config import get_logger
from torsioncert.core.models import Verdict

logger = get_logger(__name__)

Expectations = Dict[Tuple[int, int], Verdict]


class ExpectationsParser:
    """Read the verdicts a batch run is expected to produce."""

    @staticmethod
    def parse_file(file_path: Path) -> Expectations:
        """
        Parse an expectations file.

        Raises:
            InvalidInputError: If the file is missing or a line is malformed
        """
        if not file_path.is_file():
            raise InvalidInputError(f"No expectations file at {file_path}")
        with open(file_path, "r", encoding="utf-8") as f:
            return ExpectationsParser.parse_string(f.read())

    @staticmethod
    def parse_string(content: str) -> Expectations:
        expectations: Expectations = {}
        for line_num, line in enumerate(content.split("\n"), start=1):
            stripped = line.split("#", 1)[0].strip()
            if not stripped:
                continue
            parts = stripped.split()
            if len(parts) != 3:
                raise InvalidInputError(f"line {line_num}: expected 'd p verdict', got {line!r}")
            try:
                d, p, verdict = int(parts[0]), int(parts[1]), Verdict(parts[2].lower())
            except ValueError as e:
                raise InvalidInputError(f"line {line_num}: {e}") from e
            if (d, p) in expectations:
                logger.warning("line %s: duplicate expectation for d=%s p=%s", line_num, d, p)
            expectations[(d, p)] = verdict
        return expectations
