"""Parse certificate files written by CertificateWriter."""

from pathlib import Path
from typing import Dict, List, Optional, Tuple

from torsioncert.core.constants import CERTIFICATE_FORMAT_ID
from torsioncert.core.errors import InvalidInputError
from torsioncert.core.logging_config import get_logger
from torsioncert.core.models import (
    ConditionResult,
    CriterionVariant,
    ExclusionCertificate,
    ModelKind,
    RankEvidence,
    Verdict,
)
from torsioncert.core.certificate_writer import body_digest

logger = get_logger(__name__)


def _optional_int(value: str) -> Optional[int]:
    return None if value == "none" else int(value)


class CertificateParser:
    """Read ``key = value`` certificates back into ExclusionCertificate objects."""

    @staticmethod
    def parse_file(file_path: Path, verify_digest: bool = True) -> ExclusionCertificate:
        """Parse a certificate file.

        Args:
            file_path: Path to a ``.cert`` file
            verify_digest: Check ``body_sha256`` against the body

        Raises:
            InvalidInputError: If the file is missing, malformed or fails the digest check
        """
        if not file_path.is_file():
            raise InvalidInputError(f"No certificate at {file_path}")
        with open(file_path, "r", encoding="utf-8") as f:
            content = f.read()
        return CertificateParser.parse_string(content, verify_digest)

    @staticmethod
    def _split(content: str) -> Tuple[Dict[str, str], Dict[str, str], List[str]]:
        """Plain fields, condition fields and the body lines used for the digest."""
        fields: Dict[str, str] = {}
        conditions: Dict[str, str] = {}
        body: List[str] = []
        for line in content.split("\n"):
            stripped = line.strip()
            if stripped.startswith("body_sha256"):
                fields["body_sha256"] = stripped.split("=", 1)[1].strip()
                break
            body.append(line)
            if not stripped or stripped.startswith("#"):
                continue
            if " = " not in stripped:
                raise InvalidInputError(f"Malformed certificate line: {stripped!r}")
            key, value = (part.strip() for part in stripped.split(" = ", 1))
            if key.startswith("condition."):
                conditions[key[len("condition."):]] = value
            else:
                fields[key] = value
        while body and not body[-1].strip():
            body.pop()
        return fields, conditions, body

    @staticmethod
    def parse_string(content: str, verify_digest: bool = True) -> ExclusionCertificate:
        """Parse certificate text.

        Raises:
            InvalidInputError: If required fields are missing or the digest does not match
        """
        fields, conditions, body = CertificateParser._split(content)
        if fields.get("format") != CERTIFICATE_FORMAT_ID:
            raise InvalidInputError(f"Unknown certificate format {fields.get('format')!r}")
        if verify_digest:
            recorded = fields.get("body_sha256")
            if recorded is None or recorded != body_digest(body):
                raise InvalidInputError("Certificate body does not match body_sha256")
        try:
            variant = fields["variant"]
            cert = ExclusionCertificate(
                d=int(fields["d"]),
                p=int(fields["p"]),
                model=ModelKind(fields["model"]),
                subgroup=tuple(
                    int(g) for g in fields["subgroup"].split(",") if fields["subgroup"] != "none"
                ),
                variant=None if variant == "none" else CriterionVariant(variant),
                t1_recipe=fields["t1"],
                t2_recipe=fields["t2"],
                t2_prime=_optional_int(fields["t2_prime"]),
                cusp_labels=fields["cusp_labels"],
            )
            if fields.get("evidence") != "none":
                notes = fields["evidence_notes"]
                cert.evidence = RankEvidence(
                    ell=int(fields["ell"]),
                    rows=int(fields["rows"]),
                    cols=int(fields["cols"]),
                    rank=int(fields["rank"]),
                    required=int(fields["required"]),
                    cusp_sums=int(fields["cusp_sums"]),
                    kernel_dimension=_optional_int(fields["kernel_dimension"]),
                    min_dependency_weight=_optional_int(fields["min_dependency_weight"]),
                    notes="" if notes == "none" else notes,
                )
            for name, value in conditions.items():
                state, _, detail = value.partition(" ; ")
                cert.conditions.append(ConditionResult(name, state == "holds", detail))
            cert.verdict = Verdict(fields["verdict"])
            failing = fields["failing_condition"]
            cert.failing_condition = "" if failing == "none" else failing
            cert.method_note = fields.get("method_note", cert.method_note)
        except KeyError as e:
            raise InvalidInputError(f"Certificate is missing field {e}") from e
        except ValueError as e:
            raise InvalidInputError(f"Certificate has an invalid value: {e}") from e
        return cert
