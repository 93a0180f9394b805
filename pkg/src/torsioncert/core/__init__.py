"""Models, configuration, validation, caching and writers shared by all commands."""

from .errors import (
    CacheError,
    HeckeSpanError,
    InternalConsistencyError,
    InvalidInputError,
    TorsionCertError,
    WindingElementUnavailable,
)
from .models import (
    ConditionResult,
    CriterionVariant,
    ExclusionCertificate,
    ModelKind,
    RankEvidence,
    RunManifest,
    TaskRecord,
    TaskStatus,
    Verdict,
)
from .config_manager import RunConfig, load_config
from .cache_manager import LevelCache
from .certificate_writer import CertificateWriter
from .validators import InputValidator, PathValidator
from .logging_config import setup_logging, get_logger

__all__ = [
    # Errors
    "CacheError",
    "HeckeSpanError",
    "InternalConsistencyError",
    "InvalidInputError",
    "TorsionCertError",
    "WindingElementUnavailable",
    # Data models
    "ConditionResult",
    "CriterionVariant",
    "ExclusionCertificate",
    "ModelKind",
    "RankEvidence",
    "RunManifest",
    "TaskRecord",
    "TaskStatus",
    "Verdict",
    # Configuration and persistence
    "RunConfig",
    "load_config",
    "LevelCache",
    "CertificateWriter",
    # Validation
    "InputValidator",
    "PathValidator",
    # Logging
    "setup_logging",
    "get_logger",
]
