"""Data models shared by the criterion pipeline, the writers and the CLI."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple


class Verdict(Enum):
    """Outcome of a certification task.

    The criteria can only exclude a prime or fail to; there is no "p in S(d)" outcome.
    """

    EXCLUDED = "excluded"
    INCONCLUSIVE = "inconclusive"


class ModelKind(Enum):
    """Modular curve on which the formal-immersion criterion is checked."""

    X0 = "x0"  # X_0(p), the single cusp sum d*inf
    XMU = "xmu"  # X_mu(p)/H, all ordered sums of inf-cusps


class CriterionVariant(Enum):
    """Which rank check produced the evidence."""

    KAMIENNY_X0 = "kamienny-x0"
    KAMIENNY_H = "kamienny-h"
    KAMIENNY_H_FAST = "kamienny-h-fast"


class TaskStatus(Enum):
    """Driver-level status of one (d, p) task."""

    OK = "ok"
    ERROR = "error"


@dataclass(frozen=True)
class RankEvidence:
    """Mod-ell rank data backing an independence claim."""

    ell: int
    rows: int
    cols: int
    rank: int
    required: int
    cusp_sums: int = 1
    kernel_dimension: Optional[int] = None
    min_dependency_weight: Optional[int] = None
    notes: str = ""

    @property
    def independent(self) -> bool:
        """True when the recorded rank reaches the required count."""
        return self.rank >= self.required


@dataclass(frozen=True)
class ConditionResult:
    """One named condition of the exclusion theorem and whether it held."""

    name: str
    holds: bool
    detail: str = ""


@dataclass
class ExclusionCertificate:
    """Self-contained record of one exclusion attempt for (d, p).

    The verdict is EXCLUDED only if every entry of ``conditions`` holds.
    """

    d: int
    p: int
    model: ModelKind
    subgroup: Tuple[int, ...] = ()
    variant: Optional[CriterionVariant] = None
    t1_recipe: str = "none"
    t2_recipe: str = "none"
    t2_prime: Optional[int] = None
    evidence: Optional[RankEvidence] = None
    conditions: List[ConditionResult] = field(default_factory=list)
    verdict: Verdict = Verdict.INCONCLUSIVE
    failing_condition: str = ""
    cusp_labels: str = "inf-cusps of the mu-model"
    method_note: str = (
        "independence tested in End(H1 (x) F_2); a pass verifies the criterion, "
        "a failure means the criterion is not verified by this method"
    )

    def finalize(self) -> None:
        """Derive verdict and failing condition from the recorded conditions."""
        failing = [c.name for c in self.conditions if not c.holds]
        if self.conditions and not failing:
            self.verdict = Verdict.EXCLUDED
            self.failing_condition = ""
        else:
            self.verdict = Verdict.INCONCLUSIVE
            self.failing_condition = failing[0] if failing else "no conditions recorded"

    @property
    def label(self) -> str:
        """File stem used for this certificate, e.g. ``d7_p00197``."""
        return f"d{self.d}_p{self.p:05d}"


@dataclass
class TaskRecord:
    """Manifest line for one (d, p) task."""

    d: int
    p: int
    status: TaskStatus
    verdict: Optional[Verdict] = None
    seconds: float = 0.0
    certificate: str = ""
    message: str = ""


@dataclass
class RunManifest:
    """Everything needed to audit a batch run."""

    version: str
    command: str
    parameters: Dict[str, str] = field(default_factory=dict)
    tasks: List[TaskRecord] = field(default_factory=list)

    def counts(self) -> Dict[str, int]:
        """Return excluded / inconclusive / error counts."""
        result = {"excluded": 0, "inconclusive": 0, "error": 0}
        for task in self.tasks:
            if task.status is TaskStatus.ERROR:
                result["error"] += 1
            elif task.verdict is Verdict.EXCLUDED:
                result["excluded"] += 1
            else:
                result["inconclusive"] += 1
        return result
