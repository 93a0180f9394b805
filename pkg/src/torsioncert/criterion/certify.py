"""Assemble exclusion certificates for (d, p) and replay them."""

import re
from dataclasses import dataclass, replace
from typing import List, Optional, Tuple

from torsioncert.core.cache_manager import LevelCache
from torsioncert.core.config_manager import RunConfig
from torsioncert.core.constants import (
    KNOWN_S_SETS,
    MAX_DEGREE,
    T1_SEARCH_ENVELOPE,
    T1_CANDIDATE_BUDGET,
    T2_SEARCH_PRIMES,
    X_MU_EXCEPTIONS,
)
from torsioncert.core.errors import (
    HeckeSpanError,
    InternalConsistencyError,
    InvalidInputError,
    WindingElementUnavailable,
)
from torsioncert.core.logging_config import get_logger
from torsioncert.core.validators import InputValidator
from torsioncert.core.models import (
    ConditionResult,
    CriterionVariant,
    ExclusionCertificate,
    ModelKind,
    RankEvidence,
    Verdict,
)
from torsioncert.criterion.hecke_lattice import Level, WindingAnnihilator, winding_annihilator
from torsioncert.criterion.kamienny import (
    kamienny_check_H,
    kamienny_check_H_fast,
    kamienny_check_x0,
)
from torsioncert.criterion.killers import t1_candidates, t1_from_polynomial, t2_element
from torsioncert.modsym.hecke import HeckeElement
from torsioncert.pointcount.waterhouse import cusp_field_condition, waterhouse_empty

logger = get_logger(__name__)

_PAIR = re.compile(r"^ann\[(\d+)\]([+-])ann\[(\d+)\]$")
_SINGLE = re.compile(r"^ann\[(\d+)\]$")
_FACTOR = re.compile(r"^factor\(T(\d+)\)$")
_MULTIPLE = re.compile(r"^T(\d+)\*ann\[(\d+)\]$")


@dataclass(frozen=True)
class SearchOptions:
    """Search envelope for (t1, t2) and the rank check to use."""

    t1_budget: int = T1_CANDIDATE_BUDGET
    t2_primes: Tuple[int, ...] = T2_SEARCH_PRIMES
    fast: bool = False
    factor_recipe: bool = False

    @classmethod
    def from_config(cls, config: RunConfig, fast: bool = False) -> "SearchOptions":
        return cls(
            t1_budget=config.t1_budget,
            t2_primes=config.t2_primes,
            fast=fast,
            factor_recipe=config.factorization_enabled,
        )


def variant_for(model: ModelKind, fast: bool) -> CriterionVariant:
    if model is ModelKind.X0:
        return CriterionVariant.KAMIENNY_X0
    return CriterionVariant.KAMIENNY_H_FAST if fast else CriterionVariant.KAMIENNY_H


def run_check(
    level: Level, d: int, variant: CriterionVariant, t1: HeckeElement, t2: HeckeElement
) -> Tuple[bool, RankEvidence]:
    """Run one rank check on t = t1 t2."""
    if variant is CriterionVariant.KAMIENNY_X0:
        return kamienny_check_x0(level, d, t1, t2)
    t = t1 @ t2
    if variant is CriterionVariant.KAMIENNY_H_FAST:
        return kamienny_check_H_fast(level, d, t)
    return kamienny_check_H(level, d, t)


def condition3_result(p: int, d: int, ell: int = 2) -> ConditionResult:
    """Y_1(p)(F_{2^d'}) empty and no extra cusps for every d' <= d."""
    if p < 5:
        return ConditionResult("condition3", False, f"p = {p} is below 5")
    failing = [
        k for k in range(1, d + 1)
        if not (waterhouse_empty(p, ell, k) and cusp_field_condition(p, ell, k))
    ]
    if failing:
        return ConditionResult("condition3", False, f"fails at d' = {','.join(map(str, failing))}")
    return ConditionResult("condition3", True, f"l = {ell}, d' = 1..{d}")


def _candidates(
    level: Level, annihilator: WindingAnnihilator, options: SearchOptions
) -> List[HeckeElement]:
    found: List[HeckeElement] = []
    if options.factor_recipe:
        low, high = T1_SEARCH_ENVELOPE
        for n in range(low, high + 1):
            if n % level.p == 0:
                continue
            t1 = t1_from_polynomial(level, level.hecke(n), annihilator)
            if t1 is not None:
                found.append(t1)
    return found + t1_candidates(annihilator, options.t1_budget)


def exclude_prime(
    p: int,
    d: int,
    model: ModelKind = ModelKind.X0,
    subgroup: Tuple[int, ...] = (),
    options: Optional[SearchOptions] = None,
    cache: Optional[LevelCache] = None,
) -> ExclusionCertificate:
    """Try to exclude p from S(d) with the formal-immersion criterion.

    The verdict is EXCLUDED only if 2d < p, the point-count condition holds,
    some t1 kills A_e and some (t1, t2) passes the rank check.

    Raises:
        InvalidInputError: If p is not prime or d is outside 1..MAX_DEGREE
        InternalConsistencyError: If a prime of a known S(d) would be excluded
    """
    InputValidator.require(InputValidator.validate_prime(p, "p"))
    InputValidator.require(InputValidator.validate_range(d, 1, MAX_DEGREE, "d"))
    options = options or SearchOptions()
    variant = variant_for(model, options.fast)
    cert = ExclusionCertificate(
        d=d,
        p=p,
        model=model,
        subgroup=tuple(subgroup) if model is ModelKind.XMU else (),
        variant=variant,
        cusp_labels="inf-cusps of the mu-model" if model is ModelKind.XMU else "oo of X_0(p)",
    )
    if 2 * d >= p:
        cert.conditions.append(ConditionResult("degree_bound", False, f"2d = {2 * d} >= p"))
        cert.finalize()
        return cert
    cert.conditions.append(ConditionResult("degree_bound", True, f"2d = {2 * d} < p"))
    cert.conditions.append(condition3_result(p, d))

    level = Level(p, model, subgroup)
    if cache is not None:
        cache.attach(level.space)
    try:
        annihilator = winding_annihilator(level)
    except (WindingElementUnavailable, HeckeSpanError) as e:
        logger.warning("p=%s: %s", p, e)
        cert.conditions.append(ConditionResult("t1_annihilates_Ae", False, str(e)))
        cert.finalize()
        return cert

    candidates = _candidates(level, annihilator, options)
    cert.conditions.append(
        ConditionResult(
            "t1_annihilates_Ae",
            bool(candidates),
            f"rank A_e = {len(annihilator.ae_coefficients)}, "
            f"rank Ann(A_e) = {len(annihilator.ann_coefficients)}, "
            f"{len(candidates)} candidates",
        )
    )
    if candidates:
        _search(cert, level, candidates, options, variant)
    if cache is not None:
        cache.store(level.space)

    cert.finalize()
    if cert.verdict is Verdict.EXCLUDED and p in KNOWN_S_SETS.get(d, frozenset()):
        raise InternalConsistencyError(f"p = {p} lies in S({d}) but was marked excluded")
    if model is ModelKind.XMU and not cert.subgroup:
        note = xmu_search_note(d, p, cert.verdict)
        if note:
            logger.warning("d=%s p=%s: %s", d, p, note)
    logger.info("d=%s p=%s %s: %s", d, p, model.value, cert.verdict.value)
    return cert


def xmu_search_note(d: int, p: int, verdict: Verdict) -> Optional[str]:
    """Compare an X_H verdict with the published (t1, t2) search; None when they agree.

    Primes with 2d >= p are never expected to pass and give no note.
    """
    if 2 * d >= p or d not in X_MU_EXCEPTIONS:
        return None
    listed = p in X_MU_EXCEPTIONS[d]
    if verdict is Verdict.EXCLUDED and listed:
        return "excluded, but no pair passed in the published search"
    if verdict is Verdict.INCONCLUSIVE and not listed:
        return "inconclusive, but the published search found a passing pair"
    return None


def _search(
    cert: ExclusionCertificate,
    level: Level,
    candidates: List[HeckeElement],
    options: SearchOptions,
    variant: CriterionVariant,
) -> None:
    last: Optional[RankEvidence] = None
    tried = 0
    for t1 in candidates:
        for q in options.t2_primes:
            if q == level.p:
                continue
            t2 = t2_element(level, q)
            passed, evidence = run_check(level, cert.d, variant, t1, t2)
            tried += 1
            last = evidence
            if passed:
                cert.t1_recipe, cert.t2_recipe, cert.t2_prime = t1.name, t2.name, q
                cert.evidence = evidence
                cert.conditions.append(
                    ConditionResult("kamienny", True, f"{variant.value} after {tried} pairs")
                )
                return
    cert.evidence = last
    cert.conditions.append(
        ConditionResult("kamienny", False, f"no pair among {tried} passed {variant.value}")
    )


def resolve_t1(level: Level, annihilator: WindingAnnihilator, recipe: str) -> HeckeElement:
    """Rebuild t1 from its certificate recipe.

    Raises:
        InvalidInputError: If the recipe is not understood or out of range
    """
    basis = annihilator.ann
    try:
        if match := _SINGLE.match(recipe):
            return basis[int(match.group(1))]
        if match := _PAIR.match(recipe):
            i, sign, j = int(match.group(1)), match.group(2), int(match.group(3))
            combined = basis[i] + basis[j] if sign == "+" else basis[i] - basis[j]
            return combined.renamed(recipe)
        if match := _MULTIPLE.match(recipe):
            n, i = int(match.group(1)), int(match.group(2))
            return (level.hecke(n) @ basis[i]).renamed(recipe)
    except IndexError as e:
        raise InvalidInputError(f"t1 recipe {recipe!r} outside Ann(A_e) basis") from e
    if match := _FACTOR.match(recipe):
        t1 = t1_from_polynomial(level, level.hecke(int(match.group(1))), annihilator)
        if t1 is None:
            raise InvalidInputError(f"t1 recipe {recipe!r} gives no valid operator")
        return t1
    raise InvalidInputError(f"unknown t1 recipe {recipe!r}")


@dataclass(frozen=True)
class ReplayResult:
    """Outcome of recomputing a certificate's rank evidence."""

    matches: bool
    evidence: Optional[RankEvidence]
    message: str = ""


def replay_certificate(cert: ExclusionCertificate) -> ReplayResult:
    """Recompute the rank check recorded in a certificate and compare the evidence."""
    if cert.t2_prime is None or cert.t1_recipe == "none" or cert.variant is None:
        return ReplayResult(True, None, "no recorded (t1, t2) pair")
    level = Level(cert.p, cert.model, cert.subgroup)
    annihilator = winding_annihilator(level)
    t1 = resolve_t1(level, annihilator, cert.t1_recipe)
    t2 = t2_element(level, cert.t2_prime)
    _, evidence = run_check(level, cert.d, cert.variant, t1, t2)
    recorded = cert.evidence
    if recorded is None:
        return ReplayResult(False, evidence, "certificate carries no evidence")
    matches = replace(evidence, notes="") == replace(recorded, notes="")
    message = "" if matches else f"recorded {recorded}, recomputed {evidence}"
    return ReplayResult(matches, evidence, message)
