"""Tests for criterion/certify.py: exclusion certificates and replay."""

import pytest

from torsioncert.core.config_manager import RunConfig
from torsioncert.core.errors import InvalidInputError
from torsioncert.core.models import CriterionVariant, ModelKind, Verdict
from torsioncert.criterion.certify import (
    SearchOptions,
    condition3_result,
    exclude_prime,
    replay_certificate,
    resolve_t1,
    variant_for,
    xmu_search_note,
)
from torsioncert.criterion.hecke_lattice import Level, winding_annihilator


class TestSearchOptions:
    def test_from_config(self):
        config = RunConfig(t1_budget=7, t2_primes=(3, 5), factor_oracle="sympy")
        options = SearchOptions.from_config(config, fast=True)
        assert options.t1_budget == 7
        assert options.t2_primes == (3, 5)
        assert options.fast and options.factor_recipe

    def test_variant_selection(self):
        assert variant_for(ModelKind.X0, True) is CriterionVariant.KAMIENNY_X0
        assert variant_for(ModelKind.XMU, True) is CriterionVariant.KAMIENNY_H_FAST
        assert variant_for(ModelKind.XMU, False) is CriterionVariant.KAMIENNY_H


class TestCondition3:
    def test_known_exception(self):
        assert not condition3_result(13, 3).holds

    def test_holds_beyond_bound(self):
        result = condition3_result(43, 3)
        assert result.holds
        assert result.name == "condition3"


class TestExcludePrime:
    """Verdicts on small primes where the answer is forced."""

    def test_degree_bound_fails(self):
        cert = exclude_prime(11, 6)
        assert cert.verdict is Verdict.INCONCLUSIVE
        assert cert.failing_condition == "degree_bound"

    def test_prime_of_s1(self):
        cert = exclude_prime(7, 3)
        assert cert.verdict is Verdict.INCONCLUSIVE

    def test_thirteen_at_degree_three(self):
        cert = exclude_prime(13, 3)
        assert cert.verdict is Verdict.INCONCLUSIVE
        assert cert.failing_condition == "condition3"

    def test_seventy_three_at_degree_six(self):
        cert = exclude_prime(73, 6, options=SearchOptions(t1_budget=2, t2_primes=(3,)))
        assert cert.verdict is Verdict.INCONCLUSIVE
        assert not next(c for c in cert.conditions if c.name == "condition3").holds

    def test_rejects_composite(self):
        with pytest.raises(InvalidInputError):
            exclude_prime(91, 3)

    @pytest.mark.parametrize("d", [0, 8, 26])
    def test_rejects_degree_outside_range(self, d):
        with pytest.raises(InvalidInputError):
            exclude_prime(197, d)

    @pytest.mark.parametrize("p", [41, 43, 47])
    def test_excluded_only_if_every_condition_holds(self, p):
        cert = exclude_prime(p, 3, options=SearchOptions(t1_budget=4, t2_primes=(3, 5)))
        if cert.verdict is Verdict.EXCLUDED:
            assert all(c.holds for c in cert.conditions)
            assert cert.evidence is not None and cert.evidence.independent
            assert cert.t2_prime in (3, 5)
        else:
            assert cert.failing_condition

    def test_cache_is_filled(self, cache):
        exclude_prime(37, 3, cache=cache)
        assert any(cache.cache_dir.iterdir())


class TestXmuSearchNote:
    """X_H verdicts compared with the published exception lists."""

    def test_agreement_gives_no_note(self):
        assert xmu_search_note(3, 19, Verdict.EXCLUDED) is None
        assert xmu_search_note(3, 17, Verdict.INCONCLUSIVE) is None

    def test_exclusion_of_listed_prime(self):
        note = xmu_search_note(4, 29, Verdict.EXCLUDED)
        assert note and "no pair passed" in note

    def test_missed_exclusion(self):
        note = xmu_search_note(3, 23, Verdict.INCONCLUSIVE)
        assert note and "found a passing pair" in note

    def test_degree_bound_and_unlisted_degrees(self):
        assert xmu_search_note(3, 5, Verdict.INCONCLUSIVE) is None
        assert xmu_search_note(2, 29, Verdict.INCONCLUSIVE) is None


class TestReplay:
    def test_recipe_resolution(self, level_37):
        annihilator = winding_annihilator(level_37)
        assert resolve_t1(level_37, annihilator, "ann[0]") == annihilator.ann[0]
        with pytest.raises(InvalidInputError):
            resolve_t1(level_37, annihilator, "ann[9]")
        with pytest.raises(InvalidInputError):
            resolve_t1(level_37, annihilator, "bogus")

    def test_multiple_recipe_resolution(self, level_37):
        annihilator = winding_annihilator(level_37)
        t1 = resolve_t1(level_37, annihilator, "T3*ann[0]")
        assert t1 == level_37.hecke(3) @ annihilator.ann[0]
        assert t1.name == "T3*ann[0]"
        with pytest.raises(InvalidInputError):
            resolve_t1(level_37, annihilator, "T3*ann[4]")

    def test_empty_factor_recipe_resolution(self):
        level = Level.x0(11)
        annihilator = winding_annihilator(level)
        assert resolve_t1(level, annihilator, "factor(T2)") == level.identity()

    def test_replay_reproduces_evidence(self):
        cert = exclude_prime(43, 3, options=SearchOptions(t1_budget=4, t2_primes=(3, 5)))
        result = replay_certificate(cert)
        assert result.matches

    def test_nothing_to_replay(self):
        result = replay_certificate(exclude_prime(11, 6))
        assert result.matches
        assert result.evidence is None


@pytest.mark.slow
def test_degree_seven_x0_exclusion():
    cert = exclude_prime(197, 7)
    assert cert.verdict is Verdict.EXCLUDED



@pytest.mark.slow
def test_degree_seven_x0_route_stops_at_193():
    cert = exclude_prime(193, 7)
    assert cert.verdict is Verdict.INCONCLUSIVE
    assert cert.failing_condition == "kamienny"


@pytest.mark.slow
@pytest.mark.parametrize("p", [19, 23, 29, 31, 37, 41, 43])
def test_degree_three_xmu_fast_exclusion(p):
    cert = exclude_prime(p, 3, ModelKind.XMU, options=SearchOptions(fast=True))
    assert cert.verdict is Verdict.EXCLUDED
    assert cert.variant is CriterionVariant.KAMIENNY_H_FAST
