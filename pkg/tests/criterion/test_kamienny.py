"""Tests for criterion/kamienny.py and criterion/killers.py."""

from itertools import permutations

import pytest
from sympy import divisors, primerange, primitive_root

from torsioncert.core.errors import InvalidInputError
from torsioncert.criterion.hecke_lattice import Level, winding_annihilator
from torsioncert.criterion.kamienny import (
    Mod2Images,
    fast_operator_set,
    fast_r_values,
    kamienny_check_H,
    kamienny_check_H_fast,
    kamienny_check_x0,
)
from torsioncert.criterion.killers import t1_candidates, t1_from_polynomial, t2_element


def _partitions_of(d, largest):
    """Multiplicity tuples n_1 >= n_2 >= ... summing to d."""
    if d == 0:
        yield ()
        return
    for first in range(min(d, largest), 0, -1):
        for rest in _partitions_of(d - first, first):
            yield (first,) + rest


def _signed_subgroups(p):
    """Generators of one H for each subgroup +-H of (Z/pZ)*; () is H = {+-1}."""
    g = primitive_root(p)
    seen, result = set(), []
    for m in divisors(p - 1):
        h = pow(g, m, p)
        closure = frozenset(pow(h, k, p) * s % p for k in range(p - 1) for s in (1, p - 1))
        if closure not in seen:
            seen.add(closure)
            result.append(() if len(closure) == 2 else (h,))
    return result


class TestT2Element:
    def test_x0_shift(self, level_37):
        t2 = t2_element(level_37, 3)
        assert t2 == level_37.hecke(3).shift(-4)
        assert t2.name == "T3 - 4"

    def test_rejects_two(self, level_37):
        with pytest.raises(InvalidInputError):
            t2_element(level_37, 2)

    def test_rejects_level(self, level_37):
        with pytest.raises(InvalidInputError):
            t2_element(level_37, 37)

    def test_xmu_uses_diamond(self):
        level = Level.xmu(13)
        expected = (level.hecke(3) - level.diamond(3)).shift(-3)
        assert t2_element(level, 3) == expected


class TestT1:
    def test_candidates_kill_ae(self, level_37):
        annihilator = winding_annihilator(level_37)
        candidates = t1_candidates(annihilator, budget=5)
        assert 1 <= len(candidates) <= 5
        assert all(annihilator.annihilates(t) for t in candidates)

    def test_factor_recipe_kills_ae(self, level_37):
        annihilator = winding_annihilator(level_37)
        t1 = t1_from_polynomial(level_37, level_37.hecke(2), annihilator)
        assert t1 is not None
        assert annihilator.annihilates(t1)
        assert t1.name == "factor(T2)"

    def test_empty_factor_set_gives_identity(self):
        # J_0(11) has rank 0, so no factor of the T2 charpoly kills e
        level = Level.x0(11)
        annihilator = winding_annihilator(level)
        t1 = t1_from_polynomial(level, level.hecke(2), annihilator)
        assert t1 == level.identity()
        assert t1.name == "factor(T2)"

    def test_multiples_follow_basis(self, level_37):
        annihilator = winding_annihilator(level_37)
        candidates = t1_candidates(annihilator, budget=20, multipliers=(3, 5))
        assert candidates[0].name == "ann[0]"
        multiples = [t for t in candidates if "*" in t.name]
        for t in multiples:
            n = int(t.name[1 : t.name.index("*")])
            assert t == level_37.hecke(n) @ annihilator.ann[0]
            assert annihilator.annihilates(t)

    def test_multipliers_skip_the_level(self):
        level = Level.x0(11)
        annihilator = winding_annihilator(level)
        names = [t.name for t in t1_candidates(annihilator, multipliers=(11,))]
        assert names == ["ann[0]"]


class TestOperatorSets:
    def test_fast_set_shape(self):
        ops = fast_operator_set(4, 3, (1, 2))
        assert ops == [(1, 2), (1, 3), (1, 1), (2, 1)]

    def test_full_rank_when_r_equals_d(self):
        assert fast_operator_set(3, 3, (1, 5)) == [(1, 1), (1, 2), (1, 3)]

    def test_r_values(self):
        assert list(fast_r_values(2)) == [1, 2]
        assert list(fast_r_values(3)) == [2, 3]
        assert list(fast_r_values(7)) == [4, 5, 6, 7]

    @pytest.mark.parametrize("d", range(1, 8))
    def test_sets_cover_every_ordered_sum(self, d):
        labels = (1, 2, 3, 4, 5, 6, 7)
        sets = [set(fast_operator_set(d, r, labels)) for r in fast_r_values(d)]
        for parts in _partitions_of(d, d):
            for others in permutations(labels[1:], len(parts) - 1):
                needed = {
                    (k, i) for k, n in zip((1,) + others, parts) for i in range(1, n + 1)
                }
                assert any(needed <= s for s in sets), parts


class TestRankChecks:
    """Rank checks over F_2."""

    def test_x0_evidence_fields(self, level_37):
        t1 = level_37.identity()
        passed, evidence = kamienny_check_x0(level_37, 2, t1, t2_element(level_37, 3))
        assert evidence.ell == 2
        assert evidence.required == 2
        assert evidence.cols == level_37.size**2
        assert passed == (evidence.rank == 2)

    def test_rejects_degree_bound(self, level_37):
        with pytest.raises(InvalidInputError):
            kamienny_check_x0(level_37, 19, level_37.identity(), level_37.identity())

    def test_product_images_match_integral_product(self, level_37):
        t1, t2 = level_37.hecke(2), t2_element(level_37, 3)
        fast = Mod2Images.of_product(level_37, t1, t2)
        slow = Mod2Images.of(level_37, t1 @ t2)
        assert (fast.t == slow.t).all()

    @pytest.mark.parametrize("p", [19, 23])
    def test_fast_criterion_implies_full(self, p):
        level = Level.xmu(p)
        annihilator = winding_annihilator(level)
        for t1 in t1_candidates(annihilator, budget=3):
            for q in (3, 5):
                t = t1 @ t2_element(level, q)
                for d in (1, 2, 3):
                    fast, _ = kamienny_check_H_fast(level, d, t)
                    full, _ = kamienny_check_H(level, d, t)
                    if fast:
                        assert full


@pytest.mark.slow
@pytest.mark.parametrize(
    "p, subgroup", [(p, h) for p in primerange(7, 32) for h in _signed_subgroups(p)]
)
def test_fast_criterion_implies_full_on_every_subgroup(p, subgroup):
    level = Level.xmu(p, subgroup)
    if level.genus == 0:
        return
    annihilator = winding_annihilator(level)
    for t1 in t1_candidates(annihilator, budget=2):
        for q in (3, 5):
            t = t1 @ t2_element(level, q)
            for d in range(1, 4):
                if 2 * d >= p:
                    continue
                fast, _ = kamienny_check_H_fast(level, d, t)
                if fast:
                    assert kamienny_check_H(level, d, t)[0], (d, q, t1.name)
