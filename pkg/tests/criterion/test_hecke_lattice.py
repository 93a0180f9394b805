"""Tests for criterion/hecke_lattice.py: the Hecke lattice and Ann(A_e)."""

import pytest

from torsioncert.core.models import ModelKind
from torsioncert.criterion.hecke_lattice import (
    Level,
    build_hecke_lattice,
    starting_bound,
    sturm_bound,
    winding_annihilator,
)


class TestLevel:
    def test_x0_diamonds_are_trivial(self, level_37):
        assert level_37.diamond_labels == (1,)
        assert level_37.diamond(5) == level_37.identity()

    def test_xmu_labels_cover_the_quotient(self):
        level = Level.xmu(13)
        # (Z/13)*/+-1 has six classes
        assert len(level.diamond_labels) == 6
        assert level.diamond_labels[0] == 1

    def test_subgroup_dropped_for_x0(self):
        assert Level(29, ModelKind.X0, (4,)).subgroup == ()

    def test_winding_is_integral_after_scaling(self, level_37):
        winding = level_37.winding
        assert winding.denominator == 3
        assert all(isinstance(v, int) for v in winding.integral)


class TestHeckeLattice:
    def test_rank_equals_genus(self, level_37):
        lattice = build_hecke_lattice(level_37)
        assert lattice.rank == 2
        assert lattice.bound <= 4 * starting_bound(37)

    def test_genus_zero_gives_empty_lattice(self):
        assert build_hecke_lattice(Level.x0(13)).rank == 0


class TestHeckeSpan:
    """The lattice is the full Z-span of T_n <a>, not a sublattice of it."""

    @staticmethod
    def _every_operator(level, bound):
        for n in range(1, bound + 1):
            if n % level.p == 0:
                continue
            for a in level.diamond_labels:
                yield (level.hecke(n) @ level.diamond(a)).renamed(f"T{n}<{a}>")

    @pytest.mark.parametrize(
        "p, model", [(37, ModelKind.X0), (43, ModelKind.X0), (13, ModelKind.XMU)]
    )
    def test_contains_every_operator_to_sturm_bound(self, p, model):
        level = Level(p, model)
        lattice = build_hecke_lattice(level)
        assert lattice.index >= 1
        for op in self._every_operator(level, sturm_bound(level)):
            assert lattice.contains(op), op.name

    @pytest.mark.slow
    def test_contains_every_operator_on_x1_19(self):
        level = Level.xmu(19)
        lattice = build_hecke_lattice(level)
        assert lattice.rank == level.genus == 7
        for op in self._every_operator(level, sturm_bound(level)):
            assert lattice.contains(op), op.name

    def test_span_is_stable_past_bound(self, level_37):
        lattice = build_hecke_lattice(level_37)
        for op in self._every_operator(level_37, lattice.bound + 3):
            assert lattice.contains(op)

    def test_sums_and_products_are_members(self, level_37):
        lattice = build_hecke_lattice(level_37)
        t2, t3 = level_37.hecke(2), level_37.hecke(3)
        assert lattice.contains(level_37.identity())
        assert lattice.contains(t2.scale(5) - t3)
        assert lattice.contains(t2 @ t3)

    def test_sturm_bound(self):
        assert sturm_bound(Level.x0(37)) == 7
        # six diamond classes on X_1(13)
        assert sturm_bound(Level.xmu(13)) == 14


class TestWindingAnnihilator:
    """A_e and Ann(A_e) on levels with known factors."""

    def test_level_37_splits(self, level_37):
        # J_0(37) has one factor of rank 1 (killed by A_e) and one of rank 0
        annihilator = winding_annihilator(level_37)
        assert len(annihilator.ae_coefficients) == 1
        assert len(annihilator.ann_coefficients) == 1
        for t in annihilator.ann:
            assert annihilator.annihilates(t)
            assert not t.is_zero()

    def test_ae_kills_winding_element(self, level_37):
        annihilator = winding_annihilator(level_37)
        e = level_37.winding.integral
        for a in annihilator.ae:
            assert not any(a.apply(e))

    def test_level_11_has_trivial_ae(self):
        annihilator = winding_annihilator(Level.x0(11))
        assert annihilator.ae_coefficients == []
        assert len(annihilator.ann) == 1

    @pytest.mark.parametrize("p", [23, 29, 31])
    def test_rank_zero_quotients_have_trivial_ae(self, p):
        # J_0(p) has rank 0 for these p
        assert winding_annihilator(Level.x0(p)).ae_coefficients == []
