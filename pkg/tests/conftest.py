"""Shared test fixtures for torsioncert tests."""

import pytest

from torsioncert.core.cache_manager import LevelCache
from torsioncert.core.models import (
    ConditionResult,
    CriterionVariant,
    ExclusionCertificate,
    ModelKind,
    RankEvidence,
)
from torsioncert.criterion.hecke_lattice import Level
from torsioncert.modsym.gamma0 import build_space


@pytest.fixture(scope="session")
def space_11():
    """X_0(11): genus 1, the smallest level with cusp forms."""
    return build_space(11)


@pytest.fixture(scope="session")
def space_13():
    """X_0(13): genus 0."""
    return build_space(13)


@pytest.fixture(scope="session")
def space_29():
    return build_space(29)


@pytest.fixture(scope="session")
def space_37():
    """X_0(37): genus 2 with a rank-one factor, so e is not everything."""
    return build_space(37)


@pytest.fixture(scope="session")
def level_37():
    return Level.x0(37)


@pytest.fixture
def cache(tmp_path):
    """LevelCache rooted in an isolated temp directory.

    CRITICAL: never point tests at the user's real cache.
    """
    return LevelCache(tmp_path / "cache")


@pytest.fixture
def output_dir(tmp_path):
    path = tmp_path / "certificates"
    path.mkdir()
    return path


@pytest.fixture
def sample_certificate():
    """A finalized EXCLUDED certificate with rank evidence, no computation needed."""
    cert = ExclusionCertificate(
        d=3,
        p=43,
        model=ModelKind.X0,
        variant=CriterionVariant.KAMIENNY_X0,
        t1_recipe="ann[0]",
        t2_recipe="T3 - 4",
        t2_prime=3,
        evidence=RankEvidence(ell=2, rows=3, cols=9, rank=3, required=3, kernel_dimension=0),
        cusp_labels="oo of X_0(p)",
    )
    cert.conditions += [
        ConditionResult("degree_bound", True, "2d = 6 < p"),
        ConditionResult("condition3", True),
        ConditionResult("t1_annihilates_Ae", True, "1 candidates"),
        ConditionResult("kamienny", True, "kamienny-x0 after 1 pairs"),
    ]
    cert.finalize()
    return cert
