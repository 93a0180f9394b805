"""Tests for core/cache_manager.py."""

import json

import numpy as np

from torsioncert.core.constants import CACHE_FORMAT_ID


class TestLevelCache:
    def test_store_then_attach(self, cache, space_11):
        space_11.hecke(2)
        path = cache.store(space_11)
        assert path is not None and path.exists()
        header = json.loads(path.read_text())["header"]
        assert header["format"] == CACHE_FORMAT_ID
        assert header["p"] == 11
        assert cache.attach(space_11)
        assert np.array_equal(space_11.hecke(2), -2 * np.eye(space_11.cuspidal_rank, dtype=int))

    def test_miss(self, cache, space_13):
        assert not cache.attach(space_13)

    def test_corrupt_file_is_removed(self, cache, space_11):
        path = cache.path_for(11, space_11.symbols.units)
        path.parent.mkdir(parents=True)
        path.write_text("{not json")
        assert not cache.attach(space_11)
        assert not path.exists()

    def test_digest_mismatch(self, cache, space_11):
        path = cache.store(space_11)
        data = json.loads(path.read_text())
        data["header"]["digest"] = "0" * 64
        path.write_text(json.dumps(data))
        assert not cache.attach(space_11)

    def test_paths_differ_by_subgroup(self, cache):
        assert cache.path_for(13, [1, 12]) != cache.path_for(13, [1, 5, 8, 12])
        assert cache.path_for(13, [12, 1]) == cache.path_for(13, [1, 12])
