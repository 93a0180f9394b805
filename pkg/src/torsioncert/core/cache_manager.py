"""On-disk cache of Hecke and diamond operators per level.

One JSON file per (p, +-H). The header pins the cache format and a sha256 of
the presentation, so a file written for a different basis is never loaded.
Unreadable or stale files are rebuilt.
"""

__all__ = ["LevelCache"]

import hashlib
import json
from pathlib import Path
from typing import TYPE_CHECKING, Any, Dict, Iterable, Optional

from torsioncert.core.certificate_writer import atomic_write_text
from torsioncert.core.constants import CACHE_FORMAT_ID
from torsioncert.core.errors import CacheError
from torsioncert.core.logging_config import get_logger

if TYPE_CHECKING:
    from torsioncert.modsym.space import ModularSymbolSpace

logger = get_logger(__name__)


class LevelCache:
    """Loads and stores operator payloads of modular symbol spaces."""

    def __init__(self, cache_dir: Path):
        """
        Initialize LevelCache.

        Args:
            cache_dir: Directory holding ``level_<p>_<h>.json`` files
        """
        self.cache_dir = cache_dir

    @staticmethod
    def digest(space: "ModularSymbolSpace") -> str:
        return hashlib.sha256(space.basis_digest_source().encode("utf-8")).hexdigest()

    def path_for(self, p: int, units: Iterable[int]) -> Path:
        tag = hashlib.sha256(",".join(str(u) for u in sorted(units)).encode()).hexdigest()[:12]
        return self.cache_dir / f"level_{p:05d}_{tag}.json"

    def _read(self, path: Path, space: "ModularSymbolSpace") -> Dict[str, Any]:
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, ValueError) as e:
            raise CacheError(f"unreadable cache file {path}: {e}") from e
        header = data.get("header", {}) if isinstance(data, dict) else {}
        if header.get("format") != CACHE_FORMAT_ID:
            raise CacheError(f"{path}: format {header.get('format')!r}")
        if header.get("p") != space.p or header.get("digest") != self.digest(space):
            raise CacheError(f"{path}: presentation digest mismatch")
        operators = data.get("operators")
        if not isinstance(operators, dict):
            raise CacheError(f"{path}: missing operators")
        return operators

    def attach(self, space: "ModularSymbolSpace") -> bool:
        """Install cached operators into ``space``.

        Returns:
            True on a cache hit; False when nothing usable was found
        """
        path = self.path_for(space.p, space.symbols.units)
        if not path.exists():
            logger.info("Cache miss for p=%s (%s)", space.p, path.name)
            return False
        try:
            operators = self._read(path, space)
            space.load_operators(operators)
        except (CacheError, ValueError, KeyError) as e:
            logger.warning("Rebuilding cache for p=%s: %s", space.p, e)
            try:
                path.unlink()
            except OSError as cleanup_error:
                logger.debug("Failed to remove stale cache %s: %s", path, cleanup_error)
            return False
        logger.info("Cache hit for p=%s: %s operators", space.p, len(operators))
        return True

    def store(self, space: "ModularSymbolSpace") -> Optional[Path]:
        """Write every operator built so far; failures are logged, not raised."""
        path = self.path_for(space.p, space.symbols.units)
        data = {
            "header": {
                "format": CACHE_FORMAT_ID,
                "p": space.p,
                "units": sorted(space.symbols.units),
                "digest": self.digest(space),
            },
            "operators": space.operator_payload(),
        }
        try:
            atomic_write_text(json.dumps(data, separators=(",", ":")), path)
        except IOError as e:
            logger.warning("Could not write cache %s: %s", path, e)
            return None
        logger.debug("Stored %s operators for p=%s", len(data["operators"]), space.p)
        return path
