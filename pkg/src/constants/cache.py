"""On-disk cache of exact c(k) values."""

from __future__ import annotations

import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import TYPE_CHECKING

from core.config import config

if TYPE_CHECKING:
    from constants.moments import Interpretation

_RANGE_SLUG = {"i<j": "lower", "i>j": "upper", "i!=j": "all"}


class CoefficientCache:
    """One JSON record per (k, order mode, M range) under ``<cache_dir>/ck/``."""

    def __init__(self, cache_dir: Path | None = None) -> None:
        self._logger = logging.getLogger(self.__class__.__name__)
        self._root = Path(cache_dir or config.cache_dir) / "ck"

    @property
    def root(self) -> Path:
        return self._root

    def path_for(self, k: int, interpretation: Interpretation) -> Path:
        mode = interpretation.order_mode.value
        slug = _RANGE_SLUG[interpretation.m_range.value]
        return self._root / f"k{k:02d}-{mode}-{slug}.json"

    def load(self, k: int, interpretation: Interpretation) -> Fraction | None:
        path = self.path_for(k, interpretation)
        if not path.exists():
            return None
        try:
            record = json.loads(path.read_text(encoding="utf-8"))
            if (
                record["k"] != k
                or record["order_mode"] != interpretation.order_mode.value
                or record["m_range"] != interpretation.m_range.value
            ):
                raise ValueError("record does not match its key")
            value = Fraction(int(record["numerator"]), int(record["denominator"]))
        except (OSError, KeyError, ValueError, ZeroDivisionError) as e:
            self._logger.warning("Ignoring unreadable cache record %s: %s", path, e)
            return None
        self._logger.info("Cache hit for c(%d) at %s", k, path)
        return value

    def store(
        self,
        k: int,
        interpretation: Interpretation,
        value: Fraction,
        wall_time: float,
    ) -> Path:
        path = self.path_for(k, interpretation)
        path.parent.mkdir(parents=True, exist_ok=True)
        record = {
            "k": k,
            "order_mode": interpretation.order_mode.value,
            "m_range": interpretation.m_range.value,
            "numerator": str(value.numerator),
            "denominator": str(value.denominator),
            "wall_time": round(wall_time, 3),
        }
        text = json.dumps(record, indent=2, sort_keys=True) + "\n"
        path.write_text(text, encoding="utf-8")
        self._logger.info("Cached c(%d) in %s (%.1fs)", k, path, wall_time)
        return path

    def entries(self) -> list[dict[str, object]]:
        """All readable records, sorted by k."""
        records = []
        for path in sorted(self._root.glob("k*.json")):
            try:
                records.append(json.loads(path.read_text(encoding="utf-8")))
            except (OSError, ValueError) as e:
                self._logger.warning("Skipping %s: %s", path, e)
        return records

    def clear(self) -> int:
        removed = 0
        for path in self._root.glob("k*.json"):
            path.unlink()
            removed += 1
        return removed
