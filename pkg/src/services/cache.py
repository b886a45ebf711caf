from cachetools import LRUCache
from typing import Any, Optional, Literal

# Cache Types
CacheType = Literal["table", "record", "threshold"]

class CacheManager:
    def __init__(self,
                 max_tables: int = 32,
                 max_records: int = 64,
                 max_thresholds: int = 256):

        # Edge-contribution lookup tables, keyed by maximum degree
        self.table_cache = LRUCache(maxsize=max_tables)

        # Minimizer records, keyed by (n, tolerance)
        self.record_cache = LRUCache(maxsize=max_records)

        # Threshold scans, keyed by d(v)
        self.threshold_cache = LRUCache(maxsize=max_thresholds)

    def _select(self, cache_type: CacheType) -> Optional[LRUCache]:
        if cache_type == "table":
            return self.table_cache
        elif cache_type == "record":
            return self.record_cache
        elif cache_type == "threshold":
            return self.threshold_cache
        return None

    def get(self, cache_type: CacheType, key: Any) -> Optional[Any]:
        cache = self._select(cache_type)
        if cache is None:
            return None
        return cache.get(key)

    def has(self, cache_type: CacheType, key: Any) -> bool:
        cache = self._select(cache_type)
        return cache is not None and key in cache

    def set(self, cache_type: CacheType, key: Any, value: Any):
        cache = self._select(cache_type)
        if cache is not None:
            cache[key] = value

    def clear(self):
        self.table_cache.clear()
        self.record_cache.clear()
        self.threshold_cache.clear()


# Shared by the services of one process
cache_manager = CacheManager()
