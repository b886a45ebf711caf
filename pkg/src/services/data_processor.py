import json
import os
import tempfile
import logging
from typing import Any, Dict, Iterable, List, Optional

import pandas as pd

logger = logging.getLogger(__name__)

class DataProcessor:
    def __init__(self, export_dir: str = "./abc_exports"):
        self.export_dir = export_dir
        os.makedirs(self.export_dir, exist_ok=True)

    def resolve(self, path: str) -> str:
        """Relative paths land in the export directory."""
        return path if os.path.isabs(path) or os.path.dirname(path) else os.path.join(self.export_dir, path)

    @staticmethod
    def _atomic_write(path: str, text: str) -> str:
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
        try:
            with os.fdopen(fd, "w", newline="") as f:
                f.write(text)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.remove(tmp)
            raise
        return path

    @staticmethod
    def dumps(payload: Any) -> str:
        """Canonical JSON text: sorted keys, 2-space indent, trailing newline."""
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    def write_text(self, path: str, text: str) -> str:
        path = self._atomic_write(self.resolve(path), text)
        logger.info(f"Wrote {path}")
        return path

    def write_json(self, path: str, payload: Any) -> str:
        return self.write_text(path, self.dumps(payload))

    def write_frame(self, path: str, df: pd.DataFrame) -> str:
        return self.write_text(path, df.to_csv(index=False))

    @staticmethod
    def summarise_minimizers(records: Iterable[Any]) -> pd.DataFrame:
        """One row per order: n, min_abc, num_minimizers."""
        rows = [
            {"n": r.n, "min_abc": r.min_abc, "num_minimizers": len(r.minimizer_codes)}
            for r in records
        ]
        return pd.DataFrame(rows, columns=["n", "min_abc", "num_minimizers"])

    @staticmethod
    def count_table(counts: Dict[int, int]) -> pd.DataFrame:
        return pd.DataFrame(sorted(counts.items()), columns=["n", "count"])

    # -- checkpoints ----------------------------------------------------

    @staticmethod
    def checkpoint_path(directory: str, name: str) -> str:
        return os.path.join(directory, f"{name}.json")

    def load_checkpoint(self, directory: Optional[str], name: str) -> Optional[Dict[str, Any]]:
        if not directory:
            return None
        path = self.checkpoint_path(directory, name)
        if not os.path.exists(path):
            return None
        try:
            with open(path, "r") as f:
                payload = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            logger.warning(f"Ignoring unreadable checkpoint {path}: {e}")
            return None
        logger.info(f"Checkpoint hit: {path}")
        return payload

    def save_checkpoint(self, directory: Optional[str], name: str, payload: Dict[str, Any]) -> Optional[str]:
        if not directory:
            return None
        return self._atomic_write(self.checkpoint_path(directory, name), self.dumps(payload))

    def list_checkpoints(self, directory: str) -> List[str]:
        if not directory or not os.path.isdir(directory):
            return []
        return sorted(name[:-5] for name in os.listdir(directory) if name.endswith(".json"))
