import json
import logging
import math
from pathlib import Path
from typing import List, Optional, Dict, Any

import pandas as pd

from ..errors import ExportError, UsageError
from ..models.sweep import SweepRow

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json")


class ExportService:
    """Writes sweep rows as CSV or JSON tables."""

    def records(self, rows: List[SweepRow], columns: List[str]) -> List[Dict[str, Any]]:
        """Row dictionaries: axis coordinates first, then the requested outputs."""
        return [self._clean(row.to_record(columns)) for row in rows]

    def emit(
        self,
        rows: List[SweepRow],
        fmt: str,
        path: Path,
        columns: Optional[List[str]] = None,
    ) -> Path:
        """Write rows to path; unstable points become empty fields (CSV) or null (JSON)."""
        if fmt not in FORMATS:
            raise UsageError(f"Unknown output format '{fmt}' (choose from {', '.join(FORMATS)})")
        if not rows:
            raise UsageError("Nothing to export: no rows")

        if columns is None:
            reference = next((row for row in rows if row.stable), rows[0])
            columns = [key for key in reference.values if key not in reference.coordinates] or ["stability"]
        records = self.records(rows, columns)
        path = Path(path)

        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            if fmt == "csv":
                frame = pd.DataFrame.from_records(records, columns=list(records[0]))
                frame.to_csv(path, index=False, float_format="%.17g", na_rep="", lineterminator="\n")
            else:
                with open(path, "w", encoding="utf-8", newline="\n") as f:
                    json.dump([self._json_safe(record) for record in records], f, indent=2, allow_nan=False)
                    f.write("\n")
        except OSError as e:
            raise ExportError(path, e.strerror or str(e))

        logger.info(f"Wrote {len(records)} rows to {path}")
        return path

    def to_frame(self, rows: List[SweepRow], columns: List[str]) -> pd.DataFrame:
        return pd.DataFrame.from_records(self.records(rows, columns))

    @staticmethod
    def _clean(record: Dict[str, Any]) -> Dict[str, Any]:
        cleaned: Dict[str, Any] = {}
        for key, value in record.items():
            if value is None or isinstance(value, (bool, int, str)):
                cleaned[key] = value
            else:
                value = float(value)
                cleaned[key] = None if math.isnan(value) else value
        return cleaned

    @staticmethod
    def _json_safe(record: Dict[str, Any]) -> Dict[str, Any]:
        # Strict JSON has no infinity token: +inf is written as the string "inf"
        safe: Dict[str, Any] = {}
        for key, value in record.items():
            if isinstance(value, float) and math.isinf(value):
                value = "inf" if value > 0 else "-inf"
            safe[key] = value
        return safe
