"""
CSV and JSON writers for the analysis artefacts

CSV files are UTF-8, comma separated, with a header row and "\\n" line
endings. Floats carry full precision (repr); rounded copies go in columns
suffixed _rounded.
"""

import csv
import logging
import math
from pathlib import Path
from typing import Iterable, List, Sequence

from pydantic import BaseModel

logger = logging.getLogger(__name__)


def format_value(value) -> str:
    """One CSV cell: repr for floats, empty for missing, lowercase booleans"""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(float(value))
    return str(value)


def rounded(value, digits: int) -> str:
    """Fixed-point copy of a value for the _rounded columns"""
    if value is None or (isinstance(value, float) and not math.isfinite(value)):
        return format_value(value)
    return f"{value:.{digits}f}"


def format_ranges(values: Iterable[int]) -> str:
    """Collapse integers into runs: [1, 2, 3, 5] -> "1..3;5" """
    ordered = sorted(set(values))
    runs: List[str] = []
    i = 0
    while i < len(ordered):
        j = i
        while j + 1 < len(ordered) and ordered[j + 1] == ordered[j] + 1:
            j += 1
        runs.append(str(ordered[i]) if i == j else f"{ordered[i]}..{ordered[j]}")
        i = j + 1
    return ";".join(runs)


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    """Write one table and return its path"""
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(cell) for cell in row])
            count += 1
    logger.info(f"📝 Wrote {path} ({count} rows)")
    return path


def write_json(path: Path, model: BaseModel) -> Path:
    """Write a report model as indented JSON"""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(model.model_dump_json(indent=2) + "\n", encoding="utf-8")
    logger.info(f"📝 Wrote {path}")
    return path
