"""File storage for run outputs.

Traces are CSV, summaries JSON, observability verdicts JSON lines. All
paths are relative to the output directory given to the store.
"""

from __future__ import annotations

import csv
import json
import logging
from collections.abc import Iterable
from pathlib import Path
from typing import TypeVar

from pydantic import BaseModel

from core.models.traces import EstimateTrace, TraceRecord

logger = logging.getLogger(__name__)

T = TypeVar("T", bound=BaseModel)

TRACE_COLUMNS = [
    "t", "px", "py", "pz", "vx", "vy", "vz", "ax", "ay", "az", "alpha",
    "px_true", "py_true", "pz_true", "depth_true", "depth_est", "nees", "in_fov",
]


def format_float(x: float | None) -> str:
    """9 significant digits; empty for absent values."""
    if x is None:
        return ""
    return format(float(x), ".9g")


def trace_row(r: TraceRecord) -> list[str]:
    est = r.estimate
    accel = est.acceleration if est.acceleration is not None else (None, None, None)
    truth = r.p_true if r.p_true is not None else (None, None, None)
    values = [
        r.t, *est.position, *est.velocity, *accel, est.alpha,
        *truth, r.depth_true, r.depth_est, r.nees,
    ]
    return [format_float(v) for v in values] + ["1" if r.in_fov else "0"]


class ResultStore:
    """Writes run artifacts under one directory.

    Usage:
        store = ResultStore(Path("out"))
        store.write_trace_csv(trace)             # out/trace_<estimator>.csv
        store.write_json_list("summary.json", summaries)
    """

    def __init__(self, out_dir: Path) -> None:
        self._dir = Path(out_dir)

    def _path(self, filename: str) -> Path:
        path = self._dir / filename
        path.parent.mkdir(parents=True, exist_ok=True)
        return path

    def write_json_list(self, filename: str, models: list[T]) -> Path:
        path = self._path(filename)
        payload = [m.model_dump(mode="json") for m in models]
        path.write_text(json.dumps(payload, indent=2) + "\n")
        return path

    def write_jsonl(self, filename: str, models: Iterable[BaseModel]) -> Path:
        """One JSON object per line, replacing any existing file."""
        path = self._path(filename)
        with open(path, "w") as f:
            for model in models:
                f.write(model.model_dump_json() + "\n")
        return path

    def write_trace_csv(self, trace: EstimateTrace, filename: str | None = None) -> Path:
        """Write `trace` with the fixed TRACE_COLUMNS header."""
        path = self._path(filename or f"trace_{trace.estimator}.csv")
        with open(path, "w", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(TRACE_COLUMNS)
            for record in trace.records:
                writer.writerow(trace_row(record))
        logger.info("Wrote %d rows to %s", len(trace), path)
        return path
