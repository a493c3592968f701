"""
Result files: error-curve, histogram and block CSVs plus JSON run records.

Floats are written with ``repr`` so every value reads back bit-for-bit, and
rows are emitted in a fixed order, so two identical runs produce
byte-identical files.
"""

import csv
import io
import json
import logging
from pathlib import Path
from typing import TextIO

from models.data_models import BlockEstimate, CurvePoint, ErrorCurve, FeedbackHistogram, RunRecord
from utils.errors import DomainError

logger = logging.getLogger(__name__)

CURVE_COLUMNS = ("d", "trials", "errors", "p_hat", "ci_lo", "ci_hi")
HISTOGRAM_COLUMNS = ("a", "count", "probability")
BLOCK_COLUMNS = ("M", "eb", "trials", "errors", "p_hat", "ci_lo", "ci_hi", "exact")


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_rows(columns: tuple[str, ...], rows: list[tuple], out: str | Path | TextIO) -> None:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    text = buffer.getvalue()
    if isinstance(out, (str, Path)):
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        logger.info(f"Wrote {len(rows)} row(s) to {path}")
    else:
        out.write(text)


def write_curve_csv(curve: ErrorCurve, out: str | Path | TextIO) -> None:
    """Write ``d,trials,errors,p_hat,ci_lo,ci_hi`` rows to a path or stream."""
    rows = [(p.d, p.trials, p.errors, p.p_hat, p.ci_lo, p.ci_hi) for p in curve.points]
    _write_rows(CURVE_COLUMNS, rows, out)


def read_curve_csv(path: str | Path) -> ErrorCurve:
    """
    Load an error curve written by :func:`write_curve_csv`.

    Raises:
        DomainError: If the file is missing or its header is not the curve header
    """
    file_path = Path(path)
    if not file_path.is_file():
        raise DomainError(f"Curve file not found: {path}")
    with file_path.open(newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        if tuple(reader.fieldnames or ()) != CURVE_COLUMNS:
            raise DomainError(
                f"{path} has columns {reader.fieldnames}, expected {','.join(CURVE_COLUMNS)}"
            )
        try:
            points = [
                CurvePoint(
                    d=int(row["d"]),
                    trials=int(row["trials"]),
                    errors=int(row["errors"]),
                    p_hat=float(row["p_hat"]),
                    ci_lo=float(row["ci_lo"]),
                    ci_hi=float(row["ci_hi"]),
                )
                for row in reader
            ]
        except (TypeError, ValueError) as e:
            raise DomainError(f"Malformed curve row in {path}: {e}") from e
    return ErrorCurve(points=points)


def write_histogram_csv(histogram: FeedbackHistogram, out: str | Path | TextIO) -> None:
    """Write ``a,count,probability`` rows, one per earliest-error age."""
    rows = [(a, c, p) for a, (c, p) in enumerate(zip(histogram.counts, histogram.probabilities))]
    _write_rows(HISTOGRAM_COLUMNS, rows, out)


def write_block_csv(estimate: BlockEstimate, out: str | Path | TextIO) -> None:
    """Write the one-row block baseline table."""
    row = (
        estimate.messages,
        estimate.eb,
        estimate.trials,
        estimate.errors,
        estimate.p_hat,
        estimate.ci_lo,
        estimate.ci_hi,
        estimate.exact,
    )
    _write_rows(BLOCK_COLUMNS, [row], out)


def run_record_json(record: RunRecord) -> str:
    """Serialise a run record as JSON with sorted keys."""
    return json.dumps(record.model_dump(mode="json"), sort_keys=True, indent=2) + "\n"


def write_run_record(record: RunRecord, path: str | Path) -> None:
    """Write a run record next to its results."""
    file_path = Path(path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    file_path.write_text(run_record_json(record), encoding="utf-8")
    logger.info(f"Wrote run record to {file_path}")
