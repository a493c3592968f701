"""Result files: curve, histogram and block CSVs and JSON run records."""

from storage.results import (
    read_curve_csv,
    run_record_json,
    write_block_csv,
    write_curve_csv,
    write_histogram_csv,
    write_run_record,
)

__all__ = [
    "read_curve_csv",
    "run_record_json",
    "write_block_csv",
    "write_curve_csv",
    "write_histogram_csv",
    "write_run_record",
]
