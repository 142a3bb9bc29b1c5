"""Strict CSV ingestion for the simulator's fixed-header files."""

import csv
from pathlib import Path

COVERAGE_HEADER = ["ratio", "band_ghz", "metric", "sample_value"]
GAPS_HEADER = ["ratio", "percentile", "gap_db"]
THROUGHPUT_HEADER = ["case", "policy", "lambda", "seed",
                     "mean_user_tput_mbps", "completed_files"]


def read_rows(path, expected_header) -> list:
    """Rows as dicts; the header must match the declared columns exactly."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty file, expected header "
                             f"{','.join(expected_header)}") from None
        missing = [c for c in expected_header if c not in header]
        extra = [c for c in header if c not in expected_header]
        if missing:
            raise ValueError(f"{path}: missing column(s) {', '.join(missing)}")
        if extra:
            raise ValueError(f"{path}: unexpected column(s) {', '.join(extra)}")
        rows = [dict(zip(header, line)) for line in reader if line]
    if not rows:
        raise ValueError(f"{Path(path).name}: no data rows")
    return rows
