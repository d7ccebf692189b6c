"""File formats: observation CSV, curve tables, replicate CSV and JSON reports."""

from storage.csv_store import (
    dump_json,
    read_curve_table,
    read_json,
    read_observations,
    write_json,
    write_observations,
    write_replicates,
)

__all__ = [
    "dump_json",
    "read_curve_table",
    "read_json",
    "read_observations",
    "write_json",
    "write_observations",
    "write_replicates",
]
