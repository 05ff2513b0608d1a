"""Readers for the simulator's CSV output contracts.

This package deliberately never imports the simulator itself; the flat
CSV files written by its CLI are the whole interface.  The column sets
below restate that contract, and any file missing one of them is
rejected up front with the column named, before any figure work
starts.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

RECORDS_COLUMNS = (
    "run_id",
    "env_size_m",
    "n_elements",
    "technology",
    "src_x",
    "src_y",
    "dst_x",
    "dst_y",
    "best_x",
    "best_y",
    "best_snr_db",
    "feasible",
)

MAP_COLUMNS = ("x_m", "y_m", "snr_db", "feasible")


class SchemaError(ValueError):
    """Input CSV does not match the simulator's output contract."""


@dataclass(frozen=True)
class RecordRow:
    """One technology's outcome for one simulated run."""

    run_id: int
    env_size_m: float
    n_elements: int
    technology: str
    best_snr_db: float | None
    feasible: bool


@dataclass(frozen=True)
class MapRow:
    x_m: float
    y_m: float
    snr_db: float
    feasible: bool


def _check_header(path: Path, fieldnames, required) -> None:
    present = set(fieldnames or ())
    for column in required:
        if column not in present:
            raise SchemaError(f"{path.name}: missing column '{column}'")


def _parse_flag(path: Path, line: int, raw: str) -> bool:
    if raw == "1":
        return True
    if raw == "0":
        return False
    raise SchemaError(f"{path.name} line {line}: 'feasible' must be 0 or 1, got {raw!r}")


def read_records(path: str | Path) -> list[RecordRow]:
    path = Path(path)
    rows: list[RecordRow] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        _check_header(path, reader.fieldnames, RECORDS_COLUMNS)
        for line, raw in enumerate(reader, start=2):
            feasible = _parse_flag(path, line, raw["feasible"])
            try:
                best = float(raw["best_snr_db"]) if feasible else None
                rows.append(
                    RecordRow(
                        run_id=int(raw["run_id"]),
                        env_size_m=float(raw["env_size_m"]),
                        n_elements=int(raw["n_elements"]),
                        technology=raw["technology"],
                        best_snr_db=best,
                        feasible=feasible,
                    )
                )
            except (ValueError, TypeError) as exc:
                raise SchemaError(f"{path.name} line {line}: {exc}") from None
    return rows


def read_map(path: str | Path) -> list[MapRow]:
    path = Path(path)
    rows: list[MapRow] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        _check_header(path, reader.fieldnames, MAP_COLUMNS)
        for line, raw in enumerate(reader, start=2):
            try:
                rows.append(
                    MapRow(
                        x_m=float(raw["x_m"]),
                        y_m=float(raw["y_m"]),
                        snr_db=float(raw["snr_db"]),
                        feasible=_parse_flag(path, line, raw["feasible"]),
                    )
                )
            except SchemaError:
                raise
            except (ValueError, TypeError) as exc:
                raise SchemaError(f"{path.name} line {line}: {exc}") from None
    return rows
