"""CSV/JSON output and the plain-text summary table.

Ratios are written as fractions; percentages appear only when rendering.
"""

from __future__ import annotations

import csv
import json
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Iterable, Sequence

from .errors import MissingInput
from .metrics import OVERALL, ProjectReport, ReleasePairMetrics, ToolSummary, row_dict

SCHEMA_VERSION = 1

PAIR_COUNTS = (
    "Tdiff", "Pdiff", "TTL_prev", "Plocs_prev", "NTC_prev", "TM_prev",
    "MC", "MCMM", "MM", "methods_added", "methods_deleted",
)
PAIR_COLUMNS = (
    ("repo", "tool", "from_release", "to_release")
    + PAIR_COUNTS
    + ReleasePairMetrics.RATIOS
    + tuple(f"{r}_defined" for r in ReleasePairMetrics.RATIOS)
)
PROJECT_COLUMNS = tuple(ProjectReport.__dataclass_fields__)
TOOL_COLUMNS = tuple(ToolSummary.__dataclass_fields__)


def pair_row(p: ReleasePairMetrics) -> dict:
    row = row_dict(p)
    for r in ReleasePairMetrics.RATIOS:
        row[f"{r}_defined"] = row[r] is not None
    return {c: row[c] for c in PAIR_COLUMNS}


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(rows: Iterable[dict], columns: Sequence[str], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(c)) for c in columns])


def write_json(rows: Iterable[dict], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(list(rows), fh, indent=1, sort_keys=False)
        fh.write("\n")


def read_tools_csv(path: str | Path) -> list[dict]:
    path = Path(path)
    if not path.is_file():
        raise MissingInput(f"{path} does not exist")
    with open(path, encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))


def _num(cell: str | None) -> float | None:
    return None if cell in (None, "") else float(cell)


def _round(value: float, places: int) -> Decimal:
    q = Decimal(1).scaleb(-places)
    return Decimal(repr(value)).quantize(q, rounding=ROUND_HALF_UP)


def fmt_int(value: float | None) -> str:
    return "-" if value is None else f"{int(_round(value, 0)):,}"


def fmt_pct(value: float | None, places: int = 1) -> str:
    return "-" if value is None else f"{_round(value * 100, places)}%"


def summary_row(row: dict) -> str:
    """One table line: n, TD, then "avg (median)" for NTR/NTC/TTL/TLR."""
    cells = [row["tool"], row["n"]]
    overall = row["tool"] == OVERALL
    td = _num(row.get("TD"))
    cells.append("-" if td is None else fmt_pct(td, 2))
    for attr, fmt in (("NTR", fmt_int), ("NTC", fmt_int), ("TTL", fmt_int), ("TLR", fmt_pct)):
        avg = fmt(_num(row.get(f"{attr}_avg")))
        if overall:
            cells.append(avg)
        else:
            cells.append(f"{avg} ({fmt(_num(row.get(f'{attr}_median')))})")
    return "  ".join(str(c) for c in cells)


def render_summary(tools_csv: str | Path) -> str:
    rows = read_tools_csv(tools_csv)
    lines = ["Tool  n  TD  NTR  NTC  TTL  TLR"]
    body = [r for r in rows if r["tool"] != OVERALL]
    lines.extend(summary_row(r) for r in body)
    lines.extend(summary_row(r) for r in rows if r["tool"] == OVERALL)
    return "\n".join(lines) + "\n"
