"""Per-pair change ledger (JSON lines), the audit trail for manual labeling.

Record ids hash (repo, tool, from, to, path) so they survive reruns.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Iterable, Iterator

from .classify import MATCHED_UNCHANGED, ClassChangeRecord


def _digest(*parts: str) -> str:
    return hashlib.sha1("\x1f".join(parts).encode("utf-8", "surrogateescape")).hexdigest()[:16]


def record_id(repo: str, tool: str, from_release: str, to_release: str, path: str) -> str:
    return _digest(repo, tool, from_release, to_release, path)


def ledger_entry(
    record: ClassChangeRecord, repo: str, tool: str, from_release: str, to_release: str
) -> dict:
    rid = record_id(repo, tool, from_release, to_release, record.path)
    methods = []
    seen: dict[str, int] = {}
    for change in record.method_changes:
        if change.kind == MATCHED_UNCHANGED:
            continue
        m = change.method
        sig = f"{m.owner}#{m.name}({','.join(m.param_types)})"
        occurrence = seen.get(sig, 0)
        seen[sig] = occurrence + 1
        methods.append(
            {
                "id": _digest(rid, sig, str(occurrence)),
                "kind": change.kind,
                "signature": sig,
                "prev_span": list(change.prev.body_span) if change.prev else None,
                "next_span": list(change.next.body_span) if change.next else None,
            }
        )
    return {
        "id": rid,
        "repo": repo,
        "tool": tool,
        "from": from_release,
        "to": to_release,
        "path": record.path,
        "category": record.category,
        "MC": record.MC,
        "MCMM": record.MCMM,
        "MM": record.MM,
        "added": record.added,
        "deleted": record.deleted,
        "parse_error": record.parse_error,
        "methods": methods,
    }


def write_ledger(entries: Iterable[dict], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for entry in entries:
            fh.write(json.dumps(entry, sort_keys=True, ensure_ascii=False))
            fh.write("\n")


def read_ledger(path: str | Path) -> Iterator[dict]:
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                yield json.loads(line)
