"""Analysis of a single repository across all tools."""

from __future__ import annotations

import hashlib
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import history
from .classify import ADDED, ClassChangeRecord, DELETED, classify_class, unparsed_record
from .detect import ReleaseTestStats, ToolSpec, detect_test_files, release_stats
from .errors import GuifragError
from .javaparse import ClassSnapshot, count_test_methods, extract_bytes
from .ledger import ledger_entry
from .metrics import ProjectReport, ReleasePairMetrics, pair_metrics, project_report

log = logging.getLogger(__name__)


@dataclass
class Options:
    project_extensions: tuple[str, ...] = history.DEFAULT_EXTENSIONS
    annotated_only: bool = False
    exclude_new_files: bool = False
    case_sensitive_keywords: bool = False

    @property
    def scope(self) -> Callable[[str], bool]:
        return history.extension_scope(self.project_extensions)


@dataclass
class ToolResult:
    tool: str
    pairs: list[ReleasePairMetrics] = field(default_factory=list)
    report: ProjectReport | None = None
    ledger: list[dict] = field(default_factory=list)


@dataclass
class RepoResult:
    repo: str
    releases: list[history.ReleaseRef]
    tools: dict[str, ToolResult] = field(default_factory=dict)
    diagnostics: list[dict] = field(default_factory=list)

    @property
    def featured(self) -> list[str]:
        return sorted(name for name, res in self.tools.items() if res.report is not None)


class _SnapshotCache:
    """Parses each distinct blob once; failures are remembered as None."""

    def __init__(self, diagnostics: list[dict]):
        self._by_hash: dict[str, ClassSnapshot | None] = {}
        self.diagnostics = diagnostics

    def get(self, path: str, release: str, data: bytes) -> ClassSnapshot | None:
        key = hashlib.sha1(data).hexdigest()
        if key not in self._by_hash:
            try:
                self._by_hash[key] = extract_bytes(data)
            except GuifragError as exc:
                log.info("skipping %s@%s: %s", path, release, exc)
                self.diagnostics.append({"path": path, "release": release, "error": exc.code, "detail": str(exc)})
                self._by_hash[key] = None
        snap = self._by_hash[key]
        if snap is None:
            return None
        return ClassSnapshot(path, release, snap.methods, snap.non_method_normalized, snap.type_names)


def _records_for_pair(
    prev_tree: dict[str, bytes],
    next_tree: dict[str, bytes],
    prev_files: frozenset[str],
    next_files: frozenset[str],
    prev_name: str,
    next_name: str,
    cache: _SnapshotCache,
) -> list[ClassChangeRecord]:
    records = []
    for path in sorted(prev_files):
        old = prev_tree[path]
        new = next_tree.get(path)
        prev_snap = cache.get(path, prev_name, old)
        if new is None:
            if prev_snap is None:
                records.append(ClassChangeRecord(path, DELETED, parse_error=True))
            else:
                records.append(classify_class(prev_snap, None, True, path))
            continue
        changed = new != old
        next_snap = cache.get(path, next_name, new) if changed else prev_snap
        if prev_snap is None or next_snap is None:
            records.append(unparsed_record(path, changed))
        else:
            records.append(classify_class(prev_snap, next_snap, changed, path))
    for path in sorted(next_files - prev_files):
        next_snap = cache.get(path, next_name, next_tree[path])
        if next_snap is None:
            records.append(ClassChangeRecord(path, ADDED, parse_error=True))
        else:
            records.append(classify_class(None, next_snap, True, path))
    return records


def _stats(tree, release, tool, opts: Options, cache: _SnapshotCache) -> ReleaseTestStats:
    files = detect_test_files(tree, tool, opts.case_sensitive_keywords)
    stats = release_stats(tree, release, tool, opts.scope, test_files=files)
    tm = 0
    for path in files:
        snap = cache.get(path, release.name, tree[path])
        if snap is not None:
            tm += count_test_methods(snap, opts.annotated_only)
    stats.TM = tm
    return stats


def analyze_repo(
    repo, tools: Sequence[ToolSpec], opts: Options | None = None, repo_id: str | None = None
) -> RepoResult:
    """Walk every consecutive release pair of ``repo`` for every tool.

    A tool gets a project report only when the last release (the default
    branch head) contains at least one of its test files.
    """
    opts = opts or Options()
    rid = repo_id or getattr(repo, "host_id", None) or str(repo)
    releases = history.list_releases(repo)
    result = RepoResult(rid, releases)
    cache = _SnapshotCache(result.diagnostics)
    scope = opts.scope

    series: dict[str, list[ReleasePairMetrics]] = defaultdict(list)
    ledgers: dict[str, list[dict]] = defaultdict(list)
    class_history: dict[str, dict[str, list[ClassChangeRecord]]] = defaultdict(lambda: defaultdict(list))

    prev_tree = history.snapshot(repo, releases[0])
    prev_stats = {t.name: _stats(prev_tree, releases[0], t, opts, cache) for t in tools}
    for tool in tools:
        for path in prev_stats[tool.name].test_files:
            class_history[tool.name].setdefault(path, [])
    for prev_rel, next_rel in zip(releases, releases[1:]):
        next_tree = history.snapshot(repo, next_rel)
        diff = history.diff_pair(repo, prev_rel, next_rel, scope)
        next_stats = {t.name: _stats(next_tree, next_rel, t, opts, cache) for t in tools}
        for tool in tools:
            ps, ns = prev_stats[tool.name], next_stats[tool.name]
            records = _records_for_pair(
                prev_tree, next_tree, ps.test_files, ns.test_files, prev_rel.name, next_rel.name, cache
            )
            series[tool.name].append(
                pair_metrics(
                    diff, ps, records, ns,
                    repo=rid,
                    exclude_new_files=opts.exclude_new_files,
                    annotated_only=opts.annotated_only,
                )
            )
            for rec in records:
                class_history[tool.name][rec.path].append(rec)
                ledgers[tool.name].append(ledger_entry(rec, rid, tool.name, prev_rel.name, next_rel.name))
        prev_tree, prev_stats = next_tree, next_stats

    for tool in tools:
        res = ToolResult(tool.name)
        master = prev_stats[tool.name]
        if master.NTC > 0 and series[tool.name]:
            res.pairs = series[tool.name]
            res.ledger = ledgers[tool.name]
            res.report = project_report(series[tool.name], class_history[tool.name], master, NTR=len(releases))
        result.tools[tool.name] = res
    return result
