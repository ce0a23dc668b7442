"""End-to-end corpus run: discover, fetch, filter, analyze, aggregate, write."""

from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .config import RunConfig
from .corpus import CorpusFilter, FixtureIndex, GitHubSearch, RepoRef, discover, fetch, passes_filter
from .detect import build_registry
from .errors import GuifragError, OutputUnwritable
from .ledger import write_ledger
from .metrics import overall_row, row_dict, tool_summary
from .pipeline import Options, RepoResult, analyze_repo
from .report import (
    PAIR_COLUMNS,
    PROJECT_COLUMNS,
    SCHEMA_VERSION,
    TOOL_COLUMNS,
    pair_row,
    write_csv,
    write_json,
)

log = logging.getLogger(__name__)

OUTPUT_FILES = (
    "pairs.csv", "projects.csv", "tools.csv",
    "pairs.json", "projects.json", "tools.json",
    "change_ledger.jsonl", "run_manifest.json",
)


@dataclass
class RepoStatus:
    id: str
    status: str  # analyzed | skipped | failed
    reason: str | None = None
    error: str | None = None
    releases: int | None = None
    featured: list[str] = field(default_factory=list)
    diagnostics: list[dict] = field(default_factory=list)


def corpus_refs(cfg: RunConfig) -> list[RepoRef]:
    src = cfg.corpus
    if src.kind == "list":
        refs = {r["id"]: RepoRef(r["id"], r["clone_url"]) for r in src.repos}
        return [refs[k] for k in sorted(refs)]
    backend = FixtureIndex(src.fixture_dir) if src.kind == "fixture" else GitHubSearch()
    return discover(src.query, src.page_limit, backend)


def _process(ref: RepoRef, cfg: RunConfig, tools, opts: Options) -> tuple[RepoStatus, RepoResult | None]:
    try:
        local = fetch(ref, cfg.cache_dir)
        ok, reason = passes_filter(local, CorpusFilter(cfg.require_manifest, cfg.min_releases))
        if not ok:
            return RepoStatus(ref.host_id, "skipped", reason=reason), None
        result = analyze_repo(local, tools, opts, repo_id=ref.host_id)
    except GuifragError as exc:
        log.warning("%s failed: %s", ref.host_id, exc)
        return RepoStatus(ref.host_id, "failed", error=f"{exc.code}: {exc}"), None
    except Exception as exc:  # one bad repository must not end the run
        log.exception("%s crashed", ref.host_id)
        return RepoStatus(ref.host_id, "failed", error=f"{type(exc).__name__}: {exc}"), None
    status = RepoStatus(
        ref.host_id, "analyzed", releases=len(result.releases),
        featured=result.featured, diagnostics=result.diagnostics,
    )
    return status, result


def run(cfg: RunConfig, jobs: int | None = None, out: str | Path | None = None) -> tuple[dict, int]:
    """Run the whole pipeline and write every output file.

    Returns the manifest and the process exit code (0 iff at least one
    repository was analyzed and all outputs were written).
    """
    cfg.validate()
    out_dir = Path(out) if out is not None else cfg.output_dir
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OutputUnwritable(f"{out_dir}: {exc}") from exc
    if not os.access(out_dir, os.W_OK):
        raise OutputUnwritable(str(out_dir))

    started = time.time()
    tools = build_registry(cfg.tools)
    opts = Options(
        project_extensions=cfg.project_extensions,
        annotated_only=cfg.annotated_only,
        exclude_new_files=cfg.exclude_new_files,
        case_sensitive_keywords=cfg.case_sensitive_keywords,
    )
    refs = corpus_refs(cfg)
    workers = jobs or cfg.jobs
    with ThreadPoolExecutor(max_workers=workers) as pool:
        outcomes = list(pool.map(lambda r: _process(r, cfg, tools, opts), refs))
    outcomes.sort(key=lambda o: o[0].id)

    results = [res for _, res in outcomes if res is not None]
    context = len(results)
    pair_rows, project_rows, ledger = [], [], []
    summaries = []
    for tool in tools:
        reports = []
        for res in results:
            tr = res.tools[tool.name]
            if tr.report is None:
                continue
            reports.append(tr.report)
            pair_rows.extend(pair_row(p) for p in tr.pairs)
            project_rows.append(row_dict(tr.report))
            ledger.extend(tr.ledger)
        if context:
            summaries.append(tool_summary(reports, context, tool=tool.name, baseline=tool.baseline))
    tool_rows = [row_dict(s) for s in summaries]
    if summaries:
        tool_rows.append(row_dict(overall_row(summaries)))

    try:
        write_csv(pair_rows, PAIR_COLUMNS, out_dir / "pairs.csv")
        write_csv(project_rows, PROJECT_COLUMNS, out_dir / "projects.csv")
        write_csv(tool_rows, TOOL_COLUMNS, out_dir / "tools.csv")
        write_json(pair_rows, out_dir / "pairs.json")
        write_json(project_rows, out_dir / "projects.json")
        write_json(tool_rows, out_dir / "tools.json")
        write_ledger(ledger, out_dir / "change_ledger.jsonl")
        manifest = {
            "tool_version": __version__,
            "schema_version": SCHEMA_VERSION,
            "config_hash": cfg.digest(),
            "started_at": started,
            "finished_at": time.time(),
            "total_context": context,
            "repos": [row_dict(status) for status, _ in outcomes],
            "counts": {
                s: sum(1 for st, _ in outcomes if st.status == s) for s in ("analyzed", "skipped", "failed")
            },
        }
        with open(out_dir / "run_manifest.json", "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, indent=1)
            fh.write("\n")
    except OSError as exc:
        raise OutputUnwritable(str(exc)) from exc
    return manifest, 0 if context else 1
