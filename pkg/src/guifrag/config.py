"""Run configuration, loaded from a YAML file.

Example::

    corpus:
      fixture_dir: corpus/index     # offline metadata index
      query: Android
      # or:  query + page_limit     -> GitHub search (token in GITHUB_TOKEN)
      # or:  repos: [{id: owner/name, clone_url: ...}]
    cache_dir: cache
    output_dir: out
    tools:                          # optional, merged over the builtin set
      - {name: Espresso, keywords: [espresso]}
    project_extensions: [.java]
    filters: {min_releases: 2, require_manifest: true}
    sampling: {k: 30, seed: 0}
    flags: {annotated_only: false, exclude_new_files: false, case_sensitive_keywords: false}
    jobs: 4
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import yaml

from .errors import ConfigInvalid

TOKEN_ENV = "GITHUB_TOKEN"


@dataclass
class CorpusSource:
    fixture_dir: Path | None = None
    query: str = "Android"
    page_limit: int = 1
    repos: list[dict] = field(default_factory=list)

    @property
    def kind(self) -> str:
        if self.repos:
            return "list"
        return "fixture" if self.fixture_dir is not None else "hosting"


@dataclass
class RunConfig:
    corpus: CorpusSource
    cache_dir: Path
    output_dir: Path
    tools: list[dict] = field(default_factory=list)
    project_extensions: tuple[str, ...] = (".java",)
    min_releases: int = 2
    require_manifest: bool = True
    sample_k: int = 30
    sample_seed: int = 0
    annotated_only: bool = False
    exclude_new_files: bool = False
    case_sensitive_keywords: bool = False
    jobs: int = 1

    def validate(self) -> None:
        if self.min_releases < 2:
            raise ConfigInvalid("filters.min_releases must be >= 2")
        if self.jobs < 1:
            raise ConfigInvalid("jobs must be >= 1")
        if self.corpus.kind == "hosting" and not self.corpus.query.strip():
            raise ConfigInvalid("corpus.query must be non-empty")
        for tool in self.tools:
            if not isinstance(tool, dict) or "name" not in tool or not tool.get("keywords"):
                raise ConfigInvalid(f"tool entries need a name and keywords: {tool!r}")

    def digest(self) -> str:
        """Hash of the settings that influence outputs (paths excluded)."""
        data = asdict(self)
        for key in ("cache_dir", "output_dir", "jobs"):
            data.pop(key)
        data["corpus"]["fixture_dir"] = str(self.corpus.fixture_dir) if self.corpus.fixture_dir else None
        blob = json.dumps(data, sort_keys=True, default=str).encode()
        return hashlib.sha256(blob).hexdigest()


TOP_LEVEL_KEYS = frozenset(
    {"corpus", "cache_dir", "output_dir", "tools", "project_extensions", "filters", "sampling", "flags", "jobs"}
)


def _section(raw: dict, key: str, required: bool = False) -> dict:
    value = raw.get(key)
    if value is None and not required:
        return {}
    if not isinstance(value, dict):
        raise ConfigInvalid(f"{key} must be a mapping")
    return value


def _bool(section: dict, key: str, default: bool) -> bool:
    value = section.get(key, default)
    if not isinstance(value, bool):
        raise ConfigInvalid(f"{key} must be true or false")
    return value


def load_config(path: str | Path) -> RunConfig:
    path = Path(path)
    try:
        raw = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    except (OSError, yaml.YAMLError) as exc:
        raise ConfigInvalid(f"{path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigInvalid(f"{path}: top level must be a mapping")
    unknown = sorted(map(str, set(raw) - TOP_LEVEL_KEYS))
    if unknown:
        raise ConfigInvalid(f"{path}: unknown keys {unknown}")
    base = path.parent

    def resolve(p) -> Path:
        p = Path(p)
        return p if p.is_absolute() else (base / p)

    corpus_raw = _section(raw, "corpus", required=True)
    fixture = corpus_raw.get("fixture_dir")
    repos = []
    for entry in corpus_raw.get("repos") or []:
        if not isinstance(entry, dict) or "id" not in entry or "clone_url" not in entry:
            raise ConfigInvalid(f"corpus.repos entries need id and clone_url: {entry!r}")
        url = str(entry["clone_url"])
        if "://" not in url and not Path(url).is_absolute():
            url = str(resolve(url))
        repos.append({"id": str(entry["id"]), "clone_url": url})
    filters = _section(raw, "filters")
    sampling = _section(raw, "sampling")
    flags = _section(raw, "flags")
    try:
        corpus = CorpusSource(
            fixture_dir=resolve(fixture) if fixture else None,
            query=str(corpus_raw.get("query", "Android")),
            page_limit=int(corpus_raw.get("page_limit", 1)),
            repos=repos,
        )
        cfg = RunConfig(
            corpus=corpus,
            cache_dir=resolve(raw.get("cache_dir", "cache")),
            output_dir=resolve(raw.get("output_dir", "out")),
            tools=list(raw.get("tools") or []),
            project_extensions=tuple(raw.get("project_extensions") or (".java",)),
            min_releases=int(filters.get("min_releases", 2)),
            require_manifest=_bool(filters, "require_manifest", True),
            sample_k=int(sampling.get("k", 30)),
            sample_seed=int(sampling.get("seed", 0)),
            annotated_only=_bool(flags, "annotated_only", False),
            exclude_new_files=_bool(flags, "exclude_new_files", False),
            case_sensitive_keywords=_bool(flags, "case_sensitive_keywords", False),
            jobs=int(raw.get("jobs", 1)),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigInvalid(str(exc)) from exc
    cfg.validate()
    return cfg
