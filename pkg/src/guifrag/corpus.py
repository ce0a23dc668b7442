"""Repository discovery, the local clone cache and the Android/release filter."""

from __future__ import annotations

import logging
import os
import shutil
import subprocess
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

import httpx
from filelock import FileLock

from . import history
from .errors import (
    ApiUnreachable,
    CacheDirUnwritable,
    CloneFailed,
    InvalidQuery,
    MalformedResponse,
    NoReleases,
    RateLimited,
    RepoUnreadable,
)

log = logging.getLogger(__name__)

MANIFEST = "AndroidManifest.xml"
NO_MANIFEST = "no-manifest"
TOO_FEW_RELEASES = "too-few-releases"
PAGE_SIZE = 100


@dataclass
class RepoRef:
    host_id: str
    clone_url: str
    local_path: Path | None = None
    description: str = ""

    @property
    def cache_key(self) -> str:
        return self.host_id.replace("/", "__")


@dataclass(frozen=True)
class CorpusFilter:
    require_manifest: bool = True
    min_releases: int = 2

    def __post_init__(self):
        if self.min_releases < 2:
            raise ValueError("min_releases must be at least 2 (one tag plus master)")


class SearchBackend(Protocol):
    def search(self, query: str, page_limit: int) -> list[RepoRef]: ...


class FixtureIndex:
    """Offline index: a directory with one ``key=value`` metadata file per repo.

    Recognised keys are ``id``, ``description`` and ``clone_url``; a relative
    ``clone_url`` is resolved against the index directory.
    """

    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)

    def _entries(self) -> list[dict[str, str]]:
        entries = []
        for path in sorted(self.directory.iterdir()):
            if not path.is_file() or path.name.startswith("."):
                continue
            meta: dict[str, str] = {}
            for line in path.read_text(encoding="utf-8").splitlines():
                if "=" in line and not line.lstrip().startswith("#"):
                    key, _, value = line.partition("=")
                    meta[key.strip()] = value.strip()
            if "id" not in meta or "clone_url" not in meta:
                raise MalformedResponse(f"{path}: metadata needs id and clone_url")
            entries.append(meta)
        return entries

    def search(self, query: str, page_limit: int) -> list[RepoRef]:
        needle = query.lower()
        hits = []
        for meta in self._entries():
            haystack = "\n".join(meta.values()).lower()
            if needle in haystack:
                url = meta["clone_url"]
                if "://" not in url and not os.path.isabs(url):
                    url = str((self.directory / url).resolve())
                hits.append(RepoRef(meta["id"], url, description=meta.get("description", "")))
        return hits[: PAGE_SIZE * page_limit]


class GitHubSearch:
    """Repository search endpoint of the GitHub REST API.

    Matches the query against names, descriptions and readmes.  Requests are
    issued one page at a time.
    """

    def __init__(
        self,
        token: str | None = None,
        base_url: str = "https://api.github.com",
        client: httpx.Client | None = None,
        per_page: int = PAGE_SIZE,
    ):
        headers = {"Accept": "application/vnd.github+json"}
        token = token if token is not None else os.environ.get("GITHUB_TOKEN")
        if token:
            headers["Authorization"] = f"Bearer {token}"
        self.client = client or httpx.Client(base_url=base_url, headers=headers, timeout=30.0)
        if client is not None:
            self.client.headers.update(headers)
        self.per_page = per_page

    def _page(self, query: str, page: int) -> list[dict]:
        params = {"q": f"{query} in:name,description,readme", "per_page": self.per_page, "page": page}
        try:
            resp = self.client.get("/search/repositories", params=params)
        except httpx.TransportError as exc:
            raise ApiUnreachable(str(exc)) from exc
        if resp.status_code == 429 or (
            resp.status_code == 403 and resp.headers.get("x-ratelimit-remaining") == "0"
        ):
            retry = resp.headers.get("retry-after")
            raise RateLimited(f"rate limited on page {page}", retry_after=float(retry) if retry else None)
        if resp.status_code >= 500:
            raise ApiUnreachable(f"HTTP {resp.status_code}")
        if resp.status_code != 200:
            raise MalformedResponse(f"HTTP {resp.status_code}: {resp.text[:200]}")
        try:
            items = resp.json()["items"]
            return [
                {"id": it["full_name"], "clone_url": it["clone_url"], "description": it.get("description") or ""}
                for it in items
            ]
        except (ValueError, KeyError, TypeError) as exc:
            raise MalformedResponse(f"unexpected search payload: {exc}") from exc

    def search(self, query: str, page_limit: int) -> list[RepoRef]:
        out = []
        for page in range(1, page_limit + 1):
            items = self._page(query, page)
            out.extend(RepoRef(it["id"], it["clone_url"], description=it["description"]) for it in items)
            if len(items) < self.per_page:
                break
        return out


def discover(query: str, page_limit: int, backend: SearchBackend) -> list[RepoRef]:
    """Deduplicated search hits ordered by ``host_id``."""
    if not query or not query.strip():
        raise InvalidQuery("query must be non-empty")
    if page_limit < 1:
        raise InvalidQuery("page_limit must be positive")
    unique: dict[str, RepoRef] = {}
    for ref in backend.search(query.strip(), page_limit):
        unique.setdefault(ref.host_id, ref)
    return [unique[k] for k in sorted(unique)]


def _is_repo(path: Path) -> bool:
    if not path.is_dir():
        return False
    proc = subprocess.run(
        ["git", "-C", str(path), "rev-parse", "--git-dir"], capture_output=True
    )
    return proc.returncode == 0


def fetch(repo: RepoRef, cache_dir: str | os.PathLike, refresh: bool = False) -> RepoRef:
    """Mirror-clone ``repo`` into ``<cache_dir>/<owner>__<name>``.

    A cached clone is reused as is; ``refresh=True`` updates it from the
    remote.  Full history is always kept.
    """
    cache = Path(cache_dir)
    try:
        cache.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CacheDirUnwritable(f"{cache}: {exc}") from exc
    if not os.access(cache, os.W_OK):
        raise CacheDirUnwritable(str(cache))
    dest = cache / repo.cache_key
    with FileLock(str(dest) + ".lock"):
        if _is_repo(dest):
            if refresh:
                proc = subprocess.run(
                    ["git", "-C", str(dest), "remote", "update", "--prune"],
                    capture_output=True,
                    env=history._env(),
                )
                if proc.returncode != 0:
                    log.warning("refresh of %s failed: %s", repo.host_id, proc.stderr.decode(errors="replace"))
        else:
            if dest.exists():
                shutil.rmtree(dest)
            tmp = Path(tempfile.mkdtemp(prefix=f".{repo.cache_key}.", dir=cache))
            proc = subprocess.run(
                ["git", "clone", "--mirror", "--quiet", repo.clone_url, str(tmp)],
                capture_output=True,
                env=history._env(),
            )
            if proc.returncode != 0:
                shutil.rmtree(tmp, ignore_errors=True)
                raise CloneFailed(f"{repo.clone_url}: {proc.stderr.decode(errors='replace').strip()}")
            tmp.rename(dest)
    return RepoRef(repo.host_id, repo.clone_url, dest, repo.description)


def has_manifest(repo: RepoRef) -> bool:
    names = history.git(repo.local_path, "ls-tree", "-r", "-z", "--name-only", "HEAD")
    return any(p.rsplit(b"/", 1)[-1] == MANIFEST.encode() for p in names.split(b"\0") if p)


def passes_filter(repo: RepoRef, filt: CorpusFilter) -> tuple[bool, str | None]:
    """(accepted, rejection reason).  The release count includes master."""
    if repo.local_path is None or not _is_repo(Path(repo.local_path)):
        raise RepoUnreadable(f"{repo.host_id} is not fetched")
    if filt.require_manifest:
        try:
            found = has_manifest(repo)
        except RepoUnreadable:
            found = False
        if not found:
            return False, NO_MANIFEST
    try:
        n = len(history.list_releases(repo))
    except NoReleases:
        n = 0
    if n < filt.min_releases:
        return False, TOO_FEW_RELEASES
    return True, None
