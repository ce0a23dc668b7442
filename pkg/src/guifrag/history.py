"""Release enumeration, tree snapshots and release-to-release diffs.

Everything goes through the ``git`` CLI against the object store, so a bare
or mirror clone is enough; nothing is ever checked out.
"""

from __future__ import annotations

import logging
import os
import subprocess
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Mapping

from .errors import NoReleases, RepoUnreadable, UnknownCommit

log = logging.getLogger(__name__)

MASTER = "master"
DEFAULT_EXTENSIONS = (".java",)


@dataclass(frozen=True)
class ReleaseRef:
    name: str
    commit_id: str
    order_index: int
    timestamp: int


@dataclass(frozen=True)
class FileDiff:
    path: str
    lines_added: int
    lines_deleted: int
    status: str  # added | deleted | modified

    @property
    def churn(self) -> int:
        return self.lines_added + self.lines_deleted


@dataclass
class PairDiff:
    prev: ReleaseRef
    next: ReleaseRef
    file_diffs: list[FileDiff] = field(default_factory=list)
    Pdiff: int = 0

    def churn_of(self, paths: Iterable[str]) -> int:
        wanted = set(paths)
        return sum(fd.churn for fd in self.file_diffs if fd.path in wanted)


def extension_scope(extensions: Iterable[str] = DEFAULT_EXTENSIONS) -> Callable[[str], bool]:
    """Path predicate accepting files with one of ``extensions``."""
    exts = tuple(e.lower() for e in extensions)
    return lambda path: path.lower().endswith(exts)


def _env() -> dict[str, str]:
    env = dict(os.environ)
    env.update({"LC_ALL": "C", "GIT_TERMINAL_PROMPT": "0", "GIT_CONFIG_NOSYSTEM": "1"})
    return env


def git(repo_path: str | os.PathLike, *args: str, input: bytes | None = None, check: bool = True) -> bytes:
    proc = subprocess.run(
        ["git", "-C", str(repo_path), "-c", "core.quotepath=off", *args],
        input=input,
        capture_output=True,
        env=_env(),
    )
    if check and proc.returncode != 0:
        raise RepoUnreadable(f"git {' '.join(args)}: {proc.stderr.decode(errors='replace').strip()}")
    return proc.stdout


def _repo_path(repo) -> Path:
    path = getattr(repo, "local_path", repo)
    if path is None:
        raise RepoUnreadable("repository has not been fetched")
    return Path(path)


def _head(path: Path) -> tuple[str, int] | None:
    proc = subprocess.run(
        ["git", "-C", str(path), "log", "-1", "--format=%H %ct", "HEAD"],
        capture_output=True,
        env=_env(),
    )
    if proc.returncode != 0 or not proc.stdout.strip():
        return None
    sha, ts = proc.stdout.decode().split()
    return sha, int(ts)


def _peel_tags(path: Path, names: list[str]) -> list[str | None]:
    """Commit id behind each tag; None for tags on trees or blobs."""
    proc = subprocess.run(
        ["git", "-C", str(path), "rev-parse", *[f"refs/tags/{n}^{{commit}}" for n in names]],
        capture_output=True,
        env=_env(),
    )
    if proc.returncode == 0:
        return proc.stdout.decode().split()
    peeled: list[str | None] = []
    for n in names:
        out = git(path, "rev-parse", "--verify", "-q", f"refs/tags/{n}^{{commit}}", check=False).decode().strip()
        if not out:
            log.warning("%s: tag %s does not point at a commit, ignored", path, n)
        peeled.append(out or None)
    return peeled


def list_releases(repo) -> list[ReleaseRef]:
    """Tags ordered by target committer date (ties by name), then ``master``.

    The synthetic ``master`` entry points at HEAD and is dropped when HEAD is
    the commit of the last tag.
    """
    path = _repo_path(repo)
    if not (path / "HEAD").exists() and not (path / ".git").exists():
        raise RepoUnreadable(f"not a git repository: {path}")
    names = [n for n in git(path, "tag", "--list").decode("utf-8", "replace").splitlines() if n]
    tags: list[tuple[int, str, str]] = []
    if names:
        out = _peel_tags(path, names)
        names = [n for n, sha in zip(names, out) if sha]
        out = [sha for sha in out if sha]
        stamps = {}
        for line in git(path, "log", "--no-walk=unsorted", "--format=%H %ct", *sorted(set(out))).decode().splitlines():
            sha, ts = line.split()
            stamps[sha] = int(ts)
        tags = sorted((stamps[sha], name, sha) for name, sha in zip(names, out))
    head = _head(path)
    if not tags and head is None:
        raise NoReleases(f"{path}: no tags and no readable HEAD")
    releases = [ReleaseRef(name, sha, k, ts) for k, (ts, name, sha) in enumerate(tags)]
    if head is not None and (not tags or head[0] != tags[-1][2]):
        releases.append(ReleaseRef(MASTER, head[0], len(releases), head[1]))
    return releases


def snapshot(repo, release: ReleaseRef | str) -> dict[str, bytes]:
    """Committed content at ``release`` as ``{path: bytes}`` (blobs only)."""
    path = _repo_path(repo)
    commit = release if isinstance(release, str) else release.commit_id
    proc = subprocess.run(
        ["git", "-C", str(path), "ls-tree", "-r", "-z", "--full-tree", f"{commit}^{{tree}}"],
        capture_output=True,
        env=_env(),
    )
    if proc.returncode != 0:
        raise UnknownCommit(f"{commit}: {proc.stderr.decode(errors='replace').strip()}")
    entries = []
    for rec in proc.stdout.split(b"\0"):
        if not rec:
            continue
        meta, name = rec.split(b"\t", 1)
        _mode, kind, sha = meta.split()
        if kind == b"blob":
            entries.append((name.decode("utf-8", "surrogateescape"), sha.decode()))
    if not entries:
        return {}
    batch = git(path, "cat-file", "--batch", input="".join(f"{sha}\n" for _, sha in entries).encode())
    tree: dict[str, bytes] = {}
    pos = 0
    for name, _sha in entries:
        header_end = batch.index(b"\n", pos)
        size = int(batch[pos:header_end].split()[2])
        start = header_end + 1
        tree[name] = batch[start : start + size]
        pos = start + size + 1
    return tree


def _numstat(path: Path, a: str, b: str) -> list[FileDiff]:
    proc = subprocess.run(
        ["git", "-C", str(path), "-c", "core.quotepath=off", "diff", "--numstat", "-z", "--no-renames",
         "--no-ext-diff", "--no-textconv", a, b, "--"],
        capture_output=True,
        env=_env(),
    )
    if proc.returncode != 0:
        raise UnknownCommit(proc.stderr.decode(errors="replace").strip())
    status_proc = git(path, "diff", "--name-status", "-z", "--no-renames", a, b, "--")
    fields = status_proc.split(b"\0")
    statuses = {}
    for k in range(0, len(fields) - 1, 2):
        statuses[fields[k + 1].decode("utf-8", "surrogateescape")] = fields[k].decode()
    diffs = []
    for rec in proc.stdout.split(b"\0"):
        if not rec:
            continue
        added, deleted, name = rec.split(b"\t", 2)
        name_s = name.decode("utf-8", "surrogateescape")
        # binary files report "-"; they carry no line churn
        la = int(added) if added != b"-" else 0
        ld = int(deleted) if deleted != b"-" else 0
        if la + ld == 0:
            continue
        st = statuses.get(name_s, "M")
        status = {"A": "added", "D": "deleted"}.get(st[0], "modified")
        diffs.append(FileDiff(name_s, la, ld, status))
    return diffs


def diff_pair(repo, prev: ReleaseRef, next: ReleaseRef, project_scope: Callable[[str], bool] | None = None) -> PairDiff:
    """Line churn between two releases with rename detection disabled.

    ``Pdiff`` sums added+deleted lines over files accepted by
    ``project_scope`` (``.java`` files by default).
    """
    scope = project_scope or extension_scope()
    path = _repo_path(repo)
    if prev.commit_id == next.commit_id:
        return PairDiff(prev, next, [], 0)
    diffs = _numstat(path, prev.commit_id, next.commit_id)
    return PairDiff(prev, next, diffs, sum(fd.churn for fd in diffs if scope(fd.path)))


def count_lines(data: bytes) -> int:
    """Physical lines as git counts them: a missing final newline still counts."""
    if not data:
        return 0
    return data.count(b"\n") + (0 if data.endswith(b"\n") else 1)


def project_locs(tree: Mapping[str, bytes], project_scope: Callable[[str], bool] | None = None) -> int:
    scope = project_scope or extension_scope()
    return sum(count_lines(data) for p, data in tree.items() if scope(p))
