"""Keyword-based test-file detection and per-release size statistics."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .history import ReleaseRef, count_lines, extension_scope

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ToolSpec:
    name: str
    keywords: tuple[str, ...]
    # JUnit is measured as a comparison point and kept out of the overall row
    baseline: bool = False

    def __post_init__(self):
        if not self.keywords or not all(self.keywords):
            raise ValueError(f"tool {self.name!r} needs at least one non-empty keyword")
        object.__setattr__(self, "keywords", tuple(self.keywords))


BUILTIN_TOOLS: tuple[ToolSpec, ...] = (
    ToolSpec("Espresso", ("espresso",)),
    ToolSpec("UIAutomator", ("uiautomator",)),
    ToolSpec("Selendroid", ("selendroid",)),
    ToolSpec("Robotium", ("robotium",)),
    ToolSpec("Robolectric", ("robolectric",)),
    ToolSpec("Appium", ("appium",)),
    ToolSpec("JUnit", ("org.junit", "junit.framework"), baseline=True),
)


def build_registry(overrides: Iterable[Mapping] | None = None) -> list[ToolSpec]:
    """Builtin tools, with entries replaced or added by name from ``overrides``."""
    tools = {t.name: t for t in BUILTIN_TOOLS}
    for entry in overrides or ():
        name = entry["name"]
        base = tools.get(name)
        tools[name] = ToolSpec(
            name,
            tuple(entry["keywords"]),
            baseline=entry.get("baseline", base.baseline if base else False),
        )
    return list(tools.values())


@dataclass
class ReleaseTestStats:
    release: ReleaseRef
    tool: str
    test_files: frozenset[str] = field(default_factory=frozenset)
    NTC: int = 0
    TTL: int = 0
    Plocs: int = 0
    TLR: float | None = None
    # filled in by the pipeline from the extracted class snapshots
    TM: int = 0


def _decode(path: str, data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError:
        log.debug("%s is not valid UTF-8, matching on lossy decode", path)
        return data.decode("utf-8", errors="replace")


def detect_test_files(
    tree: Mapping[str, bytes], tool: ToolSpec, case_sensitive: bool = False
) -> frozenset[str]:
    """Paths of ``.java`` files containing at least one of the tool's keywords."""
    if case_sensitive:
        keys = tool.keywords
    else:
        keys = tuple(k.lower() for k in tool.keywords)
    found = set()
    for path, data in tree.items():
        if not path.endswith(".java"):
            continue
        text = _decode(path, data)
        if not case_sensitive:
            text = text.lower()
        if any(k in text for k in keys):
            found.add(path)
    return frozenset(found)


def release_stats(
    tree: Mapping[str, bytes],
    release: ReleaseRef,
    tool: ToolSpec,
    project_scope: Callable[[str], bool] | None = None,
    case_sensitive: bool = False,
    test_files: frozenset[str] | None = None,
) -> ReleaseTestStats:
    scope = project_scope or extension_scope()
    if test_files is None:
        test_files = detect_test_files(tree, tool, case_sensitive)
    ttl = sum(count_lines(tree[p]) for p in test_files)
    plocs = sum(count_lines(data) for p, data in tree.items() if scope(p))
    return ReleaseTestStats(
        release=release,
        tool=tool.name,
        test_files=test_files,
        NTC=len(test_files),
        TTL=ttl,
        Plocs=plocs,
        TLR=ttl / plocs if plocs > 0 else None,
    )
