"""Method matching and the fragility classification of changed test classes.

A changed test class is *fragile* when at least one method that existed in
the previous release has a different normalized body in the next one.
Constructor edits, import/comment/field edits and pure method additions or
removals are not fragility.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .javaparse import ClassSnapshot, MethodRecord

UNCHANGED = "unchanged"
NON_SIGNIFICANT = "non-significant"
ADD_ONLY = "add-only"
REMOVE_ONLY = "remove-only"
ADD_REMOVE_ONLY = "add-remove-only"
FRAGILE = "fragile"
# lifecycle categories for classes that exist on one side only
ADDED = "added"
DELETED = "deleted"

CATEGORIES = (UNCHANGED, NON_SIGNIFICANT, ADD_ONLY, REMOVE_ONLY, ADD_REMOVE_ONLY, FRAGILE, ADDED, DELETED)

MATCHED_UNCHANGED = "matched-unchanged"
MATCHED_MODIFIED = "matched-modified"
METHOD_ADDED = "added"
METHOD_DELETED = "deleted"


@dataclass(frozen=True)
class MethodChange:
    kind: str
    prev: MethodRecord | None = None
    next: MethodRecord | None = None

    @property
    def method(self) -> MethodRecord:
        return self.prev if self.prev is not None else self.next  # type: ignore[return-value]


@dataclass
class ClassChangeRecord:
    path: str
    category: str
    method_changes: list[MethodChange] = field(default_factory=list)
    MM: int = 0
    added: int = 0
    deleted: int = 0
    MC: int = 0
    MCMM: int = 0
    parse_error: bool = False

    @property
    def fragile(self) -> bool:
        return self.category == FRAGILE


def match_methods(prev: ClassSnapshot, next: ClassSnapshot) -> list[MethodChange]:
    """Pair methods by (owner, name, arity, parameter types).

    Constructors are left out.  Duplicate keys are paired in source order.
    Output follows the previous release's order, then new methods.
    """
    pending: dict[tuple, list[MethodRecord]] = defaultdict(list)
    for m in next.methods:
        if not m.is_constructor:
            pending[m.key].append(m)
    changes: list[MethodChange] = []
    for m in prev.methods:
        if m.is_constructor:
            continue
        candidates = pending.get(m.key)
        if candidates:
            other = candidates.pop(0)
            kind = MATCHED_UNCHANGED if other.normalized_body == m.normalized_body else MATCHED_MODIFIED
            changes.append(MethodChange(kind, m, other))
        else:
            changes.append(MethodChange(METHOD_DELETED, m, None))
    leftover = {id(m) for group in pending.values() for m in group}
    for m in next.methods:
        if id(m) in leftover:
            changes.append(MethodChange(METHOD_ADDED, None, m))
    return changes


def classify_class(
    prev: ClassSnapshot | None, next: ClassSnapshot | None, file_changed: bool, path: str | None = None
) -> ClassChangeRecord:
    if prev is None and next is None:
        raise ValueError("classify_class needs at least one snapshot")
    if path is None:
        path = (prev if prev is not None else next).path
    if prev is None:
        changes = [MethodChange(METHOD_ADDED, None, m) for m in next.methods if not m.is_constructor]
        return ClassChangeRecord(path, ADDED, changes, added=len(changes))
    if next is None:
        changes = [MethodChange(METHOD_DELETED, m, None) for m in prev.methods if not m.is_constructor]
        return ClassChangeRecord(path, DELETED, changes, deleted=len(changes))
    if not file_changed:
        return ClassChangeRecord(path, UNCHANGED)
    changes = match_methods(prev, next)
    mm = sum(c.kind == MATCHED_MODIFIED for c in changes)
    added = sum(c.kind == METHOD_ADDED for c in changes)
    deleted = sum(c.kind == METHOD_DELETED for c in changes)
    if mm:
        category = FRAGILE
    elif added and deleted:
        category = ADD_REMOVE_ONLY
    elif added:
        category = ADD_ONLY
    elif deleted:
        category = REMOVE_ONLY
    else:
        category = NON_SIGNIFICANT
    return ClassChangeRecord(
        path, category, changes, MM=mm, added=added, deleted=deleted, MC=1, MCMM=int(mm > 0)
    )


def unparsed_record(path: str, file_changed: bool) -> ClassChangeRecord:
    """Record for a surviving class whose source could not be parsed.

    The class still counts as modified; method-level detail is unknown.
    """
    if not file_changed:
        return ClassChangeRecord(path, UNCHANGED, parse_error=True)
    return ClassChangeRecord(path, NON_SIGNIFICANT, MC=1, parse_error=True)
