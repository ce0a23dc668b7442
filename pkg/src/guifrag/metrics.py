"""Release-pair, project and tool-set metrics.

Ratios whose denominator is zero are ``None`` (undefined) rather than 0 and
never enter an average.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, fields
from typing import Iterable, Mapping, Sequence

from .classify import ADDED, FRAGILE, MATCHED_MODIFIED, ClassChangeRecord
from .detect import ReleaseTestStats
from .errors import EmptySeries, InconsistentInputs, InsufficientRecords, InvalidCategory, UnknownRecordId
from .history import PairDiff


def ratio(num: float, den: float) -> float | None:
    return num / den if den > 0 else None


def mean(values: Iterable[float | None]) -> float | None:
    vals = [v for v in values if v is not None]
    return sum(vals) / len(vals) if vals else None


def lower_median(values: Iterable[float | None]) -> float | None:
    vals = sorted(v for v in values if v is not None)
    return vals[(len(vals) - 1) // 2] if vals else None


@dataclass
class ReleasePairMetrics:
    repo: str
    tool: str
    from_release: str
    to_release: str
    Tdiff: int
    Pdiff: int
    TTL_prev: int
    Plocs_prev: int
    TLR_prev: float | None
    TLR_next: float | None
    NTC_prev: int
    TM_prev: int
    MC: int
    MCMM: int
    MM: int
    methods_added: int
    methods_deleted: int
    MTLR: float | None = None
    MRTL: float | None = None
    TMR: float | None = None
    MCR: float | None = None
    MMR: float | None = None
    FCR: float | None = None
    RFCR: float | None = None

    RATIOS = ("TLR_prev", "TLR_next", "MTLR", "MRTL", "TMR", "MCR", "MMR", "FCR", "RFCR")


def pair_metrics(
    pair_diff: PairDiff,
    prev_stats: ReleaseTestStats,
    change_records: Sequence[ClassChangeRecord],
    next_stats: ReleaseTestStats | None = None,
    *,
    repo: str = "",
    exclude_new_files: bool = False,
    annotated_only: bool = False,
) -> ReleasePairMetrics:
    """Metrics for the transition ``pair_diff.prev`` -> ``pair_diff.next``.

    ``change_records`` holds one record per test file of the previous
    release plus ``added`` records for test files that appear in the next.
    """
    if prev_stats.release != pair_diff.prev:
        raise InconsistentInputs(f"stats for {prev_stats.release.name}, diff from {pair_diff.prev.name}")
    if next_stats is not None and next_stats.release != pair_diff.next:
        raise InconsistentInputs(f"stats for {next_stats.release.name}, diff to {pair_diff.next.name}")
    covered = {r.path for r in change_records if r.category != ADDED}
    if covered != set(prev_stats.test_files):
        raise InconsistentInputs("change records do not cover the previous release's test files")

    test_paths = set(prev_stats.test_files)
    if not exclude_new_files:
        test_paths |= {r.path for r in change_records if r.category == ADDED}
    tdiff = pair_diff.churn_of(test_paths)
    surviving = [r for r in change_records if r.category != ADDED]
    mc = sum(r.MC for r in surviving)
    mcmm = sum(r.MCMM for r in surviving)
    if annotated_only:
        mm = sum(
            1
            for r in surviving
            for c in r.method_changes
            if c.kind == MATCHED_MODIFIED and c.prev.is_annotated_test
        )
    else:
        mm = sum(r.MM for r in surviving)
    tlr_prev = prev_stats.TLR
    tm_prev = prev_stats.TM

    mrtl = tdiff / pair_diff.Pdiff if pair_diff.Pdiff > 0 and tlr_prev else None
    return ReleasePairMetrics(
        repo=repo,
        tool=prev_stats.tool,
        from_release=pair_diff.prev.name,
        to_release=pair_diff.next.name,
        Tdiff=tdiff,
        Pdiff=pair_diff.Pdiff,
        TTL_prev=prev_stats.TTL,
        Plocs_prev=prev_stats.Plocs,
        TLR_prev=tlr_prev,
        TLR_next=next_stats.TLR if next_stats is not None else None,
        NTC_prev=prev_stats.NTC,
        TM_prev=tm_prev,
        MC=mc,
        MCMM=mcmm,
        MM=mm,
        methods_added=sum(r.added for r in change_records),
        methods_deleted=sum(r.deleted for r in change_records),
        MTLR=ratio(tdiff, prev_stats.TTL),
        MRTL=mrtl,
        TMR=mrtl / tlr_prev if mrtl is not None else None,
        MCR=ratio(mc, prev_stats.NTC),
        MMR=ratio(mm, tm_prev),
        FCR=ratio(mcmm, prev_stats.NTC),
        RFCR=ratio(mcmm, mc),
    )


@dataclass
class ProjectReport:
    repo: str
    tool: str
    NTR: int
    NTC: int
    TTL: int
    TLR: float | None
    avg_TLR: float | None = None
    avg_MTLR: float | None = None
    avg_MRTL: float | None = None
    avg_TMR: float | None = None
    MRR: float | None = None
    TSV: float | None = None
    avg_MCR: float | None = None
    avg_MMR: float | None = None
    avg_FCR: float | None = None
    avg_RFCR: float | None = None
    FRR: float | None = None
    ADRR: float | None = None
    TSF: float | None = None
    history_classes: int = 0
    modified_classes: int = 0
    fragile_classes: int = 0


# project-level values averaged per tool set, in table order
SET_MEANS = (
    "avg_TLR", "avg_MTLR", "avg_MRTL", "avg_TMR", "MRR", "TSV",
    "avg_MCR", "avg_MMR", "avg_FCR", "avg_RFCR", "FRR", "ADRR", "TSF",
)


def project_report(
    series: Sequence[ReleasePairMetrics],
    class_history: Mapping[str, Sequence[ClassChangeRecord | str]],
    master: ReleaseTestStats,
    NTR: int | None = None,
) -> ProjectReport:
    """Aggregate a project's pair series.

    ``class_history`` maps each test-class path seen in any release to its
    change records (or bare category strings) across the pairs.
    """
    if not series:
        raise EmptySeries("a project report needs at least one release pair")
    ntr = NTR if NTR is not None else len(series) + 1
    modified = set()
    fragile = set()
    for path, events in class_history.items():
        for ev in events:
            if isinstance(ev, str):
                is_mod = ev not in ("unchanged", "added", "deleted")
                is_frag = ev == FRAGILE
            else:
                is_mod, is_frag = ev.MC > 0, ev.MCMM > 0
            if is_mod:
                modified.add(path)
            if is_frag:
                fragile.add(path)
    total = len(class_history)
    first = series[0]
    return ProjectReport(
        repo=first.repo,
        tool=first.tool,
        NTR=ntr,
        NTC=master.NTC,
        TTL=master.TTL,
        TLR=master.TLR,
        avg_TLR=mean(p.TLR_next for p in series),
        avg_MTLR=mean(p.MTLR for p in series),
        avg_MRTL=mean(p.MRTL for p in series),
        avg_TMR=mean(p.TMR for p in series),
        MRR=sum(p.MC > 0 for p in series) / ntr,
        TSV=ratio(len(modified), total),
        avg_MCR=mean(p.MCR for p in series),
        avg_MMR=mean(p.MMR for p in series),
        avg_FCR=mean(p.FCR for p in series),
        avg_RFCR=mean(p.RFCR for p in series),
        FRR=sum(p.MCMM > 0 for p in series) / ntr,
        ADRR=sum((p.methods_added + p.methods_deleted) > 0 for p in series) / ntr,
        TSF=ratio(len(fragile), total),
        history_classes=total,
        modified_classes=len(modified),
        fragile_classes=len(fragile),
    )


@dataclass
class ToolSummary:
    tool: str
    n: int
    TD: float | None
    NTR_avg: float | None = None
    NTR_median: float | None = None
    NTC_avg: float | None = None
    NTC_median: float | None = None
    TTL_avg: float | None = None
    TTL_median: float | None = None
    TLR_avg: float | None = None
    TLR_median: float | None = None
    avg_TLR: float | None = None
    avg_MTLR: float | None = None
    avg_MRTL: float | None = None
    avg_TMR: float | None = None
    MRR: float | None = None
    TSV: float | None = None
    avg_MCR: float | None = None
    avg_MMR: float | None = None
    avg_FCR: float | None = None
    avg_RFCR: float | None = None
    FRR: float | None = None
    ADRR: float | None = None
    TSF: float | None = None
    baseline: bool = False


def tool_diffusion(n: int, total_context: int) -> float:
    if total_context <= 0:
        raise ValueError("total_context must be positive")
    return n / total_context


def tool_summary(
    reports: Sequence[ProjectReport], total_context: int, tool: str | None = None, baseline: bool = False
) -> ToolSummary:
    """Per-tool row: TD, avg/median of master-release sizes, set means."""
    name = tool if tool is not None else (reports[0].tool if reports else "")
    if any(r.tool != name for r in reports):
        raise InconsistentInputs("reports from several tools passed to one summary")
    summary = ToolSummary(name, len(reports), tool_diffusion(len(reports), total_context), baseline=baseline)
    if not reports:
        return summary
    for attr in ("NTR", "NTC", "TTL", "TLR"):
        vals = [getattr(r, attr) for r in reports]
        setattr(summary, f"{attr}_avg", mean(vals))
        setattr(summary, f"{attr}_median", lower_median(vals))
    for attr in SET_MEANS:
        setattr(summary, attr, mean(getattr(r, attr) for r in reports))
    return summary


OVERALL = "Average"
WEIGHTED = ("NTR_avg", "NTC_avg", "TTL_avg", "TLR_avg") + SET_MEANS


def overall_row(summaries: Iterable[ToolSummary], include_baseline: bool = False) -> ToolSummary:
    """Means of the per-tool values weighted by set size.

    Sets overlap, so a project in two sets is counted twice, as in the
    published tables.  Tools whose value is undefined drop out of that
    column's weights.
    """
    rows = [s for s in summaries if include_baseline or not s.baseline]
    out = ToolSummary(OVERALL, sum(s.n for s in rows), None)
    for attr in WEIGHTED:
        pairs = [(s.n, getattr(s, attr)) for s in rows if s.n > 0 and getattr(s, attr) is not None]
        den = sum(n for n, _ in pairs)
        setattr(out, attr, sum(n * v for n, v in pairs) / den if den else None)
    return out


# --- validation -----------------------------------------------------------

LABEL_CATEGORIES = {"refactoring": False, "non-gui": False, "gui": True}
LEVELS = ("method", "class")


@dataclass
class PrecisionReport:
    level: str
    TP: int = 0
    FP: int = 0
    samples: list[tuple[str, str]] = field(default_factory=list)

    @property
    def P(self) -> float | None:
        return ratio(self.TP, self.TP + self.FP)


def precision(labels: Iterable[Mapping[str, str]], ledger: Iterable[Mapping] | None = None) -> dict[str, PrecisionReport]:
    """TP/(TP+FP) per level from manual labels.

    Only ``gui`` labels are true positives.  When ``ledger`` is given every
    label must name a class record (level ``class``) or a method change
    (level ``method``) in it.
    """
    class_ids: set[str] | None = None
    method_ids: set[str] | None = None
    if ledger is not None:
        class_ids, method_ids = set(), set()
        for rec in ledger:
            class_ids.add(rec["id"])
            method_ids.update(m["id"] for m in rec.get("methods", ()))
    reports = {lvl: PrecisionReport(lvl) for lvl in LEVELS}
    for row in labels:
        rid = row["record_id"].strip()
        level = row["level"].strip().lower()
        category = row["category"].strip().lower()
        if level not in reports:
            raise InvalidCategory(f"{rid}: level {level!r} is not one of {LEVELS}")
        if category not in LABEL_CATEGORIES:
            raise InvalidCategory(f"{rid}: category {category!r} is not one of {sorted(LABEL_CATEGORIES)}")
        known = class_ids if level == "class" else method_ids
        if known is not None and rid not in known:
            raise UnknownRecordId(f"{level} record {rid} is not in the change ledger")
        rep = reports[level]
        rep.samples.append((rid, category))
        if LABEL_CATEGORIES[category]:
            rep.TP += 1
        else:
            rep.FP += 1
    return reports


def sample_for_validation(ledger: Iterable[Mapping], k: int, seed: int) -> list[str]:
    """``k`` fragile class-record ids drawn uniformly without replacement."""
    eligible = sorted({rec["id"] for rec in ledger if rec.get("category") == FRAGILE})
    if k > len(eligible):
        raise InsufficientRecords(f"asked for {k} records, only {len(eligible)} fragile classes in the ledger")
    return random.Random(seed).sample(eligible, k)


def row_dict(obj) -> dict:
    return {f.name: getattr(obj, f.name) for f in fields(obj)}
