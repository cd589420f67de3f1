"""
Aggregate experiment records into summaries, tables and files.
"""

from __future__ import annotations

import csv
import logging
from pathlib import Path
from statistics import fmean
from collections import Counter, defaultdict
from collections.abc import Iterable, Sequence
from typing import Literal

from pydantic import BaseModel

from ..exceptions import UsageError
from .harness import WEIGHTED, ExperimentRecord, ExperimentResult
from .stats import MIN_PAIRS, significant, wilcoxon_signed_rank

logger = logging.getLogger(__name__)

RECORD_FIELDS = ('map', 'start', 'goal', 'planner', 'mechanism', 'score',
                 'time_ms', 'expansions', 'winner_objective')
TIMING_FIELDS = ('time_ms',)

Outcome = Literal['better', 'worse', 'no-difference']
OUTCOMES: tuple[Outcome, ...] = ('better', 'worse', 'no-difference')


class PlannerSummary(BaseModel):
    trials: int
    score: float
    time_ms: float
    expansions: float


class Comparison(BaseModel):
    """One VBMO mechanism against the baseline over paired trials."""

    vbmo_score: float
    weighted_score: float
    score_p: float | None
    vbmo_time_ms: float
    weighted_time_ms: float
    time_p: float | None


class MapComparison(BaseModel):
    map: str
    mechanism: str
    vbmo_score: float
    weighted_score: float
    p_value: float | None
    outcome: Outcome


class Summary(BaseModel):
    objectives: str
    objective_names: tuple[str, ...]
    planners: dict[str, PlannerSummary]
    selection: dict[str, dict[str, float]]
    """Percent of trials won by each source objective, per mechanism."""
    comparisons: dict[str, Comparison]
    maps: list[MapComparison]
    skipped: int = 0
    violations: int = 0


def _p_value(a: Sequence[float], b: Sequence[float]) -> float | None:
    if len(a) < MIN_PAIRS:
        return None
    return wilcoxon_signed_rank(a, b)


def _outcome(vbmo: Sequence[float], weighted: Sequence[float],
             p: float | None) -> Outcome:
    if not significant(p):
        return 'no-difference'
    return 'better' if fmean(vbmo) < fmean(weighted) else 'worse'


def _pairs(records: Iterable[ExperimentRecord], mechanism: str
           ) -> list[tuple[ExperimentRecord, ExperimentRecord]]:
    """VBMO and baseline records of the same trial, in record order."""
    baseline = {r.key[:3]: r for r in records if r.planner == WEIGHTED}

    return [(r, baseline[r.key[:3]]) for r in records
            if r.mechanism == mechanism and r.key[:3] in baseline]


def selection_frequencies(records: Sequence[ExperimentRecord],
                          objective_names: Sequence[str]
                          ) -> dict[str, dict[str, float]]:
    mechanisms = sorted({r.mechanism for r in records if r.mechanism})
    frequencies = {}

    for mechanism in mechanisms:
        won = Counter(r.winner_objective for r in records
                      if r.mechanism == mechanism)
        total = sum(won.values())
        frequencies[mechanism] = {name: 100 * won[name] / total
                                  for name in objective_names}
    return frequencies


def summarize(records: Sequence[ExperimentRecord],
              objective_names: Sequence[str] = (),
              objectives: str = '') -> Summary:
    """Means per planner, selection shares and significance flags."""
    if not records:
        raise UsageError("no experiment records to summarize")

    if not objective_names:
        objective_names = sorted({r.winner_objective for r in records
                                  if r.planner != WEIGHTED})

    by_label: dict[str, list[ExperimentRecord]] = defaultdict(list)
    for r in records:
        by_label[r.label].append(r)

    planners = {
        label: PlannerSummary(
            trials=len(group),
            score=fmean(r.score for r in group),
            time_ms=fmean(r.time_ms for r in group),
            expansions=fmean(r.expansions for r in group))
        for label, group in sorted(by_label.items())
    }

    comparisons = {}
    maps = []

    for mechanism in sorted({r.mechanism for r in records if r.mechanism}):
        pairs = _pairs(records, mechanism)
        if not pairs:
            continue

        vbmo = [v.score for v, _ in pairs]
        weighted = [w.score for _, w in pairs]
        vbmo_time = [v.time_ms for v, _ in pairs]
        weighted_time = [w.time_ms for _, w in pairs]

        comparisons[mechanism] = Comparison(
            vbmo_score=fmean(vbmo), weighted_score=fmean(weighted),
            score_p=_p_value(vbmo, weighted),
            vbmo_time_ms=fmean(vbmo_time),
            weighted_time_ms=fmean(weighted_time),
            time_p=_p_value(vbmo_time, weighted_time))

        per_map: dict[str, list[tuple[float, float]]] = defaultdict(list)
        for v, w in pairs:
            per_map[v.map].append((v.score, w.score))

        for map_id, scores in sorted(per_map.items()):
            a = [s for s, _ in scores]
            b = [s for _, s in scores]
            p = _p_value(a, b)
            maps.append(MapComparison(map=map_id, mechanism=mechanism,
                                      vbmo_score=fmean(a),
                                      weighted_score=fmean(b), p_value=p,
                                      outcome=_outcome(a, b, p)))

    return Summary(objectives=objectives,
                   objective_names=tuple(objective_names),
                   planners=planners,
                   selection=selection_frequencies(records, objective_names),
                   comparisons=comparisons, maps=maps)


def summarize_result(result: ExperimentResult) -> Summary:
    summary = summarize(result.records, result.objective_names,
                        result.config.objectives)
    return summary.model_copy(update={'skipped': result.skipped,
                                      'violations': result.violations})


def classify_maps(summary: Summary) -> dict[str, dict[Outcome, int]]:
    """Maps where VBMO scored significantly better, worse or neither."""
    counts: dict[str, dict[Outcome, int]] = {}

    for m in summary.maps:
        tally = counts.setdefault(m.mechanism, dict.fromkeys(OUTCOMES, 0))
        tally[m.outcome] += 1
    return counts


def selection_table(summary: Summary) -> list[list[str]]:
    """Rows of mechanism and percent selected per source objective."""
    names = list(summary.objective_names)
    rows = [['mechanism', *names]]

    for mechanism, shares in summary.selection.items():
        rows.append([mechanism, *(f"{shares[n]:.1f}" for n in names)])
    return rows


def _mark(value: float, other: float, p: float | None) -> str:
    text = f"{value:.3f}"
    return text + '*' if significant(p) and value < other else text


def table_rows(summaries: Sequence[Summary],
               mechanism: str = 'range') -> list[list[str]]:
    """Score and time of VBMO and the baseline, one row per configuration.

    An asterisk marks the better value of a significant difference.
    """
    rows = [['objectives', 'vbmo_score', 'weighted_score',
             'vbmo_time_ms', 'weighted_time_ms']]

    for summary in summaries:
        c = summary.comparisons.get(mechanism)
        if c is None:
            logger.warning(f"No {mechanism} comparison for "
                           f"{summary.objectives!r}")
            continue

        rows.append([
            summary.objectives,
            _mark(c.vbmo_score, c.weighted_score, c.score_p),
            _mark(c.weighted_score, c.vbmo_score, c.score_p),
            _mark(c.vbmo_time_ms, c.weighted_time_ms, c.time_p),
            _mark(c.weighted_time_ms, c.vbmo_time_ms, c.time_p),
        ])
    return rows


def write_records(path: Path, records: Iterable[ExperimentRecord],
                  timing: bool = True) -> None:
    """CSV of every record, sorted by trial."""
    fields = [f for f in RECORD_FIELDS if timing or f not in TIMING_FIELDS]

    with path.open('w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(fields)

        for r in sorted(records, key=lambda r: r.key):
            row = r.model_dump()
            writer.writerow([f"{row[k]:.12g}" if isinstance(row[k], float)
                             else row[k] for k in fields])


def write_rows(path: Path, rows: Sequence[Sequence[str]]) -> None:
    with path.open('w', newline='') as f:
        csv.writer(f, lineterminator='\n').writerows(rows)


def write_summary(path: Path, summary: Summary) -> None:
    path.write_text(summary.model_dump_json(indent=2) + '\n')


def write_outputs(out: Path, result: ExperimentResult,
                  summary: Summary) -> list[Path]:
    """records.csv, summary.json and selection.csv under `out`.

    records.deterministic.csv repeats the records without timings, so it
    is byte-identical across runs of the same configuration.
    """
    out.mkdir(parents=True, exist_ok=True)

    written = [out / 'records.csv', out / 'summary.json',
               out / 'selection.csv', out / 'records.deterministic.csv']

    write_records(written[0], result.records)
    write_summary(written[1], summary)
    write_rows(written[2], selection_table(summary))
    write_records(written[3], result.records, timing=False)

    logger.info(f"Wrote {', '.join(p.name for p in written)} to {out}")
    return written
