"""
Experiment runner comparing VBMO against the weighted-sum baseline.
"""

from __future__ import annotations

import zlib
import logging
from pathlib import Path
from datetime import datetime
from typing import Literal

from pydantic import (BaseModel, ConfigDict, Field, PositiveInt,
                      ValidationError, field_validator)

from ..config import CornerCutting, HeuristicMode
from ..exceptions import ParseError, UsageError, VBMOError
from ..executor import TrialExecutor
from ..graph import Graph
from ..ingest import Source, load_graph, resolve_sources
from ..objectives import SQRT2, build_layers, parse_objectives
from ..search import Plan, SearchConfig, astar_weighted
from ..voting import (Mechanism, ScoreMatrix, TieBreak, VbmoReport,
                      build_score_matrix, generate_plans, pareto_filter,
                      parse_tie_break, score_plan_against, vote)
from .sampling import sample_pairs

logger = logging.getLogger(__name__)

LOG_DIRECTORY = 'log'
WEIGHTED = 'weighted'


class ExperimentConfig(BaseModel):
    """One objective configuration run over a set of maps."""

    model_config = ConfigDict(frozen=True)

    maps: tuple[Path, ...]
    objectives: str
    mechanisms: tuple[Mechanism, ...] = tuple(Mechanism)
    baseline: bool = True
    runs: PositiveInt = 50
    seed: int = Field(default=0, ge=0)
    heuristic_mode: HeuristicMode = HeuristicMode.ADMISSIBLE
    corner_cutting: CornerCutting = CornerCutting.FORBID
    diagonal_cost: float = Field(default=SQRT2, gt=0)
    tie_break: str = 'lowest'

    map_sample: PositiveInt | None = 10
    """Maps drawn from the sources, None for the full corpus."""

    out: Path | None = None
    threads: int = 1

    @field_validator('objectives')
    @classmethod
    def _check_objectives(cls, text: str) -> str:
        try:
            specs = parse_objectives(text)
        except ParseError as e:
            raise ValueError(str(e)) from None

        if len(specs) < 2:
            raise ValueError("a vote needs at least two objectives")
        return text

    @field_validator('mechanisms')
    @classmethod
    def _check_mechanisms(cls,
                          mechanisms: tuple[Mechanism, ...]
                          ) -> tuple[Mechanism, ...]:
        if not mechanisms:
            raise ValueError("no voting mechanism selected")
        return tuple(dict.fromkeys(mechanisms))

    @classmethod
    def build(cls, **fields) -> ExperimentConfig:
        """Validate, reporting problems as usage errors."""
        try:
            return cls(**fields)
        except ValidationError as e:
            error = e.errors()[0]
            where = '.'.join(str(part) for part in error['loc'])
            raise UsageError(f"invalid {where}: {error['msg']}") from None


class ExperimentRecord(BaseModel):
    """One planner's result on one start/goal pair."""

    model_config = ConfigDict(frozen=True)

    map: str
    start: int
    goal: int
    planner: Literal['vbmo', 'weighted']
    mechanism: str = ''
    score: float
    time_ms: float
    expansions: int
    winner_objective: str

    @property
    def key(self) -> tuple[str, int, int, str, str]:
        return self.map, self.start, self.goal, self.planner, self.mechanism

    @property
    def label(self) -> str:
        """`vbmo-range` style planner name, `weighted` for the baseline."""
        return f"vbmo-{self.mechanism}" if self.mechanism else self.planner


class ExperimentResult(BaseModel):
    config: ExperimentConfig
    objective_names: tuple[str, ...]
    records: tuple[ExperimentRecord, ...]
    skipped: int = 0
    violations: int = 0
    """Trials whose winner was dominated by another of its plans."""


def score_selected_plan(matrix: ScoreMatrix,
                        plan: Plan | VbmoReport) -> float:
    """Range total of a selected plan against the run's VBMO plans."""
    if isinstance(plan, VbmoReport):
        plan = plan.selected
    return score_plan_against(matrix, plan.raw_costs)


def _add_logger_file_handler(out: Path) -> logging.Handler:
    filename = f"bench_log_{datetime.now():%Y-%m-%d}.log"

    log_dir = out / LOG_DIRECTORY
    log_dir.mkdir(exist_ok=True, parents=True)

    file_handler = logging.FileHandler(log_dir / filename)
    file_handler.setLevel(logging.WARNING)

    logging.getLogger('vbmo').addHandler(file_handler)
    return file_handler


class _Trial:
    """Both planners on one map and pair."""

    def __init__(self, cfg: ExperimentConfig, map_id: str, g: Graph,
                 search: SearchConfig, tie_break: TieBreak) -> None:
        self.cfg = cfg
        self.map_id = map_id
        self.g = g
        self.search = search
        self.tie_break = tie_break

    def __call__(self, pair: tuple[int, int]
                 ) -> tuple[list[ExperimentRecord], bool] | None:
        start, goal = pair

        try:
            return self._run(start, goal)
        except VBMOError:
            logger.exception(f"{self.map_id}: skipping pair {start}->{goal}")
            return None

    def _run(self, start: int,
             goal: int) -> tuple[list[ExperimentRecord], bool]:
        g, names = self.g, self.g.objective_names

        plans = generate_plans(g, start, goal, self.search)
        matrix = build_score_matrix(plans, g)

        planning = sum(plan.elapsed for plan in plans)
        expansions = sum(plan.expansions for plan in plans)
        frontier = set(pareto_filter(plans))
        sound = True

        records = []
        for mechanism in self.cfg.mechanisms:
            outcome = vote(matrix, mechanism, self.tie_break)
            winner = plans[outcome.winner]

            if outcome.winner not in frontier:
                logger.error(f"{self.map_id}: {mechanism.value} picked a "
                             f"dominated plan for {start}->{goal}")
                sound = False

            records.append(ExperimentRecord(
                map=self.map_id, start=start, goal=goal, planner='vbmo',
                mechanism=mechanism.value,
                score=score_selected_plan(matrix, winner),
                time_ms=planning * 1000, expansions=expansions,
                winner_objective=names[outcome.winner]))

        if self.cfg.baseline:
            weights = [1.0] * g.objective_count
            plan = astar_weighted(g, weights, start, goal, self.search)

            records.append(ExperimentRecord(
                map=self.map_id, start=start, goal=goal, planner=WEIGHTED,
                score=score_selected_plan(matrix, plan),
                time_ms=plan.elapsed * 1000, expansions=plan.expansions,
                winner_objective=WEIGHTED))

        return records, sound


def _pair_seed(seed: int, map_id: str) -> list[int]:
    return [seed, zlib.crc32(map_id.encode())]


def prepare_graph(cfg: ExperimentConfig, source: Source) -> Graph:
    """Load a map and label it with the configured objectives."""
    g = load_graph(source.path, cfg.corner_cutting)
    return build_layers(g, parse_objectives(cfg.objectives), seed=cfg.seed,
                        diagonal_cost=cfg.diagonal_cost)


def run_experiment(cfg: ExperimentConfig,
                   executor: TrialExecutor | None = None) -> ExperimentResult:
    """Run every sampled pair of every map, skipping failed pairs."""
    handler = _add_logger_file_handler(cfg.out) if cfg.out else None

    search = SearchConfig(heuristic_mode=cfg.heuristic_mode)
    tie_break = parse_tie_break(cfg.tie_break)

    own_executor = executor is None and cfg.threads != 1
    if own_executor:
        executor = TrialExecutor(cfg.threads)

    records: list[ExperimentRecord] = []
    names: tuple[str, ...] = ()
    skipped = violations = 0

    try:
        for source in resolve_sources(list(cfg.maps), cfg.map_sample,
                                      cfg.seed):
            try:
                g = prepare_graph(cfg, source)
                pairs = sample_pairs(g, cfg.runs,
                                     _pair_seed(cfg.seed, source.map_id))
            except VBMOError:
                logger.exception(f"Skipping map {source.map_id}")
                skipped += cfg.runs
                continue

            names = tuple(g.objective_names)
            trial = _Trial(cfg, source.map_id, g, search, tie_break)

            if executor is None:
                results = [trial(pair) for pair in pairs]
            else:
                results = executor.run_all(trial, pairs)

            for result in results:
                if result is None:
                    skipped += 1
                    continue
                trial_records, sound = result
                records.extend(trial_records)
                violations += not sound

            logger.info(f"{source.map_id}: {len(pairs)} pairs done")
    finally:
        if own_executor and executor is not None:
            executor.shutdown()
        if handler is not None:
            logging.getLogger('vbmo').removeHandler(handler)
            handler.close()

    records.sort(key=lambda r: r.key)

    if skipped:
        logger.warning(f"Skipped {skipped} trials")

    return ExperimentResult(config=cfg, objective_names=names,
                            records=tuple(records), skipped=skipped,
                            violations=violations)
