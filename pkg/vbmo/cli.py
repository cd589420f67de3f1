"""
Command line interface: plan, bench, oracle, inspect, fetch and config.

Machine-readable output goes to stdout as JSON, diagnostics go to stderr
through the package logger.
"""

# Copyright (C) 2024, VBMO contributors

# This program is free software; you can redistribute it and/or
# modify it under the terms of the GNU General Public License
# as published by the Free Software Foundation; either version 2
# of the License, or (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program; if not, write to the Free Software
# Foundation, Inc., 51 Franklin Street, Fifth Floor, Boston,
# MA  02110-1301, USA.

from __future__ import annotations

import sys
import json
import logging
import argparse
from typing import Any
from pathlib import Path
from collections.abc import Sequence

from .__about__ import __id__, __summary__
from .bench import (ExperimentConfig, classify_maps, run_experiment,
                    summarize_result, table_rows, write_outputs, write_rows)
from .config import CornerCutting, HeuristicMode, PlannerConfig
from .exceptions import UsageError, VBMOError
from .executor import TrialExecutor
from .graph import Graph, GridGeometry
from .ingest import (check_reference_counts, fetch_dataset, load_graph,
                     resolve_sources)
from .objectives import build_layers, layer_correlation, parse_objectives
from .oracle import DEFAULT_CAP, oracle_report
from .search import SearchConfig
from .voting import Mechanism, parse_tie_break, report_json, vbmo

__all__ = ['build_parser', 'parse_vertex', 'run']

logger = logging.getLogger(__name__)
package_logger = logging.getLogger('vbmo')


def parse_vertex(text: str, g: Graph) -> int:
    """`row,col` on grid graphs, a 1-based DIMACS node id otherwise."""
    text = text.strip()

    if ',' in text:
        if not isinstance(g.geometry, GridGeometry):
            raise UsageError(f"{text!r}: row,col needs a grid map")

        try:
            row, col = (int(part) for part in text.split(','))
        except ValueError:
            raise UsageError(f"invalid cell {text!r}, "
                             "expected row,col") from None

        v = g.geometry.vertex_at(row, col)
        if v is None:
            raise UsageError(f"cell ({row}, {col}) is blocked "
                             "or outside the map")
        return v

    if isinstance(g.geometry, GridGeometry):
        raise UsageError(f"{text!r}: grid maps take row,col")

    try:
        node = int(text)
    except ValueError:
        raise UsageError(f"invalid node id {text!r}") from None

    if not 1 <= node <= g.vertex_count:
        raise UsageError(f"node {node} outside of 1..{g.vertex_count}")
    return node - 1


def _mechanisms(text: str) -> tuple[Mechanism, ...]:
    try:
        return tuple(Mechanism(m.strip()) for m in text.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"invalid mechanisms {text!r}, choose from range,borda,cav") \
            from None


def _emit(payload: Any) -> None:
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write('\n')


def _add_planner_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--map', type=Path, required=True,
                        help="MovingAI .map or DIMACS distance .gr file")
    parser.add_argument('--objectives', required=True,
                        help="e.g. distance,uniform:1,random:1:20:7")
    parser.add_argument('--start', required=True,
                        help="row,col for grids, node id for road graphs")
    parser.add_argument('--goal', required=True)
    parser.add_argument('--mechanism', type=Mechanism,
                        choices=list(Mechanism), default=Mechanism.RANGE,
                        metavar='{range,borda,cav}')
    _add_search_options(parser)


def _add_search_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--heuristic-mode', type=HeuristicMode,
                        choices=list(HeuristicMode),
                        metavar='{admissible,paper-faithful}',
                        help="admissible (default) or paper-faithful, "
                        "also accepted as geometric")
    parser.add_argument('--corner-cutting', type=CornerCutting,
                        choices=list(CornerCutting),
                        metavar='{allow,forbid}')
    parser.add_argument('--diagonal-cost', type=float)
    parser.add_argument('--tie-break',
                        help="lowest (default) or random:<seed>")
    parser.add_argument('--seed', type=int,
                        help="seed for random objectives without one")
    parser.add_argument('--threads', type=int,
                        help="worker threads, 0 picks automatically")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=__id__, description=__summary__)
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help="-v for progress, -vv for debugging output")
    parser.add_argument('--config-dir', type=Path,
                        help="directory holding the defaults file")

    commands = parser.add_subparsers(dest='command', required=True)

    plan = commands.add_parser('plan', help="one VBMO run, JSON report")
    _add_planner_options(plan)

    oracle = commands.add_parser('oracle',
                                 help="exact frontier of a small instance")
    _add_planner_options(oracle)
    oracle.add_argument('--cap', type=int, default=DEFAULT_CAP,
                        help="maximum number of enumerated paths")

    bench = commands.add_parser('bench', help="VBMO against Weighted")
    bench.add_argument('--maps', type=Path, nargs='+', required=True,
                       help="map files or directories")
    bench.add_argument('--objectives', action='append', required=True,
                       help="objective configuration, may be repeated")
    bench.add_argument('--mechanisms', type=_mechanisms,
                       default=tuple(Mechanism))
    bench.add_argument('--baseline', choices=('weighted', 'none'),
                       default='weighted')
    bench.add_argument('--runs', type=int)
    bench.add_argument('--map-sample', type=int)
    bench.add_argument('--full-corpus', action='store_true',
                       help="use every map instead of a sample")
    bench.add_argument('--out', type=Path, required=True)
    _add_search_options(bench)

    inspect = commands.add_parser('inspect', help="map statistics")
    inspect.add_argument('maps', type=Path, nargs='+')
    inspect.add_argument('--corner-cutting', type=CornerCutting,
                         choices=list(CornerCutting),
                         metavar='{allow,forbid}')

    fetch = commands.add_parser('fetch', help="download public datasets")
    fetch.add_argument('dataset', choices=('ny', 'dao'))
    fetch.add_argument('--dest', type=Path, default=Path('data'))

    config = commands.add_parser('config', help="show or set defaults")
    actions = config.add_subparsers(dest='action', required=True)
    actions.add_parser('show')
    setter = actions.add_parser('set')
    setter.add_argument('key', choices=PlannerConfig.KEYS)
    setter.add_argument('value')

    return parser


def _pick(flag: Any, default: Any) -> Any:
    return default if flag is None else flag


def _load(args: argparse.Namespace, defaults: PlannerConfig) -> Graph:
    cutting = _pick(args.corner_cutting, defaults.corner_cutting)
    g = load_graph(args.map, cutting)

    return build_layers(g, parse_objectives(args.objectives),
                        seed=_pick(args.seed, defaults.seed),
                        diagonal_cost=_pick(args.diagonal_cost,
                                            defaults.diagonal_cost))


def _search_config(args: argparse.Namespace,
                   defaults: PlannerConfig) -> SearchConfig:
    return SearchConfig(heuristic_mode=_pick(args.heuristic_mode,
                                             defaults.heuristic_mode))


def _executor(args: argparse.Namespace,
              defaults: PlannerConfig) -> TrialExecutor | None:
    threads = _pick(args.threads, defaults.threads)
    return None if threads == 1 else TrialExecutor(threads)


def cmd_plan(args: argparse.Namespace, defaults: PlannerConfig) -> int:
    g = _load(args, defaults)
    start, goal = parse_vertex(args.start, g), parse_vertex(args.goal, g)

    executor = _executor(args, defaults)
    try:
        report = vbmo(g, start, goal, args.mechanism,
                      _search_config(args, defaults),
                      parse_tie_break(_pick(args.tie_break,
                                            defaults.tie_break)),
                      executor)
    finally:
        if executor is not None:
            executor.shutdown()

    _emit(report_json(report, g))
    return 0


def cmd_oracle(args: argparse.Namespace, defaults: PlannerConfig) -> int:
    g = _load(args, defaults)
    start, goal = parse_vertex(args.start, g), parse_vertex(args.goal, g)

    _emit(oracle_report(g, start, goal, _search_config(args, defaults),
                        args.mechanism, args.cap))
    return 0


def cmd_bench(args: argparse.Namespace, defaults: PlannerConfig) -> int:
    sample = None if args.full_corpus else _pick(args.map_sample,
                                                 defaults.map_sample)
    several = len(args.objectives) > 1

    summaries = []
    experiments = []

    for i, objectives in enumerate(args.objectives, 1):
        out = args.out / f"config-{i}" if several else args.out

        cfg = ExperimentConfig.build(
            maps=tuple(args.maps), objectives=objectives,
            mechanisms=args.mechanisms,
            baseline=args.baseline == 'weighted',
            runs=_pick(args.runs, defaults.runs),
            seed=_pick(args.seed, defaults.seed),
            heuristic_mode=_pick(args.heuristic_mode,
                                 defaults.heuristic_mode),
            corner_cutting=_pick(args.corner_cutting,
                                 defaults.corner_cutting),
            diagonal_cost=_pick(args.diagonal_cost, defaults.diagonal_cost),
            tie_break=_pick(args.tie_break, defaults.tie_break),
            map_sample=sample, out=out,
            threads=_pick(args.threads, defaults.threads))

        result = run_experiment(cfg)
        if not result.records:
            raise UsageError(f"no trial of {objectives!r} completed")

        summary = summarize_result(result)
        write_outputs(out, result, summary)

        summaries.append(summary)
        experiments.append({
            'objectives': objectives,
            'out': str(out),
            'summary': summary.model_dump(mode='json'),
            'maps': classify_maps(summary),
        })

    write_rows(args.out / 'table.csv', table_rows(summaries))

    _emit({'experiments': experiments})
    return 0


def _inspect_one(path: Path, cutting: CornerCutting) -> dict[str, Any]:
    g = load_graph(path, cutting)
    components, _ = g.components()

    stats: dict[str, Any] = {
        'map': path.stem,
        'nodes': g.vertex_count,
        'edges': g.edge_count,
        'average_degree': g.average_degree,
        'components': components,
        'objectives': g.objective_names,
    }

    note = check_reference_counts(path.stem, g.vertex_count, g.edge_count)
    if note is not None:
        stats['note'] = note

    if g.objective_count >= 2:
        stats['layer_correlation'] = layer_correlation(g, 0, 1)

    return stats


def cmd_inspect(args: argparse.Namespace, defaults: PlannerConfig) -> int:
    cutting = _pick(args.corner_cutting, defaults.corner_cutting)
    stats = [_inspect_one(source.path, cutting)
             for source in resolve_sources(args.maps)]

    _emit(stats[0] if len(stats) == 1 else stats)
    return 0


def cmd_fetch(args: argparse.Namespace, defaults: PlannerConfig) -> int:
    written = fetch_dataset(args.dataset, args.dest)
    _emit({'dataset': args.dataset, 'files': [str(p) for p in written]})
    return 0


def cmd_config(args: argparse.Namespace, defaults: PlannerConfig) -> int:
    if args.action == 'set':
        defaults.set_value(args.key, args.value)

    _emit(defaults.as_dict())
    return 0


COMMANDS = {
    'plan': cmd_plan,
    'oracle': cmd_oracle,
    'bench': cmd_bench,
    'inspect': cmd_inspect,
    'fetch': cmd_fetch,
    'config': cmd_config,
}


def _set_verbosity(level: int) -> None:
    if level >= 2:
        package_logger.setLevel(logging.DEBUG)
    elif level == 1:
        package_logger.setLevel(logging.INFO)
    else:
        package_logger.setLevel(logging.WARNING)


def run(argv: Sequence[str] | None = None) -> int:
    """Parse `argv` and run a command, returning the exit code."""
    args = build_parser().parse_args(argv)
    _set_verbosity(args.verbose)

    try:
        defaults = PlannerConfig(args.config_dir)
        return COMMANDS[args.command](args, defaults)
    except VBMOError as e:
        logger.error(f"{__id__}: error: {e}")
        return e.exit_code
