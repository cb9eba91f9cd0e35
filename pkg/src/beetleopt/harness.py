"""Experiment runner: parse a plan, execute seeded runs for every
(algorithm x function) cell, and emit convergence traces and summary tables.

Outputs under the chosen directory:

* ``convergence/<algo>_<func>.csv`` -- one row per (run, iteration) with the
  best-so-far value at 17 significant digits.
* ``summary/<block>.csv`` and ``summary/<block>.txt`` -- per function block,
  Best/Mean/Worst/Std/Rank per algorithm plus Sum Rank / Mean Rank footers.
* ``ranks.csv`` -- per-algorithm sum and mean rank across all functions.

Everything is deterministic given (config text, base seed): run ``r`` of any
cell uses seed ``base_seed + r``, records are merged by (algorithm,
function, run) before emission, and number formatting is fixed.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

from . import benchmarks, kernels, stats
from .baselines import run_bto, run_cdo, run_gsa, run_gwo, run_pso, run_sso
from .bbo import bbo_run
from .core import (
    BOUND_MODES,
    DEFAULT_ITERATIONS,
    DEFAULT_POPULATION,
    PREDATOR_MODES,
    ConfigurationError,
    RunConfig,
)
from .stats import RANK_STATISTICS, RunRecord, SummaryRow

#: Algorithm ids in the column order used by the summary tables.
ALGORITHMS = {
    "cdo": run_cdo,
    "sso": run_sso,
    "gsa": run_gsa,
    "pso": run_pso,
    "bto": run_bto,
    "gwo": run_gwo,
    "bbo": bbo_run,
}

DEFAULT_RUNS = 10

#: Function blocks matching the three summary tables.
SUMMARY_BLOCKS = (
    ("f1-f7", tuple(f"f{i}" for i in range(1, 8))),
    ("f8-f13", tuple(f"f{i}" for i in range(8, 14))),
    ("f14-f23", tuple(f"f{i}" for i in range(14, 24))),
)

_CONFIG_KEYS = (
    "algorithms",
    "functions",
    "runs",
    "population",
    "iterations",
    "chaos_map",
    "predator_mode",
    "bound_mode",
    "rank_statistic",
)


@dataclass
class ExperimentPlan:
    """A batch of cells plus the shared run settings."""

    algorithms: Tuple[str, ...] = tuple(ALGORITHMS)
    functions: Tuple[str, ...] = tuple(benchmarks.ids())
    runs: int = DEFAULT_RUNS
    population: int = DEFAULT_POPULATION
    iterations: int = DEFAULT_ITERATIONS
    chaos_map: str = "tent"
    predator_mode: str = "global-best"
    bound_mode: str = "clamp"
    rank_statistic: str = "best"
    base_seed: int = 1
    out_dir: str = "results"

    def cells(self) -> List[Tuple[str, str]]:
        return [(a, f) for a in self.algorithms for f in self.functions]

    def config_for(self, algorithm: str, function: str, run_index: int) -> RunConfig:
        return RunConfig(
            algorithm=algorithm,
            benchmark=function,
            population=self.population,
            iterations=self.iterations,
            seed=self.base_seed + run_index,
            chaos_map=self.chaos_map,
            predator_mode=self.predator_mode,
            bound_mode=self.bound_mode,
        )


@dataclass
class ExperimentResult:
    records: List[RunRecord]
    failures: List[Tuple[str, str, int, str]]  # (algorithm, function, run, message)


def _parse_list(value: str, known: Sequence[str], what: str) -> Tuple[str, ...]:
    if value.strip() == "all":
        return tuple(known)
    items = tuple(tok for tok in value.replace(",", " ").split() if tok)
    if not items:
        raise ValueError(f"empty {what} list")
    for item in items:
        if item not in known:
            raise ValueError(f"unknown {what} id {item!r}")
    return items


def _parse_positive_int(value: str, minimum: int, what: str) -> int:
    try:
        number = int(value)
    except ValueError:
        raise ValueError(f"{what} must be an integer, got {value!r}") from None
    if number < minimum:
        raise ValueError(f"{what} must be >= {minimum}, got {number}")
    return number


def _parse_choice(value: str, choices: Sequence[str], what: str) -> str:
    if value not in choices:
        raise ValueError(f"{what} must be one of {tuple(choices)}, got {value!r}")
    return value


def parse_config(text: str) -> ExperimentPlan:
    """Parse the line-oriented ``key = value`` plan format.

    Unknown keys, malformed values and unknown ids are all collected and
    reported together, each with its line number.  Keys left out keep their
    defaults (all algorithms, all functions, 10 runs of 30 agents for 1000
    iterations).
    """
    plan = ExperimentPlan()
    errors = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            errors.append(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
            continue
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        try:
            if key == "algorithms":
                plan.algorithms = _parse_list(value, tuple(ALGORITHMS), "algorithm")
            elif key == "functions":
                plan.functions = _parse_list(value, benchmarks.ids(), "function")
            elif key == "runs":
                plan.runs = _parse_positive_int(value, 1, "runs")
            elif key == "population":
                plan.population = _parse_positive_int(value, 2, "population")
            elif key == "iterations":
                plan.iterations = _parse_positive_int(value, 1, "iterations")
            elif key == "chaos_map":
                plan.chaos_map = _parse_choice(value, sorted(kernels.CHAOS_MAPS), "chaos_map")
            elif key == "predator_mode":
                plan.predator_mode = _parse_choice(value, PREDATOR_MODES, "predator_mode")
            elif key == "bound_mode":
                plan.bound_mode = _parse_choice(value, BOUND_MODES, "bound_mode")
            elif key == "rank_statistic":
                plan.rank_statistic = _parse_choice(value, RANK_STATISTICS, "rank_statistic")
            else:
                errors.append(f"line {lineno}: unknown key {key!r} (known: {', '.join(_CONFIG_KEYS)})")
        except ValueError as exc:
            errors.append(f"line {lineno}: {exc}")
    if errors:
        raise ConfigurationError("\n".join(errors))
    return plan


def execute_run(algorithm: str, function: str, config: RunConfig) -> RunRecord:
    """Run one cell once; the benchmark id supplies objective and space."""
    spec = benchmarks.get(function)
    return ALGORITHMS[algorithm](config, spec)


def _execute_args(args) -> RunRecord:
    algorithm, function, config = args
    return execute_run(algorithm, function, config)


def run_experiment(plan: ExperimentPlan, jobs: int = 1) -> ExperimentResult:
    """Execute every cell x run of the plan.

    Cells are independent, so ``jobs > 1`` fans runs out to worker
    processes; results are merged by (algorithm, function, run) and are
    identical regardless of scheduling.  A failing run is recorded and
    skipped rather than aborting the experiment.
    """
    tasks = [
        (algorithm, function, plan.config_for(algorithm, function, run_index))
        for algorithm, function in plan.cells()
        for run_index in range(plan.runs)
    ]
    records: List[RunRecord] = []
    failures: List[Tuple[str, str, int, str]] = []

    if jobs <= 1:
        outcomes = []
        for task in tasks:
            try:
                outcomes.append(_execute_args(task))
            except Exception as exc:  # recorded, not fatal
                outcomes.append(exc)
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_execute_args, task) for task in tasks]
            outcomes = []
            for future in futures:
                try:
                    outcomes.append(future.result())
                except Exception as exc:
                    outcomes.append(exc)

    for (algorithm, function, config), outcome in zip(tasks, outcomes):
        if isinstance(outcome, Exception):
            failures.append((algorithm, function, config.seed - plan.base_seed, str(outcome)))
        else:
            records.append(outcome)

    records.sort(key=lambda r: (r.algorithm, r.benchmark, r.seed))
    failures.sort()
    return ExperimentResult(records=records, failures=failures)


# --- emission ----------------------------------------------------------------


def _fmt_sci(value: float) -> str:
    return f"{value:.2E}"


def _fmt_trace(value: float) -> str:
    return f"{value:.17g}"


def _group_records(records: Sequence[RunRecord]) -> Dict[Tuple[str, str], List[RunRecord]]:
    cells: Dict[Tuple[str, str], List[RunRecord]] = {}
    for record in records:
        cells.setdefault((record.algorithm, record.benchmark), []).append(record)
    for group in cells.values():
        group.sort(key=lambda r: r.seed)
    return cells


def emit_convergence(records: Sequence[RunRecord], out_dir) -> List[Path]:
    """Write one ``iteration,run,best_so_far`` csv per cell."""
    if not records:
        raise ValueError("no records to emit")
    root = Path(out_dir) / "convergence"
    root.mkdir(parents=True, exist_ok=True)
    written = []
    for (algorithm, function), group in sorted(_group_records(records).items()):
        lines = ["iteration,run,best_so_far"]
        for run_index, record in enumerate(group):
            for iteration, value in enumerate(record.trace, start=1):
                lines.append(f"{iteration},{run_index},{_fmt_trace(value)}")
        path = root / f"{algorithm}_{function}.csv"
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        written.append(path)
    return written


def summarize_cells(records: Sequence[RunRecord]) -> Dict[str, Dict[str, SummaryRow]]:
    """function -> algorithm -> SummaryRow over the runs' final values."""
    table: Dict[str, Dict[str, SummaryRow]] = {}
    for (algorithm, function), group in _group_records(records).items():
        finals = [r.final_best for r in group]
        table.setdefault(function, {})[algorithm] = stats.summarize(finals)
    return table


def _algorithms_in(records: Sequence[RunRecord]) -> List[str]:
    present = {r.algorithm for r in records}
    ordered = [a for a in ALGORITHMS if a in present]
    ordered.extend(sorted(present - set(ALGORITHMS)))
    return ordered


def _function_order(functions) -> List[str]:
    known = {f: i for i, f in enumerate(benchmarks.ids())}
    return sorted(functions, key=lambda f: (known.get(f, len(known)), f))


def emit_summary(records: Sequence[RunRecord], out_dir, rank_statistic: str = "best") -> List[Path]:
    """Write the block summary tables (csv + aligned text) and ranks.csv."""
    if not records:
        raise ValueError("no records to emit")
    root = Path(out_dir) / "summary"
    root.mkdir(parents=True, exist_ok=True)
    table = summarize_cells(records)
    algorithms = _algorithms_in(records)

    ranks_by_function: Dict[str, Dict[str, int]] = {}
    for function, rows in table.items():
        ranks_by_function[function] = stats.rank_functions(rows, rank_statistic)

    written = []
    for block_name, block_functions in SUMMARY_BLOCKS:
        present = [f for f in block_functions if f in table]
        if not present:
            continue
        written.extend(
            _write_block(root, block_name, present, table, ranks_by_function, algorithms)
        )

    aggregate = stats.aggregate_ranks(ranks_by_function)
    lines = ["algorithm,sum_rank,mean_rank"]
    for algorithm in algorithms:
        entry = aggregate[algorithm]
        lines.append(f"{algorithm},{entry['sum_rank']:.0f},{entry['mean_rank']:.2f}")
    ranks_path = Path(out_dir) / "ranks.csv"
    ranks_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    written.append(ranks_path)
    return written


_STATISTICS = ("best", "mean", "worst", "std", "rank")


def _row_values(row: SummaryRow, statistic: str) -> str:
    if statistic == "rank":
        return str(row.rank)
    value = getattr(row, statistic)
    if value is None:
        return "NA"
    return _fmt_sci(value)


def _write_block(root, block_name, functions, table, ranks_by_function, algorithms):
    functions = _function_order(functions)
    block_ranks = {f: ranks_by_function[f] for f in functions}
    aggregate = stats.aggregate_ranks(block_ranks)

    rows = [["function", "statistic", *algorithms]]
    for function in functions:
        for statistic in _STATISTICS:
            cells = [
                _row_values(table[function][algorithm], statistic) for algorithm in algorithms
            ]
            rows.append([function, statistic, *cells])
    rows.append(["all", "sum_rank", *[f"{aggregate[a]['sum_rank']:.0f}" for a in algorithms]])
    rows.append(["all", "mean_rank", *[f"{aggregate[a]['mean_rank']:.2f}" for a in algorithms]])

    csv_path = root / f"{block_name}.csv"
    csv_path.write_text("\n".join(",".join(row) for row in rows) + "\n", encoding="utf-8")

    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    txt_lines = ["  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() for row in rows]
    txt_path = root / f"{block_name}.txt"
    txt_path.write_text("\n".join(txt_lines) + "\n", encoding="utf-8")
    return [csv_path, txt_path]


def run_and_emit(plan: ExperimentPlan, jobs: int = 1) -> ExperimentResult:
    """Execute the plan and write all artifacts under ``plan.out_dir``."""
    result = run_experiment(plan, jobs=jobs)
    if result.records:
        emit_convergence(result.records, plan.out_dir)
        emit_summary(result.records, plan.out_dir, plan.rank_statistic)
    if result.failures:
        lines = [
            f"{algorithm},{function},{run_index},{message}"
            for algorithm, function, run_index, message in result.failures
        ]
        failures_path = Path(plan.out_dir) / "failures.csv"
        failures_path.parent.mkdir(parents=True, exist_ok=True)
        failures_path.write_text(
            "algorithm,function,run,error\n" + "\n".join(lines) + "\n", encoding="utf-8"
        )
    return result
