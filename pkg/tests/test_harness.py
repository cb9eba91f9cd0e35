import numpy as np
import pytest

from beetleopt import benchmarks
from beetleopt.cli import main as cli_main
from beetleopt.core import ConfigurationError
from beetleopt.harness import (
    ALGORITHMS,
    ExperimentPlan,
    emit_convergence,
    emit_summary,
    parse_config,
    run_and_emit,
    run_experiment,
    summarize_cells,
)


class TestParseConfig:
    def test_empty_config_is_full_default_plan(self):
        plan = parse_config("")
        assert plan.algorithms == tuple(ALGORITHMS)
        assert plan.functions == tuple(benchmarks.ids())
        assert len(plan.cells()) == 7 * 23 == 161
        assert len(plan.cells()) * plan.runs == 1610
        assert plan.runs == 10
        assert plan.population == 30
        assert plan.iterations == 1000

    def test_single_cell_plan(self):
        plan = parse_config("algorithms = bbo\nfunctions = f1\n")
        assert plan.cells() == [("bbo", "f1")]

    def test_comments_and_blank_lines(self):
        plan = parse_config("# a comment\n\nruns = 3  # trailing\n")
        assert plan.runs == 3

    def test_comma_separated_lists(self):
        plan = parse_config("algorithms = bbo, pso\nfunctions = f1 f9,f14\n")
        assert plan.algorithms == ("bbo", "pso")
        assert plan.functions == ("f1", "f9", "f14")

    def test_zero_runs_rejected_with_line_number(self):
        with pytest.raises(ConfigurationError, match="line 1"):
            parse_config("runs = 0")

    def test_unknown_key_reported_with_line_number(self):
        with pytest.raises(ConfigurationError, match="line 2.*unknown key"):
            parse_config("runs = 2\nswarm = big\n")

    def test_unknown_ids_reported(self):
        with pytest.raises(ConfigurationError, match="unknown algorithm"):
            parse_config("algorithms = abc")
        with pytest.raises(ConfigurationError, match="unknown function"):
            parse_config("functions = f99")

    def test_multiple_errors_all_reported(self):
        try:
            parse_config("runs = x\nbogus = 1\npopulation = 1\n")
        except ConfigurationError as exc:
            message = str(exc)
        assert "line 1" in message and "line 2" in message and "line 3" in message

    def test_malformed_line_reported(self):
        with pytest.raises(ConfigurationError, match="line 1"):
            parse_config("just words\n")

    def test_choice_keys(self):
        plan = parse_config(
            "chaos_map = singer\npredator_mode = random-agent\n"
            "bound_mode = reflect\nrank_statistic = mean\n"
        )
        assert plan.chaos_map == "singer"
        assert plan.predator_mode == "random-agent"
        assert plan.bound_mode == "reflect"
        assert plan.rank_statistic == "mean"
        with pytest.raises(ConfigurationError):
            parse_config("chaos_map = lorenz")


def tiny_plan(**overrides):
    defaults = dict(
        algorithms=("bbo", "pso"),
        functions=("f1", "f16"),
        runs=2,
        population=4,
        iterations=10,
        base_seed=7,
    )
    defaults.update(overrides)
    return ExperimentPlan(**defaults)


class TestRunExperiment:
    def test_seed_derivation_and_counts(self):
        plan = tiny_plan()
        result = run_experiment(plan)
        assert len(result.records) == 2 * 2 * 2
        assert not result.failures
        seeds = {(r.algorithm, r.benchmark): [] for r in result.records}
        for record in result.records:
            seeds[(record.algorithm, record.benchmark)].append(record.seed)
        for cell_seeds in seeds.values():
            assert cell_seeds == [7, 8]

    def test_rerun_is_identical(self):
        plan = tiny_plan()
        a = run_experiment(plan)
        b = run_experiment(plan)
        for ra, rb in zip(a.records, b.records):
            assert ra.algorithm == rb.algorithm and ra.benchmark == rb.benchmark
            assert np.array_equal(ra.trace, rb.trace)

    def test_serial_and_concurrent_agree(self):
        plan = tiny_plan()
        serial = run_experiment(plan, jobs=1)
        parallel = run_experiment(plan, jobs=2)
        assert len(serial.records) == len(parallel.records)
        for ra, rb in zip(serial.records, parallel.records):
            assert (ra.algorithm, ra.benchmark, ra.seed) == (rb.algorithm, rb.benchmark, rb.seed)
            assert np.array_equal(ra.trace, rb.trace)

    def test_failures_recorded_not_fatal(self, monkeypatch):
        import beetleopt.harness as harness

        real = harness.execute_run

        def flaky(algorithm, function, config):
            if algorithm == "pso" and config.seed == 8:
                raise RuntimeError("boom")
            return real(algorithm, function, config)

        monkeypatch.setattr(harness, "execute_run", flaky)
        result = run_experiment(tiny_plan())
        assert len(result.failures) == 2  # pso seed-8 run on both functions
        assert len(result.records) == 6
        assert all(message == "boom" for *_key, message in result.failures)


class TestEmission:
    def test_convergence_files(self, tmp_path):
        plan = tiny_plan()
        result = run_experiment(plan)
        paths = emit_convergence(result.records, tmp_path)
        assert sorted(p.name for p in paths) == [
            "bbo_f1.csv",
            "bbo_f16.csv",
            "pso_f1.csv",
            "pso_f16.csv",
        ]
        lines = (tmp_path / "convergence" / "bbo_f1.csv").read_text().splitlines()
        assert lines[0] == "iteration,run,best_so_far"
        assert len(lines) == 1 + plan.runs * plan.iterations
        series = {}
        for row in lines[1:]:
            iteration, run, value = row.split(",")
            assert 1 <= int(iteration) <= plan.iterations
            assert int(run) in (0, 1)
            series.setdefault(int(run), []).append(float(value))
        for values in series.values():
            assert all(b <= a for a, b in zip(values, values[1:]))

    def test_convergence_values_round_trip(self, tmp_path):
        plan = tiny_plan(runs=1)
        result = run_experiment(plan)
        emit_convergence(result.records, tmp_path)
        record = next(r for r in result.records if (r.algorithm, r.benchmark) == ("bbo", "f1"))
        lines = (tmp_path / "convergence" / "bbo_f1.csv").read_text().splitlines()[1:]
        values = [float(row.split(",")[2]) for row in lines]
        assert values == list(record.trace)

    def test_emission_deterministic(self, tmp_path):
        result = run_experiment(tiny_plan())
        emit_convergence(result.records, tmp_path / "one")
        emit_convergence(result.records, tmp_path / "two")
        a = (tmp_path / "one" / "convergence" / "pso_f16.csv").read_bytes()
        b = (tmp_path / "two" / "convergence" / "pso_f16.csv").read_bytes()
        assert a == b

    def test_summary_tables(self, tmp_path):
        plan = tiny_plan()
        result = run_experiment(plan)
        paths = emit_summary(result.records, tmp_path)
        names = sorted(p.name for p in paths)
        assert names == ["f1-f7.csv", "f1-f7.txt", "f14-f23.csv", "f14-f23.txt", "ranks.csv"]

        lines = (tmp_path / "summary" / "f1-f7.csv").read_text().splitlines()
        assert lines[0] == "function,statistic,pso,bbo"
        col = lines[0].split(",").index("bbo") - 2
        by_key = {tuple(row.split(",")[:2]): row.split(",")[2:] for row in lines[1:]}
        finals = [r.final_best for r in result.records if (r.algorithm, r.benchmark) == ("bbo", "f1")]
        assert float(by_key[("f1", "best")][col]) == pytest.approx(min(finals), rel=1e-2, abs=1e-12)
        best_v, mean_v, worst_v = (
            float(by_key[("f1", s)][col]) for s in ("best", "mean", "worst")
        )
        assert best_v <= mean_v * (1 + 1e-9) + 1e-300 and mean_v <= worst_v * (1 + 1e-9) + 1e-300

    def test_summary_single_cell_rank_one(self, tmp_path):
        plan = tiny_plan(algorithms=("gwo",), functions=("f16",), runs=1)
        result = run_experiment(plan)
        emit_summary(result.records, tmp_path)
        lines = (tmp_path / "summary" / "f14-f23.csv").read_text().splitlines()
        by_key = {tuple(row.split(",")[:2]): row.split(",")[2:] for row in lines[1:]}
        assert by_key[("f16", "rank")] == ["1"]
        assert by_key[("f16", "std")] == ["NA"]
        assert by_key[("all", "sum_rank")] == ["1"]
        assert by_key[("all", "mean_rank")] == ["1.00"]

    def test_ranks_csv_covers_all_functions(self, tmp_path):
        plan = tiny_plan()
        result = run_experiment(plan)
        emit_summary(result.records, tmp_path)
        lines = (tmp_path / "ranks.csv").read_text().splitlines()
        assert lines[0] == "algorithm,sum_rank,mean_rank"
        rows = {row.split(",")[0]: row.split(",")[1:] for row in lines[1:]}
        assert set(rows) == {"bbo", "pso"}
        for sum_rank, mean_rank in rows.values():
            assert float(sum_rank) >= 2.0  # two functions, rank >= 1 each
            assert float(mean_rank) == pytest.approx(float(sum_rank) / 2, abs=5e-3)

    def test_tabular_scientific_formatting(self, tmp_path):
        plan = tiny_plan(algorithms=("pso",), functions=("f1",))
        result = run_experiment(plan)
        emit_summary(result.records, tmp_path)
        lines = (tmp_path / "summary" / "f1-f7.csv").read_text().splitlines()
        value = lines[1].split(",")[2]
        mantissa, exponent = value.split("E")
        assert len(mantissa.split(".")[1]) == 2
        assert exponent[0] in "+-"

    def test_empty_records_rejected(self, tmp_path):
        with pytest.raises(ValueError):
            emit_convergence([], tmp_path)
        with pytest.raises(ValueError):
            emit_summary([], tmp_path)


class TestSummarizeCells:
    def test_grouping(self):
        result = run_experiment(tiny_plan())
        table = summarize_cells(result.records)
        assert set(table) == {"f1", "f16"}
        assert set(table["f1"]) == {"bbo", "pso"}
        row = table["f1"]["bbo"]
        assert row.best <= row.mean <= row.worst


class TestCLI:
    def test_list(self, capsys):
        assert cli_main(["list"]) == 0
        out = capsys.readouterr().out
        assert "bbo" in out and "f23" in out

    def test_show_defaults_round_trips(self, capsys):
        assert cli_main(["show-defaults"]) == 0
        out = capsys.readouterr().out
        plan = parse_config(out)
        assert plan.runs == 10
        assert plan.population == 30

    def test_run_end_to_end(self, tmp_path, capsys):
        config = tmp_path / "plan.txt"
        config.write_text("algorithms = pso\nfunctions = f16\nruns = 2\npopulation = 4\niterations = 5\n")
        out_dir = tmp_path / "out"
        assert cli_main(["run", str(config), "--out", str(out_dir), "--seed", "3"]) == 0
        assert (out_dir / "convergence" / "pso_f16.csv").exists()
        assert (out_dir / "summary" / "f14-f23.csv").exists()
        assert (out_dir / "ranks.csv").exists()

    def test_run_rejects_bad_config(self, tmp_path, capsys):
        config = tmp_path / "plan.txt"
        config.write_text("runs = banana\n")
        assert cli_main(["run", str(config)]) == 2
        assert "line 1" in capsys.readouterr().err

    def test_run_missing_config(self, tmp_path, capsys):
        assert cli_main(["run", str(tmp_path / "nope.txt")]) == 2
