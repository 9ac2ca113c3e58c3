import json
import os

import pytest

from flowscope.cli import pipeline as pipeline_module
from flowscope.cli.config import RunConfig, load_config, resolve_workers
from flowscope.cli.main import EXIT_CONFIG_ERROR, EXIT_OK, EXIT_STAGE_ERROR, main
from flowscope.cli.pipeline import run_pipeline
from flowscope.errors import ConfigError, FlowscopeError
from flowscope.graph import load_edge_list, load_partition
from flowscope.tracing import StageStatus, StageTracer


def fixture_config(fixtures_dir, output_dir, **overrides) -> RunConfig:
    config = load_config(os.path.join(fixtures_dir, "two_cliques.cfg"))
    return config.with_overrides({
        "edge_list": os.path.join(fixtures_dir, "two_cliques.csv"),
        "output_dir": str(output_dir),
        "n_times": 12,
        "n_runs": 8,
        **overrides,
    })


def write_config(path, **values):
    path.write_text("".join(f"{key} = {value}\n" for key, value in values.items()), encoding="utf-8")
    return path


class TestConfig:
    def test_load_fixture(self, fixtures_dir):
        config = load_config(os.path.join(fixtures_dir, "two_cliques.cfg")).validate()
        assert config.n_times == 30
        assert config.n_runs == 20
        assert config.top_communities == 2
        assert config.mode == "continuous"
        assert config.edge_list == "data/fixtures/two_cliques.csv"
        assert config.rbs_alpha == 0.9

    def test_inline_comments_and_auto(self, tmp_path):
        path = write_config(tmp_path / "run.cfg", k_max="auto  # grow until decayed", weighted="yes")
        config = load_config(path)
        assert config.k_max is None
        assert config.weighted is True

    @pytest.mark.parametrize("key, value", [("n_runs", "many"), ("colour", "blue"), ("weighted", "maybe")])
    def test_bad_entries(self, tmp_path, key, value):
        with pytest.raises(ConfigError):
            load_config(write_config(tmp_path / "run.cfg", **{key: value}))

    @pytest.mark.parametrize("field, value", [
        ("teleport_alpha", 1.2), ("mode", "weekly"), ("t_min", 0.0), ("n_runs", 0),
        ("vi_threshold", 1.5), ("gamma", -1.0), ("gamma", 0.0), ("top_communities", 1), ("workers", 0),
    ])
    def test_validation(self, field, value):
        with pytest.raises(ConfigError):
            RunConfig().with_overrides({field: value}).validate()

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(tmp_path / "absent.cfg")

    def test_workers_resolution(self, monkeypatch):
        monkeypatch.setenv("FLOWSCOPE_WORKERS", "3")
        assert resolve_workers(None) == 3
        assert resolve_workers(2) == 2
        monkeypatch.setenv("FLOWSCOPE_WORKERS", "zero")
        with pytest.raises(ConfigError):
            resolve_workers(None)
        monkeypatch.delenv("FLOWSCOPE_WORKERS")
        assert resolve_workers(None) >= 1


class TestPipeline:
    def test_two_cliques_run(self, fixtures_dir, tmp_path):
        result = run_pipeline(fixture_config(fixtures_dir, tmp_path / "out"))
        out = tmp_path / "out"
        assert result.exit_code == 0
        assert result.failed_stage is None
        for name in ("components.txt", "pagerank.csv", "sweep.csv", "windows.csv", "communities.csv",
                     "roles.csv", "roles_summary.txt", "external_friends.csv", "manifest.json"):
            assert (out / name).exists(), name

        labels, communities = load_partition(out / "communities.csv")
        assert labels == ["a1", "a2", "a3", "b1", "b2", "b3"]
        assert communities.n_communities == 2
        assert communities.assignment.tolist() in ([0, 0, 0, 1, 1, 1], [1, 1, 1, 0, 0, 0])
        assert sorted(result.outputs["bridgeness"]) == sorted(
            [str(out / "bridgeness_0_1.csv"), str(out / "bridgeness_1_0.csv")])

        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["status"] == "success"
        assert [stage["name"] for stage in manifest["stages"]] == ["ingest", "sweep", "roles", "bridgeness"]
        assert manifest["parameters"]["n_runs"] == 8
        assert manifest["seeds"] == {"base_seed": 0}
        assert "numpy" in manifest["versions"]

        friends = (out / "external_friends.csv").read_text().splitlines()
        assert friends[0] == "label,role,external_friend_proportion"
        shares = {line.split(",")[0]: float(line.split(",")[2]) for line in friends[1:]}
        assert sorted(shares) == ["a1", "a2", "a3", "b1", "b2", "b3"]
        assert shares["b1"] == pytest.approx(1 / 3)
        assert shares["a1"] == 0.0

    def test_outputs_do_not_depend_on_workers(self, fixtures_dir, tmp_path):
        run_pipeline(fixture_config(fixtures_dir, tmp_path / "serial"), workers=1)
        run_pipeline(fixture_config(fixtures_dir, tmp_path / "threaded"), workers=3)
        for name in ("pagerank.csv", "sweep.csv", "windows.csv", "communities.csv", "roles.csv",
                     "roles_summary.txt", "external_friends.csv"):
            assert (tmp_path / "serial" / name).read_bytes() == (tmp_path / "threaded" / name).read_bytes()

    def test_optional_stages(self, fixtures_dir, tmp_path):
        config = fixture_config(fixtures_dir, tmp_path / "out",
                                retweet_edge_list=os.path.join(fixtures_dir, "two_cliques.csv"),
                                retweet_weighted=False,
                                follower_sets=os.path.join(fixtures_dir, "follower_sets.csv"))
        result = run_pipeline(config)
        assert result.exit_code == 0
        crosstab = (tmp_path / "out" / "crosstab.csv").read_text().splitlines()
        assert crosstab[0].startswith("row,col_0")
        audience = (tmp_path / "out" / "audience.csv").read_text().splitlines()
        assert not any(line.startswith("#") for line in audience)
        summary = (tmp_path / "out" / "audience_summary.txt").read_text().splitlines()
        assert "global_unique = 4" in summary

    def test_failing_stage_marks_partial_and_skips_rest(self, fixtures_dir, tmp_path, monkeypatch):
        def broken(*args, **kwargs):
            raise FlowscopeError("disk quota")

        monkeypatch.setattr(pipeline_module, "write_windows", broken)
        out = tmp_path / "out"
        result = run_pipeline(fixture_config(fixtures_dir, out))
        assert result.exit_code == 1
        assert result.failed_stage == "sweep"
        assert (out / "components.txt").exists()
        assert (out / "sweep.csv.partial").exists()
        assert not (out / "sweep.csv").exists()
        assert not (out / "roles.csv").exists()
        manifest = json.loads((out / "manifest.json").read_text())
        statuses = {stage["name"]: stage["status"] for stage in manifest["stages"]}
        assert statuses == {"ingest": "completed", "sweep": "failed", "roles": "skipped",
                            "bridgeness": "skipped"}

    def test_edge_list_required(self, tmp_path):
        with pytest.raises(ConfigError):
            run_pipeline(RunConfig(output_dir=str(tmp_path)))


class TestMain:
    def test_invalid_config_exit_code(self, fixtures_dir, tmp_path):
        path = write_config(tmp_path / "bad.cfg", edge_list=os.path.join(fixtures_dir, "two_cliques.csv"),
                            teleport_alpha=1.2)
        assert main(["run", "--config", str(path), "--output", str(tmp_path / "out")]) == EXIT_CONFIG_ERROR
        assert not (tmp_path / "out").exists()

    def test_run_command(self, fixtures_dir, tmp_path, capsys):
        path = write_config(tmp_path / "run.cfg", edge_list=os.path.join(fixtures_dir, "two_cliques.csv"),
                            n_times=6, n_runs=4)
        code = main(["run", "--config", str(path), "--output", str(tmp_path / "out"), "--workers", "1"])
        assert code == EXIT_OK
        assert "FLOWSCOPE RUN: SUCCESS" in capsys.readouterr().out

    def test_missing_input_is_stage_error(self, tmp_path):
        code = main(["ingest", str(tmp_path / "absent.csv"), "--output", str(tmp_path), "--workers", "1"])
        assert code == EXIT_STAGE_ERROR

    def test_synth_then_ingest(self, tmp_path):
        args = ["--output", str(tmp_path), "--workers", "1", "--seed", "5"]
        assert main(["synth", "sbm", "--sizes", "6,6", "--p-in", "0.8", "--p-out", "0.05"] + args) == EXIT_OK
        graph = load_edge_list(tmp_path / "sbm_edges.csv")
        labels, planted = load_partition(tmp_path / "sbm_planted.csv")
        assert planted.n_communities == 2
        assert set(graph.node_labels) <= set(labels)
        assert main(["ingest", str(tmp_path / "sbm_edges.csv")] + args) == EXIT_OK
        assert (tmp_path / "largest_component.csv").exists()

    def test_synth_bad_probabilities(self, tmp_path):
        code = main(["synth", "sbm", "--sizes", "4,4", "--p-in", "0.1", "--p-out", "0.3",
                     "--output", str(tmp_path), "--workers", "1"])
        assert code == EXIT_CONFIG_ERROR

    def test_bridgeness_command(self, fixtures_dir, tmp_path):
        partition = tmp_path / "cliques.csv"
        partition.write_text("a1,0\na2,0\na3,0\nb1,1\nb2,1\nb3,1\n", encoding="utf-8")
        code = main(["bridgeness", os.path.join(fixtures_dir, "two_cliques.csv"), str(partition),
                     "--source", "0", "--dest", "1", "--output", str(tmp_path), "--workers", "1"])
        assert code == EXIT_OK
        lines = (tmp_path / "bridgeness_0_1.csv").read_text().splitlines()
        assert lines == ["source_label,target_label,raw_mass,bridgeness,bridgeness_ratio,"
                         "crossing_share,target_followed_by_share,source_following_share",
                         "b1,a1,9.0,1.0,1.0,1.0,0.3333333333333333,0.3333333333333333"]


class TestStageTracer:
    def test_stage_lifecycle(self):
        tracer = StageTracer("unit")
        with tracer.stage("ingest") as trace:
            tracer.add_output("ingest", "components.txt")
            tracer.advance("ingest", 3, 4)
        assert trace.status is StageStatus.COMPLETED
        assert trace.progress_percent == 75.0
        tracer.skip_stage("roles", "not requested")
        assert tracer.succeeded

        manifest = tracer.manifest({"n_runs": 2}, {"base_seed": 0})
        assert manifest["status"] == "success"
        assert [(stage["name"], stage["status"]) for stage in manifest["stages"]] == [
            ("ingest", "completed"), ("roles", "skipped")]
        assert manifest["stages"][0]["outputs"] == ["components.txt"]
        assert manifest["stages"][1]["error"] == "not requested"

    def test_failed_stage_propagates(self):
        tracer = StageTracer("unit")
        with pytest.raises(FlowscopeError):
            with tracer.stage("sweep"):
                raise FlowscopeError("no memory")
        assert tracer.stages["sweep"].status is StageStatus.FAILED
        assert tracer.stages["sweep"].error_message == "no memory"
        assert not tracer.succeeded
        assert tracer.manifest({}, {})["status"] == "failed"
