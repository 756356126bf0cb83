"""End-to-end command-line pipeline, run in process with small sizes."""

import json
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

import pytest

from malkit.cli import main
from malkit.manifest import file_sha256, manifest_path, write_manifest

FIXTURE = Path(__file__).parent / "data" / "grading_fixture.jsonl"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _lines(path):
    return [line for line in path.read_text().splitlines() if line.strip()]


def _small_pipeline(capsys, out_dir, seed=3):
    base = ["--out-dir", str(out_dir), "--seed", str(seed)]
    assert run(capsys, "generate", *base, "--per-template", "2")[0] == 0
    assert run(capsys, "pairs", *base)[0] == 0
    assert run(capsys, "prompts", *base)[0] == 0


def test_list_shows_strands_and_totals(capsys):
    code, out, err = run(capsys, "list")
    assert code == 0
    for heading in (
        "Number & Operations (53 malrules",
        "Algebra (36 malrules",
        "Geometry & Measurement (8 malrules",
        "Data Analysis & Modeling (4 malrules",
    ):
        assert heading in out
    assert "total: 101 malrules (15 executable), 503 templates" in out
    assert "subtraction/borrow_no_decrement" in out
    assert "executable" in out and "metadata-only" in out


def test_generate_writes_instances_and_manifest(tmp_path, capsys):
    code, out, err = run(
        capsys, "generate", "--out-dir", str(tmp_path), "--per-template", "2", "--seed", "3"
    )
    assert code == 0
    assert "wrote 60 instances" in out
    instances = tmp_path / "instances.jsonl"
    assert len(_lines(instances)) == 60
    manifest = json.loads(manifest_path(instances).read_text())
    assert manifest["artifact_sha256"] == file_sha256(instances)
    assert manifest["config"] == {
        "command": "generate",
        "seed": 3,
        "grade_band": "middle",
        "per_template": 2,
    }
    first = json.loads(_lines(instances)[0])
    assert first["seed"] == 3 and first["grade_band"] == "middle"


def test_pipeline_reruns_are_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    _small_pipeline(capsys, a)
    _small_pipeline(capsys, b)
    for name in ("instances.jsonl", "pairs.jsonl", "prompts.jsonl"):
        assert (a / name).read_bytes() == (b / name).read_bytes(), name
        assert manifest_path(a / name).read_bytes() == manifest_path(b / name).read_bytes()


def test_pipeline_counts_at_small_scale(tmp_path, capsys):
    _small_pipeline(capsys, tmp_path)
    # 30 templates x 2 instances; same pairs exhaust at n(n-1)=2 per group;
    # cross pairs exhaust at 2*(2x2)=8 per malrule; prompt rows double mra
    assert len(_lines(tmp_path / "instances.jsonl")) == 60
    assert len(_lines(tmp_path / "pairs.jsonl")) == (60 + 120) * 2
    assert len(_lines(tmp_path / "prompts.jsonl")) == 60 + 360 + 60


def test_prompts_task_and_steps_flags(tmp_path, capsys):
    _small_pipeline(capsys, tmp_path)
    base = ["--out-dir", str(tmp_path), "--seed", "3"]
    assert run(capsys, "prompts", *base, "--tasks", "cra")[0] == 0
    assert len(_lines(tmp_path / "prompts.jsonl")) == 60
    assert run(capsys, "prompts", *base, "--tasks", "mra", "--steps", "on")[0] == 0
    rows = [json.loads(line) for line in _lines(tmp_path / "prompts.jsonl")]
    assert len(rows) == 180
    assert {r["meta"]["prompt_condition"] for r in rows} == {"with_steps"}
    code, out, err = run(capsys, "prompts", *base, "--tasks", "cra,quiz")
    assert code == 2
    assert json.loads(err)["error"] == "MalkitError"


def test_tampered_artifact_refuses_with_exit_3(tmp_path, capsys):
    _small_pipeline(capsys, tmp_path)
    instances = tmp_path / "instances.jsonl"
    with open(instances, "ab") as fh:
        fh.write(b'{"instance_id": "forged"}\n')
    code, out, err = run(capsys, "prompts", "--out-dir", str(tmp_path), "--seed", "3")
    assert code == 3
    assert json.loads(err)["error"] == "LineageError"


def test_rehashed_but_unreproducible_artifact_still_refuses(tmp_path, capsys):
    _small_pipeline(capsys, tmp_path)
    instances = tmp_path / "instances.jsonl"
    rows = _lines(instances)
    instances.write_text("\n".join(reversed(rows)) + "\n")
    config = json.loads(manifest_path(instances).read_text())["config"]
    write_manifest(instances, config)  # manifest now matches the forged bytes
    code, out, err = run(capsys, "pairs", "--out-dir", str(tmp_path), "--seed", "3")
    assert code == 3
    assert "not generated" in json.loads(err)["message"]


def test_pairs_quota_flags_reach_the_sampler(tmp_path, capsys):
    _small_pipeline(capsys, tmp_path)
    code, out, err = run(
        capsys,
        "pairs",
        "--out-dir", str(tmp_path), "--seed", "3",
        "--same-pairs-per-group", "1",
        "--cross-pairs-per-malrule", "2",
    )
    assert code == 0
    rows = [json.loads(line) for line in _lines(tmp_path / "pairs.jsonl")]
    assert len(rows) == (30 + 30) * 2
    assert sum(1 for r in rows if r["template_condition"] == "same_template") == 60


def test_report_on_committed_fixture(tmp_path, capsys):
    records = tmp_path / "records.jsonl"
    records.write_bytes(FIXTURE.read_bytes())
    write_manifest(records, {"command": "eval", "model": "demo-model"})
    code, out, err = run(capsys, "report", "--out-dir", str(tmp_path))
    assert code == 0
    assert "unparseable: 2 of 48 responses (cra 2)" in out
    report = json.loads((tmp_path / "report.json").read_text())
    block = report["models"]["demo-model"]
    assert block["cells"]["cra"] == {"total": 16, "matched": 12, "accuracy": 0.75}
    assert block["deltas"]["fmra"] == -0.5


def test_report_rejects_malformed_records(tmp_path, capsys):
    records = tmp_path / "records.jsonl"
    records.write_text('{"prompt_id": "x", "task": "cra"}\n')
    write_manifest(records, {"command": "eval"})
    code, out, err = run(capsys, "report", "--out-dir", str(tmp_path))
    assert code == 2
    assert "lacks" in json.loads(err)["message"]


def test_capacity_command_writes_committed_count(tmp_path, capsys):
    code, out, err = run(
        capsys,
        "capacity",
        "--out-dir", str(tmp_path),
        "--grade-band", "elementary",
        "--malrule", "subtraction/borrow_no_decrement",
    )
    assert code == 0
    payload = json.loads((tmp_path / "capacity.json").read_text())
    assert payload["grade_band"] == "elementary"
    table = payload["templates"]["subtraction/borrow_no_decrement"]
    assert table["default"] == 1620
    assert payload["total"] == sum(table.values())
    assert "1620" in out and "total" in out


def test_capacity_unknown_malrule_is_a_machine_readable_error(tmp_path, capsys):
    code, out, err = run(
        capsys, "capacity", "--out-dir", str(tmp_path), "--malrule", "algebra/psychic"
    )
    assert code == 2
    assert json.loads(err)["error"] == "UnknownId"


def test_missing_upstream_artifacts_fail_closed(tmp_path, capsys):
    code, out, err = run(capsys, "report", "--out-dir", str(tmp_path))
    assert code == 3
    assert json.loads(err)["error"] == "LineageError"
    code, out, err = run(capsys, "eval", "--out-dir", str(tmp_path), "--model", "m")
    assert code == 3


def test_eval_requires_a_model(tmp_path, capsys):
    code, out, err = run(capsys, "eval", "--out-dir", str(tmp_path))
    assert code == 2
    assert "model" in json.loads(err)["message"]


def test_missing_config_file_reports_cleanly(tmp_path, capsys):
    code, out, err = run(
        capsys, "generate", "--out-dir", str(tmp_path), "--config", str(tmp_path / "no.json")
    )
    assert code == 2
    assert json.loads(err)["error"] == "MissingFile"


class _AnswerFive(BaseHTTPRequestHandler):
    def log_message(self, *args):
        pass

    def do_POST(self):
        self.rfile.read(int(self.headers["Content-Length"]))
        data = json.dumps(
            {"choices": [{"message": {"content": "I applied the rule.\nAnswer: 5"}}]}
        ).encode()
        self.send_response(200)
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)


def test_eval_and_report_against_mock_endpoint(tmp_path, capsys, monkeypatch):
    server = ThreadingHTTPServer(("127.0.0.1", 0), _AnswerFive)
    import threading

    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    try:
        out_dir = tmp_path / "run"
        base = ["--out-dir", str(out_dir), "--seed", "7"]
        assert run(capsys, "generate", *base, "--per-template", "1")[0] == 0
        assert run(capsys, "pairs", *base)[0] == 0
        assert run(capsys, "prompts", *base)[0] == 0
        prompt_count = len(_lines(out_dir / "prompts.jsonl"))
        assert prompt_count == 30 + 60 + 30  # n=1: no same pairs, 2 cross per malrule

        host, port = server.server_address
        config = tmp_path / "config.json"
        config.write_text(
            json.dumps(
                {
                    "profiles": {
                        "mock": {
                            "endpoint": f"http://{host}:{port}/v1/chat/completions",
                            "family": "non_thinking",
                        }
                    }
                }
            )
        )
        monkeypatch.setenv("MALRULE_CACHE_DIR", str(tmp_path / "cache"))
        code, out, err = run(
            capsys, "eval", *base, "--config", str(config), "--model", "mock"
        )
        assert code == 0
        records = [json.loads(line) for line in _lines(out_dir / "records.jsonl")]
        assert len(records) == prompt_count
        assert all(r["model"] == "mock" and r["extracted"] == "5" for r in records)
        # matched exactly where the expected answer really is 5
        from malkit.answers import from_json, render

        expected_five = {
            p["prompt_id"]
            for p in (json.loads(line) for line in _lines(out_dir / "prompts.jsonl"))
            if render(from_json(p["expected"])) == "5"
        }
        assert {r["prompt_id"] for r in records if r["matched"]} == expected_five

        code, out, err = run(capsys, "report", *base)
        assert code == 0
        report = json.loads((out_dir / "report.json").read_text())
        cells = report["models"]["mock"]["cells"]
        assert cells["cra"]["total"] == 30
        assert cells["fmra"]["total"] == 30
        assert sum(c["total"] for k, c in cells.items() if k.startswith("mra_")) == 60
    finally:
        server.shutdown()
        server.server_close()


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert "malkit" in capsys.readouterr().out
