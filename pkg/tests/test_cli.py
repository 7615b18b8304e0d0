import json

import pytest

from chevlab.cli import main, run_campaign, validate_task, TaskError


def test_empty_campaign(tmp_path, capsys):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"seed": 1, "tasks": []}))
    out = tmp_path / "r.json"
    assert main(["campaign", "run", str(path), "--output", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["tasks"] == [] and report["exit_code"] == 0


def test_invalid_ring_rejected_before_running(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(
        json.dumps(
            {
                "tasks": [
                    {
                        "command": "bruteforce",
                        "params": {
                            "stmt": "T1",
                            "type": "A2",
                            "ring": "Z/1",
                            "ideal_i": "0",
                        },
                    }
                ]
            }
        )
    )
    assert main(["campaign", "run", str(path)]) == 2


def test_validate_task_rejects_g2_bruteforce():
    with pytest.raises(TaskError):
        validate_task(
            "bruteforce",
            {"stmt": "T1", "type": "G2", "ring": "Z/9", "ideal_i": "3"},
        )


def test_steinberg_cli(tmp_path):
    out = tmp_path / "r.json"
    code = main(["verify", "steinberg", "--type", "A2", "--report", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["tasks"][0]["result"]["passed"] is True


def test_dump_generators_shape(tmp_path):
    out = tmp_path / "r.json"
    assert main(["dump-generators", "--type", "C2", "--ring", "Z/9", "--report", str(out)]) == 0
    report = json.loads(out.read_text())
    gens = report["tasks"][0]["result"]["generators"]
    assert len(gens) == 8 * 9
    assert len(gens[0]["blocks"][0]) == 4


def test_factorize_main_lemma_cli(tmp_path):
    out = tmp_path / "r.json"
    assert main(["factorize", "main-lemma", "--case", "A2", "--symbolic", "--report", str(out)]) == 0
    result = json.loads(out.read_text())["tasks"][0]["result"]
    assert result["verdict"] is True
    assert result["factors"]
    assert result["factors"][0]["certificate"]["tag"] == "ConjugateOf"


def test_reports_byte_identical_for_fixed_seed(tmp_path):
    tasks = [
        {"command": "verify-chevalley", "params": {"type": "C2"}},
        {
            "command": "verify-levi",
            "params": {
                "type": "A2",
                "ring": "Z/8",
                "ideal_i": "2",
                "ideal_j": "2",
                "samples": 20,
            },
        },
    ]
    a = json.dumps(run_campaign(tasks, seed=5, with_timings=False), sort_keys=True)
    b = json.dumps(run_campaign(tasks, seed=5, with_timings=False), sort_keys=True)
    assert a == b


def test_bound_exceeded_is_an_error_result():
    from chevlab import cli

    report = cli.run_campaign(
        [{"command": "bruteforce", "params": {
            "stmt": "T1", "type": "A2", "ring": "Z/8",
            "ideal_i": "2", "ideal_j": "2", "bound": 3}}],
        seed=0,
        with_timings=False,
    )
    assert report["exit_code"] == 2
    entry = report["tasks"][0]
    assert entry["status"] == "error"
    assert "BoundExceeded" in entry["result"]["error"]
