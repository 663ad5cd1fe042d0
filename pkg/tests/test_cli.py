import json
import subprocess
import sys

import pytest

from chromlab.cli import ExperimentConfig, UsageError, batch, load_graph, main, resolve, resolve_p, run
from chromlab.graph import complete_graph, write_graph


def run_main(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_invariants_c5(tmp_path, capsys):
    path = tmp_path / "c5.txt"
    write_graph(load_graph("C5"), path)
    code, out, _ = run_main(["invariants", "--graph", str(path)], capsys)
    res = json.loads(out)["result"]
    assert code == 0
    assert (res["girth"], res["chi"], res["m2"], res["pi"]) == (5, 3, "4/3", "1/2")


def test_classify_k3(tmp_path, capsys):
    path = tmp_path / "k3.txt"
    write_graph(complete_graph(3), path)
    code, out, _ = run_main(["classify", "--graph", str(path)], capsys)
    assert json.loads(out)["result"]["cloud_forest"] is False


def test_threshold_c5(capsys):
    code, out, _ = run_main(["threshold", "--graph", "C5", "--alpha", "3/5"], capsys)
    res = json.loads(out)["result"]
    assert code == 0 and (res["lower"], res["upper"], res["exact"]) == ("1/2", "1/2", True)


def test_usage_errors_exit_1(capsys):
    assert run_main(["construct", "greedy", "--n", "50", "--p", "0.1"], capsys)[0] == 1
    with pytest.raises(SystemExit) as info:
        main(["nonsense"])
    assert info.value.code == 1
    assert main(["construct"]) == 1


def test_not_certified_exit_2(capsys):
    code, out, _ = run_main(["construct", "greedy", "--n", "200", "--p", "n^-0.6", "--seed", "1",
                             "--deterministic"], capsys)
    rep = json.loads(out)
    assert code == 2 and rep["status"] == "not-certified"
    assert rep["summary"]["c5_free"] is True


def test_report_echoes_resolved_config(capsys):
    code, out, _ = run_main(["mc", "lemma22", "--seed", "3", "--budget", "20"], capsys)
    cfg = json.loads(out)["config"]
    assert code == 0
    assert cfg["parameters"] == {"seed": 3, "budget": 20, "max_outcomes": 64, "max_events": 8}
    assert "wall_clock_seconds" in json.loads(out)


def test_config_round_trip_and_replay(tmp_path, capsys):
    cfg = ExperimentConfig("construct copy-deletion", {"n": 120, "p": "n^-0.7", "seed": 4})
    assert ExperimentConfig.from_json(cfg.to_json()) == cfg
    _, first = run(cfg, deterministic=True)
    replay = ExperimentConfig(first["config"]["subcommand"], first["config"]["parameters"])
    _, second = run(replay, deterministic=True)
    assert first == second
    with pytest.raises(UsageError):
        resolve(ExperimentConfig("construct cloud", {"n": 10, "p": 0.1, "seed": 1, "bogus": 2}))


def test_resolve_p():
    assert resolve_p("n^-1/2", 100) == pytest.approx(0.1)
    assert resolve_p("n^-0.5", 100) == pytest.approx(0.1)
    assert resolve_p("1/4", None) == 0.25
    assert resolve_p("0.3", None) == 0.3


def test_batch_empty_and_malformed(tmp_path):
    code, text = batch(tmp_path)
    assert code == 0 and text == ""
    good = ExperimentConfig("threshold", {"graph": "K3", "regime": "constant"})
    (tmp_path / "a.json").write_text(good.to_json())
    (tmp_path / "b.json").write_text("{not json")
    code, text = batch(tmp_path, deterministic=True)
    lines = text.splitlines()
    assert code == 1 and len(lines) == 3
    assert ",error," in lines[2] and lines[1].split(",")[2] == "ok"


def test_batch_greedy_rows(tmp_path):
    for seed in range(3):
        cfg = ExperimentConfig("construct greedy", {"n": 100, "p": "n^-0.6", "seed": seed})
        (tmp_path / f"g{seed}.json").write_text(cfg.to_json())
    code, text = batch(tmp_path, jobs=2, deterministic=True)
    header, *rows = text.splitlines()
    assert code == 0 and len(rows) == 3
    assert "min_degree" in header and "c5_free" in header


def test_deterministic_reports_identical(tmp_path):
    outs = []
    path = tmp_path / "report.json"
    for _ in range(2):
        subprocess.run([sys.executable, "-m", "chromlab.cli", "construct", "cloud", "--n", "200", "--p", "0.1",
                        "--seed", "7", "--s", "6", "--trials", "5", "--deterministic", "--out", str(path)],
                       check=False)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_config_file_flag(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(ExperimentConfig("gadget").to_json())
    code, out, _ = run_main(["--config", str(cfg)], capsys)
    assert code == 0 and json.loads(out)["result"]["vertices"] == 12
    cfg.write_text('{"parameters": {}}')
    assert run_main(["--config", str(cfg)], capsys)[0] == 1
