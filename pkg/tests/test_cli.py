import json

from pce_mincut.cli import main
from pce_mincut.graph import read_graph


def run_cli(*args):
    return main([str(a) for a in args])


def test_generate_writes_graph(tmp_path, capsys):
    out = tmp_path / "g.json"
    assert run_cli("generate", "--n", 6, "--out", out) == 0
    g = read_graph(out)
    assert g.n == 6 and g.edge_count == 15
    assert "n=6" in capsys.readouterr().out


def test_baseline_prints_cut(tmp_path, capsys):
    out = tmp_path / "g.json"
    run_cli("generate", "--n", 6, "--out", out)
    capsys.readouterr()
    assert run_cli("baseline", "--graph", out, "--c", 3, "--method", "exhaustive") == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["cut"] == 9.0


def test_solve_prints_record(tmp_path, capsys):
    graph = tmp_path / "g.json"
    run_cli("generate", "--n", 6, "--out", graph)
    capsys.readouterr()
    hist = tmp_path / "history.csv"
    records = tmp_path / "records.jsonl"
    code = run_cli(
        "solve", "--graph", graph, "--c", 2, "--seed", 1, "--max-evals", 600,
        "--baseline-method", "exhaustive", "--history", hist, "--records", records,
    )
    assert code == 0
    record = json.loads(capsys.readouterr().out)
    assert record["outcome"]["outer_iters"] >= 1
    assert record["metrics"]["baseline_cut"] == 8.0
    assert hist.read_text().startswith("iter,alpha,loss,binarization,minus_count")
    assert len(records.read_text().strip().splitlines()) == 1


def test_bench_and_report_round_trip(tmp_path, capsys):
    records = tmp_path / "records.jsonl"
    report_dir = tmp_path / "report"
    code = run_cli(
        "bench", "--n", 6, "--c-values", 2, "--reps", 2, "--solver", "iterative",
        "--paired", "--max-evals", 600, "--baseline-method", "exhaustive",
        "--records", records, "--report-dir", report_dir, "--quiet",
    )
    assert code == 0
    assert (report_dir / "report.md").exists()
    assert (report_dir / "report.json").exists()
    assert (report_dir / "runs.csv").exists()
    assert (report_dir / "history.csv").exists()
    assert len(records.read_text().strip().splitlines()) == 4

    out_dir = tmp_path / "rebuilt"
    capsys.readouterr()
    assert run_cli("report", "--records", records, "--out", out_dir) == 0
    rebuilt = json.loads((out_dir / "report.json").read_text())
    original = json.loads((report_dir / "report.json").read_text())
    assert rebuilt == original


def test_bench_fixed_alpha_grid(tmp_path):
    records = tmp_path / "r.jsonl"
    code = run_cli(
        "bench", "--n", 6, "--c-values", 2, "--reps", 1, "--solver", "fixed",
        "--alphas", 4, 100, "--max-evals", 400, "--baseline-method", "exhaustive",
        "--records", records, "--quiet",
    )
    assert code == 0
    recs = [json.loads(line) for line in records.read_text().strip().splitlines()]
    assert {r["label"] for r in recs} == {"fixed-a4", "fixed-a100"}
    assert all(r["config"]["alpha_mode"] == "fixed" for r in recs)


def test_config_file_overrides_flags(tmp_path, capsys):
    out = tmp_path / "g.json"
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"n": 8}))
    assert run_cli("generate", "--n", 4, "--out", out, "--config", cfg) == 0
    assert read_graph(out).n == 8
