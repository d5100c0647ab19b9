import json

import pytest

from siegellab.cli import RunConfig, main, reference_example_rows


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_no_arguments_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_unknown_subcommand_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_degenerate_parameter_is_a_domain_error(capsys):
    code, out, err = run_cli(capsys, "tune", "--c", "0,0")
    assert code == 1
    assert "error:" in err


def test_run_config_round_trips():
    cfg = RunConfig(theta="0.4142135623", c="2,1", tol=5e-4, seed=9, out="x.csv", as_json=True)
    assert RunConfig.from_json(cfg.to_json()) == cfg


def test_reference_rows_all_within_tolerance():
    rows = reference_example_rows()
    assert len(rows) == 4
    for r in rows:
        assert r["residual"] < r["tolerance"]


def test_verify_examples_text_output(capsys):
    code, out, err = run_cli(capsys, "verify-examples")
    assert code == 0
    assert "example1-case2" in out
    assert "all cases reproduced" in out


def test_verify_examples_json_output(capsys):
    code, out, err = run_cli(capsys, "verify-examples", "--json")
    assert code == 0
    rows = json.loads(out)
    assert [r["case"] for r in rows] == [
        "example1-case1",
        "example1-case2",
        "example2-case1",
        "example2-case2",
    ]
    assert all(r["residual"] < 1e-5 for r in rows)


def test_thurston_check_json(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"n": 1, "preimages": [[1, 1, 2]]}))
    code, out, err = run_cli(capsys, "thurston-check", "--spec", str(spec), "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["lambda"] == 0.5
    assert payload["obstructed"] is False


def test_thurston_check_obstruction_verdict(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"n": 2, "preimages": [[1, 2, 1], [2, 1, 1]]}))
    code, out, err = run_cli(capsys, "thurston-check", "--spec", str(spec))
    assert code == 0
    assert "YES" in out


def test_boundary_writes_csv_and_figure(tmp_path, capsys):
    out_csv = tmp_path / "curve.csv"
    code, out, err = run_cli(
        capsys, "boundary", "--c", "inf", "--n", "300", "--out", str(out_csv)
    )
    assert code == 0
    lines = out_csv.read_text().splitlines()
    assert lines[0] == "angle,re,im"
    assert len(lines) == 301
    assert (tmp_path / "curve.png").exists()


def test_boundary_no_plot_skips_figure(tmp_path, capsys):
    out_csv = tmp_path / "curve.csv"
    code, _, _ = run_cli(
        capsys, "boundary", "--c", "inf", "--n", "50", "--out", str(out_csv), "--no-plot"
    )
    assert code == 0
    assert not (tmp_path / "curve.png").exists()


def test_crossratio_json_report(tmp_path, capsys):
    code, out, err = run_cli(
        capsys, "crossratio", "--c", "inf", "--n", "500", "--trials", "400", "--seed", "7"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["min_abs"] > 0
    assert payload["trials"] == 400
    assert len(payload["quadruple"]) == 4


def test_xi_scan_reads_grid_and_writes_distances(tmp_path, capsys):
    grid = tmp_path / "grid.csv"
    grid.write_text("re,im\n2,0\ninf\n0,0\n")
    out_csv = tmp_path / "scan.csv"
    code, out, err = run_cli(
        capsys, "xi-scan", "--grid-file", str(grid), "--n", "200", "--out", str(out_csv)
    )
    assert code == 0
    lines = out_csv.read_text().splitlines()
    assert lines[0] == "re,im,distance,status"
    assert len(lines) == 4
    assert lines[1].startswith("2,0,") and lines[1].endswith(",ok")
    assert lines[2].split(",")[:2] == ["inf", "inf"]
    assert "error" in lines[3]
    assert (tmp_path / "scan.png").exists()


def test_render_honors_resolution_and_header(tmp_path, capsys):
    out = tmp_path / "disk.ppm"
    code, _, _ = run_cli(
        capsys,
        "render",
        "--c", "inf",
        "--center", "0,0",
        "--width", "3",
        "--px", "24x16",
        "--iters", "40",
        "--out", str(out),
    )
    assert code == 0
    data = out.read_bytes()
    assert data.startswith(b"P6\n24 16\n255\n")
    assert len(data) == len(b"P6\n24 16\n255\n") + 24 * 16 * 3


def test_tune_json_smoke(capsys):
    code, out, err = run_cli(
        capsys, "tune", "--c", "inf", "--tol", "1e-3", "--n", "100000", "--json"
    )
    assert code == 0
    payload = json.loads(out)
    assert 0.0 <= payload["t"] < 6.2832
    assert abs(payload["rho"] - 0.6180339887498949) < 1e-3
    assert payload["iterations"] >= 1


def test_comparability_text_output(capsys):
    code, out, err = run_cli(
        capsys, "comparability", "--c", "inf", "--tol", "1e-3", "--nmax", "2", "--samples", "6"
    )
    assert code == 0
    assert "comparability constant K" in out


def test_comparability_csv_and_figure(tmp_path, capsys):
    out_csv = tmp_path / "ratios.csv"
    code, out, err = run_cli(
        capsys,
        "comparability",
        "--c", "inf",
        "--tol", "1e-3",
        "--nmax", "2",
        "--samples", "4",
        "--out", str(out_csv),
        "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["K"] >= 1.0
    lines = out_csv.read_text().splitlines()
    assert lines[0].startswith("n,q_n,q_next")
    assert len(lines) == 3
    assert (tmp_path / "ratios.png").exists()


# --- determinism across consecutive runs -------------------------------------


def test_crossratio_runs_are_byte_identical(capsys):
    args = ("crossratio", "--c", "inf", "--n", "400", "--trials", "300", "--seed", "3")
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args)
    assert out1 == out2


def test_boundary_outputs_are_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        code, _, _ = run_cli(capsys, "boundary", "--c", "inf", "--n", "200", "--out", str(path))
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    assert (tmp_path / "a.png").read_bytes() == (tmp_path / "b.png").read_bytes()


def test_render_runs_are_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.ppm", tmp_path / "b.ppm"
    for path in (a, b):
        code, _, _ = run_cli(
            capsys,
            "render",
            "--c", "2,0",
            "--px", "20x20",
            "--iters", "30",
            "--width", "3",
            "--out", str(path),
        )
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
