"""End-to-end CLI runs: file formats, exit codes, determinism."""

import json
from fractions import Fraction

import pytest

from exactrips.cli import main
from exactrips.digits import BinaryString
from exactrips.space import Cloud, CloudConfig


def _write_config(tmp_path, **overrides):
    cfg = CloudConfig(
        sheets=(BinaryString((0,)), BinaryString((1,))),
        scale=Fraction(1),
        **overrides,
    )
    path = tmp_path / "cfg.json"
    path.write_text(cfg.to_json())
    return path


def test_build_and_betti(tmp_path):
    cfg = _write_config(tmp_path)
    cloud_path = tmp_path / "cloud.csv"
    assert main(["build", "--config", str(cfg), "--out", str(cloud_path)]) == 0
    cloud = Cloud.from_csv_text(cloud_path.read_text())
    assert len(cloud) == 4

    betti_path = tmp_path / "betti.json"
    assert (
        main(["betti", "--cloud", str(cloud_path), "--scale", "1", "--out", str(betti_path)])
        == 0
    )
    report = json.loads(betti_path.read_text())
    assert report == {
        "scale": "1/1",
        "vertices": 4,
        "edges": 4,
        "triangles": 0,
        "rank_d1": 3,
        "rank_d2": 0,
        "betti0": 1,
        "betti1": 1,
    }


def test_rigid_subcommand(tmp_path):
    cfg = _write_config(tmp_path)
    cloud_path = tmp_path / "cloud.csv"
    main(["build", "--config", str(cfg), "--out", str(cloud_path)])
    out = tmp_path / "rigid.json"
    assert (
        main(["rigid", "--cloud", str(cloud_path), "--scale", "1", "--out", str(out)])
        == 0
    )
    report = json.loads(out.read_text())
    assert report["rigid_count"] == 2
    assert report["freeness"]["ok"] is True
    assert report["diagonal_scale_edges"] == []
    assert {e["x_fiber"] for e in report["edges"]} == {"0/1"}


def test_rigid_failure_exit_code(tmp_path):
    # Hand-written cloud with an intruder on the rigid segment.
    cloud_path = tmp_path / "bad.csv"
    cloud_path.write_text(
        "sheet:x=0/1:y=0,0/1,0/1,0/1,0/1\n"
        "cube1,1/1,0/1,0/1,0/1\n"
        "sheet:x=1/2:y=0,1/2,0/1,0/1,0/1\n"
    )
    out = tmp_path / "rigid.json"
    assert (
        main(["rigid", "--cloud", str(cloud_path), "--scale", "1", "--out", str(out)])
        == 1
    )
    report = json.loads(out.read_text())
    assert not report["freeness"]["ok"]


def test_sweep_subcommand(tmp_path):
    cfg = _write_config(tmp_path, cube_grid=1)
    cloud_path = tmp_path / "cloud.csv"
    main(["build", "--config", str(cfg), "--out", str(cloud_path)])
    out = tmp_path / "sweep.json"
    code = main(
        [
            "sweep",
            "--cloud",
            str(cloud_path),
            "--scales",
            "118097/118098,236195/236196,1",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["scales"] == ["118097/118098", "236195/236196", "1/1"]
    sizes = [len(c["edges"]) for c in payload["complexes"]]
    assert sizes == sorted(sizes)


def test_experiment_subcommand_and_determinism(tmp_path):
    out1 = tmp_path / "exp1.csv"
    out2 = tmp_path / "exp2.csv"
    argv = ["experiment", "--sheets", "2,3", "--out", ""]
    for out in (out1, out2):
        argv[-1] = str(out)
        assert main(list(argv)) == 0
    assert out1.read_bytes() == out2.read_bytes()
    lines = out1.read_text().strip().split("\n")
    assert len(lines) == 1 + 2 * 3  # header + counts x default scales
    assert all(line.endswith("pass") for line in lines[1:])


def test_verify_lemmas_subcommand(tmp_path):
    out = tmp_path / "report.json"
    code = main(
        [
            "verify-lemmas",
            "--blocks",
            "4",
            "--samples",
            "50",
            "--seed",
            "7",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    report = json.loads(out.read_text())
    assert report["passed"] is True
    assert report["fact_pairs"] == 50


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["betti", "--cloud", "nope.csv"])  # missing required args
    assert exc.value.code == 2


def test_config_error_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{\"sheets\": []}")
    assert main(["build", "--config", str(bad), "--out", str(tmp_path / "x.csv")]) == 2
    missing = tmp_path / "missing.json"
    assert main(["build", "--config", str(missing), "--out", str(tmp_path / "x.csv")]) == 2
