import json

from smoothvote.cli import main, parse_grid, parse_model
from smoothvote.constraints import build_scoring_tie_system, save_system
from smoothvote.rules import borda


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_grid():
    assert parse_grid("2:5") == [2, 3, 4, 5]
    assert parse_grid("10:20:5") == [10, 15, 20]
    assert parse_grid("6,9,12") == [6, 9, 12]


def test_parse_model():
    pi = parse_model("ic", 3)
    assert len(pi.members) == 1
    pi = parse_model("mallows:central=1>2>3,phi=1/2", 3)
    assert len(pi.members) == 1
    pi = parse_model("mallows:phi=1/2,centrals=all", 3)
    assert len(pi.members) == 6
    pi = parse_model("pl:theta=1/2,1/4,1/4", 3)
    assert len(pi.members) == 1


def test_classify_event(capsys):
    code, out, _ = run(capsys, "classify", "--m", "3", "--event", "tmn", "--model", "ic")
    assert code == 0
    data = json.loads(out)
    assert data["kind"] == "polynomial"
    assert data["rank"] == 4
    assert data["exponent"] == "-2"


def test_classify_system_file(capsys, tmp_path):
    path = tmp_path / "tie.json"
    save_system(build_scoring_tie_system(borda(3), {1, 2}, 3), path)
    code, out, _ = run(capsys, "classify", "--m", "3", "--system", str(path), "--model", "ic")
    assert code == 0
    data = json.loads(out)
    assert data["kind"] == "polynomial" and data["rank"] == 1
    assert "witness" in data


def test_classify_borda_pair_system_file(capsys, tmp_path):
    # Borda tie between 1 and 2 plus their pairwise tie: two independent equalities
    from smoothvote.constraints import ConstraintSystem

    system = ConstraintSystem(
        6,
        ((1, 2, -1, -2, 1, -1), (1, 1, -1, -1, 1, -1)),
        ((-2, -1, -1, 1, 1, 2), (-1, -1, -1, 1, 1, 1), (-1, 1, -1, -1, 1, 1)),
        label="borda-pair",
    )
    path = tmp_path / "borda_pair.json"
    save_system(system, path)
    code, out, _ = run(capsys, "classify", "--m", "3", "--system", str(path), "--model", "ic")
    assert code == 0
    data = json.loads(out)
    assert data["rank"] == 2 and data["exponent"] == "-1"


def test_classify_requires_input(capsys):
    code, _, err = run(capsys, "classify", "--m", "3")
    assert code == 2


def test_estimate_deterministic_bytes(tmp_path, capsys):
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (out1, out2):
        code, _, _ = run(
            capsys, "estimate", "--m", "3", "--event", "cw", "--model", "ic",
            "--n-grid", "2:5", "--method", "both", "--samples", "2000",
            "--out", str(out),
        )
        assert code == 0
    assert out1.read_bytes() == out2.read_bytes()
    lines = out1.read_text().splitlines()
    assert lines[0] == "event,model,n,method,value,stderr,seed"
    assert len(lines) == 1 + 2 * 4  # exact + mc per n


def test_estimate_exact_values(capsys):
    code, out, _ = run(
        capsys, "estimate", "--m", "3", "--event", "ncc", "--model", "ic", "--n-grid", "1,3"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[1].split(",")[4] == "1.0"
    assert abs(float(lines[2].split(",")[4]) - 17 / 18) < 1e-12


def test_scan_predicted_matches_classify(capsys, tmp_path):
    out = tmp_path / "grid.csv"
    code, stdout, _ = run(
        capsys, "scan", "--m", "3", "--event", "wcw:k=2", "--model", "ic",
        "--n-grid", "10:24:2", "--out", str(out),
    )
    assert code == 0
    data = json.loads(stdout)
    assert data["verdict"]["kind"] == "polynomial"
    assert data["predicted_exponent"] == "-1/2"
    assert -0.8 < data["fitted_slope"] < -0.3
    assert out.exists() and len(out.read_text().splitlines()) == 1 + 8


def test_scan_drops_zero_probability_points(capsys):
    # tmn is impossible unless 3 | n; a sparse grid leaves too few points
    code, _, err = run(
        capsys, "scan", "--m", "3", "--event", "tmn", "--model", "ic", "--n-grid", "4,5,7"
    )
    assert code == 4
    assert "fewer than 3" in err


def test_estimate_limit_exit_code(capsys):
    code, _, err = run(
        capsys, "estimate", "--m", "5", "--event", "ncc", "--model", "ic", "--n-grid", "4"
    )
    assert code == 3


def test_unsupported_family_exit_code(capsys):
    code, _, err = run(
        capsys, "classify", "--m", "4", "--event", "mpsr-empty", "--model", "ic"
    )
    assert code == 3


def test_parse_error_exit_code(capsys):
    code, _, err = run(
        capsys, "estimate", "--m", "3", "--event", "bogus", "--model", "ic", "--n-grid", "2"
    )
    assert code == 2


def test_estimate_json_format(capsys):
    code, out, _ = run(
        capsys, "estimate", "--m", "3", "--event", "ncc", "--model", "ic",
        "--n-grid", "2:3", "--format", "json",
    )
    assert code == 0
    rows = json.loads(out)
    assert len(rows) == 2
    assert rows[0]["event"] == "ncc" and rows[0]["n"] == 2


def test_estimate_timing_column(capsys):
    code, out, _ = run(
        capsys, "estimate", "--m", "3", "--event", "ncc", "--model", "ic",
        "--n-grid", "2", "--timing",
    )
    assert code == 0
    assert out.splitlines()[0].endswith(",wall_ms")


def test_anr_command(capsys):
    code, out, _ = run(
        capsys, "anr", "--m", "3", "--n-grid", "2:6", "--rate-n", "6", "--model", "ic",
        "--rules", "borda+lex:1>2>3,r_ano",
    )
    assert code == 0
    assert "n=2 exists=True" in out
    assert "n=3 exists=False" in out
    assert "rule=borda+lex:1>2>3" in out
    assert "rule=r_ano" in out


def test_groups_command(capsys):
    code, out, _ = run(capsys, "groups", "--m", "3")
    assert code == 0
    assert "6 total, 2 covering" in out
    assert "closed form = 3" in out
    assert "brute force = 3" in out


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"m": 3, "model": "ic", "event": "cw", "n-grid": "2:3"}))
    code, out, _ = run(capsys, "--config", str(cfg), "estimate")
    assert code == 0
    assert len(out.splitlines()) == 3
    # explicit flags still win over the config
    code, out, _ = run(capsys, "--config", str(cfg), "estimate", "--n-grid", "2:5")
    assert len(out.splitlines()) == 5
