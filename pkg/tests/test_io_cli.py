from __future__ import annotations

import json

import pytest

from closurehom.cli import main
from closurehom.constructions import cycle_space, interval_space
from closurehom.core import CMap
from closurehom.errors import InvalidSpaceError
from closurehom.io import dump_space, load_cover, load_map, load_space, map_to_json, space_from_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def test_space_round_trip(tmp_path):
    X = cycle_space(7, 2)
    path = tmp_path / "x.json"
    dump_space(X, path)
    Y = load_space(path)
    assert Y == X and Y.labels == X.labels and Y.name == X.name


def test_space_json_validation():
    with pytest.raises(InvalidSpaceError):
        space_from_json({"points": ["a"]})
    with pytest.raises(InvalidSpaceError):
        space_from_json({"points": ["a"], "closure": {"a": ["a", "b"]}})
    with pytest.raises(InvalidSpaceError):
        space_from_json({"points": ["a", "b"], "closure": {"a": ["a"]}})


def test_cover_and_map_resolve_relative_paths(tmp_path):
    dump_space(cycle_space(4, 1), tmp_path / "z4.json")
    (tmp_path / "cov.json").write_text(json.dumps({"space": "z4.json", "sets": {"A": ["0", "1", "3"], "B": ["1", "2", "3"]}}))
    cover = load_cover(tmp_path / "cov.json")
    assert cover.sets["A"] == {0, 1, 3}
    J = interval_space(2)
    (tmp_path / "m.json").write_text(json.dumps(map_to_json(CMap(J, J, (0, 0, 1)))))
    f = load_map(tmp_path / "m.json")
    assert f.image == (0, 0, 1)


def test_cli_space_and_wedge(workdir, capsys):
    code, out, _ = run(capsys, "space", "zn", "--n", "7", "--m", "2", "-o", "z7m2.json")
    assert code == 0 and "7 points" in out and "symmetric=yes" in out
    code, out, _ = run(capsys, "space", "wedge", "--left", "z7m2.json", "--lp", "0",
                       "--right", "z7m2.json", "--rp", "0", "-o", "w.json")
    assert code == 0 and "13 points" in out


def test_cli_quotient_is_z7(workdir, capsys):
    run(capsys, "space", "zn", "--n", "11", "--m", "3", "-o", "z11.json")
    run(capsys, "space", "zn", "--n", "7", "--m", "2", "-o", "z7.json")
    code, out, _ = run(capsys, "space", "quotient", "--in", "z11.json", "--blocks", "0,1;3,4;5,6;8,9", "-o", "q.json")
    assert code == 0 and "7 points" in out
    code, out, _ = run(capsys, "compare", "q.json", "z7.json")
    assert code == 0 and out.startswith("isomorphic")


def test_cli_other_families(workdir, capsys):
    run(capsys, "space", "zn", "--n", "4", "--m", "1", "-o", "z4.json")
    run(capsys, "space", "jn", "--n", "1", "-o", "j1.json")
    for argv in (["product", "--left", "z4.json", "--right", "j1.json"],
                 ["coproduct", "--left", "z4.json", "--right", "j1.json"],
                 ["cone", "--in", "z4.json"],
                 ["suspension", "--in", "z4.json"],
                 ["file", "--in", "z4.json"]):
        code, out, err = run(capsys, "space", *argv)
        assert code == 0
        assert json.loads(out)["points"]
    J = interval_space(2)
    from closurehom.constructions import discrete_space
    f = CMap(discrete_space(2), J, (0, 2))
    (workdir / "f.json").write_text(json.dumps(map_to_json(f)))
    code, out, err = run(capsys, "space", "pushout", "--f", "f.json", "--g", "f.json")
    assert code == 0 and "4 points" in err


def test_cli_usage_errors(workdir, capsys):
    assert run(capsys, "space", "zn", "--n", "7")[0] == 2
    assert run(capsys, "space", "zn", "--n", "0", "--m", "1")[0] == 2
    assert run(capsys, "verify", "h1-roots", "--n", "9..4")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "no-such-theorem"])
    assert exc.value.code == 2


def test_cli_homology_formats(workdir, capsys):
    run(capsys, "space", "zn", "--n", "7", "--m", "2", "-o", "z7m2.json")
    run(capsys, "space", "zn", "--n", "3", "--m", "1", "-o", "z3m1.json")
    run(capsys, "space", "zn", "--n", "6", "--m", "2", "-o", "z6m2.json")
    code, out, _ = run(capsys, "homology", "z7m2.json", "--format", "json")
    assert code == 0 and json.loads(out)["degrees"]["1"] == {"rank": 1, "torsion": []}
    code, out, _ = run(capsys, "homology", "z3m1.json", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "degree,rank,torsion,group,status"
    assert [line.split(",")[1] for line in lines[1:]] == ["1", "0", "0", "0"]
    code, out, _ = run(capsys, "homology", "z6m2.json")
    row = next(line for line in out.splitlines() if line.startswith("| 2 "))
    assert "| Z |" in row and "surrogate" in row


def test_cli_homology_is_deterministic(workdir, capsys):
    run(capsys, "space", "zn", "--n", "9", "--m", "3", "-o", "z.json")
    outs = {run(capsys, "homology", "z.json", "--format", fmt)[1] for fmt in ["json"] * 3}
    assert len(outs) == 1


def test_cli_homology_error_codes(workdir, capsys, monkeypatch):
    assert run(capsys, "homology", "missing.json")[0] == 3
    (workdir / "bad.json").write_text("{not json")
    assert run(capsys, "homology", "bad.json")[0] == 3
    (workdir / "dir.json").write_text(json.dumps({"points": ["p", "q"], "closure": {"p": ["p", "q"], "q": ["q"]}}))
    assert run(capsys, "homology", "dir.json")[0] == 2
    run(capsys, "space", "zn", "--n", "12", "--m", "4", "-o", "big.json")
    monkeypatch.setenv("CLOSUREHOM_SIMPLEX_BUDGET", "50")
    assert run(capsys, "homology", "big.json", "--max-deg", "3")[0] == 4


def test_cli_cover_check(workdir, capsys):
    run(capsys, "space", "zn", "--n", "4", "--m", "1", "-o", "z4.json")
    (workdir / "ab.json").write_text(json.dumps({"space": "z4.json", "sets": {"A": ["0", "1", "3"], "B": ["1", "2", "3"]}}))
    code, out, _ = run(capsys, "cover-check", "ab.json")
    assert code == 1 and out.strip() == "not interior: witness 1"
    (workdir / "broken.json").write_text("[")
    assert run(capsys, "cover-check", "broken.json")[0] == 3


def test_cli_map_check(workdir, capsys):
    run(capsys, "space", "jn", "--n", "5", "-o", "j5.json")
    run(capsys, "space", "jn", "--n", "4", "-o", "j4.json")
    (workdir / "r.json").write_text(json.dumps(
        {"dom": "j5.json", "cod": "j4.json", "image": {str(i): str(min(i, 4)) for i in range(6)}}))
    (workdir / "id.json").write_text(json.dumps(
        {"dom": "j5.json", "cod": "j5.json", "image": {str(i): str(i) for i in range(6)}}))
    (workdir / "jump.json").write_text(json.dumps(
        {"dom": "j4.json", "cod": "j4.json", "image": {"0": "0", "1": "3", "2": "2", "3": "1", "4": "4"}}))
    code, out, _ = run(capsys, "map-check", "r.json")
    assert code == 0 and out.strip() == "continuous retraction"
    code, out, _ = run(capsys, "map-check", "id.json")
    assert code == 0 and out.startswith("continuous")
    code, out, _ = run(capsys, "map-check", "jump.json")
    assert code == 1 and "witness" in out


def test_cli_verify(workdir, capsys):
    code, out, err = run(capsys, "verify", "h1-roots", "--n", "4..8", "--m", "1..3", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "n,m,degree,expected_rank,computed_rank,expected_torsion,computed_torsion,verdict"
    assert "PASS" in err
    parallel = run(capsys, "verify", "h1-roots", "--n", "4..8", "--m", "1..3", "--format", "csv", "--jobs", "2")
    assert parallel[1] == out
