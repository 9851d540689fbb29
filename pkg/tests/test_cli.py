import json

import pytest

from framedlin.adhm import ADHMDatum
from framedlin.cli import main
from framedlin.heart import direct_sum_of_line_bundles


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def point_datum():
    return ADHMDatum.from_lists([[0]], [[0]], [[1]], [[0]])


def test_dimvec_ideal_sheaf(capsys):
    code, out, _ = run(capsys, "dimvec", "--surface", "P2", "--class", "1,0,0")
    assert code == 0 and out.strip() == "(1,3,1)"
    code, out, _ = run(capsys, "dimvec", "--surface", "P1xP1", "--class", "1,0,0,0", "--output", "json")
    assert code == 0 and json.loads(out)["dimension_vector"] == [1, 2, 1, 1]


def test_fixed_points(capsys):
    code, out, _ = run(capsys, "adhm", "fixed-points", "--k", "4", "--output", "json")
    payload = json.loads(out)
    assert code == 0 and payload["count"] == 5
    assert [p["partition"] for p in payload["fixed_points"]] == [[4], [3, 1], [2, 2], [2, 1, 1], [1, 1, 1, 1]]


def test_monad_json_round_trip(capsys, tmp_path):
    path = write(tmp_path, "d.json", point_datum().to_json())
    code, out, _ = run(capsys, "adhm", "monad", "--input", path, "--output", "json")
    assert code == 0
    cx_path = write(tmp_path, "cx.json", json.loads(out))
    code, out, _ = run(capsys, "cohomology", "hyper", "--input", cx_path, "--output", "json")
    assert code == 0 and json.loads(out)["h"] == {}
    code, out, _ = run(capsys, "heart", "rep", "--input", cx_path, "--output", "json")
    rep_path = write(tmp_path, "rep.json", json.loads(out))
    code, out, _ = run(capsys, "heart", "monad", "--input", rep_path, "--output", "json")
    assert code == 0 and json.loads(out)["complex"] == json.loads(open(cx_path).read())["complex"]


def test_json_output_is_deterministic(capsys, tmp_path):
    path = write(tmp_path, "pts.json", {"points": [[0, 0], [1, 2]]})
    first = run(capsys, "demo", "hilbert", "--points", path, "--output", "json", "--seed", "3")
    second = run(capsys, "demo", "hilbert", "--points", path, "--output", "json", "--seed", "3")
    assert first == second and first[0] == 0
    assert json.loads(first[1])["pass"]


def test_exit_code_math_failure(capsys, tmp_path):
    path = write(tmp_path, "pts.json", [[1, 1], [1, 1]])
    assert run(capsys, "demo", "hilbert", "--points", path)[0] == 2
    bad = write(tmp_path, "bad.json", ADHMDatum.from_lists([[0]], [[0]], [[1]], [[1]]).to_json())
    assert run(capsys, "adhm", "check", "--input", bad)[0] == 2
    assert run(capsys, "adhm", "monad", "--input", bad)[0] == 2
    cx = write(tmp_path, "cx.json", direct_sum_of_line_bundles("P2", [(-1,), (1,)]).to_json())
    assert run(capsys, "heart", "battery", "--input", cx)[0] == 2
    assert run(capsys, "heart", "trivial", "--input", cx)[0] == 2


def test_exit_code_input_errors(capsys, tmp_path):
    assert run(capsys, "adhm", "check", "--input", str(tmp_path / "missing.json"))[0] == 1
    garbage = tmp_path / "g.json"
    garbage.write_text("{not json")
    assert run(capsys, "adhm", "check", "--input", str(garbage))[0] == 1
    cx = write(tmp_path, "cx.json", direct_sum_of_line_bundles("P2", [(2,)]).to_json())
    code, _, err = run(capsys, "cohomology", "hyper", "--input", cx, "--window", "3")
    assert code == 1 and "window" in err
    assert run(capsys, "dimvec", "--surface", "P2", "--class", "a,b")[0] == 1


def test_argparse_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["dimvec", "--surface", "P3", "--class", "1,0,0"])
    assert exc.value.code == 1


def test_line_bundle_and_paths(capsys):
    assert run(capsys, "cohomology", "line-bundle", "--surface", "P2", "--twist", "-4")[1].strip() == "(0, 0, 3)"
    assert run(capsys, "quiver", "paths", "--from", "0", "--to", "2")[1].strip() == "3"
    assert run(capsys, "quiver", "euler", "--d", "1,3,1", "--e", "1,3,1")[1].strip() == "-1"
