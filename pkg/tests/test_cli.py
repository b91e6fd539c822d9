import json

import pytest

from dilatree.cli import run
from dilatree.dilation import PointSet, Tree, Verdict, compare_to_threshold
from dilatree.fileio import dump_json, load_json, points_from_json
from dilatree.gadget import PartitionSolution


def cli(*argv):
    try:
        return run(list(argv))
    except SystemExit as exc:        # argparse rejections
        return exc.code


@pytest.fixture
def square(tmp_path):
    pts = tmp_path / "pts.json"
    tr = tmp_path / "tree.json"
    dump_json({"points": [[0, 0], [1, 0], [1, 1], [0, 1]]}, pts)
    dump_json({"edges": [[0, 1], [1, 2], [2, 3]]}, tr)
    return pts, tr


def gen_instance(tmp_path, alphas):
    out = tmp_path / f"inst_{alphas.replace(',', '_')}.json"
    assert cli("gen", "--alphas", alphas, "-o", str(out)) == 0
    return out


# ---------------------------------------------------------------------------
# scenario matrix: every exit code earned the documented way


def test_exit_code_matrix(tmp_path, square):
    pts, tr = square
    yes = gen_instance(tmp_path, "1,1")
    no = gen_instance(tmp_path, "1,1,1")
    tampered = tmp_path / "tampered.json"
    obj = load_json(yes)
    obj["points"][6]["x"] = str(int(obj["points"][6]["x"]) + (1800 << 33))
    dump_json(obj, tampered)
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")

    scenarios = [
        (["oracle", "--alphas", "1,1"], 0),
        (["oracle", "--alphas", "1,2,4"], 1),
        (["oracle", "--alphas", "500001,500001"], 2),
        (["decide", str(yes)], 0),
        (["decide", str(no)], 1),
        (["decide", str(tmp_path / "absent.json")], 2),
        (["dilation", "--points", str(pts), "--tree", str(tr),
          "--threshold", "3/1"], 0),
        (["dilation", "--points", str(pts), "--tree", str(tr),
          "--threshold", "2/1"], 1),
        (["dilation", "--points", str(pts), "--tree", str(tr),
          "--threshold", "1.5"], 2),
        (["verify", str(yes)], 0),
        (["verify", str(broken)], 2),
        (["witness5", "--seed", "3", "--budget", "10"], 3),
    ]
    for argv, expected in scenarios:
        assert cli(*argv) == expected, argv


# ---------------------------------------------------------------------------
# pipeline behavior


def test_gen_is_deterministic(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    assert cli("gen", "--alphas", "2,3,5", "-o", str(a)) == 0
    assert cli("gen", "--alphas", "2,3,5", "-o", str(b)) == 0
    assert a.read_bytes() == b.read_bytes()


def test_decide_writes_valid_solution(tmp_path):
    inst = gen_instance(tmp_path, "2,3,5")
    sol_path = tmp_path / "sol.json"
    assert cli("decide", str(inst), "-o", str(sol_path)) == 0
    sol = load_json(sol_path)
    split = PartitionSolution(set(sol["A"]), set(sol["A_prime"]))
    assert split.consistent_with((2, 3, 5))
    data = load_json(inst)
    n_points = len(data["points"])
    tree = Tree(n_points, [tuple(e) for e in sol["edges"]])
    ps = points_from_json(data)
    p, q = int(data["P"]), int(data["Q"])
    assert compare_to_threshold(ps, tree, p, q) is Verdict.AT_MOST


def test_decide_round_trip_matches_reparse(tmp_path, capsys):
    inst = gen_instance(tmp_path, "1,1")
    capsys.readouterr()
    assert cli("decide", str(inst)) == 0
    first = capsys.readouterr().out
    assert cli("decide", str(inst)) == 0
    assert capsys.readouterr().out == first


def test_gadget_file_decides_like_instance(tmp_path, capsys):
    inst = tmp_path / "inst.json"
    gad = tmp_path / "gadget.json"
    assert cli("gen", "--alphas", "1,1", "-o", str(inst),
               "--gadget", str(gad)) == 0
    capsys.readouterr()
    assert cli("decide", str(inst)) == 0
    via_instance = capsys.readouterr().out
    assert cli("decide", str(gad)) == 0
    assert capsys.readouterr().out == via_instance


def test_verify_reports_tampered_points(tmp_path, capsys):
    inst = gen_instance(tmp_path, "1,1")
    obj = load_json(inst)
    obj["points"][6]["y"] = str(int(obj["points"][6]["y"]) + 1)
    bad = tmp_path / "bad.json"
    dump_json(obj, bad)
    assert cli("verify", str(bad)) == 1
    out = capsys.readouterr().out
    assert "[FAIL] integer rescaling" in out


def test_verify_json_report(tmp_path):
    inst = gen_instance(tmp_path, "1,1")
    report = tmp_path / "report.json"
    assert cli("verify", str(inst), "--json", str(report)) == 0
    data = load_json(report)
    assert data["passed"] is True
    assert len(data["checks"]) == 8
    assert all(c["passed"] for c in data["checks"])


def test_dilation_reports_witness(square, capsys):
    pts, tr = square
    assert cli("dilation", "--points", str(pts), "--tree", str(tr)) == 0
    out = capsys.readouterr().out
    assert "witness pair: 0,3" in out
    assert "dilation in [3, 3]" in out


def test_dilation_on_balanced_instance_tree(tmp_path, capsys):
    # valid split: the decision threshold certifies, bare 3/2 does not apply
    inst = gen_instance(tmp_path, "1,1")
    sol_path = tmp_path / "sol.json"
    assert cli("decide", str(inst), "-o", str(sol_path)) == 0
    data = load_json(inst)
    pts_path = tmp_path / "gpts.json"
    dump_json({"points": data["points"]}, pts_path)
    tree_path = tmp_path / "gtree.json"
    dump_json({"edges": load_json(sol_path)["edges"]}, tree_path)
    threshold = f"{data['P']}/{data['Q']}"
    assert cli("dilation", "--points", str(pts_path), "--tree",
               str(tree_path), "--threshold", threshold) == 0
    capsys.readouterr()
    assert cli("dilation", "--points", str(pts_path), "--tree",
               str(tree_path)) == 0
    out = capsys.readouterr().out
    assert "witness pair: q2,p2" in out


def test_mdst_writes_optimal_tree(square, tmp_path, capsys):
    pts, _ = square
    out = tmp_path / "best.json"
    assert cli("mdst", "--points", str(pts), "-o", str(out)) == 0
    edges = {tuple(e) for e in load_json(out)["edges"]}
    assert len(edges) == 3
    text = capsys.readouterr().out
    assert "examined" in text


def test_mdst_respects_required_edge(square, tmp_path):
    pts, _ = square
    out = tmp_path / "forced.json"
    assert cli("mdst", "--points", str(pts), "--require", "0,2",
               "-o", str(out)) == 0
    assert [0, 2] in load_json(out)["edges"]


def test_mdst_size_guard(tmp_path):
    path = tmp_path / "many.json"
    dump_json({"points": [[i, i * i] for i in range(11)]}, path)
    assert cli("mdst", "--points", str(path)) == 2


def test_mdst_path_mode(square, tmp_path):
    pts, _ = square
    out = tmp_path / "path.json"
    assert cli("mdst", "--points", str(pts), "--mode", "path",
               "-o", str(out)) == 0
    degree = {}
    for u, v in load_json(out)["edges"]:
        degree[u] = degree.get(u, 0) + 1
        degree[v] = degree.get(v, 0) + 1
    assert sorted(degree.values()) == [1, 1, 2, 2]


def test_svg_deterministic_bytes(square, tmp_path):
    pts, tr = square
    a = tmp_path / "a.svg"
    b = tmp_path / "b.svg"
    assert cli("svg", "--points", str(pts), "--tree", str(tr),
               "-o", str(a)) == 0
    assert cli("svg", "--points", str(pts), "--tree", str(tr),
               "-o", str(b)) == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().startswith("<svg ")


def test_witness5_writes_points(tmp_path, capsys):
    out = tmp_path / "w5.json"
    code = cli("witness5", "--seed", "10", "--budget", "5000",
               "-o", str(out))
    assert code == 0
    ps = points_from_json(load_json(out))
    assert ps.n == 5
    printed = capsys.readouterr().out.strip().splitlines()
    assert len(printed) == 5


def test_oracle_prints_split(capsys):
    assert cli("oracle", "--alphas", "2,3,5") == 0
    data = json.loads(capsys.readouterr().out)
    assert data == {"A": [1, 2], "A_prime": [3]}
