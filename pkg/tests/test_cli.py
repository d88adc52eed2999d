import json

import pytest

from kantorlab.cli import main
from kantorlab.lie import lie_from_json, lie_to_json
from kantorlab.pairs import MINUS, PLUS, opposite_pair, pair_from_json


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    report = None
    if "--- json ---" in out:
        report = json.loads(out.split("--- json ---", 1)[1])
    return code, out, report


@pytest.fixture
def fskew_file(tmp_path, capsys):
    path = tmp_path / "fskew4.json"
    code, _, _ = run(capsys, "build", "fskew", 4, "--field", "q", "--with-e", "-o", path)
    assert code == 0
    return path


def payload(d):
    return {k: d[k] for k in ("field", "dims", "products", "sp_labels") if k in d}


def test_build_fskew(fskew_file):
    d = json.loads(fskew_file.read_text())
    p = pair_from_json(d)
    assert p.dims == {MINUS: 6, PLUS: 6} and p.sp_labels is not None


def test_build_flag_form(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "build", "fskew", 4, "--field", "gf:7", "-o", a)[0] == 0
    assert run(capsys, "build", "--construction", "fskew", "--n", 4, "--gf", 7, "-o", b)[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_build_deterministic(tmp_path, capsys):
    paths = [tmp_path / f"{i}.json" for i in range(2)]
    for path in paths:
        assert run(capsys, "build", "double-alt", 4, "--with-e", "-o", path)[0] == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_build_e6(tmp_path, capsys):
    path = tmp_path / "e6.json"
    code, _, rep = run(capsys, "build", "e6", "--field", "q", "--report", "dims", "-o", path)
    assert code == 0
    l = lie_from_json(json.loads(path.read_text()))
    assert l.dim == 78
    assert rep["dims"]["dim"] == 78


def test_build_errors(capsys, tmp_path):
    assert run(capsys, "build", "fskew", 4, "--field", "gf:3")[0] == 2
    assert run(capsys, "build", "fskew", 4, "--field", "gf:4")[0] == 2
    assert run(capsys, "build", "fskew")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["build", "nonsense"])
    assert exc.value.code == 2
    assert run(capsys, "verify", tmp_path / "missing.json")[0] == 2


def test_verify_pair(fskew_file, capsys):
    code, out, rep = run(capsys, "verify", fskew_file, "--checks", "k1k2,jordan,grading,central-simple")
    assert code == 0 and rep["all_pass"]
    assert {c["check"] for c in rep["checks"]} == {"k1k2", "jordan", "grading", "central-simple"}
    code, _, _ = run(capsys, "verify", fskew_file, "--checks", "jacobi")
    assert code == 2


def test_verify_expect_not_jordan(fskew_file, tmp_path, capsys):
    refl = tmp_path / "refl.json"
    assert run(capsys, "weyl", fskew_file, "--element", "s1", "-o", refl)[0] == 0
    code, out, rep = run(capsys, "verify", refl, "--checks", "jordan,obstruction", "--expect", "not-jordan")
    assert code == 0
    assert "expected finding: not jordan" in out
    obs = next(c for c in rep["checks"] if c["check"] == "obstruction")
    assert obs["detail"]["obstruction_dims"] == [3, 3]
    code, _, rep = run(capsys, "verify", refl, "--checks", "jordan")
    assert code == 1 and not rep["all_pass"]


def test_verify_random_checks_echo_seed(tmp_path, capsys):
    path = tmp_path / "f5.json"
    run(capsys, "build", "fskew", 4, "--field", "gf:5", "-o", path)
    code, _, rep = run(capsys, "verify", path, "--checks", "central-simple", "--seed", 3, "--trials", 4)
    assert code == 0 and rep["seed"] == 3
    code, _, rep = run(capsys, "verify", path, "--checks", "k1k2")
    assert code == 0 and "seed" not in rep


def test_verify_flipped_constant(tmp_path, capsys):
    path = tmp_path / "e6.json"
    run(capsys, "build", "e6", "-o", path)
    d = json.loads(path.read_text())
    code, _, rep = run(capsys, "verify", path, "--checks", "jacobi,grading")
    assert code == 0
    entry = d["brackets"][40]
    c = entry["out"][0]["c"]
    entry["out"][0]["c"] = c[1:] if c.startswith("-") else "-" + c
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(d))
    code, out, rep = run(capsys, "verify", bad, "--checks", "jacobi")
    assert code == 1
    assert len(rep["checks"][0]["witness"]) == 3


def test_weyl_identity_and_opposite(fskew_file, tmp_path, capsys):
    one, neg = tmp_path / "one.json", tmp_path / "neg.json"
    assert run(capsys, "weyl", fskew_file, "--element", "1", "-o", one)[0] == 0
    src = json.loads(fskew_file.read_text())
    img = json.loads(one.read_text())
    assert json.dumps(payload(img), sort_keys=True) == json.dumps(payload(src), sort_keys=True)
    assert run(capsys, "weyl", fskew_file, "--element", "-1", "-o", neg)[0] == 0
    p, q = pair_from_json(src), pair_from_json(json.loads(neg.read_text()))
    assert q.products == opposite_pair(p).products


def test_weyl_both_paths(fskew_file, tmp_path, capsys):
    code, out, rep = run(capsys, "weyl", fskew_file, "--element", "s1", "--via", "both",
                         "-o", tmp_path / "r.json")
    assert code == 0 and "paths agree" in out and rep["paths_agree"]


def test_weyl_errors(fskew_file, tmp_path, capsys):
    assert run(capsys, "weyl", fskew_file, "--element", "s3")[0] == 2
    assert run(capsys, "weyl", fskew_file, "--element", "s2", "--via", "direct")[0] == 2
    plain = tmp_path / "plain.json"
    run(capsys, "build", "fskew", 4, "-o", plain)
    assert run(capsys, "weyl", plain, "--element", "s1")[0] == 2


def test_kantor_export(fskew_file, tmp_path, capsys):
    path = tmp_path / "k.json"
    assert run(capsys, "build", "fskew", 4, "--kantor", "-o", path)[0] == 0
    d = json.loads(path.read_text())
    l = lie_from_json(d)
    assert l.dim == 28 and lie_to_json(l)["brackets"] == d["brackets"]
    code, _, rep = run(capsys, "verify", path, "--checks", "jacobi,grading,tight")
    assert code == 0


def test_e6_roots_and_chevalley(tmp_path, capsys):
    path = tmp_path / "e6.json"
    code, _, rep = run(capsys, "build", "e6", "--with-e", "--report", "roots", "--report", "cartan",
                       "--report", "chevalley", "-o", path)
    assert code == 0
    extra = rep["reports"]
    assert len(extra["roots"]) == 72 and all("bc2_degree" in r for r in extra["roots"])
    assert len(extra["cartan"]) == 6
    assert all(extra["chevalley"].values())
    plain = tmp_path / "e6plain.json"
    run(capsys, "build", "e6", "-o", plain)
    code, _, rep = run(capsys, "verify", plain, "--checks", "jacobi,roots")
    assert code == 0
    roots = next(c for c in rep["checks"] if c["check"] == "roots")
    assert roots["detail"]["roots"] == 72
