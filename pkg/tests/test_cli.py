import json

import pytest

from loopkit.cli import main
from loopkit.fixtures import fixture_text


@pytest.fixture
def loopfile(tmp_path):
    def make(name):
        path = tmp_path / f"{name}.loop"
        path.write_text(fixture_text(name), encoding="utf-8")
        return str(path)
    return make


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate(capsys, loopfile, tmp_path):
    assert run(capsys, "validate", loopfile("aip5"))[:2] == (0, "ok: loop of order 5\n")
    bad = tmp_path / "bad.loop"
    bad.write_text("order 3\n0 1 2\n1 1 0\n2 0 1\n")
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 2 and "Latin" in err
    bad.write_text("order three\n")
    assert run(capsys, "validate", str(bad))[0] == 2
    assert run(capsys, "validate", str(tmp_path / "missing.loop"))[0] == 2


def test_profile_text_uses_file_labels_and_json(capsys, loopfile):
    code, out, _ = run(capsys, "profile", loopfile("iso_pair_dot"))
    assert code == 0 and "nm: {1,2}\n" in out and "mns: true\n" in out
    code, out, _ = run(capsys, "profile", "--json", loopfile("iso_pair_dot"))
    assert json.loads(out)["nm"] == [0, 1]


def test_nuclei(capsys, loopfile):
    _, out, _ = run(capsys, "nuclei", loopfile("iso_pair_circ"))
    assert "nr: {1,2}\n" in out


def test_normal(capsys, loopfile):
    code, out, _ = run(capsys, "normal", loopfile("iso_pair_dot"), "--set", "1,2")
    assert code == 1 and out.startswith("not normal")
    code, out, _ = run(capsys, "normal", loopfile("iso_pair_dot"), "--set", "1,2,3,4,5,6")
    assert code == 0
    code, out, _ = run(capsys, "normal", loopfile("iso_pair_dot"), "--set", "1,2,3")
    assert code == 1 and out.startswith("not a subloop")
    assert run(capsys, "normal", loopfile("iso_pair_dot"), "--set", "0,9")[0] == 2


def test_isostrophe_reproduces_partner(capsys, loopfile):
    code, out, _ = run(capsys, "isostrophe", loopfile("iso_pair_dot"), "--side", "right")
    assert code == 0 and out == fixture_text("iso_pair_circ")


def test_quotient(capsys, tmp_path):
    z6 = tmp_path / "z6.loop"
    z6.write_text("order 6\n" + "".join(" ".join(str((i + j) % 6) for j in range(6)) + "\n" for i in range(6)))
    code, out, _ = run(capsys, "quotient", str(z6), "--set", "0,3")
    assert code == 0 and out.startswith("order 3\nbase 0\n0 1 2\n")
    assert "5->2" in out


def test_decompose(capsys, tmp_path):
    z6 = tmp_path / "z6.loop"
    z6.write_text("order 6\n" + "".join(" ".join(str((i + j) % 6) for j in range(6)) + "\n" for i in range(6)))
    code, out, _ = run(capsys, "decompose", str(z6))
    assert code == 0 and "E: {0,3}" in out and "O: {0,2,4}" in out and "(3, 4) -> 1" in out


def test_decompose_rejects_dihedral(capsys, tmp_path):
    from loopkit.core import dihedral_group
    from loopkit.loopfile import save_loop
    path = tmp_path / "d8.loop"
    save_loop(path, dihedral_group(4))
    code, out, _ = run(capsys, "decompose", str(path))
    assert code == 1 and out == "precondition failed: squaring_endomorphic\n"


def test_check(capsys, loopfile):
    assert run(capsys, "check", loopfile("aip5"), "--name", "aip")[0] == 0
    code, out, _ = run(capsys, "check", loopfile("mns_endo_aip_nonlns8"), "--name", "lns")
    assert code == 1 and "x=3, y=3, z=3" in out
    code, out, _ = run(capsys, "check", loopfile("aip5"), "--identity", "x*x^-1 = e")
    assert code == 1 and "undefined" in out
    assert run(capsys, "check", loopfile("aip5"), "--identity", "x*(y")[0] == 2
    assert run(capsys, "check", loopfile("aip5"), "--name", "nonsense")[0] == 2


def test_search(capsys, tmp_path):
    spec = tmp_path / "s.spec"
    spec.write_text("order 5\nrequire aip\npoint one_sided_inverse\nlimit nodes 1000000\n")
    code, out, err = run(capsys, "search", str(spec))
    assert code == 0 and out.startswith("order 5\n") and "nodes=" in err
    spec.write_text("order 3\nrequire unipotent\n")
    assert run(capsys, "search", str(spec))[0] == 1
    spec.write_text("order 3\nrequire x*\n")
    assert run(capsys, "search", str(spec))[0] == 2


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--order", "5", "--count")
    assert code == 0 and out == "count: 56\n"
    _, out, _ = run(capsys, "enumerate", "--order", "5", "--dedup", "iso", "--count")
    assert out == "count: 6\n"
    _, out, _ = run(capsys, "enumerate", "--order", "4", "--require", "unipotent")
    assert out.endswith("count: 1\n") and out.startswith("order 4\nbase 0\n")


def test_verify(capsys, tmp_path):
    code, out, err = run(capsys, "verify", "--suite", "S1..S4", "--max-order", "4")
    assert code == 0 and out.rstrip().endswith("OK") and "wall time" in err
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "--suite", "S5", "--max-order", "3", "--json", "--output", str(target))
    assert code == 0 and json.loads(target.read_text())["ok"]


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
    assert run(capsys, "verify", "--suite", "S9")[0] == 2
