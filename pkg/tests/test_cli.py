import json

import pytest

from semiheaps.cli import main
from semiheaps.io import load


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def fields(out):
    pairs = [line.split(": ", 1) for line in out.strip().splitlines()]
    return pairs, dict(pairs)


@pytest.fixture
def c4(tmp_path, capsys):
    path = tmp_path / "c4.txt"
    assert run(capsys, "make", "cyclic-sum", "4", "--out", str(path))[0] == 0
    return str(path)


def test_make_cyclic_sum(c4):
    rec = load(c4)
    assert rec.kind == "ternar" and len(rec.table) == 64


def test_make_to_stdout_keeps_report_on_stderr(capsys):
    code, out, err = run(capsys, "make", "group-heap", "z3")
    assert code == 0
    assert out.startswith("kind: ternar\nn: 3\n")
    assert "command: make group-heap z3" in err


def test_verify_exit_codes(c4, tmp_path, capsys):
    code, out, _ = run(capsys, "verify", c4, "diheap")
    assert code == 0 and fields(out)[1]["holds"] == "true"
    code, out, _ = run(capsys, "verify", c4, "heap")
    pairs, d = fields(out)
    assert code == 1 and d["holds"] == "false"
    assert [v for k, v in pairs if k == "witness"][0] == "1"
    trunc = tmp_path / "trunc.txt"
    trunc.write_text(open(c4).read()[:60])
    assert run(capsys, "verify", str(trunc), "heap")[0] == 2
    assert run(capsys, "verify", c4, "group")[0] == 2
    assert run(capsys, "verify", str(tmp_path / "missing.txt"), "heap")[0] == 2


def test_verify_abelian_and_binary(tmp_path, capsys):
    s3 = tmp_path / "s3.txt"
    run(capsys, "make", "group-heap", "s3", "--out", str(s3))
    code, out, _ = run(capsys, "verify", str(s3), "abelian", "--witness-limit", "2")
    pairs, _ = fields(out)
    assert code == 1 and len([1 for k, _ in pairs if k == "witness"]) == 2
    g = tmp_path / "g.txt"
    run(capsys, "make", "group", "s3", "--out", str(g))
    assert run(capsys, "verify", str(g), "group")[0] == 0
    cs = tmp_path / "cs.txt"
    run(capsys, "make", "constant-semigroup", "3", "1", "--out", str(cs))
    assert run(capsys, "verify", str(cs), "monoid")[0] == 1


def test_verify_sampled_prints_seed(c4, capsys):
    code, out, _ = run(capsys, "verify", c4, "semiheap", "--samples", "300", "--seed", "9")
    d = fields(out)[1]
    assert code == 0 and d["seed"] == "9" and d["checked"] == "300"


def test_biunits_command(tmp_path, capsys):
    odd = tmp_path / "odd.txt"
    run(capsys, "make", "odd-residues", "2", "--out", str(odd))
    code, out, _ = run(capsys, "biunits", str(odd))
    d = fields(out)[1]
    assert code == 0
    assert d["full_pairs_labelled"] == "(1,3) (3,1)"
    assert d["biunits"] == "none"
    z3 = tmp_path / "z3.txt"
    run(capsys, "make", "group-heap", "z3", "--out", str(z3))
    assert fields(run(capsys, "biunits", str(z3))[1])[1]["full_pairs"] == "(0,0) (1,1) (2,2)"
    k = tmp_path / "k.txt"
    run(capsys, "make", "constant-ternar", "3", "--out", str(k))
    assert fields(run(capsys, "biunits", str(k))[1])[1]["full_pairs"] == "none"


def test_correspond_round_trips(c4, tmp_path, capsys):
    out_path = tmp_path / "m.txt"
    code, out, _ = run(capsys, "correspond", "to-monoid", c4, "--pair", "1", "3", "--round-trip",
                       "--out", str(out_path))
    d = fields(out)[1]
    assert code == 0 and d["round_trip"] == "identical"
    assert d["identity"] == "3" and d["switch"] == "2 3 0 1"
    m = load(out_path)
    assert m.kind == "binary" and m.metadata["switch"] == "2 3 0 1"
    code, out, _ = run(capsys, "correspond", "to-semiheap", str(out_path), "--round-trip")
    d = fields(out)[1]
    assert code == 0 and d["pair"] == "(1,3)" and d["round_trip"] == "identical"


def test_correspond_group_heap_and_errors(c4, tmp_path, capsys):
    z3 = tmp_path / "z3.txt"
    run(capsys, "make", "group-heap", "z3", "--out", str(z3))
    d = fields(run(capsys, "correspond", "to-monoid", str(z3), "--pair", "0", "0")[1])[1]
    assert d["identity"] == "0" and d["switch"] == "0 2 1"
    assert run(capsys, "correspond", "to-monoid", c4, "--pair", "0", "1")[0] == 2
    assert run(capsys, "correspond", "to-monoid", c4)[0] == 2
    g = tmp_path / "g.txt"
    run(capsys, "make", "group", "z4", "--out", str(g))
    assert run(capsys, "correspond", "to-semiheap", str(g), "--switch", "0 0 0 0")[0] == 2
    assert run(capsys, "correspond", "to-semiheap", str(g), "--switch", "0 1")[0] == 2


def test_enumerate(capsys):
    assert fields(run(capsys, "enumerate", "1")[1])[1]["count"] == "1"
    assert fields(run(capsys, "enumerate", "2")[1])[1]["count"] == "8"
    assert fields(run(capsys, "enumerate", "2", "--up-to-iso")[1])[1]["count"] == "6"
    assert fields(run(capsys, "enumerate", "2", "--filter", "heap")[1])[1]["count"] == "1"
    assert run(capsys, "enumerate", "4")[0] == 2
    pairs, _ = fields(run(capsys, "enumerate", "2", "--filter", "diheap", "--dump")[1])
    assert len([1 for k, _ in pairs if k == "table"]) == 2


def test_enumerate_writes_files(tmp_path, capsys):
    out = tmp_path / "all"
    run(capsys, "enumerate", "2", "--filter", "has-biunit-pair", "--out", str(out))
    files = sorted(out.iterdir())
    assert len(files) == 4
    assert all(load(f).n == 2 for f in files)


def test_equiv(c4, tmp_path, capsys):
    from semiheaps.biunits import partner_involution
    from semiheaps.io import AlgebraFile, save
    from semiheaps.laws import twist

    t = load(c4).to_algebra()
    twisted = tmp_path / "psi.txt"
    save(AlgebraFile.from_algebra(twist(t, partner_involution(t))), twisted)
    code, out, _ = run(capsys, "equiv", c4, str(twisted), "--mode", "warp")
    d = fields(out)[1]
    assert code == 0 and d["path_length"] == "1" and d["step"] == "0 3 2 1"
    assert run(capsys, "equiv", c4, str(twisted), "--mode", "iso")[0] == 1
    code, out, _ = run(capsys, "equiv", c4, c4)
    assert code == 0 and fields(out)[1]["bijection"] == "0 1 2 3"
    z3 = tmp_path / "z3.txt"
    run(capsys, "make", "group-heap", "z3", "--out", str(z3))
    assert run(capsys, "equiv", c4, str(z3))[0] == 2


def test_make_cubic_check(capsys):
    code, out, _ = run(capsys, "make", "cubic", "2", "z2", "--check-biunit")
    d = fields(out)[1]
    assert code == 0
    assert d["right_pair(I,iota)"] == "true" and d["right_pair(iota,I)"] == "true"
    assert d["elements_checked"] == "256"
    assert d["semiheap_seed"] == "0"
    assert run(capsys, "make", "cubic", "2", "--out", "/tmp/never-written.txt")[0] == 2


def test_make_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["make", "nonsense"])
    assert exc.value.code == 2
    capsys.readouterr()
    assert run(capsys, "make", "cyclic-sum", "x")[0] == 2
    assert run(capsys, "make", "cyclic-sum")[0] == 2
    assert run(capsys, "make", "group", "q8")[0] == 2
    assert run(capsys, "make", "constant-semigroup", "2", "7")[0] == 2


def test_reports_are_deterministic(c4, capsys):
    first = run(capsys, "verify", c4, "heap", "--json")
    second = run(capsys, "verify", c4, "heap", "--json")
    assert first == second
    data = json.loads(first[1])
    assert data["exit_code"] == 1 and data["witnesses"] == [[1], [3]]
    a = run(capsys, "make", "cubic", "2", "--samples", "500", "--seed", "4")
    b = run(capsys, "make", "cubic", "2", "--samples", "500", "--seed", "4")
    assert a == b


def test_timings_only_on_request(c4, capsys):
    assert "time_s" not in run(capsys, "verify", c4, "semiheap")[1]
    assert "time_s" in run(capsys, "verify", c4, "semiheap", "--timings")[1]
