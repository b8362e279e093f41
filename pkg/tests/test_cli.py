import json

import pytest

from slembed import fixtures, io
from slembed.cli import main, run


@pytest.fixture
def files(tmp_path):
    out = {}
    for name in ("fan", "square_with_diagonal", "flat_roof"):
        d = getattr(fixtures, name)()
        p = tmp_path / f"{name}.disk.json"
        io.write_json(p, io.disk_to_json(d))
        m = tmp_path / f"{name}.identity.map.json"
        io.write_json(m, io.map_to_json(fixtures.identity_boundary(d)))
        out[name] = (p, m)
    sq = tmp_path / "squashed.json"
    io.write_json(sq, io.map_to_json(fixtures.squashed_square_map()))
    out["squashed"] = sq
    out["dir"] = tmp_path
    return out


def test_check_fan(files, capsys):
    assert main(["check", str(files["fan"][0])]) == 0
    assert capsys.readouterr().out.strip() == "valid, StrictlyConvex, TrV, simple, key=(2,3,4)"


def test_check_square(files, capsys):
    assert main(["check", str(files["square_with_diagonal"][0])]) == 0
    assert "not simple, spanning=(0,2)" in capsys.readouterr().out


def test_check_malformed(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{ nope")
    rep = run(["check", str(bad)])
    assert rep.exit_code == 1
    assert rep.checks[-1]["witness"]["error"] == "ParseError"


def test_usage_error_is_exit_one():
    assert main(["reduce"]) == 1


def test_extend_writes_verified_map(files, tmp_path):
    disk, m = files["fan"]
    out = tmp_path / "ext.json"
    rep = run(["extend", str(disk), str(m), "--out", str(out), "--svg", str(tmp_path / "fig")])
    assert rep.exit_code == 0
    assert {c["name"] for c in rep.checks} == {"oracle", "boundary agreement"}
    from slembed.oracle import is_embedding

    assert is_embedding(io.read_disk(disk), io.read_map(out))
    assert (tmp_path / "fig-after.svg").exists()


def test_extend_obstructive_exit_two(files, tmp_path):
    disk, _ = files["square_with_diagonal"]
    out = tmp_path / "never.json"
    rep = run(["extend", str(disk), str(files["squashed"]), "--out", str(out)])
    assert rep.exit_code == 2
    assert rep.checks[-1]["witness"]["edges"] == [[0, 2]]
    assert not out.exists()


def test_reduce_round_trip(files, tmp_path):
    out = tmp_path / "red.json"
    rep = run(["reduce", str(files["fan"][0]), "--edge", "0", "--out", str(out)])
    assert rep.exit_code == 0 and rep.passed
    rf = io.reduced_from_json(io.read_json(out))
    assert rf.base_edge == (0, 1)


def test_reduce_not_convex(tmp_path):
    from slembed.disk import SLDisk

    ell = SLDisk.from_lists([(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)],
                            [(0, 1, 2), (0, 2, 3), (0, 3, 5), (3, 4, 5)])
    p = tmp_path / "ell.json"
    io.write_json(p, io.disk_to_json(ell))
    assert main(["reduce", str(p)]) == 2


def test_vertical_extend_and_obstructive_listing(files, capsys):
    assert main(["vertical-extend", *map(str, files["flat_roof"])]) == 0
    assert main(["check-obstructive", str(files["square_with_diagonal"][0]), str(files["squashed"])]) == 0
    assert "obstructive: (0,2)" in capsys.readouterr().out


def test_fiber_fan(files, capsys):
    assert main(["fiber", str(files["fan"][0]), "--x", "1/2", "--y=-1/2"]) == 0
    assert capsys.readouterr().out.strip() == "dim(F)=1, dim(F^>=-1/2)=1, dim(F^-1/2)=0"


def test_sample_is_deterministic(files, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    disk = str(files["fan"][0])
    assert main(["sample", disk, "-n", "4", "--seed", "7", "--out", str(a)]) == 0
    assert main(["sample", disk, "-n", "4", "--seed", "7", "--out", str(b)]) == 0
    for f in sorted(a.iterdir()):
        assert f.read_bytes() == (b / f.name).read_bytes()


def test_corpus_modes(tmp_path):
    corp = tmp_path / "corp"
    assert main(["corpus", "--out", str(corp), "--size", "6", "--seed", "3"]) == 0
    rep = run(["extend", "--corpus", str(corp)])
    assert rep.exit_code == 0
    counts = rep.result["counts"]
    assert counts.get("failed", 0) == 0 and counts["ok"] >= 18
    rep = run(["lemma6-check", "--corpus", str(corp), "--samples", "6", "--fiber-samples", "2"])
    assert rep.exit_code == 0


def test_reports_are_reproducible(files, tmp_path):
    disk = str(files["fan"][0])
    ra, rb = tmp_path / "ra.json", tmp_path / "rb.json"
    for r in (ra, rb):
        main(["--report", str(r), "--no-timing", "lemma6-check", disk, "--samples", "12"])
    a, b = json.loads(ra.read_text()), json.loads(rb.read_text())
    a["command"] = b["command"] = None
    assert a == b


def test_render(files, tmp_path):
    out = tmp_path / "f.svg"
    assert main(["render", str(files["fan"][0]), "--annotate", "--out", str(out)]) == 0
    assert out.read_text().startswith("<svg")
