import csv
import io
import json
import subprocess
import sys

import pytest

from lensfloer.census import report_emit, report_parse, verify
from lensfloer.cli import main
from lensfloer.dinvariants import DCache


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def strip_run(d):
    return {k: v for k, v in d.items() if k != "run"}


def test_verify_small_agrees():
    r = verify(30)
    assert r.agreement and r.diff == []
    for pq in [(17, 2), (19, 17), (26, 23)]:
        assert pq not in r.obstruction_set and pq not in r.berge_set
    assert b"AGREEMENT" in report_emit(r, "text")


def test_report_round_trip_and_determinism():
    a, b = verify(80), verify(80)
    assert strip_run(a.to_dict()) == strip_run(b.to_dict())
    back = report_parse(report_emit(a, "json"))
    assert strip_run(back.to_dict()) == strip_run(a.to_dict())
    with pytest.raises(ValueError):
        report_emit(a, "xml")
    with pytest.raises(ValueError):
        report_parse(json.dumps({"schema": "other"}))


def test_csv_sorted():
    r = verify(60)
    rows = list(csv.reader(io.StringIO(report_emit(r, "csv").decode())))
    assert rows[0] == ["p", "class", "obstruction", "berge"]
    keys = [(int(p), int(c)) for p, c, *_ in rows[1:]]
    assert keys == sorted(keys) and len(keys) == len(set(keys))
    assert all(o == b == "1" for _, _, o, b in rows[1:])


def test_disagreement_text():
    r = verify(40)
    r.obstruction_set = r.obstruction_set + [(41, 5)]
    text = report_emit(r, "text").decode()
    assert "DISAGREEMENT" in text and "L(41,5)" in text


def test_threads_equivalent():
    one, two = verify(90, threads=1), verify(90, threads=2)
    assert strip_run(one.to_dict()) == strip_run(two.to_dict())


def test_modes_and_filters():
    assert verify(120, strictness="relaxed").agreement
    assert verify(60, filters=["canonical"]).agreement
    oriented = verify(60, mode="oriented")
    assert oriented.to_dict()["mode"] == "oriented"
    for kw in [dict(mode="x"), dict(strictness="x"), dict(filters=["x"])]:
        with pytest.raises(ValueError):
            verify(10, **kw)
    with pytest.raises(ValueError):
        verify(1)


def test_cache_resume(tmp_path):
    path = tmp_path / "cache.csv"
    first = verify(50, cache=DCache(path))
    size = path.stat().st_size
    assert size > 0
    again = verify(50, cache=DCache(path))
    assert path.stat().st_size == size
    assert strip_run(first.to_dict()) == strip_run(again.to_dict())
    # a partial cache resumes and a missing one recomputes
    lines = path.read_text().splitlines()
    path.write_text("\n".join(lines[: len(lines) // 2]) + "\n")
    assert strip_run(verify(50, cache=DCache(path)).to_dict()) == strip_run(first.to_dict())
    path.unlink()
    assert strip_run(verify(50, cache=DCache(path), threads=2).to_dict()) == strip_run(first.to_dict())


def test_cli_d(capsys):
    code, out, _ = run(capsys, "d", "3", "2", "--json")
    assert code == 0 and json.loads(out) == {"p": 3, "q": 2, "d": ["1/6", "1/6", "-1/2"]}
    code, out, _ = run(capsys, "--json", "d", "2", "1", "1")
    assert json.loads(out)["d"] == ["-1/4"]
    code, out, _ = run(capsys, "d", "11", "9")
    assert code == 0 and out.count("\n") == 11
    assert run(capsys, "d", "4", "2")[0] == 2
    assert run(capsys, "d", "5", "1", "9")[0] == 2


def test_cli_obstruct(capsys):
    code, out, _ = run(capsys, "obstruct", "11", "9", "--json")
    d = json.loads(out)
    assert code == 0 and d["pass"] and "T^3 - T^2 + 1 - T^-2 + T^-3" in [
        w["alexander"] for w in d["witnesses"]]
    for p, q in [(17, 2), (19, 17), (26, 23)]:
        code, out, _ = run(capsys, "obstruct", str(p), str(q), "--json")
        assert code == 0 and json.loads(out)["pass"] is False
    assert "FAIL" in run(capsys, "obstruct", "17", "2")[1]


def test_cli_berge(capsys):
    code, out, _ = run(capsys, "berge", "--pmax", "12", "--csv")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "family,A,B,a,b,p,q" and len(lines) > 1
    code, out, _ = run(capsys, "berge", "--pmax", "12", "--family", "1", "--json")
    assert all(w["family"] == 1 for w in json.loads(out)["witnesses"])
    assert run(capsys, "berge", "--pmax", "1")[0] == 2


def test_cli_verify(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--pmax", "40")
    assert code == 0 and "AGREEMENT" in out
    code, out, _ = run(capsys, "verify", "--pmax", "40", "--json", "--threads", "2")
    assert code == 0 and json.loads(out)["agreement"] is True
    target = tmp_path / "r.csv"
    code, out, _ = run(capsys, "verify", "--pmax", "40", "--format", "csv", "--output", str(target))
    assert target.read_text().startswith("p,class,obstruction,berge")
    # the literal clause-6 sign brings in classes that fail the test
    code, out, _ = run(capsys, "verify", "--pmax", "300", "--clause6", "literal")
    assert code == 1 and "DISAGREEMENT" in out


def test_cli_hfk(capsys):
    code, out, _ = run(capsys, "hfk", "--alex", "T^3 - T^2 + 1 - T^-2 + T^-3", "--json")
    d = json.loads(out)
    assert code == 0 and d["valid"] and d["tau"] == 3
    assert [(g["alexander"], g["maslov"]) for g in d["generators"]] == [
        (3, 0), (2, -1), (0, -2), (-2, -5), (-3, -6)]
    code, out, _ = run(capsys, "hfk", "--alex", "T + 1 + T^-1", "--json")
    assert code == 0 and json.loads(out)["valid"] is False
    assert run(capsys, "hfk", "--alex", "T^^2")[0] == 2


def test_cli_fibered(capsys):
    code, out, _ = run(capsys, "fibered", "11", "2", "4", "--word", "--json")
    d = json.loads(out)
    assert code == 0 and d["fibered"] and d["word"] == "XYX^5YXYX^4Y"
    assert run(capsys, "fibered", "6", "2", "1")[0] == 2
    code, out, _ = run(capsys, "fibered-census", "--pmax", "30", "--json")
    assert code == 0 and json.loads(out)["failures"] == []


def test_cli_plumbing(capsys, tmp_path):
    code, out, _ = run(capsys, "plumbing", "--seifert", "-2; 1/2, 1/4, 1/3", "--json")
    d = json.loads(out)
    assert code == 0 and d["lspace"] and d["full_paths"] == d["det"] == 22
    g = tmp_path / "e8.json"
    from lensfloer.plumbing import e8
    g.write_text(json.dumps(e8().to_json()))
    code, out, _ = run(capsys, "plumbing", "--graph", str(g), "--check-confluence", "--json")
    assert code == 0 and json.loads(out)["full_paths"] == 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"weights": [-1, -1], "edges": [[0, 1]]}))
    assert run(capsys, "plumbing", "--graph", str(bad))[0] == 2
    assert run(capsys, "plumbing", "--graph", str(tmp_path / "missing.json"))[0] == 2


def test_cli_usage_errors(capsys):
    with pytest.raises(SystemExit) as e:
        main(["nosuch"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["verify", "--pmax", "10", "--threads", "0"])
    assert e.value.code == 2


def test_invariant_violation_exit_code(capsys, monkeypatch):
    from lensfloer import errors, obstruction

    def boom(*a, **k):
        raise errors.InvariantViolation("synthetic")
    monkeypatch.setattr(obstruction, "verdict", boom)
    code, _, err = run(capsys, "obstruct", "5", "1")
    assert code == 3 and "invariant violation" in err


def test_console_script():
    out = subprocess.run([sys.executable, "-m", "lensfloer.cli", "obstruct", "11", "9", "--json"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["pass"]
