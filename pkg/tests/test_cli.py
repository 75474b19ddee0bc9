import json

import pytest

from stablematch.cli import main

EXAMPLE = "1 2 3\n2 3 1\n3 2 1\n3 1 2\n1 2 3\n1 2 3\n"


@pytest.fixture
def example_file(tmp_path):
    path = tmp_path / "ex.txt"
    path.write_text(EXAMPLE)
    return str(path)


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_solve_men(capsys, example_file):
    status, out, _ = run(capsys, "solve", "--profile", example_file, "--side", "men")
    assert status == 0
    assert out.splitlines() == ["m1 w1 cost 4", "m2 w3 cost 3", "m3 w2 cost 5", "total 12 rounds 2"]


def test_solve_women_json(capsys, example_file):
    status, out, _ = run(capsys, "solve", "--profile", example_file, "--side", "women", "--format", "json")
    doc = json.loads(out)
    assert status == 0
    assert set(doc) == {"command", "params", "result", "elapsed_ms"}
    assert doc["result"]["total"] == 11
    assert doc["result"]["pairs"] == [[1, 2], [2, 3], [3, 1]]


def test_json_keys_are_stable(capsys, example_file):
    keys = []
    for _ in range(2):
        _, out, _ = run(capsys, "enumerate", "--profile", example_file, "--format", "json")
        doc = json.loads(out)
        keys.append((sorted(doc), sorted(doc["result"]), sorted(doc["params"])))
    assert keys[0] == keys[1]


def test_random_profile_is_seeded(capsys):
    a = run(capsys, "classify", "--random", "4", "--seed", "3")[1]
    b = run(capsys, "classify", "--random", "4", "--seed", "3")[1]
    assert a == b and "soulmate_pairs" in json.loads(a)


def test_formula(capsys):
    assert run(capsys, "formula", "F", "--n", "4", "--k", "2")[1].strip() == "23460876288"
    status, out, _ = run(capsys, "formula", "--list")
    assert status == 0 and "total" in out


def test_census_text_and_csv(capsys):
    status, out, err = run(capsys, "census", "--n", "3", "--stat", "stable-count")
    assert status == 0
    rows = {int(l.split()[0]): int(l.split()[1]) for l in out.splitlines()
            if l.strip() and l.split()[0].isdigit()}
    assert rows == {1: 34080, 2: 11484, 3: 1092}
    assert "census: 100%" in err
    status, out, err = run(capsys, "census", "--n", "2", "--stat", "stable-count", "--format", "csv", "--quiet")
    assert out.splitlines() == ["value,count", "1,14", "2,2"] and err == ""


def test_census_guard_exit_code(capsys):
    status, out, err = run(capsys, "census", "--n", "4", "--quiet")
    assert status == 2 and out == "" and "force" in err


@pytest.mark.parametrize("n", ["2", "3"])
def test_verify_exits_zero(capsys, n):
    status, out, _ = run(capsys, "verify", "--n", n)
    assert status == 0 and "BAD" not in out


def test_seq_commands(capsys):
    assert run(capsys, "seq", "export", "A001044", "--max", "3")[1] == "1 1\n2 4\n3 36\n"
    status, out, _ = run(capsys, "seq", "check", "A343698", "--max", "4")
    assert status == 0 and out.count(" ok ") == 4
    assert run(capsys, "seq", "export", "A344670", "--max", "4")[0] == 2
    assert run(capsys, "seq", "check", "A999999")[0] == 2
    assert "A344693" in run(capsys, "seq", "list")[1]


def test_seq_mismatch_exits_one(capsys, monkeypatch):
    from stablematch import sequences as S
    entry = S.get_entry("A001044")
    monkeypatch.setitem(S.load_registry(), "A001044", S.SequenceEntry(**{**vars(entry), "terms": (1, 5)}))
    assert run(capsys, "seq", "check", "A001044", "--max", "2")[0] == 1


@pytest.mark.parametrize("argv", [
    [], ["bogus"], ["solve", "--unknown"], ["solve"], ["formula", "F"],
    ["solve", "--random", "3", "--profile", "x"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_parse_error_names_line(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2\n2 2\n1 2\n1 2\n")
    status, out, err = run(capsys, "solve", "--profile", str(bad))
    assert status == 2 and out == "" and "line 2" in err


def test_profile_from_stdin(capsys, monkeypatch):
    import io
    import sys
    monkeypatch.setattr(sys, "stdin", io.TextIOWrapper(io.BytesIO(EXAMPLE.encode())))
    status, out, _ = run(capsys, "solve", "--profile", "-")
    assert status == 0 and out.splitlines()[-1] == "total 12 rounds 2"
