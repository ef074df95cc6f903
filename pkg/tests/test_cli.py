import json
from wahl_blowdown.cli import EXIT_FAILED, EXIT_INPUT, EXIT_OK, main
import pytest


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_info(capsys):
    code, out, _ = run(capsys, "info", "P1")
    assert code == EXIT_OK
    assert "negative definite: True" in out
    assert "e = 5, sigma = -4" in out
    assert "boundary H1: order 81, divisors [3, 27]" in out


def test_info_json(capsys, INSTANCES_DIR):
    code, out, _ = run(capsys, "--format", "json", "info", str(INSTANCES_DIR / "p2.json"))
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["h1_order"] == 289
    assert data["signature"] == [0, 6, 0, "odd"]
    assert (data["e"], data["sigma"]) == (7, -6)


def test_wahl(capsys):
    code, out, _ = run(capsys, "--format", "json", "wahl", "8")
    assert code == EXIT_OK
    assert json.loads(out)["h1_order"] == 1089
    code, _, err = run(capsys, "wahl", "3")
    assert code == EXIT_INPUT
    assert err.startswith("error:")


def test_blowdown(capsys, INSTANCES_DIR):
    code, out, _ = run(capsys, "blowdown", "X1'")
    assert code == EXIT_OK
    assert out.splitlines()[:2] == ["CP2#9CP2bar", "e = 12, sigma = -8"]
    assert "assumptions:" in out
    code, out, _ = run(capsys, "--format", "json", "blowdown", str(INSTANCES_DIR / "x1_plan.json"))
    assert code == EXIT_OK
    assert json.loads(out)["classification"] == "CP2#9CP2bar"


def test_swdim_and_wallcross(capsys):
    assert run(capsys, "swdim", "-4", "-12", "16")[:2] == (EXIT_OK, "d = 0\n")
    assert run(capsys, "wallcross", "0", "0")[:2] == (EXIT_OK, "plus = -1\n")
    assert run(capsys, "wallcross", "0", "1")[0] == EXIT_INPUT


@pytest.mark.parametrize("case", ["one", "two"])
def test_swreport_cases(capsys, case):
    code, out, _ = run(capsys, "--format", "json", "swreport", case)
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["pass"] is True
    assert data["d"] == 0
    assert abs(data["sw"]) == 1


def test_swreport_from_file(capsys, INSTANCES_DIR):
    a = "6,-2,-2,0,-2,-2,-2,-2,-2,-2,-1,0,-1,-1"
    config = str(INSTANCES_DIR / "p1_in_cp2_13.json")
    code, out, _ = run(capsys, "swreport", "--config", config, "--a", a)
    assert code == EXIT_OK
    assert "K.a < 0: -1: PASS" in out
    # H itself fails K.a < 0
    code, out, _ = run(capsys, "swreport", "--config", config, "--a", "1" + ",0" * 13)
    assert code == EXIT_FAILED
    assert run(capsys, "swreport", "--config", config)[0] == EXIT_INPUT
    assert run(capsys, "swreport", "--config", config, "--a", "1,x")[0] == EXIT_INPUT


def test_config_verify(capsys, INSTANCES_DIR, TEST_DATA_DIR):
    code, out, _ = run(capsys, "config", "verify", str(INSTANCES_DIR / "p1_in_cp2_13.json"))
    assert (code, out) == (EXIT_OK, "ok\n")
    code, _, err = run(capsys, "config", "verify", str(TEST_DATA_DIR / "short_class.json"))
    assert code == EXIT_INPUT
    assert "classes[2]" in err


def test_config_search(capsys):
    code, out, _ = run(capsys, "--format", "json", "config", "search", "P1", "--lattice", "0,4", "--bound", "1")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["found"] is True
    assert data["classes"][0] == [-1, -1, -1, -1]
    code, out, _ = run(
        capsys, "config", "search", "P1", "--lattice", "0,4", "--bound", "1", "--fix", "0:1,1,1,1", "--fix", "1:0,0,1,1"
    )
    assert code == EXIT_INPUT
    assert run(capsys, "config", "search", "P1", "--lattice", "0,4,1")[0] == EXIT_INPUT
    assert run(capsys, "config", "search", "P1", "--lattice", "0,4", "--bound", "1", "--max-nodes", "1")[0] == EXIT_INPUT


def test_monodromy(capsys, INSTANCES_DIR):
    code, out, _ = run(capsys, "monodromy", "eval", "(a^3 b)^3")
    assert code == EXIT_OK
    assert out.splitlines()[-1] == "identity"
    assert run(capsys, "monodromy", "verify", "b", "(ab) a (ab)^-1")[:2] == (EXIT_OK, "true\n")
    assert run(capsys, "monodromy", "verify", "ab", "ba")[0] == EXIT_FAILED
    assert run(capsys, "monodromy", "eval", "a^")[0] == EXIT_INPUT
    code, out, _ = run(capsys, "monodromy", "census", "I5")
    assert code == EXIT_OK
    assert out.splitlines()[:2] == ["euler count 12", "certificate verified"]
    incomplete = str(INSTANCES_DIR / "i5_incomplete.json")
    assert run(capsys, "monodromy", "census", incomplete)[0] == EXIT_INPUT
    assert run(capsys, "monodromy", "census", incomplete, "--complete")[0] == EXIT_OK
    assert run(capsys, "monodromy", "census", incomplete, "--complete", "--max-length", "0")[0] == EXIT_FAILED


def test_seifert(capsys, INSTANCES_DIR):
    assert run(capsys, "seifert", "h1", str(INSTANCES_DIR / "seifert_p1.json"))[:2] == (EXIT_OK, "81\n")
    assert run(capsys, "seifert", "h1", str(INSTANCES_DIR / "seifert_p2_second_reading.json"))[1] == "215\n"
    code, out, _ = run(capsys, "seifert", "from-plumbing", "P2")
    assert (code, out) == (EXIT_OK, "M(0;(1,1),(3,2),(5,4),(7,2))\n")
    code, out, _ = run(capsys, "--format", "json", "seifert", "to-plumbing", str(INSTANCES_DIR / "seifert_p4.json"))
    assert code == EXIT_OK
    assert len(json.loads(out)["vertices"]) == 8


def test_repro(capsys, INSTANCES_DIR, TEST_DATA_DIR):
    code, out, _ = run(capsys, "repro", "--manifest", str(INSTANCES_DIR / "manifest.json"))
    assert code == EXIT_OK
    assert out.splitlines()[-1] == "4 of 4 checks passed"
    code, out, _ = run(capsys, "repro", "--manifest", str(TEST_DATA_DIR / "failing_manifest.json"))
    assert code == EXIT_FAILED
    assert run(capsys, "repro", "--manifest", str(TEST_DATA_DIR / "missing.json"))[0] == EXIT_INPUT


def test_missing_file(capsys):
    code, _, err = run(capsys, "info", "no_such_graph.json")
    assert code == EXIT_INPUT
    assert "cannot read file" in err


def test_file_that_is_not_utf8(capsys, tmp_path):
    path = tmp_path / "latin1.json"
    path.write_bytes(b'{"vertices": [\xff]}')
    code, _, err = run(capsys, "info", str(path))
    assert code == EXIT_INPUT
    assert "not UTF-8" in err


def test_census_completion_budget(capsys, INSTANCES_DIR):
    incomplete = str(INSTANCES_DIR / "i5_incomplete.json")
    code, _, err = run(capsys, "monodromy", "census", incomplete, "--complete", "--max-nodes", "1")
    assert code == EXIT_INPUT
    assert "budget" in err
