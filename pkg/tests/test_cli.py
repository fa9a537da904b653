"""CLI behaviour: exit codes, JSON shape, digests and golden reports.

Regenerate the golden files with ``python3 tests/test_cli.py --regen`` after an
intended change of output.
"""

import json
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from necknerve import __version__
from necknerve.cli import main, parse_beads, parse_field
from necknerve.chainalg import Field
from necknerve.enrichedcats import dg_corpus, ordinal
from necknerve.simpset import std_simplex

GOLDEN_DIR = Path(__file__).parent / "golden"
GOLDEN = {
    "necklaces_p3": "necklaces enum --p 3",
    "maps_none": "maps 2 1,1",
    "maps_ext": "maps 1 2 --ext",
    "dim_endomaps": "dim 2,1 --maps",
    "dg_f3": "dg 2,1 --field F3",
    "hc_d3": "hc 3",
    "nerve_z2": "nerve --tag Dusk --example z2 --nmax 3 --validate --horns",
    "nerve_dg_acyclic": "nerve --tag dg --example acyclic --field F2 --nmax 2 --functors",
    "nerve_cub": "nerve --tag cub --example ordinal:1 --nmax 2 --functors",
    "ladjoint_dg": "ladjoint --nerve dg --builtin simplex:3",
    "ladjoint_cub": "ladjoint --nerve cub --builtin simplex:2 --nmax 3",
    "ladjoint_hc": "ladjoint --nerve hc --builtin horn:3,1 --nmax 2",
    "ladjoint_dusk": "ladjoint --nerve dusk --builtin boundary:2",
    "ladjoint_frob": "ladjoint --nerve frob --builtin circle --nmax 4",
    "check_retraction": "check retraction --nmax 3",
    "check_appendix": "check appendix --nmax 2",
    "check_phi": "check phi --nmax 2",
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out else None), err


def run_process(*argv):
    return subprocess.run([sys.executable, "-m", "necknerve", *argv],
                          capture_output=True, text=True)


@pytest.fixture
def delta2(tmp_path):
    p = tmp_path / "delta2.json"
    p.write_text(json.dumps(std_simplex(2).to_json()))
    return str(p)


# ---------------------------------------------------------------- examples


def test_enumerate_necklaces(capsys):
    code, doc, _ = run(capsys, "necklaces", "enum", "--p", "3")
    assert code == 0 and doc["count"] == 4
    assert sorted(n["name"] for n in doc["necklaces"]) == ["D1vD1vD1", "D1vD2", "D2vD1", "D3"]


def test_dg_check_suite(capsys):
    code, doc, _ = run(capsys, "check", "dg", "--pmax", "5")
    assert code == 0 and doc["ok"]
    assert {"d_squared_zero", "monoidality", "functoriality"} <= set(doc)


def test_ladjoint_from_a_file(capsys, delta2):
    code, doc, _ = run(capsys, "ladjoint", "--nerve", "dg", "--input", delta2,
                       "--from", "0", "--to", "2", "--oracle", "4")
    assert code == 0
    assert (doc["0"], doc["1"], doc["oracle_agrees"]) == (2, 1, True)
    assert doc["oracle"]["stabilized"]


def test_ladjoint_endpoints_move(capsys):
    _, doc, _ = run(capsys, "ladjoint", "--nerve", "dg", "--builtin", "simplex:3",
                    "--from", "1", "--to", "3")
    assert (doc["from"], doc["to"], doc["0"], doc["1"]) == ("1", "3", 2, 1)


@pytest.mark.parametrize("suite", ["necklaces", "dim", "comparison", "retraction", "appendix"])
def test_check_suites_pass(capsys, suite):
    code, doc, _ = run(capsys, "check", suite, "--nmax", "3")
    assert code == 0 and doc["ok"] and doc["suite"] == suite


# ---------------------------------------------------------------- exit codes


def test_failed_check_exits_one(capsys):
    code, doc, _ = run(capsys, "nerve", "--tag", "Dusk", "--example", "idem", "--horns")
    assert code == 1 and not doc["ok"]
    assert doc["horns"]["failures"]


def test_process_exit_codes():
    assert run_process("hc", "2").returncode == 0
    assert run_process("nerve", "--tag", "Dusk", "--example", "idem", "--horns").returncode == 1
    bad = run_process("nerve", "--tag", "dg")
    assert bad.returncode == 2 and "error" in json.loads(bad.stderr)


@pytest.mark.parametrize("argv", [
    ["nerve", "--tag", "dg"],
    ["nerve", "--tag", "dg", "--example", "unit", "--input", "x.json"],
    ["nerve", "--tag", "Dusk", "--example", "nowhere"],
    ["nerve", "--tag", "dg", "--example", "ordinal:2"],
    ["ladjoint", "--nerve", "dg", "--builtin", "bogus"],
    ["ladjoint", "--nerve", "dg"],
    ["ladjoint", "--nerve", "dg", "--input", "/nonexistent/k.json"],
    ["ladjoint", "--nerve", "dg", "--builtin", "simplex:2", "--from", "9"],
    ["hc", "2", "--nmax", "-1"],
])
def test_malformed_input_exits_two(capsys, argv):
    code, doc, err = run(capsys, *argv)
    assert code == 2 and doc is None
    assert json.loads(err)["version"] == __version__


@pytest.mark.parametrize("argv", [
    ["dg", "2,x"], ["dg", "2", "--field", "F4"], ["check", "nothing"], ["nerve"],
])
def test_bad_flags_exit_two(capsys, argv):
    with pytest.raises(SystemExit) as e:
        main(argv)
    assert e.value.code == 2


def test_garbage_json_exits_two(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert run(capsys, "ladjoint", "--nerve", "dg", "--input", str(p))[0] == 2
    p.write_text(json.dumps({"objects": [1]}))
    assert run(capsys, "nerve", "--tag", "const", "--input", str(p))[0] == 2


def test_dg_category_only_has_a_dg_nerve(capsys, tmp_path):
    p = tmp_path / "c.json"
    p.write_text(json.dumps(dg_corpus(Field(2))["unit"].to_json()))
    assert run(capsys, "nerve", "--tag", "Dusk", "--input", str(p))[0] == 2
    code, doc, _ = run(capsys, "nerve", "--tag", "dg", "--input", str(p), "--nmax", "2")
    assert code == 0 and doc["counts"] == {"0": 1, "1": 2, "2": 4}


# ---------------------------------------------------------------- JSON and digests


def test_category_file_matches_builtin(capsys, tmp_path):
    p = tmp_path / "ord2.json"
    p.write_text(json.dumps(ordinal(2).to_json()))
    for tag in ("const", "Dusk"):
        _, a, _ = run(capsys, "nerve", "--tag", tag, "--input", str(p), "--validate")
        _, b, _ = run(capsys, "nerve", "--tag", tag, "--example", "ordinal:2", "--validate")
        assert a["counts"] == b["counts"] and a["ok"] and b["ok"]
        assert a["input_digest"] != b["input_digest"]


def test_pretty_and_compact_agree(capsys):
    main(["dg", "2,1"])
    compact = capsys.readouterr().out
    main(["dg", "2,1", "--json"])
    pretty = capsys.readouterr().out
    assert "\n  " in pretty and "\n" not in compact.strip()
    assert json.loads(compact) == json.loads(pretty)


def test_digest_tracks_options_and_input(capsys, delta2, tmp_path):
    base = ["ladjoint", "--nerve", "dg", "--input", delta2]
    d1 = run(capsys, *base)[1]["input_digest"]
    assert run(capsys, *base, "--json")[1]["input_digest"] == d1
    assert run(capsys, *base, "--to", "1")[1]["input_digest"] != d1
    other = tmp_path / "copy.json"
    other.write_text(Path(delta2).read_text() + "\n")
    assert run(capsys, "ladjoint", "--nerve", "dg", "--input", str(other))[1]["input_digest"] != d1


def test_output_is_reproducible_across_processes():
    argv = ["nerve", "--tag", "Dusk", "--example", "z2", "--nmax", "3", "--validate"]
    a, b = run_process(*argv), run_process(*argv)
    assert a.returncode == 0 and a.stdout == b.stdout


def test_every_report_carries_version_and_schema(capsys):
    for argv in (["hc", "1"], ["dim", "3"], ["maps", "1", "1"]):
        _, doc, _ = run(capsys, *argv)
        assert doc["version"] == __version__ and doc["schema"] == 1


@given(st.lists(st.integers(1, 4), min_size=1, max_size=4))
def test_bead_parsing(beads):
    t = parse_beads(",".join(map(str, beads)))
    assert t.name() == "v".join(f"D{b}" for b in beads)
    assert t.p == sum(beads)


@given(st.sampled_from([2, 3, 5, 7, 11]), st.sampled_from(["F{}", "f{}", "F_{}", "{}"]))
def test_field_parsing(p, pattern):
    assert parse_field(pattern.format(p)) == Field(p)


def test_rational_field_spellings():
    assert parse_field("Q") == parse_field("QQ") == Field("Q")


# ---------------------------------------------------------------- golden reports


def golden_text(argv: str) -> tuple[int, str]:
    r = run_process(*argv.split(), "--json")
    return r.returncode, r.stdout


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_golden_report(name):
    code, out = golden_text(GOLDEN[name])
    want = (GOLDEN_DIR / f"{name}.json").read_text()
    assert code == 0
    assert json.loads(out) == json.loads(want)
    assert out == want


def regenerate():
    GOLDEN_DIR.mkdir(exist_ok=True)
    for name, argv in sorted(GOLDEN.items()):
        code, out = golden_text(argv)
        if code != 0:
            raise SystemExit(f"{argv} exited {code}")
        (GOLDEN_DIR / f"{name}.json").write_text(out)
        print("wrote", name)


if __name__ == "__main__" and "--regen" in sys.argv:
    regenerate()
