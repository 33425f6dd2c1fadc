import json
import shutil
import subprocess
import sys

import pytest

from dcond import __version__
from dcond.cli import infer_vars, load_cases, main, run_case

QUARTIC = "(x1-x2*x3)*(x1^3+x2^4)"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_quartic_json(capsys):
    code, out, _ = run(capsys, "check", "--vars", "x1,x2,x3", "--poly", QUARTIC,
                       "--conditions", "H,B,L,KOSZUL,A_INV", "--format", "json")
    report = json.loads(out)
    assert code == 0
    assert {k: v["verdict"] for k, v in report["verdicts"].items()} == \
        {"H": "holds", "B": "holds", "L": "holds", "KOSZUL": "holds", "A_INV": "fails"}
    assert set(report) >= {"input", "verdicts", "limits", "version"}
    assert report["version"] == __version__
    assert report["limits"]["hit"] == []
    assert all(v["trace"] for v in report["verdicts"].values())


def test_json_is_byte_stable(capsys):
    argv = ["check", "--poly", "x1^2+x2^3", "--format", "json"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b and "timing" not in json.loads(a)


def test_timing_only_on_request(capsys):
    _, out, _ = run(capsys, "check", "--poly", "x1*x2", "--conditions", "B", "--format", "json", "--timing")
    assert "B" in json.loads(out)["timing"]


def test_vars_inferred(capsys):
    code, out, _ = run(capsys, "check", "--poly", "x1", "--conditions", "B")
    assert code == 0 and "B: holds" in out
    assert infer_vars(["x10+x2*x1"]) == ["x1", "x2", "x10"]


def test_bfun_power(capsys):
    code, out, _ = run(capsys, "bfun", "--vars", "x", "--poly", "x^3", "--max-order", "3", "--format", "json")
    cert = json.loads(out)["verdicts"]["functional-equation"]["certificate"]
    assert code == 0
    assert set(cert["roots"]) == {"-1", "-1/3", "-2/3"} and cert["verified"]
    assert cert["operator"] == "1/27*dx^3"


def test_bfun_not_found_is_unknown(capsys):
    code, out, _ = run(capsys, "bfun", "--poly", "x1^3", "--max-order", "1", "--max-bdeg", "1")
    assert code == 2 and "functional-equation: unknown" in out


def test_unknown_exit_code(capsys):
    code, _, _ = run(capsys, "check", "--factor", "x1^2+x2^3", "--factor", "x1^3+x3^2", "--conditions", "B")
    assert code == 2


def test_resource_limit_reported(capsys):
    code, out, _ = run(capsys, "check", "--poly", QUARTIC, "--conditions", "L,H",
                       "--max-steps", "1", "--format", "json")
    report = json.loads(out)
    assert code == 2 and report["limits"]["hit"] == ["H", "L"]
    assert report["verdicts"]["L"]["reason"].startswith("resource limit:")


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "check", "--vars", "x1,x2", "--poly", "x1^+")
    assert code == 1 and "position" in err


@pytest.mark.parametrize("argv", [
    ["check", "--vars", "x1", "--poly", "y"],
    ["check", "--vars", "x1", "--poly", "x1+1"],
    ["check", "--vars", "x1", "--poly", "x1", "--conditions", "Z"],
    ["check", "--vars", "x1"],
    ["nonsense"],
    [],
])
def test_usage_errors(capsys, argv):
    assert main(argv) == 1


def test_arrangement(capsys):
    code, out, _ = run(capsys, "arrangement", "--factor", "x1^2+x2^3+x3^4", "--factor", "2*x1^2+x2^3+3*x3^4",
                       "--weights", "1/2,1/3,1/4", "--format", "json")
    v = json.loads(out)["verdicts"]
    assert code == 0
    assert v["generic"]["verdict"] == "holds"
    assert v["pair-criterion"]["verdict"] == "fails"


def test_verify_ann_default_and_explicit(capsys):
    code, out, _ = run(capsys, "verify-ann", "--factor", "x1^2+x2^3+x3^4", "--factor", "2*x1^2+x2^3+3*x3^4")
    assert code == 0 and "annihilation: holds" in out
    code, out, _ = run(capsys, "verify-ann", "--vars", "x1,x2", "--factor", "x1", "--factor", "x2",
                       "--operator", "x1*dx1 - s", "--operator", "dx2*x2")
    assert code == 0 and "annihilation: holds" in out
    code, out, _ = run(capsys, "verify-ann", "--vars", "x1,x2", "--factor", "x1", "--factor", "x2",
                       "--operator", "dx1")
    assert "annihilation: fails" in out


def test_conormal(capsys):
    code, out, _ = run(capsys, "conormal", "--poly", "x1*x2", "--format", "json")
    v = json.loads(out)["verdicts"]
    assert code == 0 and v["W"]["verdict"] == "holds"
    assert v["conormal"]["certificate"]["generators"] == ["x1*xi1 - x2*xi2"]


def test_bundled_corpus(capsys):
    code, out, _ = run(capsys, "corpus", "fixtures", "--format", "json")
    report = json.loads(out)
    assert code == 0 and report["summary"]["mismatch"] == 0
    assert report["summary"]["skipped"] >= 2
    files = [k.split(":")[0] for k in report["verdicts"]]
    assert files == sorted(files)


def test_corpus_order_and_mismatch(tmp_path, capsys):
    (tmp_path / "b.toml").write_text('[[case]]\nname = "wrong"\nvars = ["x1", "x2"]\n'
                                     'poly = "x1*x2"\nexpect = { B = "fails" }\n')
    (tmp_path / "a.toml").write_text('[[case]]\nname = "right"\nvars = ["x1", "x2"]\n'
                                     'poly = "x1*x2"\nexpect = { B = "holds" }\n')
    code, out, _ = run(capsys, "corpus", str(tmp_path))
    lines = out.splitlines()
    assert code == 1
    assert lines[0].startswith("match") and "a.toml" in lines[0]
    assert lines[1].startswith("mismatch") and "b.toml" in lines[1]


def test_corpus_parallel_matches_serial(capsys):
    _, serial, _ = run(capsys, "corpus", "fixtures", "--format", "json")
    _, parallel, _ = run(capsys, "corpus", "fixtures", "--format", "json", "--jobs", "2")
    assert serial == parallel


def test_corpus_lattice_keys():
    case = {"name": "t", "vars": ["x1", "x2", "x3"], "poly": QUARTIC,
            "checks": ["H", "B", "A_INV"], "expect": {"A(h)": "fails"}}
    assert run_case(case)["status"] == "match"
    with pytest.raises(ValueError):
        run_case({**case, "expect": {"nope": "holds"}})


def test_documentation_cases_are_skipped():
    docs = [c for c in load_cases("fixtures") if c.get("documentation")]
    assert docs and all(run_case(c)["status"] == "skipped" for c in docs)


@pytest.mark.skipif(shutil.which("dcond") is None, reason="console script not installed")
def test_console_script():
    p = subprocess.run(["dcond", "check", "--poly", "x1", "--conditions", "B"], capture_output=True, text=True)
    assert p.returncode == 0 and "B: holds" in p.stdout


def test_module_entry():
    p = subprocess.run([sys.executable, "-m", "dcond.cli", "--version"], capture_output=True, text=True)
    assert p.returncode == 0 and __version__ in p.stdout
