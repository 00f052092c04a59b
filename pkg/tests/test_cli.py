import io
import json
from fractions import Fraction

import pytest

from zetasums import cli
from zetasums.derivation import Anchor, derive_closed_form
from zetasums.exactcore import ClosedForm
from zetasums.formatting import latex, parse_latex, pretty


def run(*argv, env=None):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


GOLDEN = {
    1: {"one": "-2/1", "log2": "3/1"},
    2: {"one": "3/1", "log2": "-3/1", "beta2": "-1/1"},
    3: {"one": "-15/4", "log2": "3/1", "beta2": "5/4", "zeta3": "7/16"},
}


@pytest.mark.parametrize("r", [1, 2, 3])
def test_derive_json_golden(r):
    code, out, _ = run("derive", "--r", str(r), "--format", "json")
    assert code == 0
    rec = json.loads(out)
    assert rec == {"anchor": "quarter", "weight": -1, "b": r, "closed_form": GOLDEN[r]}
    assert list(rec["closed_form"]) == list(GOLDEN[r])


def test_derive_text():
    code, out, _ = run("derive", "--r", "2", "--anchor", "quarter")
    assert code == 0
    assert "= 3 - 3*log(2) - G" in out


def test_derive_weighted_and_latex():
    code, out, _ = run("derive", "--r", "2", "--weight", "1", "--format", "latex")
    assert code == 0
    assert out.strip().endswith(r"= \frac{1}{16} - \frac{1}{16} G")


@pytest.mark.parametrize("argv", [
    ["derive", "--r", "0"],
    ["derive", "--r", "x"],
    ["derive"],
    ["derive", "--r", "2", "--anchor", "third"],
    ["derive", "--r", "1", "--weight", "1"],
    ["derive", "--r", "2", "--format", "xml"],
    ["eval", "nonsense"],
    ["eval", "gamma"],
    ["eval", "T1"],
    ["eval", "beta3"],
    ["bench", "--r", "1"],
    ["bench", "--r", "2", "--digits", "a,b"],
    ["table", "--r-max", "0"],
    ["frobnicate"],
    [],
])
def test_usage_errors_exit_2(argv):
    code, _, err = run(*argv)
    assert code == 2
    assert "error" in err


def test_usage_error_prints_help(capsys):
    code, _, err = run("derive", "--r", "0")
    assert "--r" in err
    assert "usage" in capsys.readouterr().err


@pytest.mark.parametrize("argv,expected", [
    (["eval", "G", "--digits", "9"], "0.915965594"),
    (["eval", "zeta5", "--digits", "10"], "1.0369277551"),
    (["eval", "S2", "--digits", "9"], "0.004592864"),
    (["eval", "S1", "--anchor", "half", "--digits", "12"], "0.386294361120"),
    (["eval", "psi1:1/4", "--digits", "10"], "17.1973291545"),
    (["eval", "log2", "--digits", "10"], "0.6931471806"),
])
def test_eval_values(argv, expected):
    code, out, _ = run(*argv)
    assert code == 0
    assert out.split(" = ")[1].startswith(expected)


def test_eval_json():
    code, out, _ = run("eval", "T2", "--digits", "10", "--format", "json")
    assert code == 0
    rec = json.loads(out)
    assert rec["value"] == "0.0052521504"
    assert rec["method"] in ("plain", "tail")


def test_verify_pass_exit_0():
    code, out, _ = run("verify", "--r-max", "5", "--anchor", "quarter", "--digits", "20")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 5 and all("PASS" in ln for ln in lines)
    assert "1/4*beta(4)" in lines[3] and "31/256*zeta(5)" in lines[4]


def test_verify_json_lines():
    code, out, _ = run("verify", "--r-max", "3", "--anchor", "both", "--weight", "1", "--format", "json")
    assert code == 0
    recs = [json.loads(ln) for ln in out.strip().splitlines()]
    assert [(r["anchor"], r["r"]) for r in recs] == [("quarter", 2), ("quarter", 3), ("half", 2), ("half", 3)]
    assert all(r["pass"] for r in recs)


def test_verify_fail_exit_1(monkeypatch):
    from zetasums.numerics import verify as verify_mod
    from zetasums.exactcore import ONE
    bad = derive_closed_form(1, Anchor.QUARTER) + ClosedForm({ONE: Fraction(1, 10**12)})
    monkeypatch.setattr(verify_mod, "derive", lambda r, a, w: bad)
    code, out, _ = run("verify", "--r-max", "1")
    assert code == 1 and "FAIL" in out


def test_effort_ceiling_env_exit_3(monkeypatch):
    monkeypatch.setenv(cli.MAX_TERMS_ENV, "10")
    code, _, err = run("eval", "S1", "--digits", "20")
    assert code == 3
    assert "ceiling is 10" in err


def test_effort_ceiling_env_invalid(monkeypatch):
    monkeypatch.setenv(cli.MAX_TERMS_ENV, "lots")
    assert run("eval", "one")[0] == 2


def test_table_text_and_values():
    code, out, _ = run("table", "--r-max", "5", "--digits", "17")
    assert code == 0
    lines = out.strip().splitlines()
    quarter = [ln for ln in lines if "16n^2-1" in ln and ln.startswith("sum 1/n")]
    assert "-2 + 3*log(2)" in quarter[0]
    assert "3 - 3*log(2) - G" in quarter[1]
    assert "1.9785692727842228e-5" in quarter[3]
    assert "1.3173820678770676e-6" in quarter[4]


def test_table_stable_order():
    rows = cli.table_rows(3)
    keys = [(r["anchor"], r["weight"], r["b"]) for r in rows]
    assert keys == [("quarter", -1, 1), ("quarter", -1, 2), ("quarter", -1, 3), ("quarter", 1, 2), ("quarter", 1, 3),
                    ("half", -1, 1), ("half", -1, 2), ("half", -1, 3), ("half", 1, 2), ("half", 1, 3)]
    assert cli.emit_table(3) == cli.emit_table(3)


def test_table_latex_round_trips_json():
    _, js, _ = run("table", "--r-max", "6", "--format", "json")
    _, tex, _ = run("table", "--r-max", "6", "--format", "latex")
    forms = [ClosedForm.from_json(json.loads(ln)["closed_form"]) for ln in js.strip().splitlines()]
    body = [ln for ln in tex.strip().splitlines() if "&=" in ln]
    parsed = [parse_latex(ln.split("&=")[1].split(r"\approx")[0]) for ln in body]
    assert parsed == forms


@pytest.mark.parametrize("r", range(1, 9))
def test_latex_and_pretty_render(r):
    f = derive_closed_form(r, Anchor.QUARTER)
    assert parse_latex(latex(f)) == f
    assert pretty(f).count("log(2)") == 1


def test_approx():
    code, out, _ = run("approx", "--digits", "15")
    assert code == 0
    assert "0.004592864142945" in out
    assert "second approximation better: True" in out


def test_bench_rows():
    rows = cli.bench_convergence(2, [10], max_terms=10**6)
    by = {r.method: r for r in rows}
    assert by["series"].terms <= 300
    assert by["series"].radius <= Fraction(1, 10**10)
    assert by["accelerated"].radius <= Fraction(1, 10**10)
    assert by["direct"].terms > 10**4


def test_bench_ceiling_marks_row_not_fatal():
    rows = cli.bench_convergence(2, [20], max_terms=10**5)
    direct = [r for r in rows if r.method == "direct"][0]
    assert direct.exceeded and direct.radius is None
    code, out, _ = run("bench", "--r", "2", "--digits", "10,20")
    assert code == 0 and "ceiling exceeded" in out


def test_bench_scaling():
    s10, s20 = [r for r in cli.bench_convergence(2, [10, 20]) if r.method == "series"]
    # b = 2 tail ~ N^-4: ten more digits cost about 10^(10/4) times the terms
    assert 100 < s20.terms / s10.terms < 1000
    s3 = [r for r in cli.bench_convergence(3, [10]) if r.method == "series"][0]
    assert s3.terms < s10.terms


def test_bench_json():
    code, out, _ = run("bench", "--r", "3", "--digits", "8", "--format", "json")
    recs = [json.loads(ln) for ln in out.strip().splitlines()]
    assert code == 0 and {r["method"] for r in recs} == {"series", "direct", "accelerated"}
