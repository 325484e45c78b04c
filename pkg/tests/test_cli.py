import io
import json

import pytest

from intrec.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, run
from intrec.fixtures import data_path


def _run(*argv, env=None):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_encode_identity():
    code, out, _ = _run("encode", "fun x -> x")
    assert code == EXIT_OK
    assert "code: 1 " in out and "\\x. x" in out


def test_encode_number_and_junk():
    assert "\\x. x" in _run("encode", "1")[1]
    code, out, _ = _run("encode", "12345")
    assert code == EXIT_OK and "not the code of a term" in out


def test_quine_prints_code_term_and_table():
    code, out, _ = _run("quine", "--fuel", "200000")
    assert code == EXIT_OK
    assert out.startswith("intrec quine: PASS")
    assert "e = 2^" in out and "term: " in out
    assert sum(line.startswith("phi_e(") for line in out.splitlines()) == 5


def test_comonadic_suite_passes():
    code, out, _ = _run("laws", "--suite", "comonadic", "--probes", "finite:4", "--fuel", "100000")
    assert code == EXIT_OK and "FAIL" not in out


def test_json_is_deterministic():
    a = _run("laws", "--suite", "pca", "--seed", "5", "--count", "20", "--format", "json")[1]
    b = _run("laws", "--suite", "pca", "--seed", "5", "--count", "20", "--format", "json")[1]
    assert a == b
    rep = json.loads(a)
    assert rep["verdict"] == "pass" and rep["config"]["seed"] == 5


def test_rice_with_shipped_programs():
    code, out, _ = _run("rice", "--decider", data_path("truncated_halting.lam"),
                        "--pos", data_path("pos.lam"), "--neg", data_path("neg.lam"))
    assert code == EXIT_OK
    assert "[efp] Refuted" in out and "[srt] Refuted" in out


def test_lindenbaum_check_on_shipped_corpus():
    code, out, _ = _run("lindenbaum-check", "--corpus", data_path("lindenbaum_corpus.sexp"))
    assert code == EXIT_OK


def test_ill_sorted_corpus_exits_two(tmp_path):
    p = tmp_path / "bad.sexp"
    p.write_text("(+ (= 0 0) 1)\n")
    code, _, err = _run("lindenbaum-check", "--corpus", str(p))
    assert code == EXIT_USAGE and "error" in err


def test_failed_check_exits_one(monkeypatch):
    from intrec import suites
    from intrec.pcat import LawResult, Verdict

    def broken(*args, **kw):
        law = LawResult("broken", "always fails")
        law.record(Verdict.FAILS, "witness")
        return suites.Outcome([law], {"point": "bottom", "fuel": 1})

    monkeypatch.setattr(suites, "tarski", broken)
    code, out, _ = _run("tarski")
    assert code == EXIT_FAIL and "witness: witness" in out


def test_unknown_passes_unless_strict(monkeypatch):
    from intrec import suites
    from intrec.pcat import LawResult, Verdict

    def vague(*args, **kw):
        law = LawResult("vague")
        law.record(Verdict.UNKNOWN)
        return suites.Outcome([law], {"point": "bottom", "fuel": 1})

    monkeypatch.setattr(suites, "tarski", vague)
    assert _run("tarski")[0] == EXIT_OK
    assert _run("tarski", "--strict")[0] == EXIT_FAIL


@pytest.mark.parametrize("argv", [
    ["laws", "--suite", "nope"],
    ["laws", "--suite", "pca", "--probes", "finite:9"],
    ["quine", "--fuel", "0"],
    ["srt", "--program", "/nonexistent/file.lam"],
    ["frobnicate"],
])
def test_usage_errors_exit_two(argv):
    assert _run(*argv)[0] == EXIT_USAGE


def test_parse_error_in_program_exits_two(tmp_path):
    p = tmp_path / "bad.lam"
    p.write_text("fun x ->")
    code, _, err = _run("srt", "--program", str(p))
    assert code == EXIT_USAGE and "unexpected" in err


def test_fuel_from_environment(monkeypatch):
    monkeypatch.setenv("INTREC_FUEL", "12345")
    rep = json.loads(_run("encode", "0", "--format", "json")[1])
    assert rep["config"]["fuel"] == 12345
    monkeypatch.setenv("INTREC_FUEL", "lots")
    assert _run("encode", "0")[0] == EXIT_USAGE


def test_timings_only_on_request():
    assert "timings" not in json.loads(_run("encode", "0", "--format", "json")[1])
    assert "timings" in json.loads(_run("encode", "0", "--format", "json", "--timings")[1])
