import json

from intrec.fixpoint import srt
from intrec.kernel import Code, I, numeral
from intrec.asm import code_of
from intrec.pcat import LawReport, LawResult, Verdict
from intrec.report import SCHEMA, build_report, checks_from, code_summary, dumps, overall


def _report(verdicts):
    rep = LawReport("s")
    for i, v in enumerate(verdicts):
        rep.law("law%d" % i, "statement %d" % i).record(v, i)
    return rep


def test_overall_verdicts():
    assert overall(checks_from(_report([Verdict.HOLDS]))) == "pass"
    assert overall(checks_from(_report([Verdict.HOLDS, Verdict.UNKNOWN]))) == "unknown"
    assert overall(checks_from(_report([Verdict.UNKNOWN, Verdict.FAILS]))) == "fail"
    assert overall([]) == "unknown"


def test_checks_carry_anchor_and_witnesses():
    (c,) = checks_from(_report([Verdict.FAILS]))
    assert c["name"] == "s/law0" and c["anchor"] == "statement 0"
    assert c["verdict"] == "fail" and c["witnesses"] == [0]


def test_report_shape_and_order():
    r = build_report("laws", {"seed": 1}, checks_from(LawResult("b"), LawResult("a")))
    assert r["schema"] == SCHEMA and r["command"] == "laws"
    assert [c["name"] for c in r["checks"]] == ["a", "b"]
    assert "timings" not in r
    assert json.loads(dumps(r)) == r


def test_small_codes_are_exact():
    s = code_summary(I)
    assert s["value"] == "1" and s["nodes"] == 2


def test_large_codes_are_summarized():
    s = code_summary(srt(code_of("fun e y -> e")))
    assert "value" not in s and float(s["log2_value"]) > 10**4
    assert len(s["sha256"]) == 64


def test_junk_codes():
    assert code_summary(Code.from_int(12345)) == {"junk": True, "value": "12345"}


def test_numeral_summary():
    assert code_summary(numeral(0))["value"] == "6"
