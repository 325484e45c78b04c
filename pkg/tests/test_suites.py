from intrec import suites
from intrec.fixtures import transformer_source
from intrec.pcat import Verdict


def test_pca_laws_are_seeded():
    a = suites.pca_laws(seed=3, count=30).to_dict()
    b = suites.pca_laws(seed=3, count=30).to_dict()
    assert a == b
    assert all(law["checked"] == 30 for law in a["laws"])


def test_suites_by_name():
    assert set(suites.SUITES) == {"pca", "pcategory", "cartesian", "exposure", "comonadic", "lindenbaum"}
    assert suites.run_suite("cartesian", size=2).verdict is Verdict.HOLDS


def test_srt_run_table():
    out = suites.srt_run("fun e y -> succ y", [0, 4])
    assert out.data["table"] == [[0, "1"], [4, "5"]]


def test_frt_run_on_double():
    out = suites.frt_run(transformer_source("double.lam"), range(4))
    assert [v for _, v in out.data["values"]] == ["0", "2", "4", "6"]


def test_encode_round_trip():
    d = suites.encode_text("fun x y -> y x")
    assert d["round_trip_equal"] and d["round_trip"] == "\\x. \\y. y x"
    assert suites.encode_number(1)["term"] == "\\x. x"
    assert suites.encode_number(12345)["junk"]
