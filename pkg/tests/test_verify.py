import pytest

from qflag import verify


def test_borel_weil_k0_row_agrees_with_liouville(algebras, flag_of):
    flag = flag_of("A2/1")
    alg = algebras("A2")
    rep = verify.borel_weil_report(alg, flag, kmax=0, depth=3, kmin=0)
    liou = verify.liouville_report(alg, flag, 3)
    assert rep["rows"][0]["dim"] == liou["dim"] == 1
    assert rep["ok"] and liou["ok"]


def test_report_metadata(algebras, flag_of):
    flag = flag_of("A1/1")
    rep = verify.borel_weil_report(algebras("A1"), flag, kmax=1, depth=3)
    for key in ("schema", "schema_version", "flag", "L", "mode", "word"):
        assert key in rep
    assert rep["L"] == 2
    assert rep["mode"] == "symbolic"
    assert rep["word"] == [1]


def test_highest_weight_audit(algebras, flag_of):
    for name, k, depth in (("A1/1", 1, 3), ("A1/1", 2, 4), ("A2/1", 1, 3)):
        flag = flag_of(name)
        rep = verify.highest_weight_audit(algebras(str(flag.lie)), flag, k,
                                          depth)
        assert rep["block_shift_law"], rep
        assert all(e["factors_through_z_power"] for e in rep["elements"])
        assert rep["ok"]
    with pytest.raises(ValueError):
        verify.highest_weight_audit(algebras("A1"), flag_of("A1/1"), 0, 2)


def test_highest_weight_audit_larger_flags(algebras, flag_of):
    for name, depth in (("A3/2", 3), ("B2/1", 3), ("C2/2", 3)):
        flag = flag_of(name)
        rep = verify.highest_weight_audit(algebras(str(flag.lie)), flag, 1,
                                          depth)
        assert rep["ok"], (name, rep)


def test_audit_block_shift_content(algebras, flag_of):
    # E_1 blocks are the E_0 blocks shifted by w_x (dual labels shift by
    # -w0(w_x)); for A2/1 that is {w1, (2,1)} within depth 3
    rep = verify.highest_weight_audit(algebras("A2"), flag_of("A2/1"), 1, 3)
    assert rep["blocks_found"] == [[1, 0], [2, 1]]


def test_verify_suite_depth_clamps(algebras, flag_of):
    # a small explicit depth clamps the k and d budgets so predictions fit
    rep = verify.verify_suite(flag_of("A1/1"), ["borel-weil", "coordring"],
                              depth=2, algebra=algebras("A1"))
    assert rep["ok"]
    bw = rep["reports"][0]
    assert max(r["k"] for r in bw["rows"]) == 2


def test_verify_suite_unknown_name(algebras, flag_of):
    with pytest.raises(ValueError):
        verify.verify_suite(flag_of("A1/1"), ["bogus"],
                            algebra=algebras("A1"))


def test_second_word_spans_via_report(algebras, flag_of):
    import qflag.cartan as cartan
    flag = flag_of("A2/1")
    alg = algebras("A2")
    alt = tuple(reversed(cartan.longest_word(flag.lie)))
    base = verify.borel_weil_report(alg, flag, kmax=2, depth=3, kmin=-1)
    other = verify.borel_weil_report(alg, flag, kmax=2, depth=3, kmin=-1,
                                     word=alt)
    assert [r["dim"] for r in base["rows"]] == \
        [r["dim"] for r in other["rows"]]
    assert other["word"] == list(alt)
