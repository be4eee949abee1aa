from fractions import Fraction

import pytest

import exactprob


def test_qkd_table_reproduces_the_known_weights():
    rows = exactprob.qkd_table()
    assert len(rows) == 16
    assert rows[0] == {
        "AsOne": False,
        "AchX": False,
        "BchX": False,
        "BmOne": False,
        "exact": "1/8",
        "decimal": 0.125,
    }
    assert sum(exactprob.fraction(r["exact"]) for r in rows) == 1


def test_security_quantities():
    report = exactprob.qkd_security()
    assert report["p_b_measures_one"] == "1/2"
    assert report["posterior"] == "3/4"
    assert report["error"] == "1/4"
    assert [b["prob"] for b in report["blocks"]] == ["1/8"] * 8


def test_eve_stats():
    stats = exactprob.qkd_eve_stats()
    assert stats["sifted_prob"] == "1/2"
    assert stats["sifted_qber"] == "1/4"
    assert stats["eve_correct_given_sift"] == "3/4"


def test_measurement_rule():
    assert exactprob.measurement_prob_one(True, True, True) == "1"
    assert exactprob.measurement_prob_one(True, False, True) == "0"
    assert exactprob.measurement_prob_one(True, True, False) == "1/2"


def test_model_roundtrip_and_queries():
    text = exactprob.qkd_model_text()
    model = exactprob.parse_model(text)
    assert model.emit() == text
    assert model.vars == ["AsOne", "AchX", "BchX", "BmOne"]

    result = model.query("P(AsOne | BmOne)")
    assert result["exact"] == "3/4"
    assert exactprob.fraction(result["exact"]) == Fraction(3, 4)
    assert result["decimal"] == pytest.approx(0.75)

    total = model.query("total P(BmOne) by A_TTT A_FTT A_TFT A_FFT A_TTF A_FTF A_TFF A_FFF")
    assert total["exact"] == "1/2"
    assert len(total["blocks"]) == 8
    assert total["blocks"][0]["conditional"] == "1"

    stored = model.run_stored_queries()
    assert len(stored) == len(model.stored_queries)
    assert stored[0]["exact"] == "1/2"


def test_errors_surface_as_valueerror_with_locations():
    with pytest.raises(ValueError, match=r"3:1: prior sums to 7/8, expected 1"):
        exactprob.parse_model("vars: A\n\nprior:\n  T -> 1/2\n  F -> 3/8\n")
    model = exactprob.parse_model(exactprob.qkd_model_text())
    with pytest.raises(ValueError, match=r"unknown identifier 'Nope'"):
        model.query("P(Nope)")
    with pytest.raises(ValueError, match=r"probability 0"):
        model.query("P(AsOne | AsOne && !AsOne)")


def test_eve_model_prior_mass():
    model = exactprob.parse_model(exactprob.eve_model_text())
    weights = model.prior_weights()
    assert len(weights) == 64
    assert sum(exactprob.fraction(w) for w in weights.values()) == 1
    assert weights["FFFFFF"] == "1/16"
