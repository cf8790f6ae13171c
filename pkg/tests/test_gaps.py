import pytest
from hypothesis import given, settings, strategies as st

from negbeta.betaspec import parse_beta_spec
from negbeta.codes import build_code, classify_regime, u_word
from negbeta.errors import NotAdmissible, NotApplicable
from negbeta.expansion import boundary_sequences, parse_digits
from negbeta.gaps import (gap_patterns, gap_report, is_intransitive, is_support_factor,
                          k1_from_d, pattern_instances, unreadable_after)
from negbeta.language import is_admissible
from negbeta.measure import cylinder_measure, sample_champernowne


@pytest.fixture(scope="module")
def m13(ctx):
    return ctx("minus1.3")


def test_minus13_is_band1_with_k1_4(m13):
    assert m13["regime"].regime.name == "Band" and m13["regime"].regime.n == 1
    assert k1_from_d(m13["bounds"].raw_d, 1) == 4


def test_minus13_patterns(m13):
    pats = gap_patterns(m13["spec"].beta, m13["bounds"], 14, m13["regime"])
    words = {p.text for p in pats}
    assert {"01100", "0000"} <= words
    # family 3 with m = 0: 0 0 then 1^(2 k1 + 1) then 100
    assert "00" + "1" * 9 + "100" in words
    assert {p.text for p in pats if len(p.word) <= 12} == {"01100", "0000"}


def test_pattern_families_use_u_words():
    assert u_word(0) == (1,) and u_word(1) == (1, 0, 0)
    # family 2 with m = 0 is a^4 for a = u_{-1} = 0
    assert [p.text for p in pattern_instances(1, None, 6) if p.family == 2] == ["0000"]


def test_patterns_empty_at_gamma0(ctx):
    c = ctx("neg_gamma0")
    assert gap_patterns(c["spec"].beta, c["bounds"], 20, c["regime"]) == []


def test_patterns_not_applicable_below_gamma0(ctx):
    c = ctx("example1")
    with pytest.raises(NotApplicable):
        gap_patterns(c["spec"].beta, c["bounds"], 12, c["regime"])


@pytest.mark.parametrize("word", ["0000", "01100", "001111111111100"])
def test_minus13_patterns_are_intransitive(m13, word):
    r = is_intransitive(parse_digits(word), m13["code"], m13["bounds"])
    assert r.value is True
    assert not is_support_factor(parse_digits(word), m13["code"], m13["bounds"])


@pytest.mark.parametrize("word", ["0", "1", "11", "001", "100100", "1111"])
def test_minus13_support_factors_are_transitive(m13, word):
    r = is_intransitive(parse_digits(word), m13["code"], m13["bounds"])
    assert r.value is False and "decomposition" in r.witness


def test_gamma0_001_is_transitive(ctx):
    c = ctx("neg_gamma0")
    r = is_intransitive(parse_digits("001"), c["code"], c["bounds"])
    assert not r
    assert r.witness["decomposition"] == ["00", "1"]


def test_not_admissible_raises(ctx):
    c = ctx("neg_gamma0")
    with pytest.raises(NotAdmissible):
        is_intransitive(parse_digits("0101"), c["code"], c["bounds"])


def test_0000_needs_band_at_least_one():
    # at -1.5 (band 0) the word 0000 is a support factor
    b = parse_beta_spec("minus1.5").beta
    bd = boundary_sequences(b)
    reg = classify_regime(b, bd)
    assert reg.regime.name == "Band" and reg.regime.n == 0
    code = build_code(bd, regime=reg, beta=b)
    assert is_support_factor(parse_digits("0000"), code, bd)


def test_gap_measure_is_zero_and_unsampled(m13):
    s = sample_champernowne(m13["code"], m13["spec"].beta, 100_000, seed=0)
    for w in ["0000", "01100"]:
        m = cylinder_measure(parse_digits(w), m13["code"], m13["spec"].beta, m13["bounds"])
        assert m.status == "gap" and m.interval.hi == 0
        assert s.count(parse_digits(w)) == 0


def test_unreadable_certificate(m13):
    u = m13["code"].words[0] * 2
    assert unreadable_after(parse_digits("0000"), m13["bounds"], u)
    assert not unreadable_after(parse_digits("1"), m13["bounds"], u)


def test_minus13_report_has_no_inconclusive_words(m13):
    rep = gap_report(m13["spec"].beta, m13["bounds"], 10, m13["code"], m13["regime"])
    assert rep.inconclusive == []
    rows = rep.as_dict()["rows"]
    assert "0000" in rows[3]["flagged"]
    assert all(d >= 0 for d in rep.differences) and rep.differences[-1] > 0


@pytest.mark.parametrize("name", ["neg_gamma0", "example1", "example2"])
def test_no_gaps_without_odd_period(ctx, name):
    c = ctx(name)
    rep = gap_report(c["spec"].beta, c["bounds"], 8, c["code"], c["regime"])
    assert all(x == 0 for x in rep.differences)
    assert rep.inconclusive == []


def test_minus2_gaps_are_the_odd_period_words(ctx):
    c = ctx("minus2")
    rep = gap_report(c["spec"].beta, c["bounds"], 6, c["code"], c["regime"])
    rows = rep.as_dict()["rows"]
    assert [r["support"] for r in rows] == [2 ** n for n in range(1, 7)]
    assert [r["admissible"] for r in rows] == [2 ** (n + 1) - 1 for n in range(1, 7)]
    assert all("2" in w for r in rows for w in r["flagged"])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=9))
def test_intransitive_iff_not_support_factor(ctx, word):
    c = ctx("minus1.3")
    w = tuple(word)
    if not is_admissible(w, c["bounds"], corrected=False):
        return
    r = is_intransitive(w, c["code"], c["bounds"])
    assert r.value == (not is_support_factor(w, c["code"], c["bounds"]))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 1), max_size=4), st.lists(st.integers(0, 1), max_size=4))
def test_words_containing_0000_are_intransitive(ctx, a, b):
    c = ctx("minus1.3")
    w = tuple(a) + (0, 0, 0, 0) + tuple(b)
    if not is_admissible(w, c["bounds"], corrected=False):
        return
    assert is_intransitive(w, c["code"], c["bounds"]).value
