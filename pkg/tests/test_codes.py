from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from negbeta.codes import (build_code, build_cfrak, build_delta, build_delta0, build_gamma0,
                           build_gamma1_prime, chain_census, classify_regime, delta0_census,
                           delta00, first_return_census, gamma_ladder, golden_pair,
                           neg_gamma, phi_inverse, phi_word, structure_params, u_word, v_word)
from negbeta.errors import NonBinaryInput
from negbeta.expansion import EventuallyPeriodic, boundary_sequences, parse_digits
from negbeta.language import is_admissible
from negbeta.numeric import Beta, compare_real

from conftest import TEST_SET


def W(*texts):
    return {parse_digits(t) for t in texts}


@pytest.fixture(scope="module")
def ex1(ctx):
    d = ctx("example1")["bounds"].raw_d
    return d, structure_params(d, 88)


def test_example1_structure(ex1):
    d, params = ex1
    assert params.pairs[:3] == ((2, 1), (3, 1), (4, 4))
    assert params.blocks[:3] == tuple(parse_digits(t) for t in ("201", "20121", "2012121"))


def test_example1_families(ex1):
    d, params = ex1
    assert set(build_gamma0(d, params, 40)) == W("0", "1", "21", "200")
    assert set(build_delta0(d, params, 40)) == W("2")
    assert set(build_delta(d, params, 40, 2)) == W("2012121")
    d1 = set(build_delta(d, params, 40, 1))
    assert W("201", "20121") <= d1
    for k in range(4):
        assert parse_digits("2012121") * k + parse_digits("20121") in d1


def test_example1_gamma1_prime_adds_nothing(ex1):
    d, params = ex1
    assert set(build_gamma1_prime(d, params, 30)) <= set(build_cfrak(d, params, 30))


def test_example2_families(ctx):
    d = ctx("example2")["bounds"].raw_d
    params = structure_params(d, 88)
    base = parse_digits("2012121201200")
    dd0 = set(delta00(d, params, 40))
    assert (2,) in dd0 and all(base + (1, 1) * k in dd0 for k in range(4))
    g0 = set(build_gamma0(d, params, 40))
    assert W("0", "1", "21", "200") <= g0
    assert all(base + (1, 1) * k + (1, 0) in g0 for k in range(3))


@pytest.mark.parametrize("name", ["minus2", "example1", "example2", "minus1.3"])
def test_census_matches_materialized(ctx, name):
    code = ctx(name)["code"]
    lit = [0] * (code.word_cap + 1)
    for w in code.words:
        lit[len(w)] += 1
    assert lit == code.census[:code.word_cap + 1]
    assert not code.notes


def test_cfrak_census_by_first_returns(ex1):
    d, params = ex1
    lit = [0] * 31
    for w in build_cfrak(d, params, 30):
        lit[len(w)] += 1
    assert first_return_census(d, 30) == lit


def test_delta_census_dp(ctx):
    d = ctx("minus1.3")["bounds"].raw_d
    params = structure_params(d, 88)
    lit = [0] * 41
    for w in build_delta(d, params, 40, 1):
        lit[len(w)] += 1
    assert chain_census(params, 40, 1) == lit
    lit0 = [0] * 41
    for w in build_delta0(d, params, 40):
        lit0[len(w)] += 1
    assert delta0_census(d, params, 40) == lit0


def _proper_affix_free(words, suffix):
    ws = set(words)
    for w in words:
        for k in range(1, len(w)):
            part = w[k:] if suffix else w[:k]
            if part in ws:
                return False
    return True


@pytest.mark.parametrize("name", ["minus2", "example1", "example2"])
def test_cfrak_is_prefix_code(ctx, name):
    assert _proper_affix_free(ctx(name)["code"].words, suffix=False)


def sardinas_patterson(words):
    """True iff the finite set of words is uniquely decodable."""
    code = set(words)

    def quotient(A, B):
        return {b[len(a):] for a in A for b in B if len(b) > len(a) and b[:len(a)] == a}

    s = quotient(code, code)
    seen = set()
    while s:
        if s & code:
            return False
        key = frozenset(s)
        if key in seen:
            return True
        seen.add(key)
        s = quotient(code, s) | quotient(s, code)
    return True


def test_sardinas_patterson_detects_ambiguity():
    assert not sardinas_patterson([(0,), (0, 1), (1, 0)])
    assert sardinas_patterson([(0,), (1, 0), (1, 1)])


@pytest.mark.parametrize("name,cap", [("minus2", 12), ("example1", 14), ("minus1.3", 30)])
def test_support_code_uniquely_decodable(ctx, name, cap):
    assert sardinas_patterson([w for w in ctx(name)["code"].words if len(w) <= cap])


def test_delta1_example1_uniquely_decodable_but_not_suffix_free(ex1):
    d, params = ex1
    d1 = build_delta(d, params, 40, 1)
    assert sardinas_patterson(d1)
    # the listed members 20121 and 2012121.20121 share a suffix
    assert not _proper_affix_free(d1, suffix=True)


def _factorizations(word, words, lens):
    n = len(word)
    ways = [1] + [0] * n
    for i in range(1, n + 1):
        for l in lens:
            if l <= i and word[i - l:i] in words:
                ways[i] += ways[i - l]
    return ways[n]


@pytest.mark.parametrize("name", TEST_SET)
def test_unique_decodability(ctx, name):
    code = ctx(name)["code"]
    words = set(w for w in code.words if len(w) <= 24)
    lens = sorted({len(w) for w in words})
    small = [w for w in code.words if len(w) <= 8][:12]
    seen = 0

    def rec(prefix, k):
        nonlocal seen
        if prefix:
            assert _factorizations(prefix, words, lens) == 1
            seen += 1
        if k == 4:
            return
        for w in small:
            if len(prefix) + len(w) <= 24:
                rec(prefix + w, k + 1)

    rec((), 0)
    assert seen > 0


@pytest.mark.parametrize("name", TEST_SET)
def test_concatenations_are_admissible(ctx, name):
    c = ctx(name)
    small = [w for w in c["code"].words if len(w) <= 7][:6]

    def rec(prefix):
        assert is_admissible(prefix, c["bounds"], corrected=True)
        for w in small:
            if len(prefix) + len(w) <= 12:
                rec(prefix + w)

    rec(())


@pytest.mark.parametrize("name,regime,coded", [
    ("minus2", "BelowGamma0", False),
    ("neg_gamma0", "AtGamma0", True),
    ("example1", "BelowGamma0", True),
    ("example2", "BelowGamma0", True),
    ("minus1.3", "Band(1)", False),
])
def test_regimes(ctx, name, regime, coded):
    rep = ctx(name)["regime"]
    assert str(rep.regime) == regime and rep.coded == coded
    beta = ctx(name)["spec"].beta
    below = float(beta) <= -(1 + 5 ** 0.5) / 2 + 1e-15
    assert rep.coded == (below and not rep.odd_period)


@pytest.mark.parametrize("q,band", [("-1.5", 0), ("-1.3", 1), ("-1.1", 2)])
def test_band_classification(q, band):
    beta = Beta.decimal(q)
    rep = classify_regime(beta, boundary_sequences(beta))
    assert rep.regime.name == "Band" and rep.regime.n == band


def test_support_code_kinds(ctx):
    assert ctx("minus2")["code"].kind == "SimpleGamma"
    assert ctx("neg_gamma0")["code"].words == golden_pair().words
    assert ctx("example1")["code"].kind == "CFrak"
    assert ctx("minus1.3")["code"].label == "Delta1"


@pytest.mark.parametrize("name", ["minus1.3"])
def test_phi_conjugacy(ctx, name):
    rep = ctx(name)["regime"]
    d = ctx(name)["bounds"].raw_d
    w = tuple(int(c) for c in rep.pulled_back)
    img = phi_word(w, rep.regime.n)
    assert img == d[:len(img)]


@pytest.mark.parametrize("q", ["-1.3", "-1.1"])
def test_delta_n_is_phi_image_of_delta0(q):
    beta = Beta.decimal(q)
    bd = boundary_sequences(beta)
    rep = classify_regime(beta, bd)
    n = rep.regime.n
    w = EventuallyPeriodic(tuple(int(c) for c in rep.pulled_back), ())
    L = 40
    imgs = {phi_word(x, n) for x in build_delta0(w, structure_params(w, 2 * L + 8), L)}
    imgs = {x for x in imgs if len(x) <= L}
    assert imgs == set(build_delta(bd.raw_d, structure_params(bd.raw_d, 2 * L + 8), L, n))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 1), max_size=20), st.integers(1, 3))
def test_phi_inverse_roundtrip(w, n):
    assert phi_inverse(phi_word(w, n), n, partial=False) == tuple(w)
    img = phi_word(w, n)
    assert phi_word(phi_inverse(img, n), n) == img[:len(phi_word(phi_inverse(img, n), n))]


def test_phi_rejects_non_binary():
    with pytest.raises(NonBinaryInput):
        phi_word((2,))


def test_u_v_words():
    assert u_word(-1) == (0,) and u_word(0) == (1,) and u_word(1) == (1, 0, 0)
    assert v_word(0) == (0, 0) and v_word(1) == (1, 1)


@pytest.mark.parametrize("n", range(5))
def test_gamma_ladder_kraft(n):
    g = gamma_ladder(n)
    lo, hi = g.refine(Fraction(1, 2 ** 80))
    for x in (lo, hi):
        s = x ** -len(u_word(n)) + x ** -len(v_word(n))
        assert abs(s - 1) < 1e-12
    assert compare_real(neg_gamma(n), Fraction(-1)) == -1


def test_gamma_ladder_decreasing():
    vals = [float(gamma_ladder(n)) for n in range(5)]
    assert vals == sorted(vals, reverse=True)
    assert abs(vals[0] - (1 + 5 ** 0.5) / 2) < 1e-12
