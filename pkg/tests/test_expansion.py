from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from negbeta.betaspec import parse_beta_spec
from negbeta.errors import CapExceeded, OutOfDomain
from negbeta.expansion import (EventuallyPeriodic, boundary_sequences, detect_period, digits_str,
                               endpoints, eval_f_beta, expand, parse_digits, star, t_step,
                               tail_bound, value_interval)
from negbeta.language import is_admissible
from negbeta.numeric import Beta

from conftest import TEST_SET


def test_example1_first_digits():
    b = parse_beta_spec("example1").beta
    assert digits_str(expand(endpoints(b)[0], b, 17)) == "20121212012002121"
    assert tuple(detect_period(b)) == (13, 2)


@pytest.mark.parametrize("name,d", [
    ("example1", "2012121201200(21)"),
    ("example2", "2012121201200(1)"),
    ("minus2", "(2)"),
    ("neg_gamma0", "1(0)"),
])
def test_d_sequences(ctx, name, d):
    assert ctx(name)["bounds"].raw_d.render() == d


def test_minus2_bounds(ctx):
    bd = ctx("minus2")["bounds"]
    assert bd.lower.render() == "(10)"
    assert bd.upper.render() == "(01)"
    assert bd.raw_rstar.render() == "0(2)"
    assert bd.odd_period_flag


def test_star_leaves_other_sequences():
    d = EventuallyPeriodic(parse_digits("2"), parse_digits("10"))
    assert star(d) is d


def test_minus13_is_truncated(ctx):
    d = ctx("minus1.3")["bounds"].raw_d
    assert not d.complete and d.known == 4096
    with pytest.raises(CapExceeded):
        d[5000]


def test_eventually_periodic_canonical():
    d = EventuallyPeriodic((1, 2, 1, 2), (1, 2, 1, 2))
    assert d.preperiod == () and d.period == (1, 2)
    assert d.render() == "(12)"
    assert EventuallyPeriodic((3, 1, 2), (1, 2)).render() == "3(12)"


@pytest.mark.parametrize("name", TEST_SET)
def test_t_step_stays_in_domain(ctx, name):
    beta = ctx(name)["spec"].beta
    l, r = endpoints(beta)
    x = l
    for _ in range(200):
        _dg, x = t_step(x, beta)
        lo, _ = beta.enclose(x - l)
        lo2, _ = beta.enclose(r - x)
        assert lo >= 0 and lo2 > 0


def test_t_step_domain_error():
    with pytest.raises(OutOfDomain):
        t_step(Fraction(5), Beta.rational(-2))


@pytest.mark.parametrize("name", ["example1", "example2", "neg_gamma0", "minus2"])
def test_f_of_bounds_exact(ctx, name):
    bd = ctx(name)["bounds"]
    beta = ctx(name)["spec"].beta
    l, r = endpoints(beta)
    assert eval_f_beta(bd.raw_d, beta) == l
    assert eval_f_beta(bd.raw_rstar, beta) == r


@pytest.mark.parametrize("name", TEST_SET)
def test_bounds_are_self_admissible(ctx, name):
    bd = ctx(name)["bounds"]
    for s in (bd.lower, bd.upper):
        n = 60 if s.complete else 200
        assert is_admissible(s[:n], bd, corrected=True)


def _rational_points(beta):
    l, r = endpoints(beta)
    return st.integers(0, 10 ** 6 - 1).map(lambda k: l + (r - l) * Fraction(k, 10 ** 6))


@pytest.mark.parametrize("q", ["-2", "-1.3", "-2.5"])
def test_expand_then_evaluate(q):
    beta = Beta.decimal(q)

    @settings(max_examples=100, deadline=None)
    @given(_rational_points(beta))
    def check(x):
        count = 30
        ds = expand(x, beta, count)
        err = abs(eval_f_beta(ds, beta) - x)
        assert err <= tail_bound(beta, count)

    check()


def test_expand_prescales_outside_points():
    beta = Beta.rational(-2)
    ds, n = expand(Fraction(7), beta, 10, with_shift=True)
    assert n >= 1 and len(ds) == 10


def test_value_interval_contains_continuations(ctx):
    beta = ctx("example1")["spec"].beta
    bd = ctx("example1")["bounds"]
    w = bd.raw_d[:8]
    lo, hi = value_interval(w, beta)
    v = beta.enclose(eval_f_beta(bd.raw_d, beta), Fraction(1, 2 ** 60))
    assert lo <= v[0] and v[1] <= hi
