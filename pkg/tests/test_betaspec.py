import json
from fractions import Fraction

import pytest

from negbeta.betaspec import (EXAMPLE1, TEST_SET, beta_from_d, check_self_admissible,
                              load_test_set, parse_beta_spec)
from negbeta.errors import Malformed, NoRootInInterval, NotSelfAdmissible
from negbeta.expansion import EventuallyPeriodic, boundary_sequences


def test_bundled_names_parse():
    specs = load_test_set()
    assert set(specs) == set(TEST_SET)
    assert abs(float(specs["minus2"].beta) + 2) < 1e-12
    assert abs(float(specs["neg_gamma0"].beta) + (1 + 5 ** 0.5) / 2) < 1e-12
    assert -3 < float(specs["example1"].beta) < -2
    assert -2.8 < float(specs["example2"].beta) < -2.7


def test_d_sequence_spec_recovers_minus2():
    s = parse_beta_spec({"d_sequence": {"preperiod": [], "period": [2]}})
    assert s.kind == "d_sequence"
    assert abs(float(s.beta) + 2) < 1e-12


def test_d_sequence_string_form():
    s = parse_beta_spec(json.dumps({"d_sequence": "1|0"}))
    assert abs(float(s.beta) + (1 + 5 ** 0.5) / 2) < 1e-12


def test_d_sequence_roundtrip_example1():
    bd = boundary_sequences(parse_beta_spec("example1").beta)
    d = bd.raw_d
    b = beta_from_d(EventuallyPeriodic(d.preperiod, d.period))
    assert abs(float(b) - float(parse_beta_spec("example1").beta)) < 1e-12


def test_decimal_is_exact_by_default():
    s = parse_beta_spec({"decimal": "-1.3"})
    assert s.beta.kind == "rational" and s.beta.b == Fraction(-13, 10)


def test_decimal_interval_when_not_exact():
    s = parse_beta_spec({"decimal": "-1.3", "exact": False, "precision_bits": 64})
    assert s.beta.kind == "interval"
    assert abs(float(s.beta) + 1.3) < 1e-15


def test_polynomial_accepts_unicode_minus_and_strings():
    s = parse_beta_spec({"polynomial": ["−1", 1, 1], "interval": ["-2", "-3/2"]})
    assert abs(float(s.beta) + (1 + 5 ** 0.5) / 2) < 1e-12


@pytest.mark.parametrize("bad", ["nonsense", "[1, 2]", {"polynomial": []},
                                 {"polynomial": [1, 1]}, {"decimal": "abc"},
                                 {"d_sequence": 5}, {"nothing": 1},
                                 {"polynomial": [-1, 1, 1], "interval": ["x", 1]}])
def test_malformed(bad):
    with pytest.raises(Malformed):
        parse_beta_spec(bad)


def test_not_self_admissible():
    with pytest.raises(NotSelfAdmissible):
        parse_beta_spec({"d_sequence": "|01"})
    with pytest.raises(NotSelfAdmissible):
        check_self_admissible(EventuallyPeriodic((), (0, 1)))


def test_no_root_in_interval():
    with pytest.raises(NoRootInInterval):
        parse_beta_spec({"polynomial": [-1, 1, 1], "interval": [-1.5, -1.2]})


def test_example1_polynomial_constant():
    assert EXAMPLE1[0] == 1 and EXAMPLE1[-1] == 1 and len(EXAMPLE1) == 16
