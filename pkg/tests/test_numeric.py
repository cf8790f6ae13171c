from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from negbeta.errors import NoRootInInterval, Undecidable
from negbeta.betaspec import EXAMPLE1
from negbeta.numeric import (Beta, CertifiedReal, NumberField, Polynomial, compare_real,
                             floor_field, isolate_root, refine, trinomial)


def test_linear_polynomial_short_circuits_to_rational():
    b = Beta.algebraic([2, 1], (-3, -1))
    assert b.kind == "rational" and b.b == -2


def test_example1_root_enclosure():
    r = isolate_root(Polynomial(EXAMPLE1), (Fraction(-3), Fraction(-2)))
    lo, hi = refine(r, Fraction(1, 10 ** 6))
    assert hi - lo <= Fraction(1, 10 ** 6)
    lo, hi = refine(r, Fraction(1, 10 ** 9))
    assert Fraction("-2.776790") < lo <= hi < Fraction("-2.776789")


def test_no_root_raises():
    with pytest.raises(NoRootInInterval):
        isolate_root(Polynomial([-1, 0, 1]), (Fraction(2), Fraction(3)))


def test_several_roots_pick_smallest_with_note():
    with pytest.warns(UserWarning):
        r = isolate_root(Polynomial([0, -1, 0, 1]), (Fraction(-2), Fraction(2)))
    assert r.interval[1] <= -1 + Fraction(1, 2) and r.notes


def test_refinement_halves_width():
    r = isolate_root(trinomial(3), (Fraction(1), Fraction(2)))
    w = r.interval[1] - r.interval[0]
    for _ in range(5):
        lo, hi = r.refine(w / 2)
        assert hi - lo <= w / 2
        w = hi - lo


def test_trinomial_roots_are_gamma_ladder():
    r = isolate_root(trinomial(2), (Fraction(1), Fraction(2)))
    assert abs(float(r) - (1 + 5 ** 0.5) / 2) < 1e-12


@pytest.fixture(scope="module")
def field():
    return NumberField(isolate_root(Polynomial(EXAMPLE1), (Fraction(-3), Fraction(-2))))


coord = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def elem(field, cs):
    return field.element(cs + [Fraction(0)] * (15 - len(cs)))


@settings(max_examples=25, deadline=None)
@given(st.lists(coord, min_size=1, max_size=15), st.lists(coord, min_size=1, max_size=15),
       st.lists(coord, min_size=1, max_size=15))
def test_ring_axioms(field, a, b, c):
    x, y, z = elem(field, a), elem(field, b), elem(field, c)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x


@settings(max_examples=15, deadline=None)
@given(st.lists(coord, min_size=1, max_size=15))
def test_division_inverts(field, a):
    x = elem(field, a)
    if x.is_zero():
        return
    assert (x / x) == field.const(1)
    assert (field.const(3) / x) * x == field.const(3)


@settings(max_examples=25, deadline=None)
@given(st.lists(coord, min_size=1, max_size=4))
def test_floor_field_brackets_value(field, a):
    x = elem(field, a)
    f = floor_field(x)
    lo, hi = x.enclose(Fraction(1, 2 ** 40))
    assert f <= hi and lo < f + 1


def test_certified_real_floor_undecidable_at_integer():
    x = CertifiedReal(Fraction(-1, 10 ** 6), Fraction(1, 10 ** 6))
    with pytest.raises(Undecidable):
        x.floor()
    assert CertifiedReal(Fraction(1, 3), Fraction(1, 2)).floor() == 0


def test_decimal_beta_modes():
    assert Beta.decimal("-1.3").b == Fraction(-13, 10)
    b = Beta.decimal("-1.3", exact=False, bits=64)
    lo, hi = b.interval()
    assert lo < Fraction(-13, 10) < hi and b.kind == "interval"


def test_compare_real():
    g = isolate_root(trinomial(2), (Fraction(1), Fraction(2)))
    assert compare_real(g, Fraction(8, 5)) == 1
    assert compare_real(Fraction(1), g) == -1
