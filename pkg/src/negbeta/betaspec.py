"""Parsing of beta specifications and the bundled test set.

A spec is a JSON object with one of the keys

    {"polynomial": [c0, c1, ...], "interval": [lo, hi]}     constant term first
    {"decimal": "-1.3", "precision_bits": 128, "exact": true}
    {"d_sequence": {"preperiod": [...], "period": [...]}}

and an optional "label".  Decimal literals denote the rational they spell
unless "exact" is false, in which case they are intervals of half-width
2^-precision_bits.
"""
import json
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .errors import BetaOutOfRange, Malformed, NegBetaError, NoRootInInterval, NotSelfAdmissible
from .expansion import EventuallyPeriodic, d_sequence, digits_str, parse_digits
from .language import OrderSign, alt_compare
from .numeric import Beta, Polynomial

EXAMPLE1 = [1, 2, -2, -1, 2, -1, -1, 0, 0, 0, 0, 2, -1, 0, 3, 1]
EXAMPLE2 = [1, 0, -2, 1, 1, -2, 1, -1, 1, -1, 1, 1, -2, 2, 1]

TEST_SET = {
    "minus2": {"d_sequence": {"preperiod": [], "period": [2]}, "label": "-2"},
    "neg_gamma0": {"polynomial": [-1, 1, 1], "interval": ["-2", "-3/2"], "label": "-gamma0"},
    "example1": {"polynomial": EXAMPLE1, "interval": [-3, -2], "label": "example1"},
    "example2": {"polynomial": EXAMPLE2, "interval": ["-2.8", "-2.7"], "label": "example2"},
    "minus1.3": {"decimal": "-1.3", "label": "-1.3"},
}

EXTRA = {
    "neg_gamma1": {"polynomial": [1, -1, 0, 1], "interval": ["-3/2", "-5/4"], "label": "-gamma1"},
    "minus1.5": {"decimal": "-1.5", "label": "-1.5"},
    "minus1.1": {"decimal": "-1.1", "label": "-1.1"},
}


@dataclass
class BetaSpec:
    kind: str                # 'algebraic', 'decimal' or 'd_sequence'
    beta: Beta
    record: dict = field(default_factory=dict)
    d: EventuallyPeriodic = None
    notes: list = field(default_factory=list)

    @property
    def label(self):
        return self.beta.label

    def as_dict(self):
        return {"kind": self.kind, "label": self.label, "beta": float(self.beta),
                "record": self.record, "notes": list(self.notes)}


def _frac(x, what):
    try:
        return Fraction(str(x).replace("−", "-"))
    except (ValueError, ZeroDivisionError):
        raise Malformed("%s is not a number: %r" % (what, x))


def _digits(v, what):
    if isinstance(v, str):
        return parse_digits(v)
    if not isinstance(v, (list, tuple)) or not all(isinstance(c, int) and c >= 0 for c in v):
        raise Malformed("%s must be a list of nonnegative integers" % what)
    return tuple(v)


def check_self_admissible(d):
    """Every shift of d is >= d in the alternating order."""
    P, p = len(d.preperiod), len(d.period)
    if p == 0:
        raise Malformed("d_sequence needs a nonempty period")
    horizon = P + 2 * p + 2
    for k in range(1, P + p + 1):
        if alt_compare(d[k:k + horizon], d[:horizon]) == OrderSign.LESS:
            raise NotSelfAdmissible("shift %d of d is below d" % k, d=d.render())
    return True


def beta_from_d(d):
    """The beta < -1 with f_beta(d) = l_beta and d(l_beta, beta) = d."""
    x = sympy.Symbol("x")
    pre, per = d.preperiod, d.period
    f = sum(sympy.Integer(c) * x ** -(i + 1) for i, c in enumerate(pre))
    k = len(pre)
    g = sum(sympy.Integer(c) * x ** -(j + 1) for j, c in enumerate(per))
    f += x ** -k * g / (1 - x ** -len(per))
    num, _den = sympy.fraction(sympy.together(f - x / (1 - x)))
    poly = sympy.Poly(sympy.expand(num), x)
    coeffs = [Fraction(int(c)) for c in reversed(poly.all_coeffs())]
    d1 = d[0]
    lo_b, hi_b = Fraction(-(d1 + 2)), Fraction(-1)
    cands = []
    for fac, _m in poly.factor_list()[1]:
        for (a, b), _mult in fac.intervals():
            a, b = Fraction(str(a)), Fraction(str(b))
            if b <= lo_b or a >= hi_b:
                continue
            cands.append((a, b))
    horizon = len(pre) + 2 * len(per) + 4
    for a, b in sorted(cands):
        lo, hi = (a - Fraction(1, 10 ** 9), b + Fraction(1, 10 ** 9)) if a == b else (a, b)
        lo, hi = max(lo, lo_b), min(hi, hi_b)
        try:
            beta = Beta.algebraic(Polynomial(coeffs), (lo, hi))
        except (NoRootInInterval, BetaOutOfRange):
            continue
        got, _ = d_sequence(beta, cap=max(64, 4 * horizon))
        try:
            if got[:horizon] == d[:horizon]:
                return beta
        except NegBetaError:
            continue
    raise NoRootInInterval("no beta < -1 has d(l_beta, beta) = %s" % d.render())


def parse_beta_spec(text):
    """Validated BetaSpec from JSON text, a dict, or a bundled test-set name."""
    if isinstance(text, str):
        key = text.strip()
        if key in TEST_SET or key in EXTRA:
            rec = dict(TEST_SET.get(key) or EXTRA[key])
        else:
            try:
                rec = json.loads(key)
            except json.JSONDecodeError as e:
                raise Malformed("spec is neither a test-set name nor JSON: %s" % e)
    else:
        rec = dict(text)
    if not isinstance(rec, dict):
        raise Malformed("spec must be a JSON object")
    label = str(rec.get("label", ""))
    if "polynomial" in rec or "coefficients" in rec:
        cs = rec.get("polynomial", rec.get("coefficients"))
        if not isinstance(cs, list) or not cs:
            raise Malformed("polynomial must be a nonempty coefficient list")
        iv = rec.get("interval")
        if not isinstance(iv, list) or len(iv) != 2:
            raise Malformed("polynomial spec needs an isolation interval [lo, hi]")
        coeffs = [_frac(c, "coefficient") for c in cs]
        beta = Beta.algebraic(coeffs, (_frac(iv[0], "interval"), _frac(iv[1], "interval")), label=label)
        if not beta.label:
            beta.label = label
        notes = list(getattr(beta.real, "notes", ()) or ())
        return BetaSpec("algebraic", beta, rec, notes=notes)
    if "decimal" in rec:
        text = str(rec["decimal"]).replace("−", "-")
        bits = int(rec.get("precision_bits", 128))
        exact = bool(rec.get("exact", True))
        try:
            beta = Beta.decimal(text, exact=exact, bits=bits, label=label or text)
        except (ValueError, ZeroDivisionError):
            raise Malformed("bad decimal literal %r" % text)
        return BetaSpec("decimal", beta, rec)
    if "d_sequence" in rec:
        ds = rec["d_sequence"]
        if isinstance(ds, str):
            pre, _, per = ds.partition("|")
            d = EventuallyPeriodic(parse_digits(pre) if pre else (), parse_digits(per))
        elif isinstance(ds, dict):
            d = EventuallyPeriodic(_digits(ds.get("preperiod", []), "preperiod"),
                                   _digits(ds.get("period", []), "period"))
        else:
            raise Malformed("d_sequence must be an object or 'pre|per' string")
        check_self_admissible(d)
        beta = beta_from_d(d)
        beta.label = label or "d=" + d.render()
        return BetaSpec("d_sequence", beta, rec, d=d)
    raise Malformed("spec needs one of polynomial, decimal, d_sequence")


def load_test_set(names=None, extra=False):
    pool = dict(TEST_SET)
    if extra:
        pool.update(EXTRA)
    names = names or list(pool)
    return {n: parse_beta_spec(pool[n]) for n in names}


def spec_text(spec):
    """Compact rendering for reports."""
    if spec.d is not None:
        return "d=" + spec.d.render()
    return "%s (%s)" % (spec.label, spec.kind)


__all__ = ["BetaSpec", "parse_beta_spec", "load_test_set", "TEST_SET", "EXTRA",
           "beta_from_d", "check_self_admissible", "digits_str", "spec_text"]
