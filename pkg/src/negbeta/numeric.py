"""Exact and certified arithmetic for the base beta.

Three kinds of base are supported:

* rational bases (integers and decimal literals, which are exact rationals),
  with orbit points held as ``Fraction``;
* algebraic bases given by an integer polynomial and an isolating interval,
  with orbit points held as ``FieldElement`` (coordinates in the power basis
  of the irreducible factor that vanishes at beta);
* interval bases (``CertifiedReal``), for a real known only to some number of
  bits.  Any floor that cannot be certified raises ``Undecidable``.

``Beta`` wraps the three kinds behind one small interface used by the
expansion engine: ``beta.b`` is beta as an element, ``beta.floor(x)`` is an
exact floor, ``beta.key(x)`` is a hashable exact key (for period detection).
"""
import math
import warnings
from fractions import Fraction

import sympy

from .errors import BetaOutOfRange, NoRootInInterval, Undecidable

DEFAULT_WIDTH = Fraction(1, 2 ** 64)

_X = sympy.Symbol("X")


def _frac(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v.replace("−", "-"))
    if isinstance(v, sympy.Rational):
        return Fraction(int(v.p), int(v.q))
    if isinstance(v, float):
        return Fraction(v)
    return Fraction(str(v))


# ---------------------------------------------------------------- polynomials

class Polynomial:
    """Integer (or rational) polynomial, coefficients constant term first."""

    def __init__(self, coefficients):
        cs = [_frac(c) for c in coefficients]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [Fraction(0)]
        self.coefficients = tuple(cs)

    @property
    def degree(self):
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return "Polynomial(%s)" % [str(c) for c in self.coefficients]

    def to_sympy(self):
        return sympy.Poly([sympy.Rational(c.numerator, c.denominator)
                           for c in reversed(self.coefficients)], _X, domain="QQ")

    @classmethod
    def from_sympy(cls, p):
        return cls([_frac(c) for c in reversed(p.all_coeffs())])

    def sign_at(self, x):
        v = self(x)
        return (v > 0) - (v < 0)

    def is_squarefree(self):
        p = self.to_sympy()
        return sympy.degree(sympy.gcd(p, p.diff(_X))) == 0


def trinomial(l):
    """X^l - X - 1."""
    cs = [0] * (l + 1)
    cs[0], cs[1], cs[l] = -1, -1, 1
    if l == 1:
        cs = [-1, 0]
    return Polynomial(cs)


# ---------------------------------------------------------------- real roots

class AlgebraicReal:
    """A real root of ``defining`` isolated by the open interval (lo, hi).

    ``minimal`` is the irreducible rational factor of ``defining`` that
    vanishes at the root; bisection and field arithmetic use it.  When the
    root is rational, ``rational`` holds it and lo == hi == rational.
    The refinement cache is the only mutable part and never changes the
    value represented.
    """

    def __init__(self, defining, lo, hi, minimal=None, rational=None, notes=()):
        self.defining = defining
        self.minimal = minimal or defining
        self.rational = rational
        self._lo, self._hi = _frac(lo), _frac(hi)
        self.notes = tuple(notes)

    @property
    def interval(self):
        return (self._lo, self._hi)

    @property
    def lo(self):
        return self._lo

    @property
    def hi(self):
        return self._hi

    def refine(self, width=DEFAULT_WIDTH):
        """Bisect until the isolating interval has width <= ``width``."""
        width = _frac(width)
        if width <= 0:
            raise ValueError("width must be positive")
        if self.rational is not None:
            return (self.rational, self.rational)
        p = self.minimal
        lo, hi = self._lo, self._hi
        slo = p.sign_at(lo)
        while hi - lo > width:
            mid = (lo + hi) / 2
            s = p.sign_at(mid)
            if s == 0:  # cannot happen for an irreducible factor of degree > 1
                lo = hi = mid
                break
            if s == slo:
                lo = mid
            else:
                hi = mid
        self._lo, self._hi = lo, hi
        return (lo, hi)

    def __float__(self):
        if self.rational is not None:
            return float(self.rational)
        lo, hi = self.refine(Fraction(1, 2 ** 60))
        return float((lo + hi) / 2)

    def __repr__(self):
        return "AlgebraicReal(%s in (%s, %s))" % (self.defining, self._lo, self._hi)


def _sympy_intervals(poly):
    out = []
    for (a, b), _mult in poly.intervals():
        out.append((_frac(a), _frac(b)))
    return out


def isolate_root(p, hint):
    """Isolate a root of ``p`` inside the open rational interval ``hint``.

    If several roots lie inside, the smallest is returned and a note is
    attached (and a warning issued).
    """
    if not isinstance(p, Polynomial):
        p = Polynomial(p)
    if p.degree < 1:
        raise NoRootInInterval("constant polynomial has no isolated root")
    a, b = _frac(hint[0]), _frac(hint[1])
    if a >= b:
        raise NoRootInInterval("empty hint interval", hint=[str(a), str(b)])
    notes = []
    sp = p.to_sympy()
    if not p.is_squarefree():
        notes.append("defining polynomial is not squarefree")
        warnings.warn("defining polynomial is not squarefree; using its squarefree part")
    found = []
    for fac, _m in sp.factor_list()[1]:
        fp = Polynomial.from_sympy(fac)
        for lo, hi in _sympy_intervals(fac):
            root = AlgebraicReal(p, lo, hi, minimal=fp,
                                 rational=lo if lo == hi else None)
            # shrink until the interval is inside or outside (a, b)
            while True:
                lo, hi = root.interval
                if lo == hi:
                    inside = a < lo < b
                    break
                if a <= lo and hi <= b:
                    # endpoints can still be roots only if rational; fp is
                    # irreducible of degree >= 2 here, so the root is interior
                    inside = True
                    break
                if hi <= a or lo >= b:
                    inside = False
                    break
                root.refine((hi - lo) / 2)
            if inside:
                found.append(root)
    if not found:
        raise NoRootInInterval("no root of %s in (%s, %s)" % (p, a, b))
    found.sort(key=lambda r: r.interval[0])
    best = found[0]
    if len(found) > 1:
        notes.append("%d roots in hint; smallest chosen" % len(found))
        warnings.warn("several roots in the hint interval; the smallest was chosen")
    best.notes = tuple(notes)
    return best


def refine(x, width=DEFAULT_WIDTH):
    """Rational interval of width <= ``width`` containing the real ``x``."""
    if isinstance(x, (int, Fraction)):
        x = _frac(x)
        return (x, x)
    return x.refine(width)


# ---------------------------------------------------------------- number field

class NumberField:
    """Q(beta) presented as Q[X] / (m), with m the minimal factor of beta."""

    def __init__(self, root):
        self.root = root
        m = root.minimal
        lc = m.coefficients[-1]
        self.modulus = tuple(c / lc for c in m.coefficients)  # monic
        self.degree = len(self.modulus) - 1

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus \
            and self.root.interval[0] <= other.root.interval[1] \
            and other.root.interval[0] <= self.root.interval[1]

    def __hash__(self):
        return hash(self.modulus)

    def element(self, coords):
        return FieldElement(self, coords)

    def const(self, q):
        return FieldElement(self, [q])

    @property
    def gen(self):
        if self.degree == 1:
            return FieldElement(self, [-self.modulus[0]])
        return FieldElement(self, [0, 1])

    def _reduce(self, cs):
        cs = list(cs)
        d = self.degree
        m = self.modulus
        for i in range(len(cs) - 1, d - 1, -1):
            c = cs[i]
            if c:
                for j in range(d):
                    cs[i - d + j] -= c * m[j]
            cs[i] = Fraction(0)
        return cs[:d]


class FieldElement:
    """Exact element of a ``NumberField``; immutable and hashable."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        cs = [_frac(c) for c in coords]
        if len(cs) > field.degree:
            cs = field._reduce(cs)
        cs += [Fraction(0)] * (field.degree - len(cs))
        self.field = field
        self.coords = tuple(cs)

    def _lift(self, other):
        if isinstance(other, FieldElement):
            return other
        return FieldElement(self.field, [_frac(other)])

    def __add__(self, other):
        o = self._lift(other)
        return FieldElement(self.field, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.coords])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, [a * other for a in self.coords])
        o = self._lift(other)
        prod = [Fraction(0)] * (2 * self.field.degree)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(o.coords):
                    if b:
                        prod[i + j] += a * b
        return FieldElement(self.field, self.field._reduce(prod))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        if self.is_rational():
            return FieldElement(self.field, [1 / self.coords[0]])
        x = _X
        a = sum(sympy.Rational(c.numerator, c.denominator) * x ** i
                for i, c in enumerate(self.coords))
        m = sum(sympy.Rational(c.numerator, c.denominator) * x ** i
                for i, c in enumerate(self.field.modulus))
        inv = sympy.Poly(sympy.invert(a, m, x), x)
        return FieldElement(self.field, [_frac(c) for c in reversed(inv.all_coeffs())])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, [a / other for a in self.coords])
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        r = FieldElement(self.field, [1])
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coords[0] == other
        return isinstance(other, FieldElement) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self):
        return not any(self.coords)

    def is_rational(self):
        return not any(self.coords[1:])

    def enclose(self, width=Fraction(1, 2 ** 30)):
        """Rational interval containing the value, from beta at ``width``."""
        if self.is_rational():
            return (self.coords[0], self.coords[0])
        lo, hi = self.field.root.refine(width)
        return ipoly(self.coords, (lo, hi))

    def __float__(self):
        lo, hi = self.enclose(Fraction(1, 2 ** 60))
        return float((lo + hi) / 2)

    def __repr__(self):
        return "FieldElement(%s)" % ", ".join(str(c) for c in self.coords)


# ---------------------------------------------------------------- intervals

def imul(a, b):
    ps = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (min(ps), max(ps))


def ipoly(coeffs, x):
    """Interval Horner evaluation of sum coeffs[i] x^i."""
    acc = (Fraction(0), Fraction(0))
    for c in reversed(coeffs):
        acc = imul(acc, x)
        acc = (acc[0] + c, acc[1] + c)
    return acc


def floor_field(x, beta=None):
    """Exact floor of a rational or a ``FieldElement``.

    Rational elements are floored directly.  Irrational ones can never equal
    an integer, so refining beta until the enclosure avoids every integer
    always terminates.
    """
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return math.floor(x)
    if isinstance(x, CertifiedReal):
        return x.floor()
    if x.is_rational():
        return math.floor(x.coords[0])
    width = Fraction(1, 2 ** 16)
    while True:
        lo, hi = x.enclose(width)
        if math.floor(lo) == math.floor(hi):
            return math.floor(lo)
        width /= 2 ** 16


class CertifiedReal:
    """Closed dyadic interval [lo, hi] known to contain a real number.

    Arithmetic rounds outward to ``bits`` fractional bits.
    """

    __slots__ = ("lo", "hi", "bits")

    def __init__(self, lo, hi=None, bits=128):
        lo = _frac(lo)
        hi = lo if hi is None else _frac(hi)
        if lo > hi:
            lo, hi = hi, lo
        s = 2 ** bits
        self.lo = Fraction(math.floor(lo * s), s)
        self.hi = Fraction(math.ceil(hi * s), s)
        self.bits = bits

    @property
    def interval(self):
        return (self.lo, self.hi)

    @property
    def width(self):
        return self.hi - self.lo

    def _lift(self, o):
        if isinstance(o, CertifiedReal):
            return o
        return CertifiedReal(o, bits=self.bits)

    def __add__(self, o):
        o = self._lift(o)
        return CertifiedReal(self.lo + o.lo, self.hi + o.hi, self.bits)

    __radd__ = __add__

    def __neg__(self):
        return CertifiedReal(-self.hi, -self.lo, self.bits)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        o = self._lift(o)
        lo, hi = imul((self.lo, self.hi), (o.lo, o.hi))
        return CertifiedReal(lo, hi, self.bits)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._lift(o)
        if o.lo <= 0 <= o.hi:
            raise Undecidable("division by an interval containing zero")
        lo, hi = imul((self.lo, self.hi), (1 / o.hi, 1 / o.lo))
        return CertifiedReal(lo, hi, self.bits)

    def __rtruediv__(self, o):
        return self._lift(o) / self

    def floor(self):
        a, b = math.floor(self.lo), math.floor(self.hi)
        if a != b:
            raise Undecidable("floor not certified: [%s, %s]" % (float(self.lo), float(self.hi)),
                              interval=[str(self.lo), str(self.hi)])
        return a

    def __float__(self):
        return float((self.lo + self.hi) / 2)

    def __repr__(self):
        return "CertifiedReal[%.12g, %.12g]" % (float(self.lo), float(self.hi))


# ---------------------------------------------------------------- the base

class Beta:
    """A base beta < -1 together with its element arithmetic.

    kind is 'rational', 'algebraic' or 'interval'.  Use the constructors
    ``Beta.rational``, ``Beta.algebraic``, ``Beta.decimal``.
    """

    def __init__(self, kind, b, real=None, field=None, label=""):
        self.kind = kind
        self.b = b
        self.real = real
        self.field = field
        self.label = label
        if float(b) >= -1:
            raise BetaOutOfRange("beta must be < -1, got %r" % float(b))

    # -- constructors
    @classmethod
    def rational(cls, q, label=""):
        q = _frac(q)
        if q >= -1:
            raise BetaOutOfRange("beta must be < -1, got %s" % q)
        return cls("rational", q, label=label or str(q))

    @classmethod
    def algebraic(cls, coefficients, interval, label=""):
        p = coefficients if isinstance(coefficients, Polynomial) else Polynomial(coefficients)
        root = isolate_root(p, interval)
        if root.rational is not None:
            return cls.rational(root.rational, label=label)
        if root.interval[0] >= -1:
            raise BetaOutOfRange("isolated root is not < -1")
        field = NumberField(root)
        return cls("algebraic", field.gen, real=root, field=field, label=label)

    @classmethod
    def decimal(cls, text, exact=True, bits=128, label=""):
        """A decimal literal; exact (as the rational it denotes) by default.

        With ``exact=False`` the literal is treated as a measurement known to
        ``bits`` bits, and digit decisions may raise ``Undecidable``.
        """
        q = _frac(text)
        if exact:
            return cls.rational(q, label=label or text)
        if q >= -1:
            raise BetaOutOfRange("beta must be < -1, got %s" % q)
        eps = Fraction(1, 2 ** bits)
        return cls("interval", CertifiedReal(q - eps, q + eps, bits=bits + 16),
                   label=label or text)

    # -- element helpers
    def const(self, q):
        q = _frac(q)
        if self.kind == "algebraic":
            return self.field.const(q)
        if self.kind == "interval":
            return CertifiedReal(q, bits=self.b.bits)
        return q

    def floor(self, x):
        return floor_field(x)

    def key(self, x):
        """Exact hashable key for x, or None when x is only an interval."""
        if isinstance(x, CertifiedReal):
            return None
        return x

    def is_exact(self):
        return self.kind != "interval"

    def enclose(self, x, width=Fraction(1, 2 ** 40)):
        if isinstance(x, (int, Fraction)):
            x = _frac(x)
            return (x, x)
        if isinstance(x, CertifiedReal):
            return x.interval
        return x.enclose(width)

    def interval(self, width=Fraction(1, 2 ** 40)):
        return self.enclose(self.b, width)

    def abs_interval(self, width=Fraction(1, 2 ** 40)):
        lo, hi = self.interval(width)
        return (-hi, -lo)

    def __float__(self):
        return float(self.b)

    def log_abs(self):
        return math.log(-float(self))

    def equals(self, other):
        """Exact equality of two bases where decidable."""
        if self.kind == "rational" and other.kind == "rational":
            return self.b == other.b
        if self.kind == "algebraic" and other.kind == "algebraic":
            return self.field.modulus == other.field.modulus and \
                self.real.interval[0] <= other.real.interval[1] and \
                other.real.interval[0] <= self.real.interval[1] and \
                _same_root(self.real, other.real)
        return False

    def __repr__(self):
        return "Beta(%s, %s≈%.10f)" % (self.kind, self.label, float(self))


def _same_root(a, b):
    # both isolate roots of the same irreducible polynomial: refine until
    # their intervals separate or isolate a single common root
    while True:
        alo, ahi = a.interval
        blo, bhi = b.interval
        if ahi < blo or bhi < alo:
            return False
        lo, hi = max(alo, blo), min(ahi, bhi)
        if a.minimal.sign_at(lo) * a.minimal.sign_at(hi) < 0 and \
                _count_roots(a.minimal, min(alo, blo), max(ahi, bhi)) == 1:
            return True
        a.refine((ahi - alo) / 2)
        b.refine((bhi - blo) / 2)


def _count_roots(p, lo, hi):
    return int(p.to_sympy().count_roots(sympy.Rational(lo.numerator, lo.denominator),
                                        sympy.Rational(hi.numerator, hi.denominator)))


def compare_real(x, y):
    """Certified sign of x - y for AlgebraicReal / rationals (never 0 unless equal)."""
    def iv(v, w):
        if isinstance(v, (int, Fraction)):
            v = _frac(v)
            return (v, v)
        return v.refine(w)
    w = Fraction(1, 2 ** 20)
    for _ in range(40):
        a, b = iv(x, w), iv(y, w)
        if a[1] < b[0]:
            return -1
        if a[0] > b[1]:
            return 1
        if a[0] == a[1] == b[0] == b[1]:
            return 0
        w /= 2 ** 16
    # same value to 640 bits: decide exactly
    if isinstance(x, AlgebraicReal) and isinstance(y, AlgebraicReal):
        if x.minimal == y.minimal or _poly_monic(x.minimal) == _poly_monic(y.minimal):
            return 0
    raise Undecidable("comparison not certified")


def _poly_monic(p):
    lc = p.coefficients[-1]
    return tuple(c / lc for c in p.coefficients)
