"""The negative beta transformation, digit expansions and boundary sequences.

Conventions: sequences are indexed from 1 in the mathematics and from 0 in
Python (``seq[0]`` is d_1).  A ``DigitString`` is a plain tuple of ints.
"""
from dataclasses import dataclass
import math
from fractions import Fraction

from .errors import BetaOutOfRange, CapExceeded, OutOfDomain
from .numeric import Beta, CertifiedReal

DEFAULT_CAP = 4096


def digits_str(ds, sep=None):
    ds = tuple(ds)
    if sep is None:
        sep = " " if ds and max(ds) > 9 else ""
    return sep.join(str(d) for d in ds)


def parse_digits(text):
    text = text.strip()
    if " " in text or "," in text:
        return tuple(int(t) for t in text.replace(",", " ").split())
    return tuple(int(c) for c in text)


def _primitive(w):
    n = len(w)
    for p in range(1, n + 1):
        if n % p == 0 and w[:p] * (n // p) == w:
            return w[:p]
    return w


class EventuallyPeriodic:
    """preperiod . overline(period), or a truncated prefix when period is ().

    A truncated sequence (``complete`` False) knows only ``len(preperiod)``
    digits and raises ``CapExceeded`` beyond them.
    """

    def __init__(self, preperiod, period=(), canonical=True):
        pre, per = tuple(preperiod), tuple(period)
        if per and canonical:
            per = _primitive(per)
            while pre and pre[-1] == per[-1]:
                pre = pre[:-1]
                per = per[-1:] + per[:-1]
        self.preperiod = pre
        self.period = per

    @property
    def complete(self):
        return bool(self.period)

    @property
    def known(self):
        """Number of digits available (None when infinite)."""
        return None if self.period else len(self.preperiod)

    def __getitem__(self, i):
        if isinstance(i, slice):
            stop = i.stop if i.stop is not None else self.known
            return tuple(self[k] for k in range(i.start or 0, stop))
        if i < len(self.preperiod):
            return self.preperiod[i]
        if not self.period:
            raise CapExceeded("digit %d of a truncated sequence" % (i + 1), index=i)
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def digit(self, k):
        """1-based access d_k."""
        return self[k - 1]

    def canon(self, i):
        """Fold a 0-based position into preperiod + one period."""
        m = len(self.preperiod)
        if i < m or not self.period:
            return i
        return m + (i - m) % len(self.period)

    def prefix(self, n):
        return tuple(self[i] for i in range(n))

    def shift(self, k=1):
        if k <= len(self.preperiod):
            return EventuallyPeriodic(self.preperiod[k:], self.period)
        if not self.period:
            raise CapExceeded("shift beyond known digits")
        j = (k - len(self.preperiod)) % len(self.period)
        return EventuallyPeriodic((), self.period[j:] + self.period[:j])

    def prepend(self, ds):
        return EventuallyPeriodic(tuple(ds) + self.preperiod, self.period)

    @property
    def purely_periodic(self):
        return self.complete and not self.preperiod

    def __eq__(self, other):
        return isinstance(other, EventuallyPeriodic) and \
            (self.preperiod, self.period) == (other.preperiod, other.period)

    def __hash__(self):
        return hash((self.preperiod, self.period))

    def render(self):
        sep = " " if max(self.preperiod + self.period + (0,)) > 9 else ""
        s = digits_str(self.preperiod, sep)
        if self.period:
            return s + "(" + digits_str(self.period, sep) + ")"
        return s + "..."

    __str__ = render

    def __repr__(self):
        return "EventuallyPeriodic(%s)" % self.render()


@dataclass(frozen=True)
class BoundsPair:
    """Lower/upper bounds of the corrected shift plus the raw ones.

    raw_d is d(l_beta, beta), raw_rstar = 0.d is the expansion limit at
    r_beta.  lower is d* (equal to d unless d is purely periodic with odd
    period) and upper the corrected r, which always equals 0.d*.
    """
    lower: EventuallyPeriodic
    upper: EventuallyPeriodic
    raw_d: EventuallyPeriodic
    raw_rstar: EventuallyPeriodic
    odd_period_flag: bool
    beta: object = None
    period_found: bool = True

    @property
    def d1(self):
        return self.raw_d[0]

    def bound(self, corrected):
        return self.lower if corrected else self.raw_d


# ---------------------------------------------------------------- basic maps

def _as_beta(beta):
    if isinstance(beta, Beta):
        return beta
    return Beta.rational(beta)


def endpoints(beta):
    """(l_beta, r_beta) as exact elements (or intervals for interval bases)."""
    beta = _as_beta(beta)
    b = beta.b
    if float(b) >= -1:
        raise BetaOutOfRange("beta must be < -1")
    l = b / (1 - b)
    return l, l + 1


def _in_domain(beta, x, l, r):
    lo, hi = beta.enclose(x - l)
    lo2, hi2 = beta.enclose(r - x)
    return lo >= 0 and lo2 > 0


def t_step(x, beta, check=True):
    """One step of T: returns (digit, next) with digit = floor(beta x - l)."""
    beta = _as_beta(beta)
    l, r = endpoints(beta)
    x = _coerce(beta, x)
    if check and beta.is_exact() and not _in_domain(beta, x, l, r):
        raise OutOfDomain("x is outside [l_beta, r_beta)")
    y = beta.b * x
    dg = beta.floor(y - l)
    return dg, y - dg


def _coerce(beta, x):
    if isinstance(x, (int, Fraction, str)):
        return beta.const(x)
    return x


def prescale(x, beta):
    """Smallest n >= 0 with x / beta^n in [l_beta, r_beta), and that point."""
    beta = _as_beta(beta)
    l, r = endpoints(beta)
    x = _coerce(beta, x)
    n = 0
    while not _in_domain(beta, x, l, r):
        x = x / beta.b
        n += 1
        if n > 10000:
            raise OutOfDomain("prescaling did not converge")
    return n, x


def expand(x, beta, count, with_shift=False):
    """First ``count`` digits of d(x, beta).

    Points outside I_beta are prescaled by beta^(-n) first (n is returned when
    ``with_shift``).  The point r_beta itself is given the limit sequence
    r* = 0.d(l_beta).
    """
    beta = _as_beta(beta)
    l, r = endpoints(beta)
    x = _coerce(beta, x)
    if beta.is_exact() and x == r:
        bs = boundary_sequences(beta, cap=max(count, 8))
        ds = bs.raw_rstar.prefix(count)
        return (ds, 0) if with_shift else ds
    n, x = prescale(x, beta)
    out = []
    for _ in range(count):
        dg, x = t_step(x, beta, check=False)
        out.append(dg)
    out = tuple(out)
    return (out, n) if with_shift else out


def orbit(beta, x, count):
    beta = _as_beta(beta)
    out = []
    for _ in range(count):
        dg, x = t_step(x, beta, check=False)
        out.append((dg, x))
    return out


@dataclass
class NotFound:
    """Period detection gave up; carries the certified digits found."""
    digits: tuple
    reason: str = "cap"

    def __bool__(self):
        return False


def _orbit_digits(beta, x, cap):
    """Iterate T from x; returns (digits, (pre, per)) or (digits, None)."""
    seen = {}
    digits = []
    from .errors import Undecidable
    for k in range(cap + 1):
        key = beta.key(x)
        if key is not None:
            if key in seen:
                j = seen[key]
                return tuple(digits), (j, k - j)
            seen[key] = k
        if k == cap:
            break
        try:
            dg, x = t_step(x, beta, check=False)
        except Undecidable:
            return tuple(digits), "undecidable"
        digits.append(dg)
    return tuple(digits), None


def detect_period(beta, cap=DEFAULT_CAP, x=None):
    """(preperiod_len, period_len) of the orbit of l_beta, or ``NotFound``."""
    beta = _as_beta(beta)
    if x is None:
        x = endpoints(beta)[0]
    digits, found = _orbit_digits(beta, x, cap)
    if found is None:
        return NotFound(digits)
    if found == "undecidable":
        return NotFound(digits, reason="undecidable")
    return found


def d_sequence(beta, cap=DEFAULT_CAP):
    """d(l_beta, beta) as an EventuallyPeriodic (truncated if no period)."""
    beta = _as_beta(beta)
    l, _ = endpoints(beta)
    digits, found = _orbit_digits(beta, l, cap)
    if isinstance(found, tuple):
        j, p = found
        return EventuallyPeriodic(digits[:j], digits[j:j + p]), True
    return EventuallyPeriodic(digits, ()), False


def star(d):
    """d* : equal to d unless d is purely periodic with odd period.

    For d = overline(d_1 ... d_{2n-1}) it is
    overline(d_1 ... d_{2n-2} (d_{2n-1} - 1) 0).
    """
    if d.purely_periodic and len(d.period) % 2 == 1:
        w = d.period
        return EventuallyPeriodic((), w[:-1] + (w[-1] - 1, 0))
    return d


def corrected_upper(d, cap=DEFAULT_CAP):
    """The parity-corrected upper bound r.

    r* = 0.d always, so r* = (r*_1 ... r*_n, d_1, d_2, ...) means sigma^(n-1) d
    = d.  Only an even n triggers the correction, and the smallest such n
    exists exactly when d is purely periodic with odd period p (n = p + 1).
    The corrected sequence is then overline(0 d_1 ... d_{p-1} (d_p - 1)),
    which equals 0.d*.
    """
    rstar = d.prepend((0,))
    if not d.purely_periodic:
        return rstar
    p = len(d.period)
    for n in range(2, cap + 1, 2):
        if (n - 1) % p == 0:
            w = (0,) + d.period[:-1] + (d.period[-1] - 1,)
            return EventuallyPeriodic((), w)
    return rstar


def boundary_sequences(beta, cap=DEFAULT_CAP):
    """Bounds (d*, r) of the corrected shift and the raw (d, r*)."""
    beta = _as_beta(beta)
    d, found = d_sequence(beta, cap)
    odd = d.purely_periodic and len(d.period) % 2 == 1
    lower = star(d)
    upper = corrected_upper(d, cap)
    return BoundsPair(lower=lower, upper=upper, raw_d=d, raw_rstar=d.prepend((0,)),
                      odd_period_flag=odd, beta=beta, period_found=found)


def bounds_from_d(d, beta=None):
    """BoundsPair built directly from a given d sequence."""
    odd = d.purely_periodic and len(d.period) % 2 == 1
    return BoundsPair(lower=star(d), upper=corrected_upper(d), raw_d=d,
                      raw_rstar=d.prepend((0,)), odd_period_flag=odd, beta=beta,
                      period_found=d.complete)


def eval_f_beta(seq, beta):
    """f_beta(x) = sum_k x_k beta^(-k) for finite or eventually periodic x."""
    beta = _as_beta(beta)
    b = beta.b
    inv = 1 / b
    if isinstance(seq, EventuallyPeriodic):
        if not seq.complete:
            return eval_f_beta(seq.preperiod, beta)
        head = eval_f_beta(seq.preperiod, beta)
        p = len(seq.period)
        block = eval_f_beta(seq.period, beta)
        q = inv ** p if not isinstance(inv, Fraction) else inv ** p
        tail = block / (1 - q)
        return head + tail * _pow(inv, len(seq.preperiod))
    acc = beta.const(0)
    for dg in reversed(tuple(seq)):
        acc = (acc + dg) * inv
    return acc


def _pow(x, n):
    r = 1
    for _ in range(n):
        r = r * x
    return r


def tail_bound(beta, count, d1=None):
    """Bound on |f_beta(tail)| after ``count`` digits: (d1/(|b|-1)) |b|^-count."""
    beta = _as_beta(beta)
    lo, _ = beta.abs_interval()
    if d1 is None:
        d1 = boundary_sequences(beta, cap=64).d1
    return Fraction(d1) / (lo - 1) / lo ** count


def _imul(a, b, bits):
    ps = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return _round_out(min(ps), max(ps), bits)


def _round_out(lo, hi, bits):
    s = 1 << bits
    return (Fraction(math.floor(lo * s), s), Fraction(math.ceil(hi * s), s))


def value_interval(word, beta, width=Fraction(1, 2 ** 60)):
    """Interval of f_beta over all admissible continuations of ``word``.

    Every admissible continuation has value in [l, r], so the set is
    f(word) + beta^(-n) [l, r].  Rational bases are evaluated exactly;
    other bases by outward-rounded interval Horner on an enclosure of beta.
    """
    beta = _as_beta(beta)
    n = len(word)
    if beta.kind == "rational":
        l, r = endpoints(beta)
        base = eval_f_beta(word, beta)
        scale = (1 / beta.b) ** n
        ends = (base + scale * l, base + scale * r)
        return (min(ends), max(ends))
    bits = max(64, width.denominator.bit_length() + 2 * n + 16)
    blo, bhi = beta.interval(Fraction(1, 2 ** bits))
    inv = _round_out(1 / bhi, 1 / blo, bits)
    # l = b / (1 - b) is increasing in b
    lo_l, hi_l = blo / (1 - blo), bhi / (1 - bhi)
    ends = (lo_l, hi_l + 1)
    acc = (Fraction(0), Fraction(0))
    for dg in reversed(tuple(word)):
        acc = _imul((acc[0] + dg, acc[1] + dg), inv, bits)
    scale = (Fraction(1), Fraction(1))
    for _ in range(n):
        scale = _imul(scale, inv, bits)
    tail = _imul(scale, ends, bits)
    return (acc[0] + tail[0], acc[1] + tail[1])
