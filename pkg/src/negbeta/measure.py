"""Series over code censuses: Kraft sums, average length, cylinder measures,
the formal power-series identity, entropy estimates and a sampler.

With rho = 1/|beta| and c_n the number of code words of length n:

    kraft      = sum_n c_n rho^n            (equal to 1 for the support code)
    avg_length = sum_n n c_n rho^n
    mu([x])    = rho^l(x) / avg_length      for x a concatenation of code words

The cylinder formula is the measure of the event "a code word boundary sits
at position 0 and the next code words spell x".

Tails.  Sums are exact up to a cap M (exact census by dynamic programming).
Beyond M the tail is bounded either rigorously, when the code is the first
return code of a finite automaton (a verified supersolution of the linear
system for the generating functions), or by a geometric envelope fitted on
the last terms, which is reported as heuristic.
"""
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .codes import CodeEnumeration, all_deltas, build_cfrak, structure_params
from .errors import EmptyCode, NotInSupportLanguage, TailBoundUnavailable
from .language import TieAutomaton, count_words_recurrence
from .numeric import Beta

BITS = 96


def _down(x, bits=BITS):
    s = 1 << bits
    return Fraction(math.floor(x * s), s)


def _up(x, bits=BITS):
    s = 1 << bits
    return Fraction(math.ceil(x * s), s)


def _scale(x, bits):
    # power of two 2^e with 2^(bits-1) <= |x| 2^e < 2^bits
    if x == 0:
        return None
    e = bits - (abs(x.numerator).bit_length() - x.denominator.bit_length())
    return e


def _rdown(x, bits=BITS):
    """Round down to ``bits`` significant bits."""
    e = _scale(x, bits)
    if e is None:
        return Fraction(0)
    s = Fraction(2) ** e
    return Fraction(math.floor(x * s)) / s


def _rup(x, bits=BITS):
    e = _scale(x, bits)
    if e is None:
        return Fraction(0)
    s = Fraction(2) ** e
    return Fraction(math.ceil(x * s)) / s


@dataclass
class MeasureInterval:
    """Closed interval [lo, hi] with provenance.

    ``certified`` is False when a heuristic tail envelope was used.
    ``exact`` holds the exact value (rational or field element) when known.
    """
    lo: Fraction
    hi: Fraction
    certified: bool = True
    method: str = ""
    exact: object = None
    notes: list = field(default_factory=list)

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def mid(self):
        return float((self.lo + self.hi) / 2)

    def contains(self, x):
        return self.lo <= x <= self.hi

    def __float__(self):
        return self.mid

    def as_list(self):
        return [float(self.lo), float(self.hi)]

    def as_dict(self):
        return {"interval": self.as_list(), "certified": self.certified,
                "method": self.method, "notes": list(self.notes)}


def _rho_interval(beta):
    lo, hi = beta.abs_interval(Fraction(1, 2 ** (BITS + 8)))
    return _down(1 / hi), _up(1 / lo)


def _exact_rho(beta):
    if beta.kind in ("rational", "algebraic"):
        return -1 / beta.b
    return None


def _power_sums(census, rlo, rhi, weight, start=0):
    """Interval of sum_{n >= start} weight(n) c_n rho^n over the given census."""
    lo = hi = Fraction(0)
    plo, phi = Fraction(1), Fraction(1)
    for n in range(len(census)):
        if n >= start and census[n]:
            w = weight(n) * census[n]
            lo += w * plo
            hi += w * phi
        plo = _rdown(plo * rlo)
        phi = _rup(phi * rhi)
    return lo, hi


# ---------------------------------------------------------------- tails

def _automaton_tail(bound, M, rhi, with_length):
    """Rigorous bound on sum_{n > M} (n or 1) c_n rho^n for first-return codes.

    v = counts of non-returned paths at step M per state.  F_s = sum_k rho^k
    f_s(k) (f_s(k): paths from s first hitting the free state at step k)
    satisfies F = rho (A F + b).  Any g >= 0 with rho (A g + b) <= g bounds
    F from above; we build g by float iteration, inflate it and verify it
    with exact rationals.  For the length-weighted sum we also bound
    F'_s = sum_k k rho^k f_s(k), which satisfies F' = rho (A F' + A F + b).
    """
    a = TieAutomaton(bound)
    init = a.initial
    cur = {}
    for _c, t in a.successors(init):
        cur[t] = cur.get(t, 0) + 1
    cur.pop(init, None)
    for _ in range(M - 1):
        nxt = {}
        for st, k in cur.items():
            for _c, t in a.successors(st):
                if t != init:
                    nxt[t] = nxt.get(t, 0) + k
        cur = nxt
    # states reachable from the current support, excluding the free state
    states = set(cur)
    todo = list(states)
    edges = {}
    while todo:
        s = todo.pop()
        out = [t for _c, t in a.successors(s)]
        edges[s] = out
        for t in out:
            if t != init and t not in states:
                states.add(t)
                todo.append(t)
    states = sorted(states, key=repr)
    ix = {s: i for i, s in enumerate(states)}
    b = [sum(1 for t in edges[s] if t == init) for s in states]
    A = [[ix[t] for t in edges[s] if t != init] for s in states]
    r = float(rhi)

    def solve(extra, eta):
        # fixed point of g = r (A g + b + extra) + eta; eta > 0 leaves slack
        g = [0.0] * len(states)
        for _ in range(20000):
            ng = [r * (sum(g[j] for j in A[i]) + b[i] + extra[i]) + eta for i in range(len(states))]
            if max((abs(x - y) for x, y in zip(ng, g)), default=0) < 1e-15 * (1 + max(ng, default=0)):
                return ng
            g = ng
        return None

    def verify(g, extra):
        return all(rhi * (sum(g[j] for j in A[i]) + b[i] + extra[i]) <= g[i]
                   for i in range(len(states)))

    def supersolution(extra):
        for eta in (1e-12, 1e-9, 1e-6):
            g = solve([float(x) for x in extra], eta)
            if g is None:
                return None
            G = [_rup(Fraction(x)) for x in g]
            if verify(G, extra):
                return G
        return None

    G = supersolution([0] * len(states))
    if G is None:
        return None
    tail = sum(cur[s] * G[ix[s]] for s in cur) * _rup(rhi ** M)
    if not with_length:
        return tail
    Hh = supersolution([sum(G[j] for j in A[i]) + b[i] for i in range(len(states))])
    if Hh is None:
        return None
    # sum_{n>M} n c_n rho^n = rho^M sum_s v_s (M F_s + F'_s)
    return sum(cur[s] * (M * G[ix[s]] + Hh[ix[s]]) for s in cur) * _rup(rhi ** M)


def _envelope_tail(census, rhi, with_length):
    """Heuristic geometric bound on the terms past the end of ``census``."""
    M = len(census) - 1
    w = max(4, M // 8)
    terms = [(n if with_length else 1) * census[n] * float(rhi) ** n for n in range(M + 1)]
    s1 = sum(terms[M - 2 * w + 1:M - w + 1])
    s2 = sum(terms[M - w + 1:M + 1])
    if s2 == 0:
        return Fraction(0)
    if s1 == 0:
        return None
    q = (s2 / s1) ** (1.0 / w)
    if q >= 1:
        return None
    last = max(terms[M - w + 1:M + 1])
    return _up(Fraction(4 * last * q / (1 - q)))


def _series(code, beta, L, with_length, tail_cap=None):
    weight = (lambda n: n) if with_length else (lambda n: 1)
    if not isinstance(beta, Beta):
        beta = Beta.rational(beta)
    rho = _exact_rho(beta)
    if code.finite:
        if rho is not None:
            tot = 0
            for w in code.words:
                tot = tot + weight(len(w)) * rho ** len(w)
            lo, hi = beta.enclose(tot, Fraction(1, 2 ** BITS)) if not isinstance(tot, (int, Fraction)) \
                else (Fraction(tot), Fraction(tot))
            out = MeasureInterval(lo, hi, True, "exact finite code", exact=tot)
        else:
            rlo, rhi = _rho_interval(beta)
            lo, hi = _power_sums(code.census, rlo, rhi, weight)
            out = MeasureInterval(lo, hi, True, "finite code")
        out.partial = MeasureInterval(out.lo, out.hi, True, "finite code")
        return out
    rlo, rhi = _rho_interval(beta)
    M = tail_cap or max(10 * L, 400)
    census = code.extended_census(M)
    plo, phi = _power_sums(census[:L + 1], rlo, rhi, weight)
    lo, hi = _power_sums(census, rlo, rhi, weight)
    tail = None
    method = "exact census to %d" % M
    bound = code.bound
    if code.kind in ("CFrak", "SimpleGamma") and bound is not None and bound.complete:
        tail = _automaton_tail(bound, M, rhi, with_length)
        if tail is not None:
            method += " + verified automaton tail"
    certified = tail is not None
    notes = []
    if tail is None:
        tail = _envelope_tail(census, rhi, with_length)
        if tail is not None:
            method += " + geometric envelope"
            notes.append("tail past %d from a fitted geometric envelope (heuristic)" % M)
    top = None if tail is None else hi + tail
    if not with_length and not certified:
        if top is not None:
            notes.append("heuristic upper estimate %.17g" % float(top))
        # a uniquely decodable code inside S_beta has Kraft sum <= 1 at
        # rho = 1/|beta| (McMillan argument with H_n = O(|beta|^n))
        top = Fraction(1)
        certified = True
        method += " + McMillan upper bound"
    if top is None:
        raise TailBoundUnavailable("census terms do not decay by length %d" % M)
    out = MeasureInterval(lo, top, certified, method, notes=notes)
    out.partial = MeasureInterval(plo, phi, True, "exact partial sum to L=%d" % L)
    return out


def kraft_sum(code, beta, L=40, tail_cap=None):
    """Certified interval for sum_x |beta|^(-l(x)) over the code."""
    return _series(code, beta, L, False, tail_cap)


def average_length(code, beta, L=40, tail_cap=None):
    """Interval for sum_x l(x) |beta|^(-l(x))."""
    return _series(code, beta, L, True, tail_cap)


# ---------------------------------------------------------------- cylinders

def factorize(word, code, limit=2):
    """Factorizations of ``word`` into materialized code words (up to ``limit``)."""
    word = tuple(word)
    words = code._set()
    lens = sorted({len(w) for w in code.words})
    out = []

    def rec(i, acc):
        if len(out) >= limit:
            return
        if i == len(word):
            out.append(list(acc))
            return
        for l in lens:
            if i + l > len(word):
                break
            piece = word[i:i + l]
            if piece in words:
                acc.append(piece)
                rec(i + l, acc)
                acc.pop()

    if len(word) > code.word_cap * max(1, len(word)) and not code.finite:
        pass
    rec(0, [])
    return out


@dataclass
class CylinderMeasure:
    status: str            # 'code-monoid', 'gap', 'support-factor'
    interval: MeasureInterval = None
    factorization: list = None
    witness: object = None

    @property
    def value(self):
        return None if self.interval is None else self.interval.mid

    def as_dict(self):
        return {"status": self.status,
                "interval": None if self.interval is None else self.interval.as_list(),
                "certified": None if self.interval is None else self.interval.certified,
                "witness": self.witness}


def cylinder_measure(word, code, beta, bounds=None, avg=None, L=40):
    """mu([word]) for word in P*, exactly 0 for an intransitive word.

    Support factors outside P* get status 'support-factor' and no value (their
    measure is estimated by sampling).  Admissible words that are neither
    raise NotInSupportLanguage.
    """
    from .gaps import is_intransitive, is_support_factor
    word = tuple(word)
    fac = factorize(word, code, limit=1) if word else [[]]
    if fac:
        if avg is None:
            avg = average_length(code, beta, L)
        rho = _exact_rho(beta)
        l = len(word)
        if avg.exact is not None and rho is not None:
            val = rho ** l / avg.exact
            lo, hi = beta.enclose(val, Fraction(1, 2 ** BITS)) if not isinstance(val, Fraction) \
                else (val, val)
            return CylinderMeasure("code-monoid", MeasureInterval(lo, hi, True, "exact", exact=val), fac[0])
        rlo, rhi = _rho_interval(beta)
        lo = _down(rlo ** l / avg.hi)
        hi = _up(rhi ** l / avg.lo)
        return CylinderMeasure("code-monoid", MeasureInterval(lo, hi, avg.certified, avg.method), fac[0])
    if bounds is not None:
        res = is_intransitive(word, code, bounds)
        if res.value:
            return CylinderMeasure("gap", MeasureInterval(Fraction(0), Fraction(0), True, "intransitive"),
                                   witness=res.witness)
    if is_support_factor(word, code, bounds):
        return CylinderMeasure("support-factor")
    raise NotInSupportLanguage("no decomposition with overhang within cap %d" % code.word_cap,
                               word=list(word))


# ---------------------------------------------------------------- identity

def poly_mul(a, b, N):
    r = [0] * (N + 1)
    for i, x in enumerate(a[:N + 1]):
        if x:
            for j, y in enumerate(b[:N + 1 - i]):
                r[i + j] += x * y
    return r


def _census_of(words, N):
    c = [0] * (N + 1)
    for w in words:
        if len(w) <= N:
            c[len(w)] += 1
    return c


@dataclass
class IdentityReport:
    degree: int
    lhs: list
    rhs: list
    first_mismatch: int = None
    deltas_used: list = field(default_factory=list)
    sequence: str = "d"

    @property
    def ok(self):
        return self.first_mismatch is None

    def as_dict(self):
        return {"degree": self.degree, "ok": self.ok, "first_mismatch": self.first_mismatch,
                "lhs": self.lhs, "rhs": self.rhs, "deltas": self.deltas_used,
                "sequence": self.sequence}


def series_identity_check(bounds, N=25):
    """1 - sum (-1)^n (d_{n-1} - d_n) z^n  vs  (1+z)(1 - C(z)) prod_k (1 - Delta_k(z)).

    Both sides come from materialized literal constructions on d, or on d*
    when d is purely periodic with odd period (the raw d fails there: at
    beta = -2 the sides already differ at degree 2).
    """
    d = bounds.lower if bounds.odd_period_flag else bounds.raw_d
    dd = [0] + [d[i] for i in range(N)]
    lhs = [1] + [-((-1) ** n) * (dd[n - 1] - dd[n]) for n in range(1, N + 1)]
    params = structure_params(d, 2 * N + 8)
    C = _census_of(build_cfrak(d, params, N), N)
    rhs = poly_mul([1, 1], [1] + [-x for x in C[1:]], N)
    deltas = all_deltas(d, params, N)
    used = []
    for k in sorted(deltas):
        c = _census_of(deltas[k], N)
        if any(c):
            used.append(k)
        rhs = poly_mul(rhs, [1] + [-x for x in c[1:]], N)
    bad = next((n for n in range(N + 1) if lhs[n] != rhs[n]), None)
    return IdentityReport(N, lhs, rhs, bad, used, "d*" if bounds.odd_period_flag else "d")


# ---------------------------------------------------------------- entropy

def entropy_estimate(bounds, n=20, beta=None):
    """(1/n) log H_n from the recurrence, reported with log|beta|."""
    H = count_words_recurrence(bounds, n).counts
    beta = beta or bounds.beta
    return {"n": n, "value": math.log(H[n]) / n,
            "log_beta": beta.log_abs() if beta is not None else None}


def gcd_lengths(code, L=None):
    L = code.cap if L is None else L
    lens = [n for n in range(1, min(L, code.cap) + 1) if code.census[n]]
    if not lens:
        raise EmptyCode("no code words up to length %d" % L)
    return math.gcd(*lens)


# ---------------------------------------------------------------- sampling

@dataclass
class Sample:
    stream: bytes
    starts: list               # positions where a code word begins
    truncated_mass: float      # weight of code words beyond the materialized cap
    seed: int

    def frequency(self, word):
        """Fraction of offsets where ``word`` occurs (all offsets, overlapping)."""
        pat = bytes(word)
        n = len(self.stream) - len(pat) + 1
        if n <= 0:
            return 0.0
        cnt = 0
        i = self.stream.find(pat)
        while i != -1:
            cnt += 1
            i = self.stream.find(pat, i + 1)
        return cnt / n

    def aligned_frequency(self, word):
        """Fraction of offsets that start a code word and are followed by ``word``."""
        pat = bytes(word)
        st = self.stream
        cnt = sum(1 for s in self.starts if st.startswith(pat, s))
        return cnt / len(st)

    def count(self, word):
        pat = bytes(word)
        cnt = 0
        i = self.stream.find(pat)
        while i != -1:
            cnt += 1
            i = self.stream.find(pat, i + 1)
        return cnt


def sample_champernowne(code, beta, length=10 ** 6, seed=0):
    """Concatenate i.i.d. code words drawn with probability rho^l(x).

    Only materialized words are drawn; their weights are renormalized and the
    missing mass is reported.  Deterministic for a fixed seed.
    """
    rng = random.Random(seed)
    r = 1 / abs(float(beta))
    words = list(code.words)
    if not words:
        raise EmptyCode("cannot sample an empty code")
    weights = [r ** len(w) for w in words]
    tot = sum(weights)
    cum = []
    acc = 0.0
    for w in weights:
        acc += w
        cum.append(acc)
    out = bytearray()
    starts = []
    blobs = [bytes(w) for w in words]
    n = len(words)
    while len(out) < length:
        batch = rng.choices(range(n), cum_weights=cum, k=4096)
        for i in batch:
            starts.append(len(out))
            out += blobs[i]
            if len(out) >= length:
                break
    return Sample(bytes(out), starts, max(0.0, 1.0 - tot), seed)


@dataclass
class MeasureReport:
    rho: MeasureInterval
    kraft_sum: MeasureInterval
    avg_length: MeasureInterval
    entropy_estimate: dict
    gcd_lengths: int

    def as_dict(self):
        return {"rho": self.rho.as_list(), "kraft_sum": self.kraft_sum.as_dict(),
                "avg_length": self.avg_length.as_dict(), "gcd": self.gcd_lengths,
                "entropy": self.entropy_estimate}


def measure_report(code, beta, bounds, L=40, n=20):
    rlo, rhi = _rho_interval(beta)
    return MeasureReport(MeasureInterval(rlo, rhi), kraft_sum(code, beta, L),
                         average_length(code, beta, L), entropy_estimate(bounds, n, beta),
                         gcd_lengths(code, L))
