"""Structure parameters, the code families and the regime classification.

Notation: d is the expansion of l_beta (or d* in the odd-period case), a
pair (n_i, p_i) marks a return of d to its own beginning at position 2n_i
that lasts p_i letters, and B_i = d_1 ... d_{2n_i - 1}.

Families built here (all as sets of digit tuples, materialized up to a cap):

* Gamma0, Gamma1, Gamma1' and Gamma, then CFrak = Gamma u Delta0* Gamma_{>=2};
* Delta0 = Delta0^0 u Delta0^1;
* Delta_k for k >= 1: block chains B_t1 ... B_tm whose last block is in
  class J(k-1) and whose other blocks are in higher classes.

CFrak is the set of first returns to the "free" state of the admissibility
automaton, which gives an independent census (``first_return_census``).
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import CapExceeded, NonBinaryInput, Undecidable
from .expansion import EventuallyPeriodic, digits_str
from .language import TieAutomaton
from .numeric import AlgebraicReal, Beta, compare_real, isolate_root, trinomial

MATERIALIZE_BUDGET = 200000


# ---------------------------------------------------------------- structure

@dataclass(frozen=True)
class StructureParams:
    pairs: tuple
    blocks: tuple
    eventually_periodic: bool
    scanned: int              # 0-based positions < scanned were examined
    notes: tuple = ()

    @property
    def simple(self):
        """True in the case d_{2n} < d_1 for every n (no pairs)."""
        return not self.pairs

    def block_len(self, t):
        return 2 * self.pairs[t][0] - 1

    def p(self, t):
        return self.pairs[t][1]

    def class_of(self, t):
        """Index i with t in J(i)."""
        p = self.pairs[t][1]
        ns = [n for n, _ in self.pairs]
        if p < 2 * ns[0] - 1:
            return 0
        for i in range(len(ns) - 1):
            if 2 * ns[i] - 1 <= p < 2 * ns[i + 1] - 1:
                return i + 1
        return len(ns)

    def class_floor(self, i):
        """Smallest p of a class > i, i.e. 2 n_{i+1} - 1 (inf if unknown)."""
        if i < len(self.pairs):
            return 2 * self.pairs[i][0] - 1
        return math.inf


def structure_params(d, cap):
    """Scan d for the pairs (n_i, p_i) with 2 n_i <= cap.

    Pairs are taken in order and never start inside the copied stretch of
    the previous one.  Each p_i is the exact match length and the sign
    condition (-1)^(2n+p) (d_{2n+p} - d_{p+1}) < 0 is checked.
    """
    pairs = []
    notes = []
    limit = cap if d.known is None else min(cap, d.known - 1)
    n = 1
    while 2 * n <= limit:
        if d[2 * n - 1] != d[0]:
            n += 1
            continue
        p = 0
        try:
            while d[2 * n - 1 + p] == d[p]:
                p += 1
                if p > 100000:
                    raise CapExceeded("match at 2n=%d does not end" % (2 * n))
        except CapExceeded:
            notes.append("scan stopped at 2n=%d: match runs past known digits" % (2 * n))
            break
        if not (-1) ** (2 * n + p) * (d[2 * n - 1 + p] - d[p]) < 0:
            raise ValueError("d is not self-admissible at 2n=%d, p=%d" % (2 * n, p))
        pairs.append((n, p))
        n = max(n + 1, (2 * n + p + 1) // 2)
    blocks = tuple(tuple(d[i] for i in range(2 * m - 1)) for m, _ in pairs)
    return StructureParams(tuple(pairs), blocks, d.complete, 2 * n, tuple(notes))


# ---------------------------------------------------------------- Gamma

def _ranges(params):
    ext = ((0, 0),) + params.pairs
    out = []
    for i in range(len(ext)):
        lo = 2 * ext[i][0] + ext[i][1]
        hi = 2 * ext[i + 1][0] - 1 if i + 1 < len(ext) else math.inf
        out.append((lo, hi))
    return ext, out


def build_gamma0(d, params, cap):
    """Words d_1 ... d_n j of Gamma0 with length <= cap.

    n ranges over [2n_i + p_i, 2n_{i+1} - 1] (n_0 = p_0 = 0) with
    (-1)^(n+1) (d_{n+1} - j) < 0, 0 <= j < d_1; at n = 2n_i + p_i - 1 the
    special rule (-1)^p d_{p+1} > (-1)^p j > (-1)^p d_{2n_i+p_i} applies.
    """
    ext, rng = _ranges(params)
    special = {2 * n + p - 1: (n, p) for n, p in params.pairs}
    out = []
    d1 = d[0]
    for n in range(0, cap):
        prefix = None
        for j in range(d1):
            ok = False
            if n in special:
                ni, pi = special[n]
                s = (-1) ** pi
                ok = s * d[pi] > s * j > s * d[2 * ni + pi - 1]
            elif any(lo <= n <= hi for lo, hi in rng):
                ok = (-1) ** (n + 1) * (d[n] - j) < 0
            if ok:
                if prefix is None:
                    prefix = tuple(d[k] for k in range(n))
                out.append(prefix + (j,))
    return out


def chains(params, cap, last=None, inner=None, first=None):
    """Block-index chains t1..tm (m >= 1) of total length <= cap.

    Consecutive blocks satisfy p_t < 2 n_s - 1.  Optional predicates filter
    the last block, the non-last blocks, and (first, last) pairs.
    """
    P = params
    idx = [t for t in range(len(P.pairs)) if P.block_len(t) <= cap]
    out = []

    def rec(seq, L):
        t = seq[-1]
        if (last is None or last(t)) and (first is None or first(seq[0], t)):
            out.append(tuple(seq))
        if inner is not None and not inner(t):
            return
        for s in idx:
            ls = P.block_len(s)
            if L + ls <= cap and P.p(t) < ls:
                seq.append(s)
                rec(seq, L + ls)
                seq.pop()

    for t in idx:
        rec([t], P.block_len(t))
    return out


def chain_word(params, ch):
    return tuple(x for t in ch for x in params.blocks[t])


def build_gamma1(d, params, cap, gamma0=None):
    """Chains followed by y in Gamma0 with l(y) >= p_last + 2."""
    if gamma0 is None:
        gamma0 = build_gamma0(d, params, cap)
    out = []
    for ch in chains(params, cap):
        w = chain_word(params, ch)
        pl = params.p(ch[-1])
        for y in gamma0:
            if len(y) >= pl + 2 and len(w) + len(y) <= cap:
                out.append(w + y)
    return out


def build_gamma1_prime(d, params, cap, gamma0=None):
    """Provisional boundary-length family.

    The defining display refers to an undefined set; we use Gamma0 words y
    with l(y) = 2 n_k + p_k for a pair k that may follow the chain.  Words are
    returned separately and never merged silently.
    """
    if gamma0 is None:
        gamma0 = build_gamma0(d, params, cap)
    by_len = {}
    for y in gamma0:
        by_len.setdefault(len(y), []).append(y)
    out = set()
    heads = [()] + list(chains(params, cap))
    for ch in heads:
        w = chain_word(params, ch) if ch else ()
        for k in range(len(params.pairs)):
            if ch and not params.p(ch[-1]) < params.block_len(k):
                continue
            n, p = params.pairs[k]
            for y in by_len.get(2 * n + p, ()):
                if len(w) + len(y) <= cap:
                    out.add(w + y)
    return sorted(out, key=_order)


# ---------------------------------------------------------------- Delta

def delta00(d, params, cap):
    """Odd prefixes d_1..d_L with 2n_i + p_i <= L < 2n_{i+1} - 1."""
    _ext, rng = _ranges(params)
    out = []
    for L in range(1, cap + 1, 2):
        if any(lo <= L < hi for lo, hi in rng):
            out.append(tuple(d[i] for i in range(L)))
    return out


def delta01(d, params, cap, d00=None):
    """Chains B_k1..B_km followed by X in Delta0^0 with l(X) > p_km."""
    if d00 is None:
        d00 = delta00(d, params, cap)
    out = []
    for ch in chains(params, cap):
        w = chain_word(params, ch)
        pl = params.p(ch[-1])
        for X in d00:
            if len(X) > pl and len(w) + len(X) <= cap:
                out.append(w + X)
    return out


def build_delta0(d, params, cap):
    d00 = delta00(d, params, cap)
    return sorted(set(d00) | set(delta01(d, params, cap, d00)), key=_order)


def build_delta(d, params, cap, k):
    """Delta_k (k >= 1): chains ending in J(k-1), earlier blocks in classes > k-1.

    Also requires the wrap-around condition p_last < 2 n_first - 1.
    """
    i = k - 1
    P = params
    chs = chains(P, cap,
                 last=lambda t: P.class_of(t) == i,
                 inner=lambda t: P.class_of(t) > i,
                 first=lambda f, t: P.p(t) < P.block_len(f))
    return sorted({chain_word(P, ch) for ch in chs}, key=_order)


def concatenations(words, cap):
    """All concatenations (including the empty one) of total length <= cap."""
    words = sorted(words, key=len)
    out = [()]
    frontier = [()]
    while frontier:
        nf = []
        for u in frontier:
            room = cap - len(u)
            for w in words:
                if len(w) > room:
                    break
                nf.append(u + w)
        out += nf
        frontier = nf
    return out


def build_cfrak(d, params, cap, with_prime=False):
    """CFrak = Gamma u {x y : x in Delta0*, y in Gamma, l(y) >= 2}."""
    g0 = build_gamma0(d, params, cap)
    g = set(g0) | set(build_gamma1(d, params, cap, g0))
    if with_prime:
        g |= set(build_gamma1_prime(d, params, cap, g0))
    d0 = build_delta0(d, params, cap)
    out = set(g)
    long_g = sorted((y for y in g if len(y) >= 2), key=len)
    for x in concatenations(d0, cap - 2):
        if not x:
            continue
        room = cap - len(x)
        for y in long_g:
            if len(y) > room:
                break
            out.add(x + y)
    return sorted(out, key=_order)


def _order(w):
    return (len(w), w)


# ---------------------------------------------------------------- oracles

def first_return_census(bound, N):
    """Census of first returns to the free state of the automaton of ``bound``."""
    a = TieAutomaton(bound)
    cur = {}
    for _c, t in a.successors(a.initial):
        cur[t] = cur.get(t, 0) + 1
    c = [0] * (N + 1)
    for n in range(1, N + 1):
        c[n] = cur.pop(a.initial, 0)
        if n == N:
            break
        nxt = {}
        for st, k in cur.items():
            for _c, t in a.successors(st):
                nxt[t] = nxt.get(t, 0) + k
        cur = nxt
    return c


def first_return_words(bound, N):
    """The first-return words themselves, up to length N."""
    a = TieAutomaton(bound)
    out = []

    def rec(w, st):
        for c, t in a.successors(st):
            if t == a.initial:
                out.append(w + (c,))
            elif len(w) + 1 < N:
                rec(w + (c,), t)

    rec((), a.initial)
    return sorted(out, key=_order)


def chain_census(params, N, k):
    """Exact census of Delta_k (k >= 1) up to length N by dynamic programming."""
    P = params
    i = k - 1
    idx = [t for t in range(len(P.pairs)) if P.block_len(t) <= N]
    c = [0] * (N + 1)
    for f in idx:
        lf = P.block_len(f)
        g = [dict() for _ in range(N + 1)]
        g[lf][f] = 1
        for L in range(lf, N + 1):
            for t, cnt in g[L].items():
                if P.class_of(t) == i and P.p(t) < lf:
                    c[L] += cnt
                if P.class_of(t) > i:
                    for s in idx:
                        ls = P.block_len(s)
                        if L + ls <= N and P.p(t) < ls:
                            g[L + ls][s] = g[L + ls].get(s, 0) + cnt
    return c


def delta0_census(d, params, N):
    """Census of Delta0^0 plus chain-prefixed Delta0^1 words (counted with
    multiplicity; equal to the set census when the family is a code)."""
    P = params
    c = [0] * (N + 1)
    d00 = [len(x) for x in delta00(d, P, N)]
    for L in d00:
        c[L] += 1
    idx = [t for t in range(len(P.pairs)) if P.block_len(t) <= N]
    h = [dict() for _ in range(N + 1)]
    for t in idx:
        h[P.block_len(t)][t] = h[P.block_len(t)].get(t, 0) + 1
    for L in range(N + 1):
        for t, cnt in h[L].items():
            for lx in d00:
                if lx > P.p(t) and L + lx <= N:
                    c[L + lx] += cnt
            for s in idx:
                ls = P.block_len(s)
                if L + ls <= N and P.p(t) < ls:
                    h[L + ls][s] = h[L + ls].get(s, 0) + cnt
    return c


# ---------------------------------------------------------------- morphism

def phi_word(w, n=1):
    """phi^n(w) with phi(0) = 1, phi(1) = 100."""
    w = tuple(w)
    if any(c not in (0, 1) for c in w):
        raise NonBinaryInput("phi is defined on binary words only")
    for _ in range(n):
        w = tuple(y for x in w for y in ((1,) if x == 0 else (1, 0, 0)))
    return w


def phi_inverse(w, n=1, partial=True):
    """Parse w as phi^n(x).

    With ``partial`` (for prefixes of infinite words) an ambiguous final
    "1" or "10" is dropped; otherwise a final "1" reads as phi(0).
    """
    w = tuple(w)
    for _ in range(n):
        out = []
        i = 0
        while i < len(w):
            if w[i] != 1:
                raise ValueError("not in the image of phi at %d" % i)
            if w[i + 1:i + 3] == (0, 0):
                out.append(1)
                i += 3
            elif i + 1 < len(w) and w[i + 1] == 0:
                if i + 2 >= len(w) and partial:
                    break  # truncated "10"
                raise ValueError("not in the image of phi at %d" % i)
            else:
                if i + 1 >= len(w) and partial:
                    break  # a final lone 1 may start a 100
                out.append(0)
                i += 1
        w = tuple(out)
    return w


def u_word(n):
    if n == -1:
        return (0,)
    return phi_word((1,), n)


def v_word(n):
    return phi_word((0, 0), n)


@lru_cache(maxsize=None)
def gamma_ladder(n):
    """gamma_n: the root in (1, 2) of X^l - X - 1, l = max(l(u_n), l(v_n))."""
    l = max(len(u_word(n)), len(v_word(n)))
    return isolate_root(trinomial(l), (1, 2))


def neg_gamma(n):
    """-gamma_n as an AlgebraicReal (root of the reflected trinomial)."""
    g = gamma_ladder(n)
    p = g.minimal
    refl = [c * (-1) ** i for i, c in enumerate(p.coefficients)]
    lo, hi = g.interval
    return isolate_root(refl, (-hi, -lo))


# ---------------------------------------------------------------- regimes

@dataclass
class Regime:
    name: str                 # 'BelowGamma0', 'AtGamma0', 'Band'
    n: int = None

    def __str__(self):
        return "Band(%d)" % self.n if self.name == "Band" else self.name


@dataclass
class RegimeReport:
    regime: Regime
    coded: bool
    odd_period: bool
    gamma_bracket: tuple
    pulled_back: tuple = None
    notes: list = field(default_factory=list)

    def as_dict(self):
        return {
            "regime": str(self.regime),
            "coded": self.coded,
            "odd_period": self.odd_period,
            "gamma_bracket": [float(g) if g is not None else None for g in self.gamma_bracket],
            "pulled_back": digits_str(self.pulled_back) if self.pulled_back else None,
            "notes": list(self.notes),
        }


def _cmp_beta(beta, real):
    """Sign of beta - real for a Beta and an AlgebraicReal."""
    if beta.kind == "rational":
        return compare_real(beta.b, real)
    if beta.kind == "algebraic":
        return compare_real(beta.real, real)
    lo, hi = beta.b.interval
    w = Fraction(1, 2 ** 20)
    for _ in range(12):
        a, b = real.refine(w)
        if hi < a:
            return -1
        if lo > b:
            return 1
        w /= 2 ** 16
    raise Undecidable("beta interval straddles a ladder constant")


def classify_regime(beta, bounds, max_n=40):
    """Locate beta on the gamma ladder; also pulls d back through phi^n."""
    odd = bounds.odd_period_flag
    c0 = _cmp_beta(beta, neg_gamma(0))
    notes = []
    if c0 < 0:
        rep = RegimeReport(Regime("BelowGamma0"), not odd, odd, (None, gamma_ladder(0)))
    elif c0 == 0:
        rep = RegimeReport(Regime("AtGamma0"), not odd, odd, (gamma_ladder(0), gamma_ladder(0)))
    else:
        n = 0
        while _cmp_beta(beta, neg_gamma(n + 1)) >= 0:
            n += 1
            if n > max_n:
                raise Undecidable("beta too close to -1 for the ladder cap")
        rep = RegimeReport(Regime("Band", n), False, odd, (gamma_ladder(n), gamma_ladder(n + 1)))
        d = bounds.raw_d
        known = d.known or 512
        try:
            rep.pulled_back = phi_inverse(d.prefix(known), n)
        except ValueError as e:
            notes.append("phi pull-back failed: %s" % e)
    rep.notes = notes
    return rep


# ---------------------------------------------------------------- codes

@dataclass
class CodeEnumeration:
    """A code materialized up to ``word_cap`` with exact census up to ``cap``.

    ``census_fn(N)`` extends the census beyond ``cap`` (used for tail bounds).
    ``suffix`` marks suffix codes (the Delta family).
    """
    kind: str
    words: list
    census: list
    cap: int
    word_cap: int
    n: int = None
    suffix: bool = False
    provisional: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    census_fn: object = None
    finite: bool = False
    bound: object = None

    def __iter__(self):
        return iter(self.words)

    def __len__(self):
        return len(self.words)

    def __contains__(self, w):
        return tuple(w) in self._set()

    def _set(self):
        s = getattr(self, "_wset", None)
        if s is None:
            s = self._wset = frozenset(self.words)
        return s

    def by_length(self):
        out = {}
        for w in self.words:
            out.setdefault(len(w), []).append(w)
        return out

    def extended_census(self, N):
        if N <= self.cap:
            return self.census[:N + 1]
        if self.finite:
            return self.census + [0] * (N - self.cap)
        if self.census_fn is None:
            raise CapExceeded("no census beyond the cap for %s" % self.kind)
        cached = getattr(self, "_ext", None)
        if cached is None or len(cached) < N + 1:
            cached = self._ext = self.census_fn(N)
        return cached[:N + 1]

    @property
    def label(self):
        return "Delta%d" % self.n if self.kind == "DeltaN" else self.kind

    def as_dict(self, limit=50):
        return {
            "kind": self.label,
            "cap": self.cap,
            "word_cap": self.word_cap,
            "census": self.census,
            "words": [digits_str(w) for w in self.words[:limit]],
            "provisional": [digits_str(w) for w in self.provisional[:limit]],
            "notes": list(self.notes),
        }


def _word_cap(census, cap, budget):
    tot = 0
    for n in range(1, cap + 1):
        tot += census[n]
        if tot > budget:
            return n - 1
    return cap


def golden_pair(cap=40):
    census = [0, 1, 1] + [0] * max(0, cap - 2)
    return CodeEnumeration("GoldenPair", [(1,), (0, 0)], census[:cap + 1], cap, cap, finite=True)


def finite_code(words, cap=None, kind="Finite"):
    words = sorted({tuple(w) for w in words}, key=_order)
    cap = cap or max(len(w) for w in words)
    census = [0] * (cap + 1)
    for w in words:
        if len(w) <= cap:
            census[len(w)] += 1
    return CodeEnumeration(kind, [w for w in words if len(w) <= cap], census, cap, cap, finite=True)


def cfrak_code(bound, cap=40, budget=MATERIALIZE_BUDGET, params=None):
    """The code CFrak for a lower bound; census by first returns."""
    if params is None:
        params = structure_params(bound, 2 * cap + 8)
    census = first_return_census(bound, cap)
    wcap = _word_cap(census, cap, budget)
    words = build_cfrak(bound, params, wcap)
    lit = [0] * (wcap + 1)
    for w in words:
        lit[len(w)] += 1
    notes = []
    if lit != census[:wcap + 1]:
        notes.append("literal construction differs from first-return census")
    prime = build_gamma1_prime(bound, params, wcap)
    ws = set(words)
    extra = [w for w in prime if w not in ws]
    kind = "SimpleGamma" if params.simple else "CFrak"
    return CodeEnumeration(kind, words, census, cap, wcap, provisional=extra, notes=notes,
                           census_fn=lambda N: first_return_census(bound, N), bound=bound)


def delta_code(d, n, cap=40, budget=MATERIALIZE_BUDGET, params=None):
    """Delta_n for the sequence d (n = 0 is Delta0^0 u Delta0^1)."""
    if params is None:
        params = structure_params(d, 2 * cap + 8)
    if n == 0:
        census = delta0_census(d, params, cap)
        fn = lambda N: delta0_census(d, structure_params(d, 2 * N + 8), N)
    else:
        census = chain_census(params, cap, n)
        fn = lambda N: chain_census(structure_params(d, 2 * N + 8), N, n)
    wcap = _word_cap(census, cap, budget)
    words = build_delta0(d, params, wcap) if n == 0 else build_delta(d, params, wcap, n)
    lit = [0] * (wcap + 1)
    for w in words:
        lit[len(w)] += 1
    notes = []
    if lit != census[:wcap + 1]:
        notes.append("materialized words differ from the dynamic-programming census")
    return CodeEnumeration("DeltaN", words, census, cap, wcap, n=n, suffix=True,
                           notes=notes, census_fn=fn, bound=d)


def build_code(bounds, params=None, cap=40, regime=None, beta=None, budget=MATERIALIZE_BUDGET):
    """The support code P of the maximal-entropy measure.

    CFrak (built on d*) below -gamma_0, {1, 00} at -gamma_0, Delta_n in
    Band(n).
    """
    if regime is None:
        regime = classify_regime(beta or bounds.beta, bounds)
    r = regime.regime if isinstance(regime, RegimeReport) else regime
    if r.name == "AtGamma0":
        return golden_pair(cap)
    if r.name == "BelowGamma0":
        bound = bounds.lower
        if params is None or bounds.odd_period_flag:
            params = structure_params(bound, 2 * cap + 8)
        return cfrak_code(bound, cap, budget, params)
    return delta_code(bounds.raw_d, r.n, cap, budget, params)


def all_deltas(d, params, cap):
    """Every nonempty Delta_k with words of length <= cap, keyed by k (0 included)."""
    out = {0: build_delta0(d, params, cap)}
    for k in range(1, len(params.pairs) + 2):
        ws = build_delta(d, params, cap, k)
        if ws:
            out[k] = ws
    return out
