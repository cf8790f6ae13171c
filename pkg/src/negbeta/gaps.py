"""Intransitive words (gaps) of the support of the maximal-entropy measure.

A word t is intransitive when some admissible u admits no bridge a with
u a t admissible.  The support of the measure is the closure of P^infinity
for the support code P, so its factors are exactly the overhang
decompositions s . x_1 ... x_k . p (s a suffix, p a prefix of code words).

Certificate.  Let the tie automaton run u = x_0 x_0 (x_0 the shortest code
word), and collect every state reachable afterwards.  If t cannot be read
from any of them, no bridge exists.  For a truncated bound, ties that reach
the end of the known digits are dropped; this only enlarges the set of
words that can be read, so a negative answer stays valid.
"""
from dataclasses import dataclass, field

from .codes import u_word
from .errors import CapExceeded, CapInconclusive, NotAdmissible, NotApplicable
from .expansion import digits_str
from .language import census_automaton, discrepancy_words, enumerate_words, is_admissible

TIE_MARGIN = 24
MAX_STATES = 400000


@dataclass(frozen=True)
class GapPattern:
    family: int          # 1, 2 or 3
    m: int
    i: int
    k1: int
    n: int
    word: tuple

    @property
    def text(self):
        return digits_str(self.word)

    def as_dict(self):
        return {"family": self.family, "m": self.m, "i": self.i, "k1": self.k1,
                "n": self.n, "word": self.text}


def k1_from_d(d, n):
    """Half the number of u_{n-1} blocks that follow the leading u_n in d."""
    un, um = u_word(n), u_word(n - 1)
    need = len(un) + 2 * len(um) * 64
    a = tuple(d[i] for i in range(min(need, d.known if d.known is not None else need)))
    if a[:len(un)] != un:
        raise NotApplicable("d does not start with u_%d" % n)
    i, c = len(un), 0
    while a[i:i + len(um)] == um:
        i += len(um)
        c += 1
    return c // 2


def _band_n(regime):
    r = getattr(regime, "regime", regime)
    if r.name == "Band":
        return r.n
    if r.name == "AtGamma0":
        return None
    raise NotApplicable("gap patterns need a band regime or beta = -gamma_0 (got %s)" % r)


def pattern_instances(n, k1, max_len):
    """Raw instantiations of the three families for band n (k1 None: skip family 3)."""
    u = u_word
    out = []
    for m in range(1, n + 1):
        a = u(m - 2)
        for i in range(len(a)):
            out.append(GapPattern(1, m, i, k1, n, a[i:] + u(m - 1) + u(m)))
    for m in range(0, n):
        a = u(m - 1)
        for i in range(len(a)):
            out.append(GapPattern(2, m, i, k1, n, a[i:] + a * 3))
    if k1 is not None:
        for m in range(0, n + 1):
            a = u(m - 1)
            mid = ()
            for j in range(m, n - 1):
                mid += u(j) * 2
            tail = u(n - 1) * (2 * k1 + 1) + u(n)
            for i in range(len(a)):
                out.append(GapPattern(3, m, i, k1, n, a[i:] + a + mid + tail))
    return [p for p in out if len(p.word) <= max_len]


def gap_patterns(beta, bounds, max_len=12, regime=None):
    """All instantiations of length <= max_len for the regime of beta.

    At -gamma_0 (d = 1 0^infinity) every family is empty.
    """
    from .codes import classify_regime
    if regime is None:
        regime = classify_regime(beta, bounds)
    n = _band_n(regime)
    if n is None:
        return []
    return pattern_instances(n, k1_from_d(bounds.raw_d, n), max_len)


# ---------------------------------------------------------------- factors

class FactorIndex:
    """Prefix / suffix / infix sets of the materialized code words."""

    def __init__(self, code, max_len=24):
        self.code = code
        self.max_len = max_len
        self.words = code._set()
        self.lens = sorted({len(w) for w in code.words})
        pre, suf, inf = set(), set(), set()
        for w in code.words:
            L = len(w)
            for k in range(0, min(L, max_len) + 1):
                pre.add(w[:k])
                suf.add(w[L - k:])
            for i in range(L):
                for j in range(i + 1, min(L, i + max_len) + 1):
                    inf.add(w[i:j])
        self.prefixes, self.suffixes, self.infixes = pre, suf, inf

    def decompose(self, word):
        """An overhang decomposition (s, [x_1..x_k], p) of word, or None."""
        word = tuple(word)
        L = len(word)
        if L > self.max_len:
            raise CapExceeded("factor index built for lengths <= %d" % self.max_len)
        if word in self.infixes:
            return ("infix", word)
        back = {}
        for i in range(L + 1):
            if word[:i] in self.suffixes:
                back[i] = None
        for i in range(L + 1):
            if i not in back:
                continue
            if word[i:] in self.prefixes:
                parts = []
                j = i
                while back[j] is not None:
                    k = back[j]
                    parts.append(word[k:j])
                    j = k
                return (word[:j], parts[::-1], word[i:])
            for l in self.lens:
                if i + l > L:
                    break
                if word[i:i + l] in self.words and (i + l) not in back:
                    back[i + l] = i
        return None


_INDEX = {}


def factor_index(code, max_len=24):
    key = id(code)
    hit = _INDEX.get(key)
    if hit is None or hit.code is not code or hit.max_len < max_len:
        hit = FactorIndex(code, max(max_len, 24))
        _INDEX[key] = hit
    return hit


CODED_KINDS = ("CFrak", "SimpleGamma")


def _decompose(word, code, bounds=None):
    if code.kind in CODED_KINDS and bounds is not None:
        # the support of a CFrak code is the shift it codes (corrected bound)
        return ("coded", word) if is_admissible(word, bounds, corrected=True) else None
    return factor_index(code, len(word)).decompose(word)


def is_support_factor(word, code, bounds=None):
    """Overhang decomposition search; for CFrak codes with ``bounds`` given the
    test is admissibility in the shift the code generates."""
    return _decompose(tuple(word), code, bounds) is not None


# ---------------------------------------------------------------- certificate

class _Reader:
    """Tie automaton on a bound, dropping ties past ``cut`` (truncated bounds)."""

    def __init__(self, bound, dmax):
        self.s = bound
        self.dmax = dmax
        self.complete = bound.complete
        self.cut = None if bound.complete else bound.known - TIE_MARGIN

    def step(self, state, c):
        s = self.s
        out = set()
        for p, sg in tuple(state) + ((0, -1),):
            v = sg * (c - s[p])
            if v < 0:
                return None
            if v == 0:
                q = s.canon(p + 1) if self.complete else p + 1
                if self.cut is None or q < self.cut:
                    out.add((q, -sg))
        return frozenset(out)

    def run(self, word, state=frozenset()):
        for c in word:
            state = self.step(state, c)
            if state is None:
                return None
        return state

    def reach(self, u):
        st = self.run(u)
        if st is None:
            return None
        seen = {st}
        todo = [st]
        while todo:
            x = todo.pop()
            for c in range(self.dmax + 1):
                t = self.step(x, c)
                if t is not None and t not in seen:
                    seen.add(t)
                    todo.append(t)
                    if len(seen) > MAX_STATES:
                        raise CapExceeded("more than %d reachable states" % MAX_STATES)
        return seen


_REACH = {}


def _reachable(bounds, u):
    key = (id(bounds), u)
    hit = _REACH.get(key)
    if hit is not None and hit[0] is bounds:
        return hit[1]
    rd = _Reader(bounds.raw_d, bounds.d1)
    R = rd.reach(u)
    _REACH[key] = (bounds, (rd, R))
    return rd, R


def unreadable_after(word, bounds, u):
    """True when no continuation of u can be followed by word (certified)."""
    rd, R = _reachable(bounds, tuple(u))
    if R is None:
        return False
    return not any(rd.run(word, st) is not None for st in R)


@dataclass
class IntransitivityResult:
    value: bool
    witness: dict = field(default_factory=dict)

    def __bool__(self):
        return self.value

    def as_dict(self):
        return {"intransitive": self.value, "witness": self.witness}


def _patterns_for(bounds, max_len):
    if bounds.beta is None:
        return []
    try:
        return gap_patterns(bounds.beta, bounds, max_len)
    except (NotApplicable, CapExceeded):
        return []


def _witness_u(code):
    x0 = min(code.words, key=lambda w: (len(w), w))
    return x0 * 2


def is_intransitive(word, code, bounds, patterns=None):
    """Decide whether an admissible word is a gap of the support.

    Returns an IntransitivityResult; the witness is either a decomposition
    (value False) or, for value True, the matched pattern and/or the
    automaton certificate word u.
    """
    word = tuple(word)
    if not is_admissible(word, bounds, corrected=False):
        raise NotAdmissible("word is not admissible", word=digits_str(word))
    dec = _decompose(word, code, bounds)
    if dec is not None:
        if dec[0] == "coded":
            w = {"decomposition": "factor of the coded shift"}
        elif dec[0] == "infix":
            w = {"decomposition": "infix of a code word"}
        else:
            s, parts, p = dec
            w = {"decomposition": [digits_str(s)] + [digits_str(x) for x in parts] + [digits_str(p)]}
        return IntransitivityResult(False, w)
    witness = {}
    if code.kind in CODED_KINDS:
        # outside the corrected shift: the odd-period discrepancy set
        return IntransitivityResult(True, {"discrepancy": "not a factor of the corrected shift"})
    if patterns is None:
        patterns = _patterns_for(bounds, len(word))
    if patterns:
        for pat in patterns:
            k = len(pat.word)
            if any(word[i:i + k] == pat.word for i in range(len(word) - k + 1)):
                witness["pattern"] = pat.as_dict()
                break
    u = _witness_u(code)
    if unreadable_after(word, bounds, u):
        witness["u"] = digits_str(u)
    if witness:
        return IntransitivityResult(True, witness)
    raise CapInconclusive("no decomposition within cap %d and no certificate" % code.word_cap,
                          word=digits_str(word))


# ---------------------------------------------------------------- report

@dataclass
class GapReport:
    regime: str
    rows: list                      # (n, admissible, support, flagged_examples)
    discrepancy: dict
    patterns: list = field(default_factory=list)
    inconclusive: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def differences(self):
        return [a - s for _n, a, s, _ex in self.rows]

    def as_dict(self):
        return {"regime": self.regime,
                "rows": [{"n": n, "admissible": a, "support": s,
                          "flagged": [digits_str(w) for w in ex]} for n, a, s, ex in self.rows],
                "discrepancy": self.discrepancy,
                "patterns": [p.as_dict() for p in self.patterns],
                "inconclusive": [digits_str(w) for w in self.inconclusive],
                "notes": list(self.notes)}


def gap_report(beta, bounds, max_len=8, code=None, regime=None):
    from .codes import build_code, classify_regime
    if regime is None:
        regime = classify_regime(beta, bounds)
    r = getattr(regime, "regime", regime)
    odd = bounds.odd_period_flag
    disc = {"odd_period": odd, "words": []}
    if r.name == "BelowGamma0":
        raw = census_automaton(bounds, max_len, corrected=False).counts
        cor = census_automaton(bounds, max_len, corrected=True).counts
        rows = []
        for n in range(1, max_len + 1):
            ex = discrepancy_words(bounds, n)[:5] if odd and n <= 14 else []
            rows.append((n, raw[n], cor[n], ex))
        if odd:
            disc["words"] = [digits_str(w) for n in range(1, min(max_len, 8) + 1)
                             for w in discrepancy_words(bounds, n)][:20]
        note = ("support is the corrected shift; differences are the odd-period set"
                if odd else "coded regime: support is all of S_beta")
        return GapReport(str(r), rows, disc, notes=[note])
    if code is None:
        code = build_code(bounds, regime=regime, beta=beta)
    pats = gap_patterns(beta, bounds, max_len, regime)
    rows, inconclusive = [], []
    for n in range(1, max_len + 1):
        words = enumerate_words(bounds, n, corrected=False, cap=max(max_len, 18))
        sup = 0
        flagged = []
        for w in words:
            try:
                res = is_intransitive(w, code, bounds, pats)
            except CapInconclusive:
                inconclusive.append(w)
                continue
            if res.value:
                flagged.append(w)
            else:
                sup += 1
        rows.append((n, len(words), sup, flagged[:5]))
    return GapReport(str(r), rows, disc, pats, inconclusive)
