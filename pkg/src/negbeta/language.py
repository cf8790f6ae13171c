"""Alternating order, admissibility, word enumeration and the H_n census.

Admissibility of a finite word w against a lower bound s means: w is a prefix
of an infinite sequence x with sigma^m x >= s for all m.  Because the upper
bound is always 0.s (the raw pair is (d, 0.d) and the corrected pair is
(d*, 0.d*)), x <= 0.s follows from sigma(x) >= s and the upper test is
redundant.  The check is a left-to-right automaton whose state is the set of
"ties": suffixes of the word that still agree with a prefix of s.

Two shifts are in play: the raw shift S_beta with bound d, and the corrected
shift with bound d*.  They differ only when d is purely periodic with odd
period.  ``corrected=True`` selects the latter.
"""
import enum
from dataclasses import dataclass, field

from . import kernel
from .errors import CapExceeded

DEFAULT_ENUM_CAP = 18


class OrderSign(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def alt_compare(x, y, horizon=None, delta=-1):
    """Compare sequences in the alternating order (delta=-1) or lexicographically.

    At the first index k (1-based) with x_k != y_k, x < y iff
    delta^k (x_k - y_k) < 0.
    """
    if horizon is None:
        horizon = min(len(x), len(y))
    for k in range(1, horizon + 1):
        a, b = x[k - 1], y[k - 1]
        if a != b:
            v = (delta ** k) * (a - b)
            return OrderSign.LESS if v < 0 else OrderSign.GREATER
    return OrderSign.EQUAL


# ---------------------------------------------------------------- automaton

class TieAutomaton:
    """Deterministic automaton of admissible words for a lower bound ``s``.

    States are frozensets of (position in s, sign).  The empty state is the
    "free" state: no suffix of the word is tied with s.  Positions are folded
    into the period when s is eventually periodic, so the automaton is finite
    in that case.
    """

    def __init__(self, bound, alphabet_max=None):
        self.bound = bound
        self.dmax = bound[0] if alphabet_max is None else alphabet_max
        self.finite = bound.complete
        self._live = None

    initial = frozenset()

    def step(self, state, c):
        s = self.bound
        out = set()
        for p, sg in tuple(state) + ((0, -1),):
            v = sg * (c - s[p])
            if v < 0:
                return None
            if v == 0:
                out.add((s.canon(p + 1), -sg))
        nxt = frozenset(out)
        if self._live is not None and nxt not in self._live:
            return None
        return nxt

    def run(self, word, state=None):
        st = self.initial if state is None else state
        for c in word:
            st = self.step(st, c)
            if st is None:
                return None
        return st

    def successors(self, state):
        for c in range(self.dmax + 1):
            t = self.step(state, c)
            if t is not None:
                yield c, t

    def states(self, limit=200000):
        """All reachable states (finite bounds only)."""
        if not self.finite:
            raise CapExceeded("state space of a truncated bound is not finite")
        seen = {self.initial}
        todo = [self.initial]
        while todo:
            st = todo.pop()
            for _c, t in self.successors(st):
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
                    if len(seen) > limit:
                        raise CapExceeded("more than %d automaton states" % limit)
        return seen

    def prune_dead(self):
        """Restrict to states with an infinite continuation.

        Returns the number of dead states removed (0 when every reachable
        state is live, which is the usual case).
        """
        if not self.finite:
            return 0
        sts = self.states()
        edges = {st: [t for _c, t in self.successors(st)] for st in sts}
        live = set(sts)
        changed = True
        while changed:
            changed = False
            for st in list(live):
                if not any(t in live for t in edges[st]):
                    live.discard(st)
                    changed = True
        dead = len(sts) - len(live)
        self._live = frozenset(live) if dead else None
        return dead


_AUTOMATA = {}


def automaton(bounds, corrected=True):
    key = (id(bounds), corrected)
    hit = _AUTOMATA.get(key)
    if hit is not None and hit[0] is bounds:
        return hit[1]
    a = TieAutomaton(bounds.bound(corrected), alphabet_max=bounds.d1)
    a.dead_states = a.prune_dead()
    _AUTOMATA[key] = (bounds, a)
    return a


def is_admissible(word, bounds, corrected=True):
    """True iff ``word`` is a factor of the (corrected, by default) shift."""
    word = tuple(word)
    if any(c < 0 or c > bounds.d1 for c in word):
        return False
    return automaton(bounds, corrected).run(word) is not None


def _flat_bound(bounds, corrected, n):
    s = bounds.bound(corrected)
    if s.known is not None and s.known < n + 1:
        raise CapExceeded("bound known to %d digits only" % s.known)
    return list(s.prefix(n + 1))


def _kernel_ok(bounds, corrected):
    return automaton(bounds, corrected).dead_states == 0


def enumerate_words(bounds, n, corrected=False, cap=DEFAULT_ENUM_CAP):
    """All admissible words of length n, by depth-first extension.

    Defaults to the raw shift S_beta, whose census the H_n recurrence counts.
    Output is in lexicographic order.
    """
    if n > cap:
        raise CapExceeded("enumeration length %d exceeds cap %d" % (n, cap))
    if n == 0:
        return [()]
    if _kernel_ok(bounds, corrected):
        return kernel.words_dfs(_flat_bound(bounds, corrected, n), bounds.d1, n)
    a = automaton(bounds, corrected)
    out = []

    def rec(w, st):
        if len(w) == n:
            out.append(tuple(w))
            return
        for c, t in a.successors(st):
            w.append(c)
            rec(w, t)
            w.pop()

    rec([], a.initial)
    return out


@dataclass
class LanguageCensus:
    counts: list
    words: dict = field(default_factory=dict)
    source: str = ""

    def __getitem__(self, n):
        return self.counts[n]


def census_enumeration(bounds, N, corrected=False, cap=DEFAULT_ENUM_CAP, keep_words=False):
    """Brute-force census H_0..H_N by depth-first extension."""
    if N > cap:
        raise CapExceeded("enumeration length %d exceeds cap %d" % (N, cap))
    if keep_words:
        words = {n: enumerate_words(bounds, n, corrected, cap) for n in range(N + 1)}
        return LanguageCensus([len(words[n]) for n in range(N + 1)], words, "enumeration")
    if _kernel_ok(bounds, corrected):
        counts = kernel.census_dfs(_flat_bound(bounds, corrected, N), bounds.d1, N)
    else:
        counts = [len(enumerate_words(bounds, n, corrected, cap)) for n in range(N + 1)]
    return LanguageCensus(list(counts), source="enumeration/" + kernel.BACKEND)


def census_automaton(bounds, N, corrected=False):
    """Census by dynamic programming over automaton states (fast, any N)."""
    a = automaton(bounds, corrected)
    cur = {a.initial: 1}
    counts = [1]
    for _ in range(N):
        nxt = {}
        for st, k in cur.items():
            for _c, t in a.successors(st):
                nxt[t] = nxt.get(t, 0) + k
        cur = nxt
        counts.append(sum(cur.values()))
    return LanguageCensus(counts, source="automaton")


def count_words_recurrence(bounds, N):
    """H_n = sum_{k=1..n} (-1)^k (d_{k-1} - d_k) H_{n-k} + 1 with d_0 = 0."""
    d = bounds.raw_d
    dd = [0] + [d[i] for i in range(N)]
    H = [1]
    for n in range(1, N + 1):
        H.append(sum((-1) ** k * (dd[k - 1] - dd[k]) * H[n - k] for k in range(1, n + 1)) + 1)
    return LanguageCensus(H, source="recurrence")


def fibonacci_census(N, seeds=(1, 1)):
    """f_n = f_{n-1} + f_{n-2}: census of concatenations of odd-length prefixes."""
    f = list(seeds[:2])
    while len(f) < N + 1:
        f.append(f[-1] + f[-2])
    return f[:N + 1]


def odd_prefix_census(N):
    """Direct count of concatenations of words of odd length 1, 3, 5, ...

    One word per odd length (the odd prefixes of d); satisfies the same
    recurrence as ``fibonacci_census`` from n = 3 on.
    """
    f = [1] + [0] * N
    for n in range(1, N + 1):
        f[n] = sum(f[n - k] for k in range(1, n + 1, 2))
    return f


def discrepancy_words(bounds, n):
    """Words of S_beta of length n that are not factors of the corrected shift."""
    if not bounds.odd_period_flag:
        return []
    cor = set(enumerate_words(bounds, n, corrected=True))
    return [w for w in enumerate_words(bounds, n, corrected=False) if w not in cor]
