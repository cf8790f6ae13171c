"""Pure-Python versions of the hot loops (see _kernel.pyx for the compiled ones).

The lower bound is passed as a flat list ``d`` of its first digits.  A word is
scanned left to right; every position opens a "tie" with d, and a tie that
has matched d_1..d_p compares the next letter c with d_{p+1} with sign
(-1)^(p+1).  Negative means the suffix went below d (reject), zero keeps the
tie, positive closes it.
"""


def scan_word(d, word):
    starts = []
    for k, c in enumerate(word):
        starts.append(k)
        keep = []
        for s in starts:
            p = k - s
            v = c - d[p]
            if p % 2 == 0:
                v = -v
            if v < 0:
                return False
            if v == 0:
                keep.append(s)
        starts = keep
    return True


def census_dfs(d, dmax, n):
    """Counts of words of length 0..n with no violated tie (depth-first)."""
    counts = [0] * (n + 1)
    counts[0] = 1
    if n == 0:
        return counts
    # explicit stack: (depth, active tie starts)
    stack = [(0, ())]
    while stack:
        k, starts = stack.pop()
        for c in range(dmax + 1):
            keep = []
            ok = True
            for s in starts + (k,):
                p = k - s
                v = c - d[p]
                if p % 2 == 0:
                    v = -v
                if v < 0:
                    ok = False
                    break
                if v == 0:
                    keep.append(s)
            if not ok:
                continue
            counts[k + 1] += 1
            if k + 1 < n:
                stack.append((k + 1, tuple(keep)))
    return counts


def words_dfs(d, dmax, n):
    """All words of length n with no violated tie, in lexicographic order."""
    out = []
    word = [0] * n

    def rec(k, starts):
        if k == n:
            out.append(tuple(word))
            return
        for c in range(dmax + 1):
            keep = []
            ok = True
            for s in starts + (k,):
                p = k - s
                v = c - d[p]
                if p % 2 == 0:
                    v = -v
                if v < 0:
                    ok = False
                    break
                if v == 0:
                    keep.append(s)
            if ok:
                word[k] = c
                rec(k + 1, tuple(keep))

    rec(0, ())
    return out
