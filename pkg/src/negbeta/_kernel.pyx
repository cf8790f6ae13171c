# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled tie-scan kernels; same contract as _pykernel."""
from libc.stdlib cimport malloc, free


def scan_word(d, word):
    cdef Py_ssize_t n = len(word), k, s, j, m = 0
    cdef long v, c
    cdef long *dd = <long *> malloc((n + 1) * sizeof(long))
    cdef long *starts = <long *> malloc((n + 1) * sizeof(long))
    cdef long *ww = <long *> malloc((n + 1) * sizeof(long))
    try:
        for k in range(n):
            dd[k] = d[k]
            ww[k] = word[k]
        for k in range(n):
            c = ww[k]
            starts[m] = k
            m += 1
            j = 0
            for s in range(m):
                v = c - dd[k - starts[s]]
                if (k - starts[s]) % 2 == 0:
                    v = -v
                if v < 0:
                    return False
                if v == 0:
                    starts[j] = starts[s]
                    j += 1
            m = j
        return True
    finally:
        free(dd)
        free(starts)
        free(ww)


cdef void _dfs(long *dd, long dmax, long n, long k, long *ties, long *nties,
               long *counts, long *word, list out, bint collect):
    # ties: row k holds the active starts before reading position k
    cdef long c, s, v, j, p, m = nties[k]
    cdef bint ok
    cdef long *row = ties + k * (n + 1)
    cdef long *nxt = ties + (k + 1) * (n + 1)
    row[m] = k
    for c in range(dmax + 1):
        ok = True
        j = 0
        for s in range(m + 1):
            p = k - row[s]
            v = c - dd[p]
            if p % 2 == 0:
                v = -v
            if v < 0:
                ok = False
                break
            if v == 0:
                nxt[j] = row[s]
                j += 1
        if not ok:
            continue
        counts[k + 1] += 1
        word[k] = c
        if k + 1 < n:
            nties[k + 1] = j
            _dfs(dd, dmax, n, k + 1, ties, nties, counts, word, out, collect)
        elif collect:
            out.append(tuple([word[i] for i in range(n)]))


def _run(d, long dmax, long n, bint collect):
    cdef long i
    cdef long *dd = <long *> malloc((n + 2) * sizeof(long))
    cdef long *ties = <long *> malloc((n + 2) * (n + 1) * sizeof(long))
    cdef long *nties = <long *> malloc((n + 2) * sizeof(long))
    cdef long *counts = <long *> malloc((n + 2) * sizeof(long))
    cdef long *word = <long *> malloc((n + 2) * sizeof(long))
    out = []
    try:
        for i in range(n + 1):
            dd[i] = d[i]
            counts[i] = 0
        counts[0] = 1
        nties[0] = 0
        if n > 0:
            _dfs(dd, dmax, n, 0, ties, nties, counts, word, out, collect)
        return [counts[i] for i in range(n + 1)], out
    finally:
        free(dd)
        free(ties)
        free(nties)
        free(counts)
        free(word)


def census_dfs(d, long dmax, long n):
    return _run(d, dmax, n, False)[0]


def words_dfs(d, long dmax, long n):
    if n == 0:
        return [()]
    return _run(d, dmax, n, True)[1]
