import itertools
import os
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from negbeta import _pykernel, kernel
from negbeta.errors import CapExceeded
from negbeta.language import (OrderSign, alt_compare, census_automaton, census_enumeration,
                              count_words_recurrence, discrepancy_words, enumerate_words,
                              fibonacci_census, is_admissible, odd_prefix_census)

from conftest import TEST_SET


def test_alt_compare_examples():
    assert alt_compare((1,), (0,)) == OrderSign.LESS        # first index: sign (-1)^1
    assert alt_compare((0, 1), (0, 0)) == OrderSign.GREATER
    assert alt_compare((1, 2), (1, 2)) == OrderSign.EQUAL
    assert alt_compare((1,), (0,), delta=1) == OrderSign.GREATER


@pytest.mark.parametrize("n", [1, 2, 3])
def test_alt_compare_is_total_order_exhaustive(n):
    words = list(itertools.product(range(3), repeat=n))
    rank = {w: i for i, w in enumerate(sorted(words, key=lambda w: tuple(
        (-1) ** (k + 1) * c for k, c in enumerate(w))))}
    for x in words:
        for y in words:
            o = alt_compare(x, y)
            assert o == alt_compare(y, x) * -1
            assert (o == OrderSign.LESS) == (rank[x] < rank[y])


@settings(max_examples=300, deadline=None)
@given(st.integers(4, 10).flatmap(
    lambda n: st.tuples(*[st.lists(st.integers(0, 2), min_size=n, max_size=n)] * 3)))
def test_alt_compare_transitive(t):
    x, y, z = t
    if alt_compare(x, y) == OrderSign.LESS and alt_compare(y, z) == OrderSign.LESS:
        assert alt_compare(x, z) == OrderSign.LESS
    assert alt_compare(x, y) == -alt_compare(y, x)


@pytest.mark.parametrize("name", TEST_SET)
def test_recurrence_equals_enumeration(ctx, name):
    bd = ctx(name)["bounds"]
    rec = count_words_recurrence(bd, 14).counts
    assert census_enumeration(bd, 14).counts == rec
    assert census_automaton(bd, 14).counts == rec


def test_known_censuses(ctx):
    assert count_words_recurrence(ctx("minus2")["bounds"], 14)[14] == 32767
    assert count_words_recurrence(ctx("neg_gamma0")["bounds"], 14)[14] == 1596


@pytest.mark.parametrize("name", ["minus2", "neg_gamma0", "minus1.3"])
def test_language_closed_under_factors(ctx, name):
    bd = ctx(name)["bounds"]
    for n in range(1, 11):
        shorter = set(enumerate_words(bd, n - 1))
        for w in enumerate_words(bd, n):
            assert w[1:] in shorter and w[:-1] in shorter


def test_enumeration_cap(ctx):
    with pytest.raises(CapExceeded):
        enumerate_words(ctx("minus2")["bounds"], 19)


def test_enumeration_is_sorted(ctx):
    ws = enumerate_words(ctx("example1")["bounds"], 5)
    assert ws == sorted(ws)


def test_discrepancy_minus2(ctx):
    bd = ctx("minus2")["bounds"]
    ws = discrepancy_words(bd, 4)
    assert ws and all(2 in w for w in ws)
    assert discrepancy_words(ctx("example1")["bounds"], 4) == []


def test_corrected_admissibility(ctx):
    bd = ctx("minus2")["bounds"]
    assert is_admissible((2,), bd, corrected=False)
    assert not is_admissible((2,), bd, corrected=True)


def test_fibonacci_and_odd_prefix_census():
    f = fibonacci_census(30)
    assert f[:8] == [1, 1, 2, 3, 5, 8, 13, 21]
    o = odd_prefix_census(20)
    assert all(o[n] == o[n - 1] + o[n - 2] for n in range(3, 21))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=1, max_size=14))
def test_kernel_backends_agree(word):
    d = [2, 0, 1, 2, 1, 2, 1, 2, 0, 1, 2, 0, 0, 2, 1]
    assert _pykernel.scan_word(d, word) == kernel.scan_word(d, word)


def test_kernel_census_backends_agree(ctx):
    d = list(ctx("example1")["bounds"].raw_d[:13])
    assert _pykernel.census_dfs(d, 2, 12) == kernel.census_dfs(d, 2, 12)
    assert _pykernel.words_dfs(d, 2, 6) == kernel.words_dfs(d, 2, 6)


@pytest.mark.skipif(bool(os.environ.get("NEGBETA_PURE")), reason="fallback forced")
def test_compiled_backend_selected():
    assert kernel.BACKEND == "cython"


def test_pure_env_forces_fallback():
    out = subprocess.run([sys.executable, "-c", "from negbeta import kernel; print(kernel.BACKEND)"],
                         env=dict(os.environ, NEGBETA_PURE="1"), capture_output=True, text=True)
    assert out.stdout.strip() == "python"
