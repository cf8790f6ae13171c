"""Selects the compiled tie-scan kernel when it is built, else pure Python.

Set NEGBETA_PURE=1 to force the Python fallback.
"""
import os

from . import _pykernel

BACKEND = "python"
scan_word = _pykernel.scan_word
census_dfs = _pykernel.census_dfs
words_dfs = _pykernel.words_dfs

if not os.environ.get("NEGBETA_PURE"):
    try:
        from . import _kernel
    except ImportError:
        _kernel = None
    if _kernel is not None:
        BACKEND = "cython"
        scan_word = _kernel.scan_word
        census_dfs = _kernel.census_dfs
        words_dfs = _kernel.words_dfs
