"""Kernel selection: compiled int64 kernels when built, else pure Python.

Set ``HURWITZPIC_PURE_PYTHON=1`` to force the fallback. Compiled calls that
overflow 64 bits are transparently redone in pure Python.
"""

from __future__ import annotations

import os

from . import _pure

try:
    if os.environ.get("HURWITZPIC_PURE_PYTHON"):
        raise ImportError("pure-Python kernels requested")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def hnf_rows(a, ncols):
    if _compiled is not None:
        try:
            return _compiled.hnf_rows(a, ncols)
        except OverflowError:
            pass
    return _pure.hnf_rows(a, ncols)


def snf_triple(a, nrows, ncols):
    if _compiled is not None:
        try:
            return _compiled.snf_triple(a, nrows, ncols)
        except OverflowError:
            pass
    return _pure.snf_triple(a, nrows, ncols)


def det_bareiss(a):
    if _compiled is not None:
        try:
            return _compiled.det_bareiss(a)
        except OverflowError:
            pass
    return _pure.det_bareiss(a)
