"""Dense-array helpers that work for both arithmetic modes.

Exact-mode matrices are numpy object arrays filled with gmpy2.mpq, float
mode uses complex128.  numpy's kron, matmul and elementwise ops all
dispatch correctly on object arrays, so the two modes share code paths.
"""

from __future__ import annotations

import numpy as np
from gmpy2 import mpq

from .scalars import EXACT, ZERO_EXACT, abs_value, check_mode


def zeros_matrix(rows, cols, mode):
    check_mode(mode)
    if mode == EXACT:
        m = np.empty((rows, cols), dtype=object)
        m[:] = ZERO_EXACT
        return m
    return np.zeros((rows, cols), dtype=complex)


def zeros_vector(n, mode):
    check_mode(mode)
    if mode == EXACT:
        v = np.empty(n, dtype=object)
        v[:] = ZERO_EXACT
        return v
    return np.zeros(n, dtype=complex)


def identity_matrix(n, mode):
    m = zeros_matrix(n, n, mode)
    one = mpq(1) if mode == EXACT else 1.0 + 0.0j
    for i in range(n):
        m[i, i] = one
    return m


def matrix_from_rows(rows, mode):
    check_mode(mode)
    if mode == EXACT:
        m = np.empty((len(rows), len(rows[0])), dtype=object)
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                m[i, j] = mpq(x)
        return m
    return np.array(rows, dtype=complex)


def max_abs(arr):
    """Entrywise max magnitude; exact arrays give an exact result."""
    flat = np.asarray(arr).ravel()
    if flat.size == 0:
        return 0.0
    if flat.dtype == object:
        best = abs_value(flat[0])
        for x in flat[1:]:
            a = abs_value(x)
            if a > best:
                best = a
        return best
    return float(np.max(np.abs(flat)))


def rel_max_diff(u, v):
    """Max-norm difference scaled by the larger operand norm (floored at 1)."""
    diff = max_abs(np.asarray(u) - np.asarray(v))
    scale = max(max_abs(u), max_abs(v))
    if scale <= 1:
        return diff
    return diff / scale
