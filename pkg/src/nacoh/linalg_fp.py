"""Exact linear algebra over the prime field F_p (numpy int64, entries kept in [0, p))."""

from __future__ import annotations

import numpy as np


def as_fp(a, p):
    return np.asarray(a, dtype=np.int64) % p


def rref(m, p):
    """Reduced row echelon form of ``m`` over F_p.

    Returns ``(r, pivots)`` where ``r`` holds only the nonzero rows.
    """
    a = as_fp(m, p).copy()
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if len(hit):
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(m, p):
    return len(rref(m, p)[1])


def reduce_vector(v, basis, pivots, p):
    """Remainder of ``v`` after clearing the pivot columns of an rref ``basis``."""
    v = as_fp(v, p).copy()
    for row, c in zip(basis, pivots):
        if v[c]:
            v = (v - v[c] * row) % p
    return v


def in_span(v, basis, pivots, p):
    return not reduce_vector(v, basis, pivots, p).any()


def coordinates(v, basis, pivots, p):
    """Coefficients of ``v`` in an rref basis, or None when ``v`` is outside the span."""
    v = as_fp(v, p)
    coeffs = np.array([v[c] for c in pivots], dtype=np.int64)
    if len(pivots):
        recon = (coeffs @ np.asarray(basis)) % p
    else:
        recon = np.zeros_like(v)
    if not np.array_equal(recon, v):
        return None
    return coeffs


def inverse(m, p):
    a = as_fp(m, p)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    aug = np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1)
    r, pivots = rref(aug, p)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular mod %d" % p)
    return r[:n, n:]


def is_invertible(m, p):
    a = as_fp(m, p)
    return a.shape[0] == a.shape[1] and rank(a, p) == a.shape[0]


def matmul(a, b, p):
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % p
