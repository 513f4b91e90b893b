"""Exact integer linear algebra: Smith normal form and linear systems modulo finite moduli.

No floating point.  ``smith_normal_form`` works on Python ints; the modular
kernel/solve routines keep numpy int64 entries reduced modulo a common
multiple ``m`` of all moduli, which is legitimate because ``m * Z^N`` always
lies inside the solution lattice.
"""

from __future__ import annotations

import numpy as np

from .config import settings
from .errors import BudgetExceeded


def egcd(a, b):
    """``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(matrix):
    """Return ``(U, D, V)`` with ``U @ M @ V == D`` diagonal and ``D[i][i] | D[i+1][i+1]``.

    ``U`` and ``V`` are unimodular; everything is a list of lists of ints.
    """
    a = [[int(x) for x in row] for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    if max(rows, cols) > settings.snf_max_dim:
        raise BudgetExceeded("SNF dimension %d exceeds the cap %d" % (max(rows, cols), settings.snf_max_dim))
    u = _identity(rows)
    v = _identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def row_combine(i, j, x, y, z, w):
        # (row_i, row_j) <- (x*row_i + y*row_j, z*row_i + w*row_j)
        for mat in (a, u):
            ri, rj = mat[i], mat[j]
            mat[i] = [x * p + y * q for p, q in zip(ri, rj)]
            mat[j] = [z * p + w * q for p, q in zip(ri, rj)]

    def col_combine(i, j, x, y, z, w):
        for mat in (a, v):
            for row in mat:
                p, q = row[i], row[j]
                row[i] = x * p + y * q
                row[j] = z * p + w * q

    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    if a[i][t] % a[t][t] == 0:
                        # plain elimination keeps the pivot, which guarantees termination
                        row_combine(t, i, 1, 0, -(a[i][t] // a[t][t]), 1)
                        continue
                    g, x, y = egcd(a[t][t], a[i][t])
                    p, q = a[t][t] // g, a[i][t] // g
                    row_combine(t, i, x, y, -q, p)
                    done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    if a[t][j] % a[t][t] == 0:
                        col_combine(t, j, 1, 0, -(a[t][j] // a[t][t]), 1)
                        continue
                    g, x, y = egcd(a[t][t], a[t][j])
                    p, q = a[t][t] // g, a[t][j] // g
                    col_combine(t, j, x, y, -q, p)
                    done = False
            if not done:
                continue
            # divisibility: fold any entry not divisible by the pivot into row t
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % a[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_combine(t, bad, 1, 1, 0, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, a, v


def diagonal(d):
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


class ModularKernel:
    """Lattice ``{x in Z^N : rows @ x = 0 mod moduli}``, as ``span(basis) + m Z^N``.

    ``index`` is ``[Z^N : lattice]``.
    """

    def __init__(self, ncols, m):
        self.m = int(m)
        self.ncols = ncols
        self.basis = np.eye(ncols, dtype=np.int64) % self.m if self.m > 1 else np.zeros((ncols, 0), dtype=np.int64)
        self.index = 1

    def add_equation(self, row, e):
        """Intersect with ``{x : row . x = 0 mod e}``; ``e`` must divide ``m``."""
        e = int(e)
        if e == 1 or self.basis.shape[1] == 0:
            return
        b = self.basis
        vals = (np.asarray(row, dtype=np.int64) % e) @ (b % e) % e
        nz = [int(i) for i in np.nonzero(vals)[0]]
        if not nz:
            return
        m = self.m
        b = b.copy()
        vals = [int(v) for v in vals]
        piv = nz[0]
        for j in nz[1:]:
            g, x, y = egcd(vals[piv], vals[j])
            ci, cj = b[:, piv].copy(), b[:, j].copy()
            b[:, piv] = (x * ci + y * cj) % m
            b[:, j] = ((vals[j] // g) * ci - (vals[piv] // g) * cj) % m
            vals[piv], vals[j] = g, 0
        k = e // egcd(vals[piv], e)[0]
        b[:, piv] = (k * b[:, piv]) % m
        self.index *= k
        keep = b.any(axis=0)
        self.basis = b[:, keep]


def kernel_mod(rows, moduli, ncols, m):
    """``ModularKernel`` of the system ``rows[t] . x = 0 mod moduli[t]``."""
    ker = ModularKernel(ncols, m)
    for row, e in zip(rows, moduli):
        ker.add_equation(row, e)
    return ker


def solve_mod(rows, moduli, rhs, ncols, m):
    """Some integer ``x`` with ``rows[t] . x = rhs[t] mod moduli[t]`` for all t, or None."""
    rows = [np.asarray(r, dtype=np.int64) for r in rows]
    ker = ModularKernel(ncols + 1, m)
    for r, e, b in zip(rows, moduli, rhs):
        ker.add_equation(np.concatenate([r, [-(int(b) % int(e))]]), e)
    t = ker.basis[-1].tolist()
    # integer combination of the t-components (and m) equal to 1
    coeffs = [0] * len(t)
    acc = m
    for i, c in enumerate(t):
        c = int(c)
        if c == 0:
            continue
        g2, x, y = egcd(acc, c)
        coeffs = [(ci * x) for ci in coeffs]
        coeffs[i] = y
        acc = g2
    if acc != 1:
        return None
    x = np.zeros(ncols, dtype=np.int64)
    for i, lam in enumerate(coeffs):
        if lam:
            x = (x + (lam % m) * ker.basis[:ncols, i]) % m
    for r, e, b in zip(rows, moduli, rhs):
        if (int(r @ x) - int(b)) % int(e):
            raise AssertionError("modular solve produced a non-solution")
    return x
