"""Brute-force oracles, written without the package's algorithms.

They work on raw Python data (permutation tuples, nested lists, plain
multiplication tables) and enumerate everything; they are only meant for
tiny inputs.
"""

import itertools

import numpy as np
from collections import deque


def perm_closure(gens, degree):
    ident = tuple(range(degree))
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(g[x[i]] for i in range(degree))
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def mat_mul(a, b, p):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) % p for j in range(n)) for i in range(n))


def mat_closure(gens, p):
    n = len(gens[0])
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    gens = [tuple(tuple(int(x) % p for x in row) for row in g) for g in gens]
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mat_mul(x, g, p)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def rank_mod_p(rows, p):
    """Rank of a list of integer vectors over F_p by plain elimination."""
    rows = [[x % p for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


class Table:
    """A group as a multiplication table with identity 0."""

    def __init__(self, mul):
        self.mul = [list(r) for r in mul]
        self.n = len(mul)
        self.inv = [next(y for y in range(self.n) if self.mul[x][y] == 0) for x in range(self.n)]


def from_nacoh(G):
    return Table(G.cayley.tolist())


def z1(G, Q, act):
    """All maps G -> Q with gamma(gh) = gamma(g)^h gamma(h); act[q][g] is q^g."""
    out = []
    for vals in itertools.product(range(Q.n), repeat=G.n):
        if all(vals[G.mul[g][h]] == Q.mul[act[vals[g]][h]][vals[h]] for g in range(G.n) for h in range(G.n)):
            out.append(vals)
    return out


def h1_classes(G, Q, act):
    """Coboundary orbits of Z1, as a list of frozensets of value tuples."""
    cocycles = z1(G, Q, act)
    left = set(cocycles)
    classes = []
    while left:
        gamma = min(left)
        orbit = frozenset(tuple(Q.mul[Q.mul[Q.inv[act[q][g]]][gamma[g]]][q] for g in range(G.n))
                          for q in range(Q.n))
        classes.append(orbit)
        left -= orbit
    return classes


def h2_count(G, R, act):
    """|Z2| / |B2| for abelian R, unnormalized cochains, by full enumeration."""
    n = G.n
    z2 = 0
    for vals in itertools.product(range(R.n), repeat=n * n):
        c = lambda g, h: vals[g * n + h]
        if all(R.mul[c(G.mul[g][h], k)][act[c(g, h)][k]] == R.mul[c(g, G.mul[h][k])][c(h, k)]
               for g in range(n) for h in range(n) for k in range(n)):
            z2 += 1
    b2 = set()
    for phi in itertools.product(range(R.n), repeat=n):
        # (d phi)(g, h) = phi(g)^h phi(h) phi(gh)^-1
        b2.add(tuple(R.mul[R.mul[act[phi[g]][h]][phi[h]]][R.inv[phi[G.mul[g][h]]]]
                     for g in range(n) for h in range(n)))
    assert z2 % len(b2) == 0
    return z2 // len(b2)


def fixed(Q, act, nG):
    return [q for q in range(Q.n) if all(act[q][g] == q for g in range(nG))]


def subgroups(T):
    """Every subgroup of a table group, by closing up all subsets of size <= 2 iteratively."""
    def close(s):
        s = set(s) | {0}
        while True:
            new = {T.mul[a][b] for a in s for b in s} - s
            if not new:
                return frozenset(s)
            s |= new
    found = {close([x]) for x in range(T.n)}
    while True:
        more = {close(a | b) for a in found for b in found} - found
        if not more:
            return found
        found |= more


def is_subgroup(T, s):
    s = set(s)
    return 0 in s and all(T.mul[a][b] in s for a in s for b in s)


def exact_at(image, kernel):
    return sorted(set(image)) == sorted(set(kernel))


def _cosets(Q, r_elems):
    """Quotient Q/R as a Table, with the projection and a section (minimal representatives)."""
    cos = sorted({frozenset(Q.mul[q][r] for r in r_elems) for q in range(Q.n)}, key=min)
    where = {c: i for i, c in enumerate(cos)}
    proj = [where[next(c for c in cos if q in c)] for q in range(Q.n)]
    sec = [min(c) for c in cos]
    mul = [[proj[Q.mul[sec[a]][sec[b]]] for b in range(len(cos))] for a in range(len(cos))]
    return Table(mul), proj, sec


def seven_term(G, Q, act, r_elems):
    """Sizes of the seven terms and exactness at each of the six nodes before H2.

    Everything is recomputed from the raw tables of Q and its G-action; R is a
    central, G-stable subgroup given by its elements (identity first).
    """
    r_elems = sorted(r_elems)
    ridx = {r: i for i, r in enumerate(r_elems)}
    Rt = Table([[ridx[Q.mul[a][b]] for b in r_elems] for a in r_elems])
    ract = [[ridx[act[r][g]] for g in range(G.n)] for r in r_elems]
    St, proj, sec = _cosets(Q, r_elems)
    sact = [[proj[act[sec[s]][g]] for g in range(G.n)] for s in range(St.n)]

    fixR, fixQ, fixS = fixed(Rt, ract, G.n), fixed(Q, act, G.n), fixed(St, sact, G.n)
    hR, hQ, hS = h1_classes(G, Rt, ract), h1_classes(G, Q, act), h1_classes(G, St, sact)

    def cls(classes, vals):
        return next(i for i, c in enumerate(classes) if tuple(vals) in c)

    # H2 classes by coboundary cosets inside Z2, unnormalized
    n = G.n
    b2 = set()
    for phi in itertools.product(range(Rt.n), repeat=n):
        b2.add(tuple(Rt.mul[Rt.mul[ract[phi[g]][h]][phi[h]]][Rt.inv[phi[G.mul[g][h]]]]
                     for g in range(n) for h in range(n)))
    reps = []

    def h2_class(c):
        for i, rep in enumerate(reps):
            if tuple(Rt.mul[a][Rt.inv[b]] for a, b in zip(c, rep)) in b2:
                return i
        reps.append(c)
        return len(reps) - 1

    base = [0, 0, 0, cls(hR, [0] * n), cls(hQ, [0] * n), cls(hS, [0] * n), h2_class((0,) * (n * n))]

    m0 = [fixQ.index(r_elems[r]) for r in fixR]
    m1 = [fixS.index(proj[q]) for q in fixQ]
    m2 = [cls(hR, [ridx[Q.mul[Q.inv[act[sec[s]][g]]][sec[s]]] for g in range(n)]) for s in fixS]
    m3 = [cls(hQ, [r_elems[v] for v in min(c)]) for c in hR]
    m4 = [cls(hS, [proj[v] for v in min(c)]) for c in hQ]
    m5 = []
    for c in hS:
        lift = [sec[v] for v in min(c)]
        m5.append(h2_class(tuple(ridx[Q.mul[Q.mul[act[lift[g]][h]][lift[h]]][Q.inv[lift[G.mul[g][h]]]]]
                                 for g in range(n) for h in range(n))))
    maps = [m0, m1, m2, m3, m4, m5]
    sizes = [len(fixR), len(fixQ), len(fixS), len(hR), len(hQ), len(hS)]
    sizes.append(max(len(reps), h2_count(G, Rt, ract)))
    exact = [[i for i in range(len(m0)) if m0[i] == base[1]] == [base[0]]]
    for k in range(1, 6):
        image = sorted(set(maps[k - 1]))
        kernel = [i for i, y in enumerate(maps[k]) if y == base[k + 1]]
        exact.append(image == kernel)
    return sizes, exact


def flat(ms, p):
    return [[int(x) % p for x in np.asarray(m).reshape(-1)] for m in ms]


def _independent(ms, p):
    """A linearly independent subset of ms with the same span."""
    keep, rows = [], []
    for m in ms:
        if rank_mod_p(rows + flat([m], p), p) > len(rows):
            rows += flat([m], p)
            keep.append(m)
    return keep


def _power_spans(Q):
    """Independent spanning lists for J, J^2, ..., ending with the zero space."""
    p, n = Q.p, Q.degree
    eye = np.eye(n, dtype=np.int64)
    J = _independent([(q - eye) % p for q in Q.payloads], p)
    spans, cur = [], J
    while True:
        spans.append(cur)
        if not cur:
            return spans
        cur = _independent([(a @ b) % p for a in cur for b in J], p)


def radical_dims(Q):
    """Dimensions of J, J^2, ... from spans of products of the q - I, by plain elimination."""
    return [len(s) for s in _power_spans(Q)]


def radical_chain_orders(Q):
    """|{q : q - I in J^i}| for i = 1, 2, ... using rank tests only."""
    p, n = Q.p, Q.degree
    eye = np.eye(n, dtype=np.int64)
    out = []
    for s in _power_spans(Q):
        rows = flat(s, p)
        o = sum(1 for q in Q.payloads
                if rank_mod_p(rows + flat([(q - eye) % p], p), p) == len(rows))
        if not out or out[-1] != o:
            out.append(o)
    return out
