"""Radical filtration of a unitriangular matrix G-group over F_p.

With A the F_p-span of Q inside M_n(F_p) and J its radical,
``Q_i = {q in Q : q - I in J^i}`` is a central series of G-stable normal
subgroups whose layers embed additively into ``J^i / J^{i+1}``.  Layers are
then refined to irreducible G-modules by spinning vectors.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import groups, linalg_fp
from .actions import GGroup, ModuleStructure, action_by_payload_conjugation, detect_module, quotient_ggroup, sub_ggroup
from .config import settings
from .errors import BudgetExceeded, InvalidInput, VerificationError


class MatrixGGroup:
    """A unitriangular matrix group Q with a matrix group G acting by conjugation."""

    def __init__(self, G, Q, check=True):
        if G.domain != "matrix" or Q.domain != "matrix":
            raise InvalidInput("both groups must be matrix groups")
        if G.p != Q.p or G.degree != Q.degree:
            raise InvalidInput("G and Q must live in the same GL_n(F_p)")
        self.G, self.Q = G, Q
        self.p, self.n = Q.p, Q.degree
        if check:
            for i, q in enumerate(Q.payloads):
                if not (np.array_equal(np.diag(q), np.ones(self.n)) and not np.tril(q, -1).any()):
                    raise InvalidInput("element %d of Q is not unitriangular" % i)
        self.action = action_by_payload_conjugation(G, Q)

    def __repr__(self):
        return "<MatrixGGroup n=%d p=%d |G|=%d |Q|=%d>" % (self.n, self.p, self.G.order, self.Q.order)


def trivial_matrix_group(n, p):
    return groups.closure_from_generators("matrix", [], p=p, degree=n)


class AlgebraBasis:
    """A subspace of M_n(F_p) held as the rref of flattened matrices."""

    def __init__(self, p, n, vectors):
        self.p, self.n = p, n
        vectors = np.asarray(vectors, dtype=np.int64).reshape(-1, n * n)
        self.basis, self.pivots = linalg_fp.rref(vectors, p) if len(vectors) else (
            np.zeros((0, n * n), dtype=np.int64), [])

    @property
    def span_dim(self):
        return len(self.pivots)

    def __repr__(self):
        return "<AlgebraBasis dim=%d>" % self.span_dim

    def matrices(self):
        return [row.reshape(self.n, self.n) for row in self.basis]

    def contains(self, m):
        return linalg_fp.in_span(np.asarray(m).reshape(-1), self.basis, self.pivots, self.p)

    def reduce(self, m):
        return linalg_fp.reduce_vector(np.asarray(m).reshape(-1), self.basis, self.pivots, self.p)

    def __eq__(self, other):
        return isinstance(other, AlgebraBasis) and np.array_equal(self.basis, other.basis)


def group_algebra_span(Q):
    """The F_p-span of the elements of a matrix group (the algebra they generate)."""
    return AlgebraBasis(Q.p, Q.degree, [q.reshape(-1) for q in Q.payloads])


def radical(A, Q):
    """``J = span{q - I}``, checked to be a nilpotent two-sided ideal of codimension 1."""
    p, n = Q.p, Q.degree
    eye = np.eye(n, dtype=np.int64)
    J = AlgebraBasis(p, n, [((q - eye) % p).reshape(-1) for q in Q.payloads])
    for m in J.matrices():
        if np.tril(m).any():
            raise VerificationError("radical element is not strictly upper triangular")
    for a, j in itertools.product(A.matrices(), J.matrices()):
        if not (J.contains((a @ j) % p) and J.contains((j @ a) % p)):
            raise VerificationError("J is not a two-sided ideal of A")
    if A.span_dim != J.span_dim + 1:
        raise VerificationError("dim A != dim J + 1: the span is not local")
    return J


def radical_powers(J):
    """``[J, J^2, ..., 0]``: strictly decreasing and ending at the zero space."""
    p, n = J.p, J.n
    out = [J]
    cur = J
    for _ in range(n + 1):
        if cur.span_dim == 0:
            return out
        prods = [((x @ y) % p).reshape(-1) for x in cur.matrices() for y in J.matrices()]
        nxt = AlgebraBasis(p, n, prods)
        if nxt.span_dim >= cur.span_dim:
            raise VerificationError("radical powers do not decrease")
        out.append(nxt)
        cur = nxt
    raise VerificationError("radical powers did not reach 0 within n steps")


class CentralFiltration:
    """``Q = Q_1 > Q_2 > ... > Q_{m+1} = 1`` with a module structure on every layer.

    ``chain`` holds sorted element lists; ``layers[i]`` is the G-group
    ``Q_i / Q_{i+1}`` and ``modules[i]`` its ModuleStructure.
    """

    def __init__(self, ggroup, chain, modules=None, radical_dims=None, check=True):
        self.ggroup = ggroup
        self.chain = [sorted(int(x) for x in c) for c in chain]
        self.radical_dims = radical_dims
        self.layers = []
        self.quotients = []
        for j in range(len(self.chain) - 1):
            layer, emb, quo = _layer(ggroup, self.chain[j], self.chain[j + 1])
            self.layers.append(layer)
            self.quotients.append((emb, quo))
        self.modules = modules if modules is not None else [_module_or_fail(l) for l in self.layers]
        if check:
            self.verify()

    def __repr__(self):
        return "<CentralFiltration orders=%s>" % self.orders

    @property
    def orders(self):
        return [len(c) for c in self.chain]

    @property
    def length(self):
        return len(self.chain) - 1

    def verify(self):
        A = self.ggroup
        Q = A.coeff
        chain = self.chain
        if chain[0] != list(range(Q.order)):
            raise VerificationError("filtration does not start at Q")
        if chain[-1] != [0]:
            raise VerificationError("filtration does not end at 1")
        prod = 1
        for i, c in enumerate(chain):
            if groups.subgroup_elements(Q, c) != c:
                raise VerificationError("Q_%d is not a subgroup" % (i + 1))
            if not groups.is_normal(Q, c):
                raise VerificationError("Q_%d is not normal in Q" % (i + 1))
            if not set(A.table[c].ravel().tolist()) <= set(c):
                raise VerificationError("Q_%d is not G-stable" % (i + 1))
            if i + 1 < len(chain):
                nxt = set(chain[i + 1])
                if not nxt < set(c):
                    raise VerificationError("the chain is not strictly decreasing at Q_%d" % (i + 1))
                comm = {Q.commutator(q, x) for q in range(Q.order) for x in c}
                if not comm <= nxt:
                    raise VerificationError("[Q, Q_%d] is not contained in Q_%d" % (i + 1, i + 2))
                prod *= len(c) // len(nxt)
        if prod != Q.order:
            raise VerificationError("layer orders do not multiply to |Q|")
        for i, (layer, mod) in enumerate(zip(self.layers, self.modules)):
            if not isinstance(mod, ModuleStructure):
                raise VerificationError("layer %d is not a module: %r" % (i + 1, mod))
            mod.verify()
            if mod.prime ** mod.dimension != layer.coeff.order:
                raise VerificationError("layer %d module has the wrong dimension" % (i + 1))
        return True

    def to_json(self):
        out = {
            "chain_orders": self.orders,
            "layer_dims": [m.dimension for m in self.modules],
            "characters": [_character(m) for m in self.modules],
        }
        if self.radical_dims is not None:
            out["radical_dims"] = self.radical_dims
        return out


def _character(mod):
    """Scalars by which the generators of G act on a 1-dimensional layer, else None."""
    if mod.dimension != 1:
        return None
    return [int(m[0, 0]) for m in mod.generator_matrices()]


def _layer(A, top, bottom):
    sub, emb = groups.subgroup(A.coeff, top)
    Aj = sub_ggroup(A, emb)
    back = {int(x): i for i, x in enumerate(emb.image)}
    layer, quo = quotient_ggroup(Aj, [back[x] for x in bottom])
    return layer, emb, quo


def _module_or_fail(layer):
    mod = detect_module(layer)
    if not isinstance(mod, ModuleStructure):
        raise VerificationError("layer is not elementary abelian: %s" % mod.reason)
    return mod


def layer_ggroup(f, i):
    """The G-group ``Q_i / Q_{i+1}`` (0-based i)."""
    return f.layers[i]


def _membership(M, powers):
    """``level[q]`` = largest i with q - I in J^i (J^0 = everything)."""
    p, n = M.p, M.n
    eye = np.eye(n, dtype=np.int64)
    level = []
    for q in M.Q.payloads:
        d = ((q - eye) % p).reshape(-1)
        k = 0
        while k < len(powers) and linalg_fp.in_span(d, powers[k].basis, powers[k].pivots, p):
            k += 1
        level.append(k)
    return level


def unipotent_filtration(M):
    """The radical filtration of ``M.Q``, compacted to a strict chain, with layer modules."""
    A = group_algebra_span(M.Q)
    J = radical(A, M.Q)
    powers = radical_powers(J)
    level = _membership(M, powers)
    chain, ends = [], []
    for i in range(1, len(powers) + 1):
        members = [q for q, lv in enumerate(level) if lv >= i]
        if chain and members == chain[-1]:
            ends[-1] = i
            continue
        chain.append(members)
        ends.append(i)
    if chain[-1] != [0]:
        raise VerificationError("the filtration does not reach the identity")
    f = CentralFiltration(M.action, chain, modules=[], radical_dims=[P.span_dim for P in powers], check=False)
    f.powers = powers
    f.levels = ends
    f.modules = [quotient_module_structure(f, i, M) for i in range(f.length)]
    f.verify()
    for i, layer in enumerate(f.layers):
        if _module_or_fail(layer).dimension != f.modules[i].dimension:
            raise VerificationError("algebraic and greedy module dimensions differ on layer %d" % (i + 1))
    return f


def quotient_module_structure(f, i, M):
    """Coordinates on layer i from ``q Q_{i+1} -> (q - I) mod J^{k+1}``.

    k is the last radical index at which the subgroup equals ``Q_i``.  The
    layer's image is a subspace of ``J^k / J^{k+1}``; it gets an rref basis
    and each coset its coordinates there.
    """
    p, n = M.p, M.n
    layer = f.layers[i]
    emb, quo = f.quotients[i]
    k = f.levels[i]
    lower = f.powers[k] if k < len(f.powers) else AlgebraBasis(p, n, [])
    eye = np.eye(n, dtype=np.int64)
    vecs = []
    for s in range(layer.coeff.order):
        q = M.Q.payloads[int(emb.image[quo.section[s]])]
        vecs.append(lower.reduce((q - eye) % p))
    vecs = np.array(vecs, dtype=np.int64)
    basis, pivots = linalg_fp.rref(vecs, p)
    coords = np.zeros((layer.coeff.order, len(pivots)), dtype=np.int64)
    for s, v in enumerate(vecs):
        c = linalg_fp.coordinates(v, basis, pivots, p)
        if c is None:
            raise VerificationError("layer vector outside its own span")
        coords[s] = c
    where = {tuple(c): s for s, c in enumerate(coords.tolist())}
    if len(where) != layer.coeff.order:
        raise VerificationError("layer identification is not injective")
    d = len(pivots)
    elems = [where[tuple(int(j == t) for j in range(d))] for t in range(d)]
    mats = np.zeros((layer.acting.order, d, d), dtype=np.int64)
    for g in range(layer.acting.order):
        for t, b in enumerate(elems):
            mats[g, t] = coords[layer.table[b, g]]
    Qg = layer.coeff
    for x in range(Qg.order):
        for y in range(Qg.order):
            if not np.array_equal(coords[Qg.mul(x, y)], (coords[x] + coords[y]) % p):
                raise VerificationError("layer identification is not additive")
    mod = ModuleStructure(layer, p, elems, coords, mats)
    mod.verify()
    return mod


# -- refinement ------------------------------------------------------------


def spin(v, mats, p):
    """The smallest subspace containing v and stable under the matrices (rref rows, pivots)."""
    basis, pivots = linalg_fp.rref(np.atleast_2d(v), p)
    queue = list(basis)
    while queue:
        w = queue.pop()
        for m in mats:
            u = (w @ m) % p
            if not linalg_fp.in_span(u, basis, pivots, p):
                basis, pivots = linalg_fp.rref(np.vstack([basis, u]), p)
                queue.append(u)
    return basis, pivots


def _vectors(d, p):
    if p ** d > settings.z1_budget:
        raise BudgetExceeded("spinning all of F_%d^%d is over budget" % (p, d))
    for t in itertools.product(range(p), repeat=d):
        if any(t):
            yield np.array(t, dtype=np.int64)


def minimal_submodule(mats, d, p):
    """The first minimal-dimension cyclic submodule in lexicographic vector order (irreducible)."""
    best = None
    for v in _vectors(d, p):
        b, piv = spin(v, mats, p)
        if best is None or len(piv) < len(best[1]):
            best = (b, piv)
            if len(piv) == 1:
                break
    return best


def is_irreducible(mats, d, p):
    """No proper nonzero submodule: every nonzero vector spins to the whole space."""
    if d == 0:
        return False
    return all(len(spin(v, mats, p)[1]) == d for v in _vectors(d, p))


def composition_series(mats, d, p):
    """Subspaces ``0 = V_0 < V_1 < ... < V_k = F_p^d`` (rref row arrays), irreducible steps."""
    mats = [np.asarray(m, dtype=np.int64) % p for m in mats]
    series = [np.zeros((0, d), dtype=np.int64)]
    cur = series[0]
    # work in the quotient V / cur, with coordinates on a complement of cur's pivots
    while cur.shape[0] < d:
        piv = linalg_fp.rref(cur, p)[1] if cur.shape[0] else []
        free = [c for c in range(d) if c not in piv]
        lift = np.eye(d, dtype=np.int64)[free]

        def project(w, cur=cur, piv=piv):
            r = linalg_fp.reduce_vector(w, cur, piv, p) if len(piv) else w % p
            return r[free]

        qmats = [np.array([project((row @ m) % p) for row in lift], dtype=np.int64) for m in mats]
        b, _ = minimal_submodule(qmats, len(free), p)
        up = (b @ lift) % p
        cur = linalg_fp.rref(np.vstack([cur, up]), p)[0]
        series.append(cur)
    return series


def refine_to_irreducibles(f, M=None):
    """Refine every layer of a filtration into irreducible G-module steps."""
    A = f.ggroup
    Q = A.coeff
    chain = [f.chain[0]]
    for i, mod in enumerate(f.modules):
        layer = f.layers[i]
        emb, quo = f.quotients[i]
        p, d = mod.prime, mod.dimension
        mats = [mod.matrices[g] for g in layer.acting.generators]
        series = composition_series(mats, d, p)
        lower = set(f.chain[i + 1])
        # from the top of the layer down: V_k = V, ..., V_1; V_0 gives Q_{i+1}
        for V in reversed(series[1:-1]):
            piv = linalg_fp.rref(V, p)[1]
            keep = set()
            for x in range(layer.coeff.order):
                if linalg_fp.in_span(mod.coords[x], V, piv, p):
                    base = int(emb.image[quo.section[x]])
                    keep.update(Q.mul(base, r) for r in lower)
            chain.append(sorted(keep))
        chain.append(f.chain[i + 1])
    out = CentralFiltration(A, chain, radical_dims=f.radical_dims)
    for i, mod in enumerate(out.modules):
        mats = [mod.matrices[g] for g in out.layers[i].acting.generators]
        if not is_irreducible(mats, mod.dimension, mod.prime):
            raise VerificationError("refined layer %d is reducible" % (i + 1))
    return out
