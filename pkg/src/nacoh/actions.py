"""G-groups: a group Q with a right action of G by automorphisms, written q^g.

The action is stored as a table ``table[q, g] = q^g``.  Conjugation inside an
ambient group is ``q^g = g^-1 q g``.
"""

from __future__ import annotations

import numpy as np

from . import groups, linalg_fp
from .config import settings
from .errors import BudgetExceeded, InvalidInput, NotEquivariant, VerificationError
from .groups import FiniteGroup, GroupHom


class GGroup:
    def __init__(self, acting, coeff, table, check=True):
        table = np.array(table, dtype=np.int64)
        if table.shape != (coeff.order, acting.order):
            raise InvalidInput("action table must have shape (|Q|, |G|) = (%d, %d)" % (coeff.order, acting.order))
        table.setflags(write=False)
        self.acting = acting
        self.coeff = coeff
        self.table = table
        self._cache = {}
        if check:
            self.verify()

    def __repr__(self):
        return "<GGroup G=%d Q=%d>" % (self.acting.order, self.coeff.order)

    def act(self, q, g):
        return int(self.table[q, g])

    @property
    def is_trivial(self):
        return bool((self.table == np.arange(self.coeff.order)[:, None]).all())

    def verify(self):
        """Identity, right-action and automorphism laws.

        Brute force over all triples when small; otherwise the laws are checked
        for the generators of G only, which implies them for all elements.
        """
        G, Q, t = self.acting, self.coeff, self.table
        nq, ng = Q.order, G.order
        if t.min() < 0 or t.max() >= nq:
            raise VerificationError("action table entry out of range")
        if not np.array_equal(t[:, 0], np.arange(nq)):
            raise VerificationError("identity of G does not act trivially")
        small = ng * nq * nq <= settings.action_full_check and nq * ng * ng <= settings.action_full_check
        hs = range(ng) if small else G.generators
        for h in hs:
            # (q^g)^h == q^(gh) for every q, g
            bad = np.argwhere(t[t, h] != t[:, G.cayley[:, h]])
            if len(bad):
                q, g = bad[0]
                raise VerificationError("not a right action: q=%d g=%d h=%d" % (q, g, h))
        for g in hs:
            col = t[:, g]
            bad = np.argwhere(col[Q.cayley] != Q.cayley[col[:, None], col[None, :]])
            if len(bad):
                a, b = bad[0]
                raise VerificationError("g=%d does not act by a homomorphism at (%d, %d)" % (g, a, b))
            if len(np.unique(col)) != nq:
                raise VerificationError("g=%d does not act bijectively" % g)
        return True


def trivial_action(G, Q):
    return GGroup(G, Q, np.repeat(np.arange(Q.order)[:, None], G.order, axis=1), check=False)


def _as_automorphism(Q, aut):
    if isinstance(aut, GroupHom):
        if aut.source is not Q or aut.target is not Q:
            raise InvalidInput("automorphism must map Q to Q")
        img = aut.image
    else:
        img = np.array(aut, dtype=np.int64)
    if img.shape != (Q.order,):
        raise InvalidInput("automorphism image list must have length |Q| = %d" % Q.order)
    if sorted(img.tolist()) != list(range(Q.order)):
        raise InvalidInput("supplied map is not a bijection of Q")
    bad = np.argwhere(img[Q.cayley] != Q.cayley[img[:, None], img[None, :]])
    if len(bad):
        a, b = bad[0]
        raise InvalidInput("supplied map is not a homomorphism at (%d, %d)" % (a, b))
    return img


def action_from_automorphism_images(G, Q, auts):
    """Extend one automorphism of Q per generator of G to a right action."""
    if len(auts) != len(G.generators):
        raise InvalidInput("need one automorphism per generator of G")
    imgs = [_as_automorphism(Q, a) for a in auts]
    nq = Q.order
    t = np.zeros((nq, G.order), dtype=np.int64)
    t[:, 0] = np.arange(nq)
    for y, parent, slot in G.spanning_tree:
        t[:, y] = imgs[slot][t[:, parent]]
    for slot, g in enumerate(G.generators):
        bad = np.argwhere(t[:, G.cayley[:, g]] != imgs[slot][t])
        if len(bad):
            q, x = bad[0]
            raise InvalidInput("automorphism images violate a relation of G (q=%d, x=%d, generator %d)"
                               % (q, x, g))
    return GGroup(G, Q, t)


def _members(ambient, sub):
    if isinstance(sub, tuple):
        sub = sub[1]
    if not isinstance(sub, GroupHom) or sub.target is not ambient:
        raise InvalidInput("expected an embedding into the ambient group")
    return sub


def action_by_conjugation(ambient, G_sub, Q_sub):
    """``q^g = g^-1 q g`` for subgroups G_sub, Q_sub of ambient (given as embeddings)."""
    ge, qe = _members(ambient, G_sub), _members(ambient, Q_sub)
    G, Q = ge.source, qe.source
    back = np.full(ambient.order, -1, dtype=np.int64)
    back[qe.image] = np.arange(Q.order)
    gi = ge.image
    conj = ambient.cayley[ambient.inverse[gi][None, :], ambient.cayley[qe.image[:, None], gi[None, :]]]
    t = back[conj]
    bad = np.argwhere(t < 0)
    if len(bad):
        q, g = bad[0]
        raise NotEquivariant("G_sub does not normalize Q_sub: q=%d, g=%d" % (q, g), witness=(int(q), int(g)))
    return GGroup(G, Q, t)


def action_by_payload_conjugation(G, Q):
    """Conjugation action between two concrete groups of the same domain."""
    if G.domain != Q.domain or G.domain == "table":
        raise InvalidInput("conjugation needs two permutation or two matrix groups")
    if G.degree != Q.degree or G.p != Q.p:
        raise InvalidInput("degree/dimension or field mismatch")
    t = np.zeros((Q.order, G.order), dtype=np.int64)
    for gi, g in enumerate(G.payloads):
        if G.domain == "matrix":
            ginv = linalg_fp.inverse(g, G.p)
            conj = [(ginv @ q @ g) % G.p for q in Q.payloads]
        else:
            ginv = [0] * len(g)
            for i, j in enumerate(g):
                ginv[j] = i
            conj = [tuple(g[q[ginv[i]]] for i in range(len(g))) for q in Q.payloads]
        for qi, c in enumerate(conj):
            try:
                t[qi, gi] = Q.index_of(c)
            except InvalidInput:
                raise NotEquivariant("G does not normalize Q: q=%d, g=%d" % (qi, gi), witness=(qi, gi)) from None
    return GGroup(G, Q, t)


def fixed_points(A):
    """``H^0(G, Q) = Q^G`` as a subgroup with its embedding."""
    fixed = [q for q in range(A.coeff.order) if (A.table[q] == q).all()]
    h, emb = groups.subgroup(A.coeff, fixed)
    if h.order != len(fixed):
        raise VerificationError("fixed points are not closed under multiplication")
    return h, emb


def fixed_elements(A):
    return [q for q in range(A.coeff.order) if (A.table[q] == q).all()]


class SemidirectProduct:
    def __init__(self, group, g_embedding, q_embedding, projection, ggroup):
        self.group = group
        self.g_embedding = g_embedding
        self.q_embedding = q_embedding
        self.projection = projection
        self.ggroup = ggroup

    def __iter__(self):
        return iter((self.group, self.g_embedding, self.q_embedding, self.projection))

    def pair(self, x):
        nq = self.ggroup.coeff.order
        return divmod(int(x), nq)

    def element(self, g, q):
        return int(g) * self.ggroup.coeff.order + int(q)


def semidirect_product(A):
    """``G |x Q`` on pairs (g, q) with ``(g1, q1)(g2, q2) = (g1 g2, q1^g2 q2)``.

    Element (g, q) has index ``g * |Q| + q``.
    """
    G, Q, t = A.acting, A.coeff, A.table
    ng, nq = G.order, Q.order
    n = ng * nq
    if n > settings.order_cap:
        raise BudgetExceeded("semidirect product of order %d exceeds the order cap" % n)
    g = np.arange(n) // nq
    q = np.arange(n) % nq
    table = G.cayley[g[:, None], g[None, :]] * nq + Q.cayley[t[q[:, None], g[None, :]], q[None, :]]
    gens = [x * nq for x in G.generators] + list(Q.generators)
    group = FiniteGroup(table, gens, domain="table", payloads=list(zip(g.tolist(), q.tolist())))
    ge = GroupHom(G, group, np.arange(ng) * nq)
    qe = GroupHom(Q, group, np.arange(nq))
    proj = GroupHom(group, G, g)
    return SemidirectProduct(group, ge, qe, proj, A)


def restrict_action(A, rho):
    """Action of B on Q through ``rho: B -> G``: ``q^b = q^rho(b)``."""
    if rho.target is not A.acting:
        raise InvalidInput("rho must target the acting group")
    return GGroup(rho.source, A.coeff, A.table[:, rho.image], check=False)


def sub_ggroup(A, emb):
    """Restrict A to a G-stable subgroup of Q given by its embedding."""
    if isinstance(emb, tuple):
        emb = emb[1]
    H = emb.source
    back = np.full(A.coeff.order, -1, dtype=np.int64)
    back[emb.image] = np.arange(H.order)
    t = back[A.table[emb.image]]
    if (t < 0).any():
        h, g = np.argwhere(t < 0)[0]
        raise NotEquivariant("subgroup is not G-stable (h=%d, g=%d)" % (h, g), witness=(int(h), int(g)))
    return GGroup(A.acting, H, t, check=False)


def quotient_ggroup(A, n):
    """Induced action on Q/N for a normal G-stable N.  Returns ``(GGroup, Quotient)``."""
    quo = groups.quotient(A.coeff, n)
    proj = quo.projection.image
    sec = np.array(quo.section, dtype=np.int64)
    t = proj[A.table[sec]]
    # well defined: pi(q^g) = pi(q)^g for every q
    bad = np.argwhere(proj[A.table] != t[proj])
    if len(bad):
        q, g = bad[0]
        raise NotEquivariant("N is not G-stable (q=%d, g=%d)" % (q, g), witness=(int(q), int(g)))
    return GGroup(A.acting, quo.group, t, check=False), quo


def is_equivariant(A, B, f):
    """``f(q^g) == f(q)^g`` for a hom f between the coefficient groups of A and B."""
    return equivariance_witness(A, B, f) is None


def equivariance_witness(A, B, f):
    im = f.image
    bad = np.argwhere(im[A.table] != B.table[im[:, None], np.arange(A.acting.order)[None, :]])
    if len(bad):
        return tuple(int(x) for x in bad[0])
    return None


def is_stable(A, elems):
    inside = np.zeros(A.coeff.order, dtype=bool)
    inside[list(elems)] = True
    return bool(inside[A.table[list(elems)]].all())


# -- module detection ----------------------------------------------------


class NotAModule:
    def __init__(self, reason):
        self.reason = reason

    def __bool__(self):
        return False

    def __repr__(self):
        return "NotAModule(%r)" % self.reason


class ModuleStructure:
    """Q elementary abelian of order p^d with G acting linearly.

    Coordinates are row vectors; ``coords[q^g] = coords[q] @ matrices[g]``.
    """

    def __init__(self, ggroup, prime, basis, coords, matrices):
        self.ggroup = ggroup
        self.prime = prime
        self.basis = list(basis)
        self.dimension = len(basis)
        self.coords = coords
        self.matrices = matrices
        self._element = {tuple(c): q for q, c in enumerate(coords.tolist())}

    def __repr__(self):
        return "<ModuleStructure p=%d dim=%d>" % (self.prime, self.dimension)

    def element(self, vec):
        return self._element[tuple(int(v) % self.prime for v in vec)]

    def generator_matrices(self):
        return [self.matrices[g] for g in self.ggroup.acting.generators]

    def verify(self):
        p, c, t, m = self.prime, self.coords, self.ggroup.table, self.matrices
        G = self.ggroup.acting
        for g in range(G.order):
            if not np.array_equal(c[t[:, g]], (c @ m[g]) % p):
                raise VerificationError("matrix of g=%d does not reproduce the action" % g)
        for g in range(G.order):
            for h in G.generators:
                if not np.array_equal(m[G.mul(g, h)], (m[g] @ m[h]) % p):
                    raise VerificationError("M(gh) != M(g) M(h)")
        return True


def detect_module(A, prime=None):
    """Module structure on an elementary abelian Q, or a NotAModule reason."""
    Q = A.coeff
    if not Q.is_abelian:
        return NotAModule("Q is not abelian")
    exp = Q.exponent
    if exp == 1:
        p = prime or 2
    else:
        factors = groups._prime_factors(exp)
        if len(factors) != 1 or factors[0] != exp:
            return NotAModule("Q has exponent %d, not a prime" % exp)
        p = exp
        if prime is not None and prime != p:
            return NotAModule("Q has exponent %d, not %d" % (exp, prime))
    # greedy basis: lowest index outside the span so far
    coords = {0: ()}
    basis = []
    mul = Q._mul
    for x in range(Q.order):
        if x in coords:
            continue
        basis.append(x)
        new = {}
        for s, c in coords.items():
            y = s
            for k in range(p):
                new[y] = c + (k,)
                y = mul[y][x]
        coords = new
    d = len(basis)
    ctab = np.zeros((Q.order, d), dtype=np.int64)
    for q, c in coords.items():
        ctab[q] = c
    mats = np.zeros((A.acting.order, d, d), dtype=np.int64)
    for g in range(A.acting.order):
        for i, b in enumerate(basis):
            mats[g, i] = ctab[A.table[b, g]]
    mod = ModuleStructure(A, p, basis, ctab, mats)
    mod.verify()
    return mod
