"""1- and 2-cocycles, H^1 as a pointed set, H^2 for abelian coefficients, twisting.

Conventions (right actions throughout):

* 1-cocycle:  gamma(gh) = gamma(g)^h gamma(h)
* coboundary: delta ~ gamma  iff  delta(g) = (q^g)^-1 gamma(g) q  for some q in Q
* 2-cocycle:  c(gh, k) c(g, h)^k = c(g, hk) c(h, k)
* 2-coboundary shift: c'(g, h) = c(g, h) phi(g)^h phi(h) phi(gh)^-1
* twist:      q * g = gamma(g)^-1 q^g gamma(g)
"""

from __future__ import annotations

import itertools

import numpy as np

from . import smith
from .actions import GGroup, restrict_action
from .config import settings
from .errors import BudgetExceeded, InvalidInput, NotEquivariant, VerificationError


def _cocycle_violation(A, values):
    """First pair (g, h) breaking gamma(gh) = gamma(g)^h gamma(h), or None."""
    G, Q, t = A.acting, A.coeff, A.table
    v = np.asarray(values, dtype=np.int64)
    lhs = v[G.cayley]
    rhs = Q.cayley[t[v[:, None], np.arange(G.order)[None, :]], v[None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        return tuple(int(x) for x in bad[0])
    return None


class OneCocycle:
    """A map G -> Q satisfying the cocycle condition in the G-group ``context``."""

    __slots__ = ("context", "values")

    def __init__(self, context, values, check=True):
        self.context = context
        self.values = tuple(int(v) for v in values)
        if len(self.values) != context.acting.order:
            raise InvalidInput("cocycle needs one value per element of G")
        if check:
            self.verify()

    def __call__(self, g):
        return self.values[g]

    def __eq__(self, other):
        return isinstance(other, OneCocycle) and other.values == self.values and other.context is self.context

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return "OneCocycle(%s)" % (list(self.values),)

    def verify(self):
        if self.values[0] != 0:
            raise VerificationError("gamma(1) != 1")
        bad = _cocycle_violation(self.context, self.values)
        if bad is not None:
            raise VerificationError("cocycle condition fails at (g, h) = %s" % (bad,))
        return True

    @property
    def is_trivial(self):
        return not any(self.values)

    def array(self):
        return np.array(self.values, dtype=np.int64)


def trivial_cocycle(A):
    return OneCocycle(A, [0] * A.acting.order, check=False)


def z1_enumerate(A, budget=None):
    """All 1-cocycles, sorted by value table.

    Values on the generators of G are chosen freely, propagated along the BFS
    spanning tree by gamma(xs) = gamma(x)^s gamma(s), and every Cayley edge is
    then validated.
    """
    G, Q, t = A.acting, A.coeff, A.table
    gens = G.generators
    k = len(gens)
    nq, ng = Q.order, G.order
    budget = settings.z1_budget if budget is None else budget
    total = nq ** k
    if total > budget:
        raise BudgetExceeded(
            "Z^1 enumeration needs %d candidate assignments (> %d); use fewer generators for G" % (total, budget))
    tree = G.spanning_tree
    qmul = Q.cayley
    found = []
    batch = max(1, min(total, 1 << 16))
    for start in range(0, total, batch):
        idx = np.arange(start, min(total, start + batch), dtype=np.int64)
        assign = np.zeros((len(idx), k), dtype=np.int64)
        rest = idx.copy()
        for s in range(k - 1, -1, -1):
            assign[:, s] = rest % nq
            rest //= nq
        vals = np.zeros((len(idx), ng), dtype=np.int64)
        for y, parent, slot in tree:
            vals[:, y] = qmul[t[vals[:, parent], gens[slot]], assign[:, slot]]
        ok = np.ones(len(idx), dtype=bool)
        for slot, g in enumerate(gens):
            lhs = vals[:, G.cayley[:, g]]
            rhs = qmul[t[vals, g], assign[:, slot][:, None]]
            ok &= (lhs == rhs).all(axis=1)
        found.extend(map(tuple, vals[ok].tolist()))
    found = sorted(set(found))
    return [OneCocycle(A, v, check=False) for v in found]


def coboundary_orbit(gamma):
    """Rows indexed by q in Q: the cocycle g -> (q^g)^-1 gamma(g) q."""
    A = gamma.context
    Q, t = A.coeff, A.table
    v = gamma.array()
    qs = np.arange(Q.order)
    right = Q.cayley[v[None, :], qs[:, None]]
    return Q.cayley[Q.inverse[t], right]


def cohomologous(gamma, delta):
    """Some q with delta(g) = (q^g)^-1 gamma(g) q for all g, or None."""
    if gamma.context is not delta.context:
        raise InvalidInput("cocycles live in different contexts")
    orbit = coboundary_orbit(gamma)
    hit = np.nonzero((orbit == np.array(delta.values)).all(axis=1))[0]
    if len(hit):
        return int(hit[0])
    return None


def cocycle_product(gamma, delta, context):
    """``g -> gamma(g) delta(g)`` as a cocycle in ``context``."""
    Q = context.coeff
    return OneCocycle(context, [Q.mul(a, b) for a, b in zip(gamma.values, delta.values)])


class H1Set:
    """H^1(G, Q) as a partition of Z^1 into coboundary orbits.

    ``witness[i]`` is a q carrying the representative of cocycle i's class to
    cocycle i.  The class of the trivial cocycle is ``distinguished`` (always 0).
    """

    def __init__(self, context, cocycles, class_of, witness):
        self.context = context
        self.cocycles = cocycles
        self.class_of = class_of
        self.witness = witness
        self._lookup = {c.values: i for i, c in enumerate(cocycles)}
        classes = {}
        for i, c in enumerate(class_of):
            classes.setdefault(c, []).append(i)
        self.classes = [classes[c] for c in range(len(classes))]
        self.distinguished = class_of[self._lookup[(0,) * context.acting.order]]

    def __len__(self):
        return len(self.classes)

    def __repr__(self):
        return "<H1Set |Z1|=%d classes=%s>" % (len(self.cocycles), self.class_sizes)

    @property
    def class_sizes(self):
        return [len(c) for c in self.classes]

    def representative(self, c):
        return self.cocycles[self.classes[c][0]]

    def class_index(self, cocycle):
        values = cocycle.values if isinstance(cocycle, OneCocycle) else tuple(int(v) for v in cocycle)
        try:
            return self.class_of[self._lookup[values]]
        except KeyError:
            raise InvalidInput("not a cocycle of this context: %r" % (values,)) from None

    def members(self, c):
        return [self.cocycles[i] for i in self.classes[c]]

    def verify(self):
        for i, c in enumerate(self.class_of):
            rep = self.representative(c)
            q = self.witness[i]
            if tuple(coboundary_orbit(rep)[q].tolist()) != self.cocycles[i].values:
                raise VerificationError("bad witness for cocycle %d" % i)
        reps = [self.representative(c) for c in range(len(self))]
        for a, b in itertools.combinations(reps, 2):
            if cohomologous(a, b) is not None:
                raise VerificationError("two classes are cohomologous")
        return True

    def to_json(self):
        return {
            "z1_size": len(self.cocycles),
            "h1_classes": len(self.classes),
            "class_sizes": self.class_sizes,
            "distinguished_class": self.distinguished,
            "representatives": [list(self.representative(c).values) for c in range(len(self))],
        }


def h1(A):
    """H^1(G, Q); cached on the G-group."""
    cached = A._cache.get("h1")
    if cached is not None:
        return cached
    cocycles = z1_enumerate(A)
    lookup = {c.values: i for i, c in enumerate(cocycles)}
    class_of = [-1] * len(cocycles)
    witness = [0] * len(cocycles)
    n = 0
    for i, c in enumerate(cocycles):
        if class_of[i] >= 0:
            continue
        orbit = coboundary_orbit(c).tolist()
        for q, row in enumerate(orbit):
            j = lookup.get(tuple(row))
            if j is None:
                raise VerificationError("coboundary orbit leaves Z^1")
            if class_of[j] < 0:
                class_of[j] = n
                witness[j] = q
        n += 1
    result = H1Set(A, cocycles, class_of, witness)
    A._cache["h1"] = result
    return result


# -- twisting --------------------------------------------------------------


def twist(A, gamma):
    """The G-group Q_gamma with action q * g = gamma(g)^-1 q^g gamma(g)."""
    if gamma.context is not A:
        raise InvalidInput("cocycle belongs to a different G-group")
    Q, t = A.coeff, A.table
    v = gamma.array()
    inv_v = Q.inverse[v]
    new = Q.cayley[Q.cayley[inv_v[None, :], t], v[None, :]]
    out = GGroup(A.acting, Q, new, check=False)
    out.verify()
    return out


class ClassMap:
    """A map of pointed sets between class indices, with its table."""

    def __init__(self, table, source_size, target_size):
        self.table = list(table)
        self.source_size = source_size
        self.target_size = target_size

    def __call__(self, c):
        return self.table[c]

    def is_injective(self):
        return len(set(self.table)) == len(self.table)

    def is_surjective(self):
        return len(set(self.table)) == self.target_size

    def is_bijective(self):
        return self.is_injective() and self.is_surjective()


def class_map(source, target, func):
    """Induce a class-level map from a cocycle-level ``func``; checked on every member."""
    table = []
    for c in range(len(source)):
        images = {target.class_index(func(m)) for m in source.members(c)}
        if len(images) != 1:
            raise VerificationError("cocycle map is not well defined on classes")
        table.append(images.pop())
    return ClassMap(table, len(source), len(target))


def theta_gamma(h1_twisted, gamma, h1_base=None):
    """The bijection H^1(G, Q_gamma) -> H^1(G, Q), [delta] -> [g -> gamma(g) delta(g)]."""
    A = gamma.context
    base = h1_base or h1(A)
    if base.context is not A or h1_twisted.context.coeff is not A.coeff or h1_twisted.context.acting is not A.acting:
        raise InvalidInput("context mismatch for theta_gamma")
    Q = A.coeff
    gv = gamma.values
    m = class_map(h1_twisted, base,
                  lambda d: tuple(Q.mul(a, b) for a, b in zip(gv, d.values)))
    if not m.is_bijective():
        raise VerificationError("theta_gamma is not a bijection")
    if m(h1_twisted.distinguished) != base.class_index(gamma):
        raise VerificationError("theta_gamma does not send the trivial class to [gamma]")
    return m


# -- restriction and pushforward ------------------------------------------


def restrict_cocycle(gamma, rho, context=None):
    """``gamma o rho`` as a cocycle of the restricted G-group over ``rho.source``."""
    A = gamma.context
    if rho.target is not A.acting:
        raise InvalidInput("rho must target the acting group of the cocycle")
    B = context if context is not None else restrict_action(A, rho)
    v = np.array(gamma.values, dtype=np.int64)[rho.image]
    return OneCocycle(B, v.tolist(), check=False)


def pushforward_cocycle(gamma, eta, target):
    """``eta o gamma`` for a G-equivariant hom eta: Q -> Q' (target is the G-group on Q')."""
    A = gamma.context
    if eta.source is not A.coeff or eta.target is not target.coeff:
        raise InvalidInput("eta does not match the coefficient groups")
    if target.acting is not A.acting:
        raise InvalidInput("pushforward needs a common acting group")
    im = eta.image
    bad = np.argwhere(im[A.table] != target.table[im])
    if len(bad):
        q, g = bad[0]
        raise NotEquivariant("eta is not G-equivariant at q=%d, g=%d" % (q, g), witness=(int(q), int(g)))
    return OneCocycle(target, im[np.array(gamma.values)].tolist(), check=False)


# -- abelian coefficients: coordinates and H^2 -----------------------------


class AbelianCoordinates:
    """An explicit isomorphism R -> Z/s_1 + ... + Z/s_r with s_1 | s_2 | ...

    Obtained from the Smith normal form of the Cayley-graph relation matrix of
    R's generators.  ``action[g]`` is an integer r x r matrix with
    ``coords[x^g] = coords[x] @ action[g]`` (mod the moduli).
    """

    def __init__(self, A):
        R = A.coeff
        if not R.is_abelian:
            raise InvalidInput("coefficients must be abelian")
        k = len(R.generators)
        words = np.zeros((R.order, k), dtype=np.int64)
        for y, parent, slot in R.spanning_tree:
            words[y] = words[parent]
            words[y, slot] += 1
        rels = []
        for x in range(R.order):
            for slot, g in enumerate(R.generators):
                r = words[x].copy()
                r[slot] += 1
                r -= words[R.mul(x, g)]
                if r.any():
                    rels.append(r.tolist())
        if k == 0:
            moduli, coords = [], np.zeros((R.order, 0), dtype=np.int64)
        else:
            if not rels:
                raise VerificationError("abelian group without relations is infinite")
            _, d, v = smith.smith_normal_form(rels)
            diag = smith.diagonal(d) + [0] * (k - min(len(d), k))
            if any(s == 0 for s in diag):
                raise VerificationError("relation lattice is not of full rank")
            full = (words.astype(object) @ np.array(v, dtype=object))
            keep = [i for i, s in enumerate(diag) if s != 1]
            moduli = [int(diag[i]) for i in keep]
            coords = np.array([[int(full[x, i]) % diag[i] for i in keep] for x in range(R.order)],
                              dtype=np.int64).reshape(R.order, len(keep))
        self.ggroup = A
        self.moduli = moduli
        self.rank = len(moduli)
        self.coords = coords
        self.exponent = int(np.lcm.reduce(np.array(moduli, dtype=np.int64))) if moduli else 1
        self._element = {tuple(c): x for x, c in enumerate(coords.tolist())}
        if len(self._element) != R.order:
            raise VerificationError("coordinates are not injective")
        self.basis = [self.element([int(i == j) for j in range(self.rank)]) for i in range(self.rank)]
        G = A.acting
        self.action = np.zeros((G.order, self.rank, self.rank), dtype=np.int64)
        for g in range(G.order):
            for i, b in enumerate(self.basis):
                self.action[g, i] = coords[A.table[b, g]]
        s = np.array(moduli, dtype=np.int64)
        for g in range(G.order):
            if self.rank and not np.array_equal(coords[A.table[:, g]], (coords @ self.action[g]) % s):
                raise VerificationError("action is not linear in the coordinates")

    def element(self, vec):
        return self._element[tuple(int(v) % s for v, s in zip(vec, self.moduli))]


class TwoCocycle:
    """A map G x G -> R (abelian) satisfying c(gh,k) c(g,h)^k = c(g,hk) c(h,k)."""

    def __init__(self, context, values, check=True):
        self.context = context
        v = np.array(values, dtype=np.int64)
        n = context.acting.order
        if v.shape != (n, n):
            raise InvalidInput("2-cocycle table must be |G| x |G|")
        v.setflags(write=False)
        self.values = v
        if check:
            self.verify()

    def __repr__(self):
        return "TwoCocycle(%s)" % self.values.tolist()

    def verify(self):
        bad = two_cocycle_violation(self.context, self.values)
        if bad is not None:
            raise VerificationError("2-cocycle identity fails at (g, h, k) = %s" % (bad,))
        return True


def two_cocycle_violation(A, c):
    G, R, t = A.acting, A.coeff, A.table
    n = G.order
    c = np.asarray(c, dtype=np.int64)
    cg = G.cayley
    g, h, k = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    lhs = R.cayley[c[cg[g, h], k], t[c[g, h], k]]
    rhs = R.cayley[c[g, cg[h, k]], c[h, k]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        return tuple(int(x) for x in bad[0])
    return None


def coboundary2(A, phi):
    """``(g, h) -> phi(g)^h phi(h) phi(gh)^-1``."""
    G, R, t = A.acting, A.coeff, A.table
    phi = np.asarray(phi, dtype=np.int64)
    n = G.order
    g, h = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    return R.cayley[R.cayley[t[phi[g], h], phi[h]], R.inverse[phi[G.cayley]]]


class H2Group:
    """H^2(G, R) for an abelian G-group R, via normalized cochains.

    ``z2_order`` and ``b2_order`` count normalized cocycles and coboundaries;
    ``class_count`` is their quotient.  ``representatives`` lists one
    normalized 2-cocycle per class, the trivial class first.
    """

    def __init__(self, A):
        G = A.acting
        self.context = A
        self.coords = ac = AbelianCoordinates(A)
        n, r = G.order, ac.rank
        self.n, self.r = n, r
        self.m = ac.exponent
        N2 = (n - 1) * (n - 1) * r
        if N2 > settings.snf_max_dim:
            raise BudgetExceeded("2-cochain system with %d unknowns exceeds the cap" % N2)
        # Z^2 (normalized)
        ker = smith.ModularKernel(N2, self.m)
        for row, e in self._d2_rows():
            ker.add_equation(row, e)
        self._z2 = ker
        c2_order = 1
        for s in ac.moduli:
            c2_order *= s ** ((n - 1) * (n - 1))
        self.z2_order = c2_order // ker.index
        # Z^1 (normalized cochains are all of them up to phi(1) = 0)
        N1 = (n - 1) * r
        d1 = list(self._d1_rows())
        self._d1 = d1
        z1 = smith.kernel_mod([row for row, _ in d1], [e for _, e in d1], N1, self.m)
        c1_order = 1
        for s in ac.moduli:
            c1_order *= s ** (n - 1)
        self.z1_order = c1_order // z1.index
        self.b2_order = c1_order // self.z1_order
        if self.z2_order % self.b2_order:
            raise VerificationError("B^2 does not divide Z^2")
        self.class_count = self.z2_order // self.b2_order
        self.cocycle_basis = [self._table(col) for col in ker.basis.T] + [
            coboundary2(A, [b] * n) for b in ac.basis]
        self.coboundary_subgroup = []
        for g in range(1, n):
            for b in ac.basis:
                phi = [0] * n
                phi[g] = b
                self.coboundary_subgroup.append(coboundary2(A, phi))
        self._b2_set = self._enumerate_b2() if self.b2_order <= settings.b2_set_cap else None
        self._enumerate_classes()

    def __repr__(self):
        return "<H2Group |G|=%d classes=%d>" % (self.n, self.class_count)

    def _uidx(self, g, h):
        return ((g - 1) * (self.n - 1) + (h - 1)) * self.r

    def _d2_rows(self):
        n, r = self.n, self.r
        G = self.context.acting
        M = self.coords.action
        mod = self.coords.moduli
        N2 = (n - 1) * (n - 1) * r
        cg = G.cayley
        for g in range(1, n):
            for h in range(1, n):
                for k in range(1, n):
                    gh, hk = int(cg[g, h]), int(cg[h, k])
                    for j in range(r):
                        row = np.zeros(N2, dtype=np.int64)
                        if gh:
                            row[self._uidx(gh, k) + j] += 1
                        base = self._uidx(g, h)
                        row[base:base + r] += M[k][:, j]
                        if hk:
                            row[self._uidx(g, hk) + j] -= 1
                        row[self._uidx(h, k) + j] -= 1
                        yield row, mod[j]

    def _d1_rows(self):
        n, r = self.n, self.r
        G = self.context.acting
        M = self.coords.action
        mod = self.coords.moduli
        N1 = (n - 1) * r
        for g in range(1, n):
            for h in range(1, n):
                gh = G.mul(g, h)
                for j in range(r):
                    row = np.zeros(N1, dtype=np.int64)
                    row[(g - 1) * r:(g - 1) * r + r] += M[h][:, j]
                    row[(h - 1) * r + j] += 1
                    if gh:
                        row[(gh - 1) * r + j] -= 1
                    yield row, mod[j]

    def _table(self, vec):
        n, r = self.n, self.r
        out = np.zeros((n, n), dtype=np.int64)
        for g in range(1, n):
            for h in range(1, n):
                i = self._uidx(g, h)
                out[g, h] = self.coords.element(vec[i:i + r])
        return out

    def _vector(self, c):
        n, r = self.n, self.r
        out = np.zeros((n - 1) * (n - 1) * r, dtype=np.int64)
        for g in range(1, n):
            for h in range(1, n):
                i = self._uidx(g, h)
                out[i:i + r] = self.coords.coords[c[g, h]]
        return out

    def normalize(self, c):
        """Shift a 2-cocycle by the coboundary of the constant c(1,1) so c(1,.) = c(.,1) = 1."""
        A = self.context
        c = np.asarray(c, dtype=np.int64)
        shift = coboundary2(A, [int(c[0, 0])] * self.n)
        return A.coeff.cayley[c, A.coeff.inverse[shift]]

    def _enumerate_b2(self):
        # B^2 is small enough to hold: close up under the generating coboundaries
        R = self.context.coeff
        zero = np.zeros((self.n, self.n), dtype=np.int64)
        seen = {zero.tobytes()}
        frontier = [zero]
        while frontier:
            nxt = []
            for a in frontier:
                for z in self.coboundary_subgroup:
                    c = np.ascontiguousarray(R.cayley[a, z])
                    key = c.tobytes()
                    if key not in seen:
                        seen.add(key)
                        nxt.append(c)
            frontier = nxt
        if len(seen) != self.b2_order:
            raise VerificationError("B^2 closure has %d elements, expected %d" % (len(seen), self.b2_order))
        return seen

    def is_coboundary(self, c):
        c = self.normalize(c)
        if not c.any():
            return True
        if self._b2_set is not None:
            return np.ascontiguousarray(c, dtype=np.int64).tobytes() in self._b2_set
        vec = self._vector(c)
        rows = self._d1
        rhs = [vec[i] for i in range(len(vec))]
        x = smith.solve_mod([row for row, _ in rows], [e for _, e in rows], rhs, (self.n - 1) * self.r, self.m)
        return x is not None

    def _difference(self, a, b):
        R = self.context.coeff
        return R.cayley[np.asarray(a), R.inverse[np.asarray(b)]]

    def _enumerate_classes(self):
        reps = [np.zeros((self.n, self.n), dtype=np.int64)]
        gens = [self._table(col) for col in self._z2.basis.T]
        R = self.context.coeff
        frontier = list(reps)
        while frontier and len(reps) < self.class_count:
            nxt = []
            for a in frontier:
                for z in gens:
                    c = R.cayley[a, z]
                    if not any(self.is_coboundary(self._difference(c, rep)) for rep in reps):
                        reps.append(c)
                        nxt.append(c)
            frontier = nxt
        if len(reps) != self.class_count:
            raise VerificationError("class enumeration found %d of %d classes" % (len(reps), self.class_count))
        self.representatives = [TwoCocycle(self.context, rep, check=False) for rep in reps]

    def class_index(self, c):
        """Index of the class of a 2-cocycle (TwoCocycle or table) among ``representatives``."""
        if isinstance(c, TwoCocycle):
            c = c.values
        c = np.asarray(c, dtype=np.int64)
        bad = two_cocycle_violation(self.context, c)
        if bad is not None:
            raise VerificationError("not a 2-cocycle: fails at %s" % (bad,))
        for i, rep in enumerate(self.representatives):
            if self.is_coboundary(self._difference(c, rep.values)):
                return i
        raise VerificationError("2-cocycle matches no class representative")

    def __len__(self):
        return self.class_count

    def to_json(self):
        return {
            "class_count": self.class_count,
            "z2_order": self.z2_order,
            "b2_order": self.b2_order,
            "moduli": self.coords.moduli,
        }


def z2_h2(A):
    """H^2(G, R) for an abelian G-group R; cached on the G-group."""
    if not A.coeff.is_abelian:
        raise InvalidInput("H^2 is only defined for abelian coefficients")
    cached = A._cache.get("h2")
    if cached is None:
        cached = A._cache["h2"] = H2Group(A)
    return cached


def h2_brute_force(A, cap=None):
    """``|Z^2| / |B^2|`` by enumerating every map G x G -> R and G -> R (unnormalized)."""
    G, R = A.acting, A.coeff
    n, nr = G.order, R.order
    cap = settings.brute_h2_cap if cap is None else cap
    if nr ** (n * n) > cap:
        raise BudgetExceeded("brute-force H^2 needs %d^%d maps" % (nr, n * n))
    t = A.table
    cg = G.cayley
    g, h, k = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    gh_k = (cg[g, h] * n + k).ravel()
    g_h = (g * n + h).ravel()
    g_hk = (g * n + cg[h, k]).ravel()
    h_k = (h * n + k).ravel()
    kk = k.ravel()
    total = nr ** (n * n)
    z2 = 0
    batch = 1 << 15
    for start in range(0, total, batch):
        idx = np.arange(start, min(total, start + batch), dtype=np.int64)
        c = np.zeros((len(idx), n * n), dtype=np.int64)
        rest = idx.copy()
        for s in range(n * n - 1, -1, -1):
            c[:, s] = rest % nr
            rest //= nr
        lhs = R.cayley[c[:, gh_k], t[c[:, g_h], kk]]
        rhs = R.cayley[c[:, g_hk], c[:, h_k]]
        z2 += int((lhs == rhs).all(axis=1).sum())
    b2 = set()
    for phi in itertools.product(range(nr), repeat=n):
        b2.add(coboundary2(A, phi).tobytes())
    if z2 % len(b2):
        raise VerificationError("brute force: |B^2| does not divide |Z^2|")
    return z2 // len(b2)
