"""Fully enumerated finite groups.

Every group is stored as a Cayley table over element indices ``0..order-1``
with the identity at index 0.  Groups built from generators are numbered
breadth-first from the identity, multiplying on the right by the generators
in the order given, so identical inputs always give identical tables.

Permutations are 0-based image lists and compose left to right:
``(x*y)[i] = y[x[i]]``.  Matrices live over a prime field F_p and compose by
the ordinary matrix product.
"""

from __future__ import annotations

import functools
import itertools
from collections import deque

import numpy as np

from . import linalg_fp
from .config import settings
from .errors import BudgetExceeded, InvalidInput, NotNormal, RelationViolated, VerificationError

DOMAINS = ("permutation", "matrix", "table")


class FiniteGroup:
    """A finite group given by its Cayley table.

    Parameters
    ----------
    cayley : (n, n) integer array, ``cayley[x, y]`` is the index of ``x*y``.
    generators : element indices that generate the group.
    domain : one of ``DOMAINS``.
    payloads : optional per-element concrete representation.
    """

    def __init__(self, cayley, generators, domain="table", payloads=None, *,
                 p=None, degree=None, labels=None, check=True):
        if domain not in DOMAINS:
            raise InvalidInput("unknown domain %r" % (domain,))
        cayley = np.array(cayley, dtype=np.int64)
        n = cayley.shape[0]
        if cayley.shape != (n, n) or n == 0:
            raise InvalidInput("Cayley table must be a non-empty square array")
        cayley.setflags(write=False)
        self.cayley = cayley
        self.order = n
        self.generators = tuple(int(g) for g in generators)
        self.domain = domain
        self.payloads = payloads
        self.p = p
        self.degree = degree
        self.labels = labels
        self._mul = cayley.tolist()
        inverse = np.argmin(cayley, axis=1)
        inverse.setflags(write=False)
        self.inverse = inverse
        self._index = None
        if check:
            self.verify()

    # -- basic structure -------------------------------------------------

    def __len__(self):
        return self.order

    def __repr__(self):
        return "<FiniteGroup order=%d domain=%s gens=%s>" % (self.order, self.domain, list(self.generators))

    identity = 0

    def mul(self, x, y):
        return self._mul[x][y]

    def inv(self, x):
        return int(self.inverse[x])

    def conj(self, x, g):
        """``x^g = g^-1 x g``."""
        return self._mul[self._mul[int(self.inverse[g])][x]][g]

    def commutator(self, x, y):
        """``[x, y] = x^-1 y^-1 x y``."""
        m = self._mul
        return m[m[m[int(self.inverse[x])][int(self.inverse[y])]][x]][y]

    def power(self, x, k):
        r = 0
        for _ in range(k):
            r = self._mul[r][x]
        return r

    def element_order(self, x):
        k, y = 1, x
        while y != 0:
            y = self._mul[y][x]
            k += 1
        return k

    @functools.cached_property
    def element_orders(self):
        return tuple(self.element_order(x) for x in range(self.order))

    @functools.cached_property
    def exponent(self):
        return int(np.lcm.reduce(np.array(self.element_orders, dtype=np.int64)))

    @functools.cached_property
    def is_abelian(self):
        return bool(np.array_equal(self.cayley, self.cayley.T))

    def elements(self):
        return range(self.order)

    def index_of(self, payload):
        """Index of the element with the given payload (permutation or matrix)."""
        if self.payloads is None:
            raise InvalidInput("group has no element payloads")
        if self._index is None:
            self._index = {_key(self.domain, q): i for i, q in enumerate(self.payloads)}
        try:
            return self._index[_key(self.domain, _normalize_payload(self.domain, payload, self.p))]
        except KeyError:
            raise InvalidInput("element %r is not in the group" % (payload,)) from None

    def label(self, x):
        if self.labels is not None:
            return self.labels[x]
        return str(x)

    @functools.cached_property
    def spanning_tree(self):
        """Breadth-first spanning tree of the right Cayley graph.

        A list of ``(element, parent, slot)`` for every non-identity element
        in BFS order, with ``element = parent * generators[slot]``.
        """
        seen = [False] * self.order
        seen[0] = True
        tree = []
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for slot, g in enumerate(self.generators):
                y = self._mul[x][g]
                if not seen[y]:
                    seen[y] = True
                    tree.append((y, x, slot))
                    queue.append(y)
        if len(tree) != self.order - 1:
            raise VerificationError("generators do not generate the group")
        return tree

    # -- invariants ------------------------------------------------------

    def verify(self, rng=None):
        n, t = self.order, self.cayley
        ar = np.arange(n)
        if t.min() < 0 or t.max() >= n:
            raise VerificationError("Cayley table entry out of range")
        if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
            raise VerificationError("index 0 is not a two-sided identity")
        if not np.array_equal(t[ar, self.inverse], np.zeros(n, dtype=np.int64)):
            raise VerificationError("some element has no inverse")
        for row in t:
            if len(np.unique(row)) != n:
                raise VerificationError("Cayley table row is not a permutation")
        if n <= settings.assoc_full_check:
            for x in range(n):
                if not np.array_equal(t[t[x]], t[x][t]):
                    raise VerificationError("associativity fails at x=%d" % x)
        else:
            rng = rng or np.random.default_rng(settings.seed)
            trip = rng.integers(0, n, size=(10 * n * n, 3))
            a, b, c = trip[:, 0], trip[:, 1], trip[:, 2]
            if not np.array_equal(t[t[a, b], c], t[a, t[b, c]]):
                raise VerificationError("associativity fails on a sampled triple")
        for g in self.generators:
            if not 0 <= g < n:
                raise VerificationError("generator index out of range")
        self.spanning_tree  # raises when the generators fall short
        return True


def _normalize_payload(domain, payload, p):
    if domain == "permutation":
        return tuple(int(i) for i in payload)
    if domain == "matrix":
        return np.asarray(payload, dtype=np.int64) % p
    return int(payload)


def _key(domain, payload):
    if domain == "matrix":
        return np.ascontiguousarray(payload, dtype=np.int64).tobytes()
    if domain == "permutation":
        return tuple(payload)
    return payload


# -- construction --------------------------------------------------------


def _close(identity, gens, mul, key, cap):
    """Breadth-first closure.  Returns ``(payloads, right)`` where
    ``right[s][x]`` is the index of ``payloads[x] * gens[s]``."""
    payloads = [identity]
    index = {key(identity): 0}
    right = [[] for _ in gens]
    x = 0
    while x < len(payloads):
        cur = payloads[x]
        for s, g in enumerate(gens):
            y = mul(cur, g)
            k = key(y)
            j = index.get(k)
            if j is None:
                j = len(payloads)
                if j >= cap:
                    raise BudgetExceeded("closure exceeds the order cap of %d elements" % cap)
                index[k] = j
                payloads.append(y)
            right[s].append(j)
        x += 1
    return payloads, [np.array(r, dtype=np.int64) for r in right]


def _prune(gens, mul):
    """Drop generators already in the span of the earlier ones (keeps input order)."""
    kept, span = [], {0}
    for x in gens:
        if x in span:
            continue
        kept.append(x)
        frontier = list(span)
        while frontier:
            nxt = []
            for a in frontier:
                for b in kept:
                    c = mul(a, b)
                    if c not in span:
                        span.add(c)
                        nxt.append(c)
            frontier = nxt
    return kept


def _table_from_right(n, right, tree):
    cayley = np.empty((n, n), dtype=np.int64)
    cayley[:, 0] = np.arange(n)
    for y, parent, slot in tree:
        cayley[:, y] = right[slot][cayley[:, parent]]
    return cayley


def _bfs_tree(n, right):
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    tree = []
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for s, r in enumerate(right):
            y = int(r[x])
            if not seen[y]:
                seen[y] = True
                tree.append((y, x, s))
                queue.append(y)
    return tree


def _build(identity, gens, mul, key, cap, **kw):
    payloads, right = _close(identity, gens, mul, key, cap)
    n = len(payloads)
    tree = _bfs_tree(n, right)
    cayley = _table_from_right(n, right, tree)
    gen_idx = [int(r[0]) for r in right]
    return FiniteGroup(cayley, gen_idx, payloads=payloads, **kw)


def closure_from_generators(domain, generator_payloads, *, p=None, degree=None, cap=None, labels=None):
    """The group generated by concrete generators.

    ``degree`` is the permutation degree or the matrix dimension; it is only
    required when the generator list is empty.
    """
    cap = settings.order_cap if cap is None else cap
    gens = list(generator_payloads)
    if domain == "permutation":
        perms = [tuple(int(i) for i in g) for g in gens]
        if degree is None:
            if not perms:
                raise InvalidInput("degree required for an empty permutation generator list")
            degree = len(perms[0])
        for g in perms:
            if len(g) != degree:
                raise InvalidInput("permutation degree mismatch: expected %d, got %d" % (degree, len(g)))
            if sorted(g) != list(range(degree)):
                raise InvalidInput("not a permutation of 0..%d: %r" % (degree - 1, g))
        ident = tuple(range(degree))
        return _build(ident, perms, lambda x, y: tuple(y[i] for i in x), lambda x: x, cap,
                      domain="permutation", degree=degree, labels=labels)
    if domain == "matrix":
        if p is None or p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise InvalidInput("matrix groups need a prime p, got %r" % (p,))
        mats = [np.asarray(g, dtype=np.int64) for g in gens]
        if degree is None:
            if not mats:
                raise InvalidInput("dimension required for an empty matrix generator list")
            degree = int(round(np.sqrt(mats[0].size))) if mats[0].ndim == 1 else mats[0].shape[0]
        out = []
        for m in mats:
            if m.ndim == 1:
                if m.size != degree * degree:
                    raise InvalidInput("matrix dimension mismatch")
                m = m.reshape(degree, degree)
            if m.shape != (degree, degree):
                raise InvalidInput("matrix dimension mismatch: expected %d, got %s" % (degree, m.shape))
            m = m % p
            if not linalg_fp.is_invertible(m, p):
                raise InvalidInput("generator is not invertible mod %d:\n%s" % (p, m))
            out.append(m)
        ident = np.eye(degree, dtype=np.int64)
        return _build(ident, out, lambda x, y: (x @ y) % p, lambda x: x.tobytes(), cap,
                      domain="matrix", p=p, degree=degree, labels=labels)
    if domain == "table":
        raise InvalidInput("use from_table for the table domain")
    raise InvalidInput("unknown domain %r" % (domain,))


def from_table(table, generators=None, labels=None):
    """Canonically renumbered group from a full Cayley table (any numbering).

    The payload of each element is its index in the input table.
    """
    t = np.asarray(table, dtype=np.int64)
    n = t.shape[0]
    if t.ndim != 2 or t.shape != (n, n):
        raise InvalidInput("Cayley table must be square")
    if t.min() < 0 or t.max() >= n:
        raise InvalidInput("Cayley table entry out of range")
    ident = [e for e in range(n) if np.array_equal(t[e], np.arange(n)) and np.array_equal(t[:, e], np.arange(n))]
    if not ident:
        raise InvalidInput("table has no identity")
    e = ident[0]
    if generators is None:
        generators = _greedy_generators(t, e)
    gens = [int(g) for g in generators]
    tl = t.tolist()
    try:
        g = _build(e, gens, lambda x, y: tl[x][y], lambda x: x, max(n, 1) + 1, domain="table")
    except VerificationError as exc:
        raise InvalidInput("table is not a group table: %s" % exc) from None
    if g.order != n:
        raise InvalidInput("generators span only %d of %d elements" % (g.order, n))
    # validates the original table through the renumbered copy
    perm = np.array(g.payloads)
    if not np.array_equal(perm[g.cayley], t[np.ix_(perm, perm)]):
        raise InvalidInput("table is not a group table")
    if labels is not None:
        g.labels = [labels[i] for i in g.payloads]
    return g


def _greedy_generators(t, e):
    n = t.shape[0]
    gens = []
    span = {e}
    for x in range(n):
        if x in span:
            continue
        gens.append(x)
        frontier = list(span)
        span = set(span)
        queue = deque(frontier)
        while queue:
            y = queue.popleft()
            for g in gens:
                z = int(t[y, g])
                if z not in span:
                    span.add(z)
                    queue.append(z)
    return gens


def trivial_group():
    return FiniteGroup([[0]], [], domain="table", payloads=[0])


def cyclic(n):
    if n == 1:
        return closure_from_generators("permutation", [], degree=1)
    return closure_from_generators("permutation", [[(i + 1) % n for i in range(n)]])


def symmetric(n):
    if n <= 1:
        return closure_from_generators("permutation", [], degree=max(n, 1))
    if n == 2:
        return closure_from_generators("permutation", [[1, 0]])
    return closure_from_generators("permutation", [[(i + 1) % n for i in range(n)], [1, 0] + list(range(2, n))])


def dihedral(n):
    """Dihedral group of order 2n acting on n points."""
    rot = [(i + 1) % n for i in range(n)]
    ref = [(-i) % n for i in range(n)]
    return closure_from_generators("permutation", [rot, ref])


def elementary_matrix(n, i, j, p, value=1):
    m = np.eye(n, dtype=np.int64)
    m[i, j] = value % p
    return m


def unitriangular(n, p):
    """UT_n(F_p), generated by the superdiagonal elementary matrices."""
    gens = [elementary_matrix(n, i, i + 1, p) for i in range(n - 1)]
    return closure_from_generators("matrix", gens, p=p, degree=n)


def diagonal_group(n, p, entries=None):
    """Diagonal matrices over F_p with entries in the subgroup generated by ``entries``
    (default: a primitive root), one generator per coordinate."""
    if entries is None:
        entries = [_primitive_root(p)]
    gens = []
    for i in range(n):
        for a in entries:
            if a % p == 1:
                continue
            d = np.eye(n, dtype=np.int64)
            d[i, i] = a % p
            gens.append(d)
    return closure_from_generators("matrix", gens, p=p, degree=n)


def _primitive_root(p):
    if p == 2:
        return 1
    for a in range(2, p):
        if all(pow(a, (p - 1) // q, p) != 1 for q in _prime_factors(p - 1)):
            return a
    raise AssertionError


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        while n % d == 0:
            if d not in out:
                out.append(d)
            n //= d
        d += 1
    if n > 1 and n not in out:
        out.append(n)
    return out


def direct_product(a, b):
    """``a x b`` on pairs, numbered ``i * |b| + j``."""
    na, nb = a.order, b.order
    i = np.arange(na * nb) // nb
    j = np.arange(na * nb) % nb
    table = a.cayley[i[:, None], i[None, :]] * nb + b.cayley[j[:, None], j[None, :]]
    gens = [x * nb for x in a.generators] + list(b.generators)
    return FiniteGroup(table, gens, domain="table", payloads=list(zip(i.tolist(), j.tolist())))


# -- homomorphisms -------------------------------------------------------


class GroupHom:
    """A homomorphism given by its full image table."""

    def __init__(self, source, target, image, check=True):
        image = np.array(image, dtype=np.int64)
        if image.shape != (source.order,):
            raise InvalidInput("image table has the wrong length")
        if image.min(initial=0) < 0 or image.max(initial=0) >= target.order:
            raise InvalidInput("image index out of range")
        image.setflags(write=False)
        self.source = source
        self.target = target
        self.image = image
        if check:
            self.verify()

    def __call__(self, x):
        return int(self.image[x])

    def __repr__(self):
        return "<GroupHom %d -> %d>" % (self.source.order, self.target.order)

    def verify(self):
        im, s, t = self.image, self.source, self.target
        if im[0] != 0:
            raise VerificationError("identity not sent to identity")
        bad = np.argwhere(im[s.cayley] != t.cayley[im[:, None], im[None, :]])
        if len(bad):
            x, y = bad[0]
            raise RelationViolated("homomorphism law fails at (%d, %d)" % (x, y), pair=(int(x), int(y)))
        return True

    def kernel(self):
        return [int(x) for x in np.nonzero(self.image == 0)[0]]

    def image_set(self):
        return sorted(set(self.image.tolist()))

    def is_injective(self):
        return len(self.kernel()) == 1

    def is_surjective(self):
        return len(self.image_set()) == self.target.order

    def then(self, other):
        """``other o self``."""
        if other.source is not self.target:
            raise InvalidInput("cannot compose: target/source mismatch")
        return GroupHom(self.source, other.target, other.image[self.image], check=False)


def identity_hom(g):
    return GroupHom(g, g, np.arange(g.order), check=False)


def trivial_hom(source, target):
    return GroupHom(source, target, np.zeros(source.order, dtype=np.int64), check=False)


def hom_from_generator_images(source, target, images):
    """Extend generator images to a homomorphism, or raise RelationViolated."""
    images = [int(i) for i in images]
    if len(images) != len(source.generators):
        raise InvalidInput("need one image per generator (%d), got %d" % (len(source.generators), len(images)))
    for i in images:
        if not 0 <= i < target.order:
            raise InvalidInput("image index %d out of range" % i)
    img = np.zeros(source.order, dtype=np.int64)
    tm = target._mul
    for y, parent, slot in source.spanning_tree:
        img[y] = tm[img[parent]][images[slot]]
    for slot, g in enumerate(source.generators):
        lhs = img[source.cayley[:, g]]
        rhs = target.cayley[img, images[slot]]
        bad = np.nonzero(lhs != rhs)[0]
        if len(bad):
            x = int(bad[0])
            raise RelationViolated(
                "generator images violate a relation at (x=%d, y=%d)" % (x, g), pair=(x, g))
    return GroupHom(source, target, img, check=False)


# -- subgroups and quotients ---------------------------------------------


def subgroup(g, gens):
    """The subgroup generated by element indices ``gens``, with its embedding."""
    gens = [int(x) for x in gens]
    for x in gens:
        if not 0 <= x < g.order:
            raise InvalidInput("element index %d out of range" % x)
    mul = g._mul
    gens = _prune(gens, lambda x, y: mul[x][y])
    payloads, right = _close(0, gens, lambda x, y: mul[x][y], lambda x: x, g.order + 1)
    n = len(payloads)
    tree = _bfs_tree(n, right)
    cayley = _table_from_right(n, right, tree)
    gen_idx = [int(r[0]) for r in right]
    h = FiniteGroup(cayley, gen_idx, domain=g.domain,
                    payloads=[g.payloads[i] for i in payloads] if g.payloads is not None else None,
                    p=g.p, degree=g.degree,
                    labels=[g.labels[i] for i in payloads] if g.labels is not None else None,
                    check=False)
    return h, GroupHom(h, g, payloads, check=False)


def subgroup_elements(g, gens):
    return sorted(subgroup(g, gens)[1].image.tolist())


def _member_set(g, n):
    """Accept an embedding GroupHom, a (group, embedding) pair or an iterable of indices."""
    if isinstance(n, tuple) and len(n) == 2 and isinstance(n[1], GroupHom):
        n = n[1]
    if isinstance(n, GroupHom):
        if n.target is not g:
            raise InvalidInput("subgroup embedding targets a different group")
        return sorted(set(n.image.tolist()))
    elems = sorted(set(int(x) for x in n))
    return subgroup_elements(g, elems)


def is_normal(g, h):
    elems = np.array(_member_set(g, h), dtype=np.int64)
    inside = np.zeros(g.order, dtype=bool)
    inside[elems] = True
    conj = g.cayley[g.inverse[None, :], g.cayley[elems[:, None], np.arange(g.order)[None, :]]]
    # conj[i, x] = x^-1 * n_i * x
    return bool(inside[conj].all())


def center(g):
    t = g.cayley
    z = [x for x in range(g.order) if np.array_equal(t[x], t[:, x])]
    return subgroup(g, z)


def centralizer(g, elems):
    t = g.cayley
    elems = list(elems)
    c = [x for x in range(g.order) if all(t[x, y] == t[y, x] for y in elems)]
    return subgroup(g, c)


def conjugacy_classes(g):
    assigned = [-1] * g.order
    classes = []
    ar = np.arange(g.order)
    for x in range(g.order):
        if assigned[x] >= 0:
            continue
        orbit = sorted(set(g.cayley[g.inverse[ar], g.cayley[x, ar]].tolist()))
        for y in orbit:
            assigned[y] = len(classes)
        classes.append(orbit)
    return classes


def normal_closure(g, elems):
    cur = set(subgroup_elements(g, elems))
    while True:
        conj = {g.conj(x, h) for x in cur for h in g.generators}
        if conj <= cur:
            return sorted(cur)
        cur = set(subgroup_elements(g, sorted(cur | conj)))


def commutator_subgroup(g, a, b):
    """``[A, B]`` for element lists a, b."""
    return subgroup_elements(g, sorted({g.commutator(x, y) for x in a for y in b}))


class Quotient:
    """Result of ``quotient``: the group, the projection and the coset section."""

    def __init__(self, group, projection, section, kernel):
        self.group = group
        self.projection = projection
        self.section = section
        self.kernel = kernel

    def __iter__(self):
        return iter((self.group, self.projection, self.section))


def quotient(g, n):
    """``G/N`` for normal ``N``; section picks the minimal-index coset member."""
    elems = np.array(_member_set(g, n), dtype=np.int64)
    if not is_normal(g, elems):
        raise NotNormal("subgroup is not normal")
    cosets = g.cayley[:, elems]
    rep = cosets.min(axis=1)
    mul = g._mul
    rep_l = rep.tolist()
    qgens = _prune([rep_l[x] for x in g.generators], lambda a, b: rep_l[mul[a][b]])
    payloads, right = _close(0, qgens, lambda a, b: rep_l[mul[a][b]], lambda a: a, g.order + 1)
    m = len(payloads)
    tree = _bfs_tree(m, right)
    cayley = _table_from_right(m, right, tree)
    gen_idx = [int(r[0]) for r in right]
    qg = FiniteGroup(cayley, gen_idx, domain="table", payloads=list(payloads))
    where = {r: i for i, r in enumerate(payloads)}
    proj = GroupHom(g, qg, [where[r] for r in rep_l], check=False)
    return Quotient(qg, proj, list(payloads), elems.tolist())


def all_subgroups(g, cap=64):
    """Every subgroup as a sorted tuple of element indices (small groups only)."""
    if g.order > cap:
        raise BudgetExceeded("subgroup lattice enumeration capped at order %d" % cap)
    found = set()
    layer = set()
    for x in range(g.order):
        layer.add(tuple(subgroup_elements(g, [x])))
    found |= layer
    cyclic_subs = sorted(layer)
    while layer:
        nxt = set()
        for h in layer:
            for c in cyclic_subs:
                if set(c) <= set(h):
                    continue
                j = tuple(subgroup_elements(g, list(h) + list(c)))
                if j not in found:
                    nxt.add(j)
        found |= nxt
        layer = nxt
    return sorted(found, key=lambda s: (len(s), s))


def subgroup_generators(g, elems):
    """A small generating set (greedy) for a subgroup given by its elements."""
    elems = sorted(elems)
    gens, span = [], {0}
    for x in elems:
        if x not in span:
            gens.append(x)
            span = set(subgroup_elements(g, gens))
    return gens


def is_isomorphic_table(a, b):
    """Brute-force isomorphism test by generator images (tiny groups only)."""
    if a.order != b.order or a.is_abelian != b.is_abelian:
        return False
    if sorted(a.element_orders) != sorted(b.element_orders):
        return False
    for images in itertools.product(range(b.order), repeat=len(a.generators)):
        try:
            f = hom_from_generator_images(a, b, images)
        except RelationViolated:
            continue
        if f.is_injective():
            return True
    return False
