"""Complements of Q in the semidirect product H |x Q and their 1-cocycle description.

A cocycle gamma gives the complement ``{(h, gamma(h))}``; conjugating it by
``(1, q)`` gives the complement of the cohomologous cocycle
``h -> (q^h)^-1 gamma(h) q``.
"""

from __future__ import annotations

import itertools

from . import groups
from .actions import semidirect_product
from .cocycles import OneCocycle, h1, z1_enumerate
from .config import settings
from .errors import NotAComplement, VerificationError


class ComplementSet:
    """All complements of Q in ``H |x Q`` with their Q-conjugacy classes.

    ``complements[i]`` is the sorted element tuple of the complement of
    ``cocycles[i]``.  ``classes`` partitions complement indices under
    Q-conjugacy, ``full_classes`` under conjugacy by the whole product.
    """

    def __init__(self, ggroup, product, cocycles, complements, classes, full_classes, search=None):
        self.ggroup = ggroup
        self.product = product
        self.cocycles = cocycles
        self.complements = complements
        self.classes = classes
        self.full_classes = full_classes
        self.search = search

    def __len__(self):
        return len(self.complements)

    def __repr__(self):
        return "<ComplementSet count=%d classes=%d>" % (len(self), len(self.classes))

    def verify(self):
        P = self.product.group
        for k in self.complements:
            check_complement(self.product, k)
        qelems = self.product.q_embedding.image.tolist()
        for cls in self.classes:
            for a in cls[1:]:
                if _conjugator(P, self.complements[cls[0]], self.complements[a], qelems) is None:
                    raise VerificationError("class members are not Q-conjugate")
        for c1, c2 in itertools.combinations(self.classes, 2):
            if _conjugator(P, self.complements[c1[0]], self.complements[c2[0]], qelems) is not None:
                raise VerificationError("two classes are Q-conjugate")
        return True

    def to_json(self):
        P = self.product.group
        out = {
            "complement_count": len(self.complements),
            "class_count": len(self.classes),
            "class_sizes": [len(c) for c in self.classes],
            "full_class_count": len(self.full_classes),
            "representative_generators": [
                [list(P.payloads[x]) for x in groups.subgroup_generators(P, self.complements[c[0]])]
                for c in self.classes],
        }
        if self.search is not None:
            out["subgroup_search_count"] = len(self.search)
        return out


def check_complement(product, elems):
    """Raise NotAComplement unless ``elems`` is a subgroup with K Q = H |x Q and K n Q = 1."""
    P = product.group
    elems = sorted(int(x) for x in elems)
    if groups.subgroup_elements(P, elems) != elems:
        raise NotAComplement("not a subgroup")
    nq = product.ggroup.coeff.order
    inter = [x for x in elems if x < nq]
    if inter != [0]:
        raise NotAComplement("meets Q in %d elements" % len(inter))
    if len(elems) * nq != P.order:
        raise NotAComplement("K Q is not the whole product (|K| = %d)" % len(elems))
    return True


def cocycle_to_complement(gamma, product=None):
    """``{(h, gamma(h))}`` as a sorted tuple of product element indices."""
    product = product or semidirect_product(gamma.context)
    elems = tuple(sorted(product.element(h, q) for h, q in enumerate(gamma.values)))
    try:
        check_complement(product, elems)
    except NotAComplement as exc:
        raise VerificationError("cocycle image is not a complement: %s" % exc) from None
    return elems


def complement_to_cocycle(elems, product):
    """The cocycle ``h -> q`` with ``(h, q)`` in K."""
    check_complement(product, elems)
    values = [None] * product.ggroup.acting.order
    for x in elems:
        h, q = product.pair(x)
        values[h] = q
    return OneCocycle(product.ggroup, values)


def _conjugate(P, elems, x):
    return tuple(sorted(P.conj(e, x) for e in elems))


def _conjugator(P, a, b, by):
    b = tuple(b)
    for x in by:
        if _conjugate(P, a, x) == b:
            return x
    return None


def _partition(P, subs, by):
    index = {s: i for i, s in enumerate(subs)}
    seen = [None] * len(subs)
    classes = []
    for i, s in enumerate(subs):
        if seen[i] is not None:
            continue
        cls = sorted({index[_conjugate(P, s, x)] for x in by})
        for j in cls:
            seen[j] = len(classes)
        classes.append(cls)
    return classes


def subgroup_search(product):
    """Complements found without cocycles: subgroups generated by lifts of H's generators."""
    A = product.ggroup
    H, nq = A.acting, A.coeff.order
    P = product.group
    found = set()
    for lifts in itertools.product(range(nq), repeat=len(H.generators)):
        gens = [product.element(h, q) for h, q in zip(H.generators, lifts)]
        elems = groups.subgroup_elements(P, gens)
        if len(elems) == H.order and all(x >= nq for x in elems[1:]):
            found.add(tuple(elems))
    return sorted(found)


def complements(A, search=None):
    """Enumerate complements through Z^1 and classify them under Q-conjugacy.

    The subgroup search runs when the product has order at most the
    configured cap (or when ``search`` forces it) and must agree exactly.
    """
    product = semidirect_product(A)
    P = product.group
    z1 = z1_enumerate(A)
    subs = [cocycle_to_complement(g, product) for g in z1]
    if len(set(subs)) != len(subs):
        raise VerificationError("two cocycles give the same complement")
    for g, k in zip(z1, subs):
        if complement_to_cocycle(k, product) != g:
            raise VerificationError("round trip failed for %r" % (g,))
    qelems = product.q_embedding.image.tolist()
    classes = _partition(P, subs, qelems)
    full = _partition(P, subs, range(P.order))
    if search is None:
        search = P.order <= settings.complement_search_cap
    found = None
    if search:
        found = subgroup_search(product)
        if found != sorted(subs):
            raise VerificationError("subgroup search found %d complements, cocycles give %d"
                                    % (len(found), len(subs)))
    return ComplementSet(A, product, z1, subs, classes, full, found)


class ComplementClassification:
    """The class-level map from H^1 to Q-conjugacy classes of complements."""

    def __init__(self, h1set, comps, table):
        self.h1 = h1set
        self.complements = comps
        self.table = table

    @property
    def bijective(self):
        return sorted(self.table) == list(range(len(self.complements.classes))) and \
            len(self.table) == len(self.h1)

    def to_json(self):
        return {"h1_classes": len(self.h1), "complement_classes": len(self.complements.classes),
                "class_map": list(self.table), "bijective": self.bijective}


def classify_complements(A, comps=None):
    """Check that cohomology classes and Q-conjugacy classes match member for member."""
    comps = comps or complements(A)
    H1 = h1(A)
    where = {}
    for ci, cls in enumerate(comps.classes):
        for i in cls:
            where[comps.cocycles[i].values] = ci
    table = []
    for c in range(len(H1)):
        images = {where[g.values] for g in H1.members(c)}
        if len(images) != 1:
            raise VerificationError("a cohomology class meets %d complement classes" % len(images))
        table.append(images.pop())
    for ci, cls in enumerate(comps.classes):
        hits = {H1.class_index(comps.cocycles[i]) for i in cls}
        if len(hits) != 1:
            raise VerificationError("a complement class meets %d cohomology classes" % len(hits))
    out = ComplementClassification(H1, comps, table)
    if not out.bijective:
        raise VerificationError("class map H^1 -> complement classes is not bijective: %s" % table)
    return out
