"""Central extensions of G-groups and the cohomology sequences they induce.

An extension ``1 -> R -> Q -> S -> 1`` has R central in Q, G-equivariant maps
and a set-theoretic section sigma of pi.  From it we build

* the seven-term sequence of pointed sets
  ``R^G -> Q^G -> S^G -> H1(G,R) -> H1(G,Q) -> H1(G,S) -> H2(G,R)``
* vertical maps to a second row, either by restriction along ``rho: B -> G``
  or through a morphism of extensions (zeta, eta, theta),
* the partial cuboid obtained by twisting both rows by a cocycle,
* the five-lemma checks, the filtration induction and inflation-restriction.

Everything is evaluated exhaustively on class representatives and checked for
well-definedness on every class member.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import groups
from .actions import (GGroup, equivariance_witness, fixed_elements, quotient_ggroup,
                      restrict_action, sub_ggroup)
from .cocycles import (OneCocycle, TwoCocycle, class_map, ClassMap, h1, pushforward_cocycle,
                       theta_gamma, twist, two_cocycle_violation, z1_enumerate, z2_h2)
from .errors import InvalidInput, NotEquivariant, NotNormal, VerificationError
from .groups import GroupHom


# -- extensions ------------------------------------------------------------


class CentralExtension:
    """``1 -> R -> Q -> S -> 1`` of G-groups with R central, plus a section of pi.

    ``R``, ``Q``, ``S`` are GGroups over one acting group; ``iota: R -> Q`` and
    ``pi: Q -> S`` are GroupHoms; ``sigma[s]`` is an element of Q over s.
    """

    def __init__(self, R, Q, S, iota, pi, sigma=None, check=True, name=None):
        if not (R.acting is Q.acting is S.acting):
            raise InvalidInput("R, Q and S must share the acting group")
        if iota.source is not R.coeff or iota.target is not Q.coeff:
            raise InvalidInput("iota must map R to Q")
        if pi.source is not Q.coeff or pi.target is not S.coeff:
            raise InvalidInput("pi must map Q to S")
        self.R, self.Q, self.S = R, Q, S
        self.iota, self.pi = iota, pi
        if sigma is None:
            sigma = [-1] * S.coeff.order
            for q in range(Q.coeff.order - 1, -1, -1):
                sigma[int(pi.image[q])] = q
        self.sigma = np.array(sigma, dtype=np.int64)
        self.sigma.setflags(write=False)
        self.name = name
        back = np.full(Q.coeff.order, -1, dtype=np.int64)
        back[iota.image] = np.arange(R.coeff.order)
        self._iota_back = back
        self._cache = {}
        if check:
            self.verify()

    @property
    def acting(self):
        return self.Q.acting

    def __repr__(self):
        return "<CentralExtension |R|=%d |Q|=%d |S|=%d |G|=%d>" % (
            self.R.coeff.order, self.Q.coeff.order, self.S.coeff.order, self.acting.order)

    def verify(self):
        R, Q, S = self.R.coeff, self.Q.coeff, self.S.coeff
        self.iota.verify()
        self.pi.verify()
        if not self.iota.is_injective():
            raise VerificationError("iota is not injective")
        if not self.pi.is_surjective():
            raise VerificationError("pi is not surjective")
        img = sorted(self.iota.image.tolist())
        if img != self.pi.kernel():
            raise VerificationError("image of iota differs from the kernel of pi")
        for r in img:
            if not np.array_equal(Q.cayley[r], Q.cayley[:, r]):
                raise VerificationError("image of R is not central in Q (element %d)" % r)
        for name, src, dst, f in (("iota", self.R, self.Q, self.iota), ("pi", self.Q, self.S, self.pi)):
            w = equivariance_witness(src, dst, f)
            if w is not None:
                raise NotEquivariant("%s is not G-equivariant at (q, g) = %s" % (name, w), witness=w)
        if self.sigma.shape != (S.order,) or self.sigma.min() < 0 or self.sigma.max() >= Q.order:
            raise VerificationError("sigma must give one element of Q per element of S")
        if not np.array_equal(self.pi.image[self.sigma], np.arange(S.order)):
            raise VerificationError("sigma is not a section of pi")
        if R.order * S.order != Q.order:
            raise VerificationError("|R| |S| != |Q|")
        return True

    def pull_back(self, q):
        """The r in R with iota(r) = q; raises if q is not in the image of R."""
        r = int(self._iota_back[q])
        if r < 0:
            raise VerificationError("element %d of Q does not lie in the image of R" % q)
        return r

    def with_section(self, sigma):
        return CentralExtension(self.R, self.Q, self.S, self.iota, self.pi, sigma, name=self.name)

    def random_section(self, rng):
        """Another section: each sigma(s) multiplied by a random element of R."""
        Qg = self.Q.coeff
        rs = rng.integers(0, self.R.coeff.order, size=self.S.coeff.order)
        return self.with_section([Qg.mul(int(q), int(self.iota.image[r])) for q, r in zip(self.sigma, rs)])


def central_extension_from_subgroup(A, r_elems, name=None):
    """``1 -> R -> Q -> Q/R -> 1`` for a central, G-stable subgroup R of the G-group A."""
    Qg = A.coeff
    r_elems = groups.subgroup_elements(Qg, list(r_elems))
    Rg, emb = groups.subgroup(Qg, r_elems)
    R = sub_ggroup(A, emb)
    S, quo = quotient_ggroup(A, r_elems)
    return CentralExtension(R, A, S, emb, quo.projection, quo.section, name=name)


def restrict_extension(ext, rho):
    """The same extension with every action pulled back along ``rho: B -> G``."""
    key = ("restrict", id(rho))
    hit = ext._cache.get(key)
    if hit is not None and hit[0] is rho:
        return hit[1]
    out = CentralExtension(restrict_action(ext.R, rho), restrict_action(ext.Q, rho),
                           restrict_action(ext.S, rho), ext.iota, ext.pi, ext.sigma, check=False,
                           name=ext.name)
    ext._cache[key] = (rho, out)
    return out


def twisted_extension(ext, gamma):
    """``1 -> R -> Q_gamma -> S_gamma -> 1``, with S twisted by the image of gamma.

    R keeps its action: its image is central, so the twist does not move it.
    That equality is checked, not assumed.
    """
    if gamma.context is not ext.Q:
        raise InvalidInput("gamma must be a cocycle of the middle G-group")
    key = ("twist", gamma.values)
    hit = ext._cache.get(key)
    if hit is not None:
        return hit
    Qg = twist(ext.Q, gamma)
    Sg = twist(ext.S, pushforward_cocycle(gamma, ext.pi, ext.S))
    Rt = sub_ggroup(Qg, ext.iota)
    if not np.array_equal(Rt.table, ext.R.table):
        raise VerificationError("twisting changed the action on the central subgroup")
    out = CentralExtension(ext.R, Qg, Sg, ext.iota, ext.pi, ext.sigma, name=ext.name)
    ext._cache[key] = out
    return out


class ExtensionMorphism:
    """G-equivariant homs zeta: R -> R', eta: Q -> Q', theta: S -> S' making both squares commute."""

    def __init__(self, source, target, zeta, eta, theta, check=True):
        if source.acting is not target.acting:
            raise InvalidInput("a morphism of extensions needs a common acting group")
        self.source, self.target = source, target
        self.zeta, self.eta, self.theta = zeta, eta, theta
        if check:
            self.verify()

    def verify(self):
        s, t = self.source, self.target
        for name, f, a, b in (("zeta", self.zeta, s.R, t.R), ("eta", self.eta, s.Q, t.Q),
                              ("theta", self.theta, s.S, t.S)):
            if f.source is not a.coeff or f.target is not b.coeff:
                raise InvalidInput("%s has the wrong source or target" % name)
            f.verify()
            w = equivariance_witness(a, b, f)
            if w is not None:
                raise NotEquivariant("%s is not G-equivariant at (q, g) = %s" % (name, w), witness=w)
        if not np.array_equal(self.eta.image[s.iota.image], t.iota.image[self.zeta.image]):
            raise VerificationError("eta o iota != iota' o zeta")
        if not np.array_equal(self.theta.image[s.pi.image], t.pi.image[self.eta.image]):
            raise VerificationError("theta o pi != pi' o eta")
        return True


def identity_morphism(ext):
    return ExtensionMorphism(ext, ext, groups.identity_hom(ext.R.coeff), groups.identity_hom(ext.Q.coeff),
                             groups.identity_hom(ext.S.coeff))


def morphism_to_quotient(ext, n_elems, name=None):
    """The morphism from ext to its image modulo a normal, G-stable subgroup N of Q.

    The target is ``1 -> RN/N -> Q/N -> Q/RN -> 1``.
    """
    A2, quo = quotient_ggroup(ext.Q, n_elems)
    eta = quo.projection
    r2 = sorted(set(eta.image[ext.iota.image].tolist()))
    target = central_extension_from_subgroup(A2, r2, name=name)
    zeta = GroupHom(ext.R.coeff, target.R.coeff,
                    [target.pull_back(int(eta.image[q])) for q in ext.iota.image])
    theta = GroupHom(ext.S.coeff, target.S.coeff,
                     [int(target.pi.image[eta.image[q]]) for q in ext.sigma])
    return ExtensionMorphism(ext, target, zeta, eta, theta)


def morphism_from_subgroup(ext, q0_elems, name=None):
    """Inclusion of the extension ``R cap Q0 -> Q0 -> Q0/(R cap Q0)`` for a G-stable Q0 <= Q."""
    Qg = ext.Q.coeff
    Q0, emb = groups.subgroup(Qg, list(q0_elems))
    A0 = sub_ggroup(ext.Q, emb)
    rset = set(ext.iota.image.tolist())
    r0 = [x for x in range(Q0.order) if int(emb.image[x]) in rset]
    source = central_extension_from_subgroup(A0, r0, name=name)
    zeta = GroupHom(source.R.coeff, ext.R.coeff,
                    [ext.pull_back(int(emb.image[source.iota.image[r]])) for r in range(source.R.coeff.order)])
    theta = GroupHom(source.S.coeff, ext.S.coeff,
                     [int(ext.pi.image[emb.image[q]]) for q in source.sigma])
    return ExtensionMorphism(source, ext, zeta, emb, theta)


# -- pointed sets ----------------------------------------------------------


class PointedSet:
    """A finite pointed set ``{0, ..., size-1}``; ``elements`` optionally names the points."""

    def __init__(self, name, size, basepoint=0, elements=None, obj=None):
        self.name = name
        self.size = int(size)
        self.basepoint = int(basepoint)
        self.elements = elements
        self.obj = obj

    def __repr__(self):
        return "<PointedSet %s size=%d>" % (self.name, self.size)


class PointedMap:
    """A map of finite pointed sets given by its table."""

    def __init__(self, source, target, table, name=None):
        self.source, self.target = source, target
        self.table = [int(x) for x in table]
        self.name = name
        if len(self.table) != source.size:
            raise InvalidInput("map table has the wrong length")

    def __call__(self, x):
        return self.table[x]

    def preserves_basepoint(self):
        return self.table[self.source.basepoint] == self.target.basepoint

    def is_injective(self):
        return len(set(self.table)) == len(self.table)

    def is_surjective(self):
        return len(set(self.table)) == self.target.size

    def is_bijective(self):
        return self.is_injective() and self.is_surjective()

    def kernel(self):
        return [x for x, y in enumerate(self.table) if y == self.target.basepoint]

    def image(self):
        return sorted(set(self.table))

    def with_swapped(self, x, y):
        """Negative control: the map with the images of x and y exchanged."""
        t = list(self.table)
        t[x], t[y] = t[y], t[x]
        return PointedMap(self.source, self.target, t, self.name)


class PointedSequence:
    def __init__(self, nodes, maps):
        if len(maps) != len(nodes) - 1:
            raise InvalidInput("a sequence of n nodes needs n-1 maps")
        for i, m in enumerate(maps):
            if m.source is not nodes[i] or m.target is not nodes[i + 1]:
                raise InvalidInput("map %d does not join nodes %d and %d" % (i, i, i + 1))
        self.nodes = list(nodes)
        self.maps = list(maps)

    def sizes(self):
        return [n.size for n in self.nodes]

    def corrupted(self, map_index, x, y):
        maps = list(self.maps)
        maps[map_index] = maps[map_index].with_swapped(x, y)
        return PointedSequence(self.nodes, maps)

    def to_json(self):
        return {"nodes": [{"name": n.name, "size": n.size, "basepoint": n.basepoint} for n in self.nodes],
                "maps": [m.table for m in self.maps]}


class ExactnessReport:
    def __init__(self, entries, basepoint_failures):
        self.entries = entries
        self.basepoint_failures = basepoint_failures

    @property
    def ok(self):
        return not self.basepoint_failures and all(e["exact"] for e in self.entries)

    @property
    def failures(self):
        return [e for e in self.entries if not e["exact"]]

    def to_json(self):
        return {"exact": self.ok, "nodes": self.entries, "basepoint_failures": self.basepoint_failures}


def check_exact(seq, leading_one=True):
    """Exactness of a pointed sequence at every interior node.

    With ``leading_one`` the sequence is read as starting with ``1 ->``, which
    adds exactness at the first node (trivial kernel of the first map).
    """
    entries = []
    bad_base = [i for i, m in enumerate(seq.maps) if not m.preserves_basepoint()]
    start = 0 if leading_one else 1
    for i in range(start, len(seq.nodes) - 1):
        node = seq.nodes[i]
        image = [node.basepoint] if i == 0 else seq.maps[i - 1].image()
        kernel = seq.maps[i].kernel()
        entry = {"index": i, "node": node.name, "exact": image == kernel}
        if not entry["exact"]:
            entry["image"] = image
            entry["kernel"] = kernel
        entries.append(entry)
    return ExactnessReport(entries, bad_base)


# -- connecting maps -------------------------------------------------------


def delta_cocycle(ext, s):
    """``g -> (sigma(s)^g)^-1 sigma(s)``, pulled back to a 1-cocycle into R."""
    Sg = ext.S
    if not (Sg.table[s] == s).all():
        raise InvalidInput("element %d of S is not fixed by G" % s)
    Qg, t = ext.Q.coeff, ext.Q.table
    x = int(ext.sigma[s])
    vals = [ext.pull_back(Qg.mul(Qg.inv(int(t[x, g])), x)) for g in range(ext.acting.order)]
    return OneCocycle(ext.R, vals)


def connecting_delta(ext, s):
    """delta_G(s) as a class index of H1(G, R)."""
    return h1(ext.R).class_index(delta_cocycle(ext, s))


def Delta_cocycle(ext, gamma):
    """``(g, h) -> sigma(gamma(g))^h sigma(gamma(h)) sigma(gamma(gh))^-1``, pulled back into R."""
    if gamma.context is not ext.S:
        raise InvalidInput("gamma must be a cocycle into S")
    G = ext.acting
    Qc, t = ext.Q.coeff, ext.Q.table
    n = G.order
    lift = ext.sigma[np.array(gamma.values, dtype=np.int64)]
    g, h = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    vals = Qc.cayley[Qc.cayley[t[lift[g], h], lift[h]], Qc.inverse[lift[G.cayley]]]
    back = ext._iota_back[vals]
    if (back < 0).any():
        a, b = np.argwhere(back < 0)[0]
        raise VerificationError("Delta escapes R at (g, h) = (%d, %d): the extension is broken" % (a, b))
    return TwoCocycle(ext.R, back)


def connecting_Delta(ext, gamma):
    """Delta_G(gamma) as a class index of H2(G, R)."""
    return z2_h2(ext.R).class_index(Delta_cocycle(ext, gamma))


# -- rows ------------------------------------------------------------------


_KINDS = ("R", "Q", "S")


def _fixed(ext, kind):
    key = ("fixed", kind)
    if key not in ext._cache:
        ext._cache[key] = fixed_elements(getattr(ext, kind))
    return ext._cache[key]


def _h0_node(ext, kind, tag):
    fixed = _fixed(ext, kind)
    return PointedSet("H0(%s,%s)" % (tag, kind), len(fixed), 0, elements=fixed)


def _h1_node(ext, kind, tag):
    H = h1(getattr(ext, kind))
    return PointedSet("H1(%s,%s)" % (tag, kind), len(H), H.distinguished, obj=H)


def _h2_node(ext, tag):
    H = z2_h2(ext.R)
    return PointedSet("H2(%s,R)" % tag, H.class_count, 0, obj=H)


def _element_map(src_node, dst_node, f):
    where = {x: i for i, x in enumerate(dst_node.elements)}
    table = []
    for x in src_node.elements:
        y = int(f[x])
        if y not in where:
            raise VerificationError("%s -> %s: image %d is not a fixed point" % (src_node.name, dst_node.name, y))
        table.append(where[y])
    return PointedMap(src_node, dst_node, table)


def seven_term_sequence(ext, tag="G"):
    """The seven-term sequence of pointed sets for ``ext`` (cached)."""
    key = ("seven", tag)
    if key in ext._cache:
        return ext._cache[key]
    n = [_h0_node(ext, k, tag) for k in _KINDS] + [_h1_node(ext, k, tag) for k in _KINDS] + [_h2_node(ext, tag)]
    maps = [
        _element_map(n[0], n[1], ext.iota.image),
        _element_map(n[1], n[2], ext.pi.image),
        PointedMap(n[2], n[3], [connecting_delta(ext, s) for s in n[2].elements], "delta"),
    ]
    cm = class_map(n[3].obj, n[4].obj, lambda c: ext.iota.image[np.array(c.values)].tolist())
    maps.append(PointedMap(n[3], n[4], cm.table, "iota"))
    cm = class_map(n[4].obj, n[5].obj, lambda c: ext.pi.image[np.array(c.values)].tolist())
    maps.append(PointedMap(n[4], n[5], cm.table, "pi"))
    H2 = n[6].obj
    table = []
    for c in range(len(n[5].obj)):
        images = {H2.class_index(Delta_cocycle(ext, m)) for m in n[5].obj.members(c)}
        if len(images) != 1:
            raise VerificationError("Delta is not constant on an H1 class")
        table.append(images.pop())
    maps.append(PointedMap(n[5], n[6], table, "Delta"))
    seq = PointedSequence(n, maps)
    ext._cache[key] = seq
    return seq


# -- vertical maps between two rows ----------------------------------------


class Transfer:
    """Vertical maps from the row of ``top`` (over G) to the row of ``bottom`` (over B).

    A coefficient element x of kind K goes to ``maps[K][x]``; a cochain is
    first composed with ``rho`` (an index array B -> G).  Restriction uses
    identity coefficient maps, a morphism of extensions uses rho = identity.
    """

    def __init__(self, top, bottom, rho, maps, kind):
        self.top, self.bottom = top, bottom
        self.rho = np.asarray(rho, dtype=np.int64)
        self.maps = {k: np.asarray(v, dtype=np.int64) for k, v in maps.items()}
        self.kind = kind

    def element(self, k, x):
        return int(self.maps[k][x])

    def cocycle_values(self, k, values):
        return self.maps[k][np.asarray(values, dtype=np.int64)[self.rho]].tolist()

    def cocycle(self, k, gamma):
        return OneCocycle(getattr(self.bottom, k), self.cocycle_values(k, gamma.values))

    def cocycle2(self, c):
        c = np.asarray(c, dtype=np.int64)
        return self.maps["R"][c[np.ix_(self.rho, self.rho)]]

    def twisted(self, gamma):
        """The same vertical maps between ``top`` twisted by gamma and ``bottom`` twisted by its image."""
        beta = self.cocycle("Q", gamma)
        top = twisted_extension(self.top, gamma)
        bottom = twisted_extension(self.bottom, beta)
        return Transfer(top, bottom, self.rho, self.maps, self.kind), beta


def restriction(ext, rho):
    """Vertical maps for restriction along ``rho: B -> G``."""
    if rho.target is not ext.acting:
        raise InvalidInput("rho must target the acting group of the extension")
    bottom = restrict_extension(ext, rho)
    maps = {k: np.arange(getattr(ext, k).coeff.order) for k in _KINDS}
    return Transfer(ext, bottom, rho.image, maps, "restriction")


def morphism_transfer(m):
    return Transfer(m.source, m.target, np.arange(m.source.acting.order),
                    {"R": m.zeta.image, "Q": m.eta.image, "S": m.theta.image}, "morphism")


def as_transfer(ext, via):
    """Accept a GroupHom (restriction), an ExtensionMorphism or a Transfer."""
    if isinstance(via, Transfer):
        return via
    if isinstance(via, ExtensionMorphism):
        if via.source is not ext:
            raise InvalidInput("morphism does not start at this extension")
        return morphism_transfer(via)
    if isinstance(via, GroupHom):
        return restriction(ext, via)
    raise InvalidInput("expected a homomorphism B -> G or an ExtensionMorphism")


def _h1_vertical(tr, k, src, dst):
    cm = class_map(src.obj, dst.obj, lambda c: tr.cocycle_values(k, c.values))
    return PointedMap(src, dst, cm.table)


def _h2_vertical(tr, src, dst):
    top, bot = src.obj, dst.obj
    R = tr.top.R.coeff
    table = []
    for rep in top.representatives:
        images = set()
        for b in [None] + top.coboundary_subgroup:
            c = rep.values if b is None else R.cayley[rep.values, b]
            images.add(bot.class_index(tr.cocycle2(c)))
        if len(images) != 1:
            raise VerificationError("H2 vertical map is not well defined")
        table.append(images.pop())
    return PointedMap(src, dst, table)


def vertical_maps(tr, top_seq, bottom_seq):
    """The seven vertical maps between the two seven-term rows."""
    t, b = top_seq.nodes, bottom_seq.nodes
    v = [_element_map(t[i], b[i], tr.maps[k]) for i, k in enumerate(_KINDS)]
    v += [_h1_vertical(tr, k, t[3 + i], b[3 + i]) for i, k in enumerate(_KINDS)]
    v.append(_h2_vertical(tr, t[6], b[6]))
    return v


def _commutes(first, second, third, fourth):
    """Does ``second o first == fourth o third``?  First failing source element or None."""
    for x in range(first.source.size):
        if second(first(x)) != fourth(third(x)):
            return x
    return None


class DiagramReport:
    def __init__(self, squares):
        self.squares = squares

    @property
    def ok(self):
        return all(s["commutes"] for s in self.squares)

    @property
    def failures(self):
        return [s for s in self.squares if not s["commutes"]]

    def to_json(self):
        return {"commutes": self.ok, "squares": self.squares}


def restriction_diagram(ext, via):
    """Both seven-term rows plus the vertical maps; every square is checked on all elements."""
    tr = as_transfer(ext, via)
    top = seven_term_sequence(tr.top, "G")
    bottom = seven_term_sequence(tr.bottom, "B")
    v = vertical_maps(tr, top, bottom)
    squares = []
    for i in range(6):
        w = _commutes(top.maps[i], v[i + 1], v[i], bottom.maps[i])
        squares.append({"square": "%s -> %s" % (top.nodes[i].name, top.nodes[i + 1].name),
                        "commutes": w is None, "witness": w})
    report = DiagramReport(squares)
    report.top, report.bottom, report.verticals = top, bottom, v
    return report


# -- the partial cuboid ----------------------------------------------------


CUBOID_FACES = (
    ("back_left", "iota_G", "h3", "h2", "iota_B"),
    ("back_right", "pi_G", "h4", "h3", "pi_B"),
    ("front_left", "iota_G'", "h3'", "h2'", "iota_B'"),
    ("front_right", "pi_G'", "h4'", "h3'", "pi_B'"),
    ("top", "theta_gamma", "pi_G", "pi_G'", "theta_pi_gamma"),
    ("bottom", "theta_beta", "pi_B", "pi_B'", "theta_pi_beta"),
    ("side_Q", "theta_gamma", "h3", "h3'", "theta_beta"),
    ("side_S", "theta_pi_gamma", "h4", "h4'", "theta_pi_beta"),
)


class CuboidReport(DiagramReport):
    def to_json(self):
        out = super().to_json()
        out["nodes"] = self.node_sizes
        return out


def _theta_map(src, dst, gamma):
    cm = theta_gamma(src.obj, gamma, dst.obj)
    return PointedMap(src, dst, cm.table)


def cuboid_arrows(ext, via, gamma):
    """Nodes and arrows of the partial cuboid for gamma in Z1(G, Q).

    Back face: the untwisted H1 rows over G and B.  Front face: the rows
    twisted by gamma and by its image beta.  Diagonals are the theta maps.
    """
    tr = as_transfer(ext, via)
    trg, beta = tr.twisted(gamma)
    if tr.kind == "restriction":
        plain = restrict_extension(trg.top, GroupHom(tr.bottom.acting, tr.top.acting, tr.rho, check=False))
        for k in _KINDS:
            if not np.array_equal(getattr(plain, k).table, getattr(trg.bottom, k).table):
                raise VerificationError("restricting the twist differs from twisting the restriction")
    else:
        ExtensionMorphism(trg.top, trg.bottom, tr_hom(tr, "R"), tr_hom(tr, "Q"), tr_hom(tr, "S"))
    nodes = {}
    for face, t in (("", tr), ("'", trg)):
        for side, ext_ in (("G", t.top), ("B", t.bottom)):
            for k in _KINDS:
                nodes["H1(%s,%s)%s" % (side, k, face)] = _h1_node(ext_, k, side)
    arrows = {}
    for face in ("", "'"):
        for side in ("G", "B"):
            r, q, s = (nodes["H1(%s,%s)%s" % (side, k, face)] for k in _KINDS)
            ext_ = (tr if not face else trg).top if side == "G" else (tr if not face else trg).bottom
            arrows["iota_%s%s" % (side, face)] = PointedMap(
                r, q, class_map(r.obj, q.obj, lambda c, e=ext_: e.iota.image[np.array(c.values)].tolist()).table)
            arrows["pi_%s%s" % (side, face)] = PointedMap(
                q, s, class_map(q.obj, s.obj, lambda c, e=ext_: e.pi.image[np.array(c.values)].tolist()).table)
        t = tr if not face else trg
        for i, k in enumerate(_KINDS):
            arrows["h%d%s" % (i + 2, face)] = _h1_vertical(
                t, k, nodes["H1(G,%s)%s" % (k, face)], nodes["H1(B,%s)%s" % (k, face)])
    pi_gamma = pushforward_cocycle(gamma, tr.top.pi, tr.top.S)
    pi_beta = pushforward_cocycle(beta, tr.bottom.pi, tr.bottom.S)
    arrows["theta_gamma"] = _theta_map(nodes["H1(G,Q)'"], nodes["H1(G,Q)"], gamma)
    arrows["theta_pi_gamma"] = _theta_map(nodes["H1(G,S)'"], nodes["H1(G,S)"], pi_gamma)
    arrows["theta_beta"] = _theta_map(nodes["H1(B,Q)'"], nodes["H1(B,Q)"], beta)
    arrows["theta_pi_beta"] = _theta_map(nodes["H1(B,S)'"], nodes["H1(B,S)"], pi_beta)
    return nodes, arrows


def tr_hom(tr, k):
    a, b = getattr(tr.top, k).coeff, getattr(tr.bottom, k).coeff
    return GroupHom(a, b, tr.maps[k], check=False)


def check_faces(nodes, arrows):
    squares = []
    for name, f1, f2, g1, g2 in CUBOID_FACES:
        w = _commutes(arrows[f1], arrows[f2], arrows[g1], arrows[g2])
        squares.append({"square": name, "commutes": w is None, "witness": w})
    report = CuboidReport(squares)
    report.node_sizes = {k: n.size for k, n in sorted(nodes.items())}
    return report


def cuboid_check(ext, via, gamma, corrupt=None):
    """Check every face of the partial cuboid.

    ``corrupt`` maps arrow names to a pair (x, y) whose images are swapped
    before checking; it exists for negative controls.
    """
    nodes, arrows = cuboid_arrows(ext, via, gamma)
    for name, (x, y) in (corrupt or {}).items():
        arrows[name] = arrows[name].with_swapped(x, y)
    return check_faces(nodes, arrows)


# -- five lemma ------------------------------------------------------------


def _props(m):
    return {"injective": m.is_injective(), "surjective": m.is_surjective()}


class FiveLemmaVerdict:
    """Outcome of one five-lemma evaluation.

    ``hypotheses`` maps a part label to True/False; ``conclusions`` maps it to
    the directly computed conclusion; ``violations`` lists the parts whose
    hypotheses hold while the conclusion fails.
    """

    def __init__(self, statement, maps, hypotheses, conclusions, extra=None):
        self.statement = statement
        self.maps = maps
        self.hypotheses = hypotheses
        self.conclusions = conclusions
        self.extra = extra or {}
        self.violations = [k for k, v in hypotheses.items() if v and not conclusions[k]]

    @property
    def ok(self):
        return not self.violations

    def to_json(self):
        return {"statement": self.statement, "maps": self.maps, "hypotheses": self.hypotheses,
                "conclusions": self.conclusions, "violations": self.violations, **self.extra}


def _twisted_fixed_surjective(tr):
    """For every gamma in Z1(G, S): does (S_gamma)^G map onto (S'_beta)^B?"""
    f = tr.maps["S"]
    for gamma in z1_enumerate(tr.top.S):
        beta = tr.cocycle("S", gamma)
        top_fixed = fixed_elements(twist(tr.top.S, gamma))
        bot_fixed = fixed_elements(twist(tr.bottom.S, beta))
        image = {int(f[x]) for x in top_fixed}
        if not image <= set(bot_fixed):
            raise VerificationError("vertical map does not send fixed points to fixed points")
        if image != set(bot_fixed):
            return False, list(gamma.values)
    return True, None


def five_lemma_h1_check(ext, via):
    """The H1 five lemma on ``S^G -> H1(R) -> H1(Q) -> H1(S) -> H2(R)`` against its image row."""
    tr = as_transfer(ext, via)
    d = restriction_diagram(ext, tr)
    if not d.ok:
        raise VerificationError("restriction diagram does not commute: %s" % d.failures)
    h = {"h1": d.verticals[2], "h2": d.verticals[3], "h3": d.verticals[4],
         "h4": d.verticals[5], "h5": d.verticals[6]}
    h2, h3, h4, h5 = h["h2"], h["h3"], h["h4"], h["h5"]
    hyp_i = h2.is_surjective() and h4.is_surjective() and h5.is_injective()
    extra = {}
    if h2.is_injective() and h4.is_injective():
        fixed_ok, witness = _twisted_fixed_surjective(tr)
        extra["twisted_fixed_points_surjective"] = fixed_ok
        if witness is not None:
            extra["twisted_fixed_points_witness"] = witness
        hyp_ii = fixed_ok
    else:
        hyp_ii = False
    hypotheses = {"i": hyp_i, "ii": hyp_ii, "iii": hyp_i and hyp_ii}
    conclusions = {"i": h3.is_surjective(), "ii": h3.is_injective(), "iii": h3.is_bijective()}
    statement = "h1-restriction" if tr.kind == "restriction" else "h1-morphism"
    return FiveLemmaVerdict(statement, {k: _props(m) for k, m in h.items()}, hypotheses, conclusions, extra)


def five_lemma_h1_funct_check(m):
    return five_lemma_h1_check(m.source, m)


def five_lemma_h0_check(ext, via):
    """The five lemma on ``1 -> R^G -> Q^G -> S^G -> H1(G,R)`` against its image row.

    h1 is the map on the leading ``1``; h2..h4 act on fixed points and h5 on H1(R).
    """
    tr = as_transfer(ext, via)
    d = restriction_diagram(ext, tr)
    if not d.ok:
        raise VerificationError("restriction diagram does not commute: %s" % d.failures)
    h2, h3, h4, h5 = d.verticals[0], d.verticals[1], d.verticals[2], d.verticals[3]
    hypotheses = {
        "i": h2.is_surjective() and h4.is_surjective() and h5.is_injective(),
        "ii": h2.is_injective() and h4.is_injective(),
        "iii": h2.is_bijective() and h4.is_bijective() and h5.is_injective(),
    }
    conclusions = {"i": h3.is_surjective(), "ii": h3.is_injective(), "iii": h3.is_bijective()}
    maps = {"h2": _props(h2), "h3": _props(h3), "h4": _props(h4), "h5": _props(h5)}
    statement = "h0-restriction" if tr.kind == "restriction" else "h0-morphism"
    return FiveLemmaVerdict(statement, maps, hypotheses, conclusions)


# -- filtrations -----------------------------------------------------------


def validate_filtration(A, chain):
    """Check a chain Q = Q_1 >= ... >= Q_{n+1} = 1 of element lists.

    Each Q_i must be normal in Q and G-stable, and [Q, Q_i] <= Q_{i+1}.
    """
    Qg = A.coeff
    chain = [sorted(int(x) for x in c) for c in chain]
    if not chain or chain[0] != list(range(Qg.order)) or chain[-1] != [0]:
        raise InvalidInput("a filtration must run from Q down to the trivial subgroup")
    for i, c in enumerate(chain):
        if groups.subgroup_elements(Qg, c) != c:
            raise InvalidInput("filtration term %d is not a subgroup" % i)
        if not groups.is_normal(Qg, c):
            raise InvalidInput("filtration term %d is not normal" % i)
        if not set(A.table[c].ravel().tolist()) <= set(c):
            raise InvalidInput("filtration term %d is not G-stable" % i)
        if i + 1 < len(chain):
            nxt = set(chain[i + 1])
            if not nxt <= set(c):
                raise InvalidInput("filtration is not decreasing at term %d" % i)
            for q in range(Qg.order):
                for x in c:
                    if Qg.commutator(q, x) not in nxt:
                        raise InvalidInput("[Q, Q_%d] is not contained in Q_%d" % (i + 1, i + 2))
    return chain


def filtration_layers(A, chain):
    """The G-groups ``Q_j / Q_{j+1}`` with the projections ``Q_j -> Q_j/Q_{j+1}``."""
    chain = validate_filtration(A, chain)
    out = []
    for j in range(len(chain) - 1):
        sub, emb = groups.subgroup(A.coeff, chain[j])
        Aj = sub_ggroup(A, emb)
        back = {int(x): i for i, x in enumerate(emb.image)}
        layer, quo = quotient_ggroup(Aj, [back[x] for x in chain[j + 1]])
        out.append((layer, emb, quo))
    return out


def _layer_transfer(top, bottom, rho, f):
    """H0/H1/H2 maps between two G-groups through rho and a coefficient map f."""
    rho = np.asarray(rho, dtype=np.int64)
    f = np.asarray(f, dtype=np.int64)
    out = {}
    tf, bf = fixed_elements(top), set(fixed_elements(bottom))
    image = {int(f[x]) for x in tf}
    if not image <= bf:
        raise VerificationError("layer map does not preserve fixed points")
    out["h0_surjective"] = image == bf
    H1t, H1b = h1(top), h1(bottom)
    cm = class_map(H1t, H1b, lambda c: f[np.array(c.values)[rho]].tolist())
    out["h1_bijective"] = cm.is_bijective()
    out["h1_map"] = cm
    H2t, H2b = z2_h2(top), z2_h2(bottom)
    table = []
    for rep in H2t.representatives:
        table.append(H2b.class_index(f[rep.values[np.ix_(rho, rho)]]))
    out["h2_injective"] = len(set(table)) == len(table)
    return out


def filtration_h1_check(A, chain, rho=None, target=None, target_chain=None, phi=None):
    """The filtration induction for H1.

    Variant (a): ``rho: B -> G`` and the map H1(G,Q) -> H1(B,Q) by restriction.
    Variant (b): a G-hom ``phi: Q -> Q'`` onto the G-group ``target`` with a
    filtration ``target_chain`` satisfying ``phi(Q_i) <= Q'_i``.
    """
    chain = validate_filtration(A, chain)
    layers = filtration_layers(A, chain)
    G = A.acting
    if phi is None:
        if rho is None:
            rho = groups.identity_hom(G)
        if rho.target is not G:
            raise InvalidInput("rho must target the acting group")
        per_layer = []
        for layer, _, _ in layers:
            bottom = restrict_action(layer, rho)
            per_layer.append(_layer_transfer(layer, bottom, rho.image, np.arange(layer.coeff.order)))
        top, bottom = A, restrict_action(A, rho)
        rho_img, f = rho.image, np.arange(A.coeff.order)
        statement = "filtration-restriction"
    else:
        if target is None or target_chain is None:
            raise InvalidInput("variant (b) needs the target G-group and its filtration")
        target_chain = validate_filtration(target, target_chain)
        if len(target_chain) != len(chain):
            raise InvalidInput("both filtrations must have the same length")
        w = equivariance_witness(A, target, phi)
        if w is not None:
            raise NotEquivariant("phi is not G-equivariant at %s" % (w,), witness=w)
        tlayers = filtration_layers(target, target_chain)
        per_layer = []
        for i, ((layer, emb, quo), (tl, temb, tquo)) in enumerate(zip(layers, tlayers)):
            tback = {int(x): j for j, x in enumerate(temb.image)}
            f = []
            for s in range(layer.coeff.order):
                q = int(emb.image[quo.section[s]])
                y = int(phi.image[q])
                if y not in tback:
                    raise InvalidInput("phi(Q_%d) is not contained in Q'_%d" % (i + 1, i + 1))
                f.append(int(tquo.projection.image[tback[y]]))
            per_layer.append(_layer_transfer(layer, tl, np.arange(G.order), f))
        top, bottom = A, target
        rho_img, f = np.arange(G.order), phi.image
        statement = "filtration-morphism"
    hyp = all(p["h1_bijective"] and p["h0_surjective"] and p["h2_injective"] for p in per_layer)
    cm = class_map(h1(top), h1(bottom), lambda c: np.asarray(f)[np.array(c.values)[rho_img]].tolist())
    layers_json = [{k: v for k, v in p.items() if k != "h1_map"} for p in per_layer]
    return FiveLemmaVerdict(statement, {"h1": {"injective": cm.is_injective(), "surjective": cm.is_surjective()}},
                            {"layers": hyp}, {"layers": cm.is_bijective()}, {"layers": layers_json})


# -- inflation-restriction -------------------------------------------------


class InfRes:
    """Result of ``inf_res``: the three-term sequence and the criterion verdicts."""

    def __init__(self, sequence, exactness, criteria, data):
        self.sequence = sequence
        self.exactness = exactness
        self.criteria = criteria
        self.data = data

    @property
    def ok(self):
        return self.exactness.ok and all(not (c["holds"] and not c["conclusion"]) for c in self.criteria.values())

    def to_json(self):
        return {"sizes": self.sequence.sizes(), "exactness": self.exactness.to_json(),
                "criteria": self.criteria, **self.data}


def _fixed_by_normal(A, u_img):
    Qg = A.coeff
    fixed = [q for q in range(Qg.order) if (A.table[q, u_img] == q).all()]
    return fixed


def _quotient_action(A, quo, u_img):
    """Q^U as a T-group, T = G/U acting through the section."""
    fixed = _fixed_by_normal(A, u_img)
    sub, emb = groups.subgroup(A.coeff, fixed)
    if sub.order != len(fixed):
        raise VerificationError("Q^U is not a subgroup")
    back = np.full(A.coeff.order, -1, dtype=np.int64)
    back[emb.image] = np.arange(sub.order)
    T = quo.group
    sec = np.array(quo.section, dtype=np.int64)
    table = back[A.table[np.ix_(emb.image, sec)]]
    if (table < 0).any():
        raise VerificationError("G does not preserve Q^U")
    return GGroup(T, sub, table), emb


def t_action_on_h1(AU, u_emb, A):
    """Permutations of the classes of H1(U, Q) induced by each g in G.

    ``(g . gamma)(u) = gamma(g u g^-1)^g``; returns a list indexed by g.
    """
    G = A.acting
    H = h1(AU)
    U = u_emb.source
    back = np.full(G.order, -1, dtype=np.int64)
    back[u_emb.image] = np.arange(U.order)
    perms = []
    for g in range(G.order):
        gi = G.inv(g)
        conj = back[G.cayley[G.cayley[g, u_emb.image], gi]]
        if (conj < 0).any():
            raise InvalidInput("U is not normal in G")
        col = A.table[:, g]
        cm = class_map(H, H, lambda c: col[np.array(c.values)[conj]].tolist())
        if not cm.is_bijective():
            raise VerificationError("T-action on H1(U,Q) is not by bijections")
        perms.append(cm.table)
    for u in range(U.order):
        if perms[int(u_emb.image[u])] != list(range(len(H))):
            raise VerificationError("U does not act trivially on H1(U,Q)")
    return perms


def inf_res(A, u_elems, criteria=True):
    """``1 -> H1(G/U, Q^U) -> H1(G, Q) -> H1(U, Q)^T`` with exactness and criteria (i), (ii)."""
    G = A.acting
    u_elems = groups.subgroup_elements(G, list(u_elems))
    if not groups.is_normal(G, u_elems):
        raise NotNormal("U is not normal in G")
    quo = groups.quotient(G, u_elems)
    U, u_emb = groups.subgroup(G, u_elems)
    AT, fix_emb = _quotient_action(A, quo, u_emb.image)
    AU = restrict_action(A, u_emb)
    HT, HG, HU = h1(AT), h1(A), h1(AU)
    perms = t_action_on_h1(AU, u_emb, A)
    fixed_classes = [c for c in range(len(HU)) if all(p[c] == c for p in perms)]
    proj = quo.projection.image
    inf = class_map(HT, HG, lambda c: fix_emb.image[np.array(c.values)[proj]].tolist())
    res = class_map(HG, HU, lambda c: list(np.array(c.values)[u_emb.image]))
    if not set(res.table) <= set(fixed_classes):
        raise VerificationError("restriction leaves the T-fixed classes")
    n0 = PointedSet("H1(T,Q^U)", len(HT), HT.distinguished, obj=HT)
    n1 = PointedSet("H1(G,Q)", len(HG), HG.distinguished, obj=HG)
    where = {c: i for i, c in enumerate(fixed_classes)}
    n2 = PointedSet("H1(U,Q)^T", len(fixed_classes), where[HU.distinguished], elements=fixed_classes, obj=HU)
    seq = PointedSequence([n0, n1, n2], [PointedMap(n0, n1, inf.table, "inf"),
                                         PointedMap(n1, n2, [where[c] for c in res.table], "res")])
    exact = check_exact(seq)
    crit = {}
    if criteria:
        ci, cii = True, True
        seen = {}
        for gamma in z1_enumerate(A):
            Ag = twist(A, gamma)
            key = Ag.table.tobytes()
            if key not in seen:
                ATg, _ = _quotient_action(Ag, quo, u_emb.image)
                AUg = restrict_action(Ag, u_emb)
                pg = t_action_on_h1(AUg, u_emb, Ag)
                nfix = sum(1 for c in range(len(h1(AUg))) if all(p[c] == c for p in pg))
                seen[key] = (len(h1(ATg)) == 1, nfix == 1)
            a, b = seen[key]
            ci &= a
            cii &= b
        crit["i"] = {"holds": ci, "conclusion": res.is_injective()}
        crit["ii"] = {"holds": cii, "conclusion": inf.is_bijective()}
    data = {"T_order": quo.group.order, "U_order": U.order, "QU_order": AT.coeff.order,
            "t_fixed_classes": len(fixed_classes), "h1_U": len(HU)}
    return InfRes(seq, exact, crit, data)


# -- choices of B ----------------------------------------------------------


def subgroup_restrictions(G, cap=64):
    """One embedding per conjugacy class of subgroups of G (trivial and G included)."""
    subs = groups.all_subgroups(G, cap=cap)
    seen, out = set(), []
    for s in subs:
        if s in seen:
            continue
        for g in range(G.order):
            seen.add(tuple(sorted(G.conj(x, g) for x in s)))
        gens = groups.subgroup_generators(G, list(s))
        out.append(groups.subgroup(G, gens)[1])
    return out
