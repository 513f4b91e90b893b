"""The shipped corpus: builders for every instance and a writer for the JSON files.

Run ``python3 -m nacoh.instances`` to regenerate ``nacoh/data``.
"""

from __future__ import annotations

import os
import sys

import numpy as np

from . import groups, linalg_fp
from .actions import (action_by_payload_conjugation, action_from_automorphism_images, is_stable,
                      trivial_action)
from .io import corpus_dir, dump_json, ggroup_to_spec, group_to_spec


def _perm_group(gens, degree=None):
    return groups.closure_from_generators("permutation", gens, degree=degree)


def _mat_group(gens, p, n):
    return groups.closure_from_generators("matrix", [np.array(g) for g in gens], p=p, degree=n)


def _power_map(Q, k):
    return [Q.power(q, k % Q.exponent) for q in range(Q.order)]


def _by_payload(Q, f):
    return [Q.index_of(f(q)) for q in Q.payloads]


def _graph_automorphism(Q):
    """``x -> J x^-T J`` on a unitriangular group (J the antidiagonal)."""
    n, p = Q.degree, Q.p
    J = np.eye(n, dtype=np.int64)[::-1]
    return _by_payload(Q, lambda x: (J @ linalg_fp.inverse(x, p).T @ J) % p)


def _elems(G, payloads):
    return groups.subgroup_elements(G, [G.index_of(x) for x in payloads])


def _center(Q):
    return sorted(groups.center(Q)[1].image.tolist())


def _ext(name, A, kernel, note, quotients=(), subgroups=()):
    spec = ggroup_to_spec(A)
    spec.update({"name": name, "kind": "extension", "kernel": sorted(kernel), "note": note})
    Q = A.coeff
    for key, subs in (("quotients", quotients), ("subgroups", subgroups)):
        subs = [sorted(s) for s in subs]
        for s in subs:
            if not is_stable(A, s) or groups.subgroup_elements(Q, s) != s:
                raise ValueError("%s: %s entry is not a G-stable subgroup" % (name, key))
            if key == "quotients" and not groups.is_normal(Q, s):
                raise ValueError("%s: quotient by a non-normal subgroup" % name)
        if subs:
            spec[key] = subs
    return spec


def _matrix(name, G, Q, note):
    return {"name": name, "kind": "matrix", "acting": group_to_spec(G), "coeff": group_to_spec(Q), "note": note}


def extension_instances():
    out = []
    c2, c3, c4 = groups.cyclic(2), groups.cyclic(3), groups.cyclic(4)
    v4 = _perm_group([[1, 0, 2, 3], [0, 1, 3, 2]])

    inv4 = action_from_automorphism_images(c2, c4, [_power_map(c4, -1)])
    out.append(_ext("c2_inv_c4", inv4, [0, c4.power(1, 2)], "C2 inverting C4, R = {1, c^2}",
                    quotients=[[0, c4.power(1, 2)]]))
    out.append(_ext("c2_inv_c4_r_trivial", inv4, [0], "R trivial, S = Q"))
    out.append(_ext("c2_inv_c4_r_full", inv4, range(4), "R = Q, S trivial"))

    inv3 = action_from_automorphism_images(c2, c3, [_power_map(c3, -1)])
    out.append(_ext("c2_inv_c3_r_trivial", inv3, [0], "C2 inverting C3, R trivial"))
    out.append(_ext("c2_inv_c3_r_full", inv3, range(3), "C2 inverting C3, R = Q"))

    ut3 = groups.unitriangular(3, 2)
    z = _center(ut3)
    out.append(_ext("ut3f2_center_trivial_c2", trivial_action(c2, ut3), z, "UT3(F2) mod center, C2 acting trivially",
                    subgroups=[_elems(ut3, [groups.elementary_matrix(3, 0, 1, 2), groups.elementary_matrix(3, 0, 2, 2)])]))
    out.append(_ext("ut3f2_center_trivial_group", trivial_action(groups.trivial_group(), ut3), z,
                    "UT3(F2) mod center, trivial acting group"))
    out.append(_ext("ut3f2_center_inner", action_by_payload_conjugation(ut3, ut3), z,
                    "UT3(F2) acting on itself by conjugation"))
    out.append(_ext("ut3f2_center_graph", action_from_automorphism_images(c2, ut3, [_graph_automorphism(ut3)]), z,
                    "C2 acting on UT3(F2) by the graph automorphism", quotients=[z]))

    ut33 = groups.unitriangular(3, 3)
    diag3 = groups.diagonal_group(3, 3)
    out.append(_ext("ut3f3_center_diagonal", action_by_payload_conjugation(diag3, ut33), _center(ut33),
                    "diagonal torus of GL3(F3) conjugating UT3(F3)"))
    sign = _mat_group([[[2, 0, 0], [0, 1, 0], [0, 0, 1]]], 3, 3)
    out.append(_ext("ut3f3_center_c2", action_by_payload_conjugation(sign, ut33), _center(ut33),
                    "diag(-1, 1, 1) conjugating UT3(F3)"))

    c2k = [0, c4.power(1, 2)]
    out.append(_ext("c4_c2_trivial_c2", trivial_action(c2, c4), c2k, "trivial C2 on C4 > C2"))
    out.append(_ext("c4_c2_trivial_c3", trivial_action(c3, c4), c2k, "trivial C3 on C4 > C2"))
    out.append(_ext("c4_c2_trivial_v4", trivial_action(v4, c4), c2k, "trivial C2 x C2 on C4 > C2"))

    c8 = groups.cyclic(8)
    out.append(_ext("c8_c2_times5", action_from_automorphism_images(c2, c8, [_power_map(c8, 5)]),
                    [0, c8.power(1, 4)], "C2 on C8 by x -> 5x, R of order 2",
                    quotients=[[0, c8.power(1, 4)]], subgroups=[groups.subgroup_elements(c8, [c8.power(1, 2)])]))
    c9 = groups.cyclic(9)
    out.append(_ext("c9_c3_times4", action_from_automorphism_images(c3, c9, [_power_map(c9, 4)]),
                    groups.subgroup_elements(c9, [c9.power(1, 3)]), "C3 on C9 by x -> 4x, R of order 3"))

    sl23 = _mat_group([[[1, 1], [0, 1]], [[1, 0], [1, 1]]], 3, 2)
    q8 = _mat_group([[[0, 1], [2, 0]], [[1, 1], [1, 2]]], 3, 2)
    w = _mat_group([[[1, 1], [0, 1]]], 3, 2)
    out.append(_ext("q8_center_c3", action_by_payload_conjugation(w, q8), _center(q8),
                    "Q8 < SL2(F3) with an element of order 3 conjugating"))
    i4 = _mat_group([[[0, 1], [2, 0]]], 3, 2)
    out.append(_ext("q8_center_c4_inner", action_by_payload_conjugation(i4, q8), _center(q8),
                    "Q8 conjugated by its own element of order 4"))
    d = _mat_group([[[1, 0], [0, 2]]], 3, 2)
    out.append(_ext("sl23_center_c2", action_by_payload_conjugation(d, sl23), _center(sl23),
                    "SL2(F3) conjugated by diag(1, -1)", quotients=[_center(sl23)]))

    d4 = groups.dihedral(4)
    refl = _perm_group([[0, 3, 2, 1]])
    out.append(_ext("d4_center_reflection", action_by_payload_conjugation(refl, d4), _center(d4),
                    "D4 conjugated by a reflection"))

    ut4 = groups.unitriangular(4, 2)
    e12 = _mat_group([groups.elementary_matrix(4, 0, 1, 2)], 2, 4)
    out.append(_ext("ut4f2_center_e12", action_by_payload_conjugation(e12, ut4), _center(ut4),
                    "UT4(F2) conjugated by I + E12"))

    c44 = _perm_group([[1, 2, 3, 0, 4, 5, 6, 7], [0, 1, 2, 3, 5, 6, 7, 4]])
    swap = _perm_group([[4, 5, 6, 7, 0, 1, 2, 3]])
    twice = sorted({c44.power(x, 2) for x in range(c44.order)})
    out.append(_ext("c4xc4_swap", action_by_payload_conjugation(swap, c44), twice,
                    "C2 swapping the factors of C4 x C4, R = 2Q"))

    s3 = groups.symmetric(3)
    sgn = [0 if _even(s3.payloads[g]) else 1 for g in s3.generators]
    out.append(_ext("s3_sign_c4", action_from_automorphism_images(
        s3, c4, [list(range(4)) if s == 0 else _power_map(c4, -1) for s in sgn]), c2k,
        "S3 acting on C4 through the sign"))

    v4n = _perm_group([[1, 0, 3, 2], [2, 3, 0, 1]])
    rot = _perm_group([[0, 2, 3, 1]])
    out.append(_ext("v4_c3_rotation_r_full", action_by_payload_conjugation(rot, v4n), range(4),
                    "C3 permuting the involutions of C2 x C2, R = Q"))

    c6 = groups.cyclic(6)
    out.append(_ext("c6_inv_c4", action_from_automorphism_images(c6, c4, [_power_map(c4, -1)]), c2k,
                    "C6 acting on C4 through its quotient C2"))
    return out


def _even(perm):
    seen, parity = set(), 0
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        parity += length - 1
    return parity % 2 == 0


def matrix_instances():
    out = []
    for n, p in ((3, 2), (3, 3), (4, 2)):
        Q = groups.unitriangular(n, p)
        out.append(_matrix("ut%df%d_trivial" % (n, p), groups.closure_from_generators("matrix", [], p=p, degree=n), Q,
                           "UT%d(F%d) with trivial G" % (n, p)))
    out.append(_matrix("ut3f3_diagonal", groups.diagonal_group(3, 3), groups.unitriangular(3, 3),
                       "UT3(F3) with the diagonal torus"))
    out.append(_matrix("ut3f2_inner", groups.unitriangular(3, 2), groups.unitriangular(3, 2),
                       "UT3(F2) acting on itself"))
    out.append(_matrix("ut4f3_diagonal", groups.diagonal_group(4, 3), groups.unitriangular(4, 3),
                       "UT4(F3) with the diagonal torus"))
    return out


def negative_controls():
    """Corrupted copies of corpus entries; each must fail at the named place."""
    base = {s["name"]: s for s in extension_instances()}
    out = []
    spec = dict(base["c2_inv_c4"])
    spec.update({"name": "neg_seven_term_delta", "corrupt": {"seven_term": {"map": 2, "swap": [0, 1]}},
                 "note": "swap two images of the connecting map S^G -> H1(G,R)"})
    out.append(spec)
    spec = dict(base["c4_c2_trivial_c2"])
    spec.update({"name": "neg_cuboid_h3", "corrupt": {"cuboid": {"arrow": "h3", "swap": [0, 1]}},
                 "note": "swap two images of the vertical map on H1(-,Q)"})
    out.append(spec)
    return out


def write(root=None):
    root = root or os.path.dirname(corpus_dir())
    for sub, specs in (("corpus", extension_instances() + matrix_instances()), ("negative", negative_controls())):
        d = os.path.join(root, sub)
        os.makedirs(d, exist_ok=True)
        for old in os.listdir(d):
            if old.endswith(".json"):
                os.remove(os.path.join(d, old))
        for spec in specs:
            with open(os.path.join(d, spec["name"] + ".json"), "w", encoding="utf-8") as fh:
                fh.write(dump_json(spec))
    return root


if __name__ == "__main__":
    print(write(sys.argv[1] if len(sys.argv) > 1 else None))
