import numpy as np
import pytest

from nacoh import groups
from nacoh.actions import (GGroup, NotAModule, action_by_conjugation, action_by_payload_conjugation,
                           action_from_automorphism_images, detect_module, fixed_elements, fixed_points,
                           quotient_ggroup, restrict_action, semidirect_product, sub_ggroup, trivial_action)
from nacoh.errors import InvalidInput, NotEquivariant, VerificationError

import oracles


def inversion(Q):
    return [Q.inv(q) for q in range(Q.order)]


def test_identity_images_give_the_trivial_action():
    G, Q = groups.cyclic(2), groups.cyclic(3)
    A = action_from_automorphism_images(G, Q, [list(range(3))])
    assert A.is_trivial


def test_inversion_on_c3_is_nontrivial_and_on_c2_trivial():
    G = groups.cyclic(2)
    C3, C2 = groups.cyclic(3), groups.cyclic(2)
    A = action_from_automorphism_images(G, C3, [inversion(C3)])
    assert not A.is_trivial
    assert action_from_automorphism_images(G, C2, [inversion(C2)]).is_trivial


def test_rejects_non_automorphisms_and_relation_violations():
    G, Q = groups.cyclic(2), groups.cyclic(4)
    with pytest.raises(InvalidInput):
        action_from_automorphism_images(G, Q, [[0, 2, 2, 0]])
    C3 = groups.cyclic(3)
    # x -> -x has order 2, so it cannot be the image of a generator of C3
    with pytest.raises(InvalidInput):
        action_from_automorphism_images(C3, Q, [inversion(Q)])


def test_conjugation_inside_s3_is_inversion():
    S3 = groups.symmetric(3)
    t = S3.index_of((1, 0, 2))
    c = S3.index_of((1, 2, 0))
    Gs = groups.subgroup(S3, [t])
    Qs = groups.subgroup(S3, [c])
    A = action_by_conjugation(S3, Gs, Qs)
    Q = A.coeff
    assert [A.act(q, 1) for q in range(3)] == [Q.inv(q) for q in range(3)]
    with pytest.raises(NotEquivariant):
        action_by_conjugation(S3, Qs, Gs)


def test_diagonal_conjugation_scales_root_subgroups():
    D = groups.diagonal_group(3, 3)
    U = groups.unitriangular(3, 3)
    A = action_by_payload_conjugation(D, U)
    for g, d in enumerate(D.payloads):
        dd = np.diag(d)
        for i, j in ((0, 1), (1, 2), (0, 2)):
            e = groups.elementary_matrix(3, i, j, 3)
            img = U.payloads[A.act(U.index_of(e), g)]
            # d^-1 (I + E_ij) d = I + d_i^-1 d_j E_ij
            assert img[i, j] == (pow(int(dd[i]), -1, 3) * int(dd[j])) % 3


def test_fixed_points_against_brute_force():
    G = groups.cyclic(2)
    for n in (3, 4, 6):
        Q = groups.cyclic(n)
        A = action_from_automorphism_images(G, Q, [inversion(Q)])
        brute = oracles.fixed(oracles.from_nacoh(Q), A.table.tolist(), G.order)
        assert fixed_elements(A) == brute
        assert fixed_points(A)[0].order == len(brute)
    assert fixed_elements(trivial_action(G, groups.cyclic(5))) == list(range(5))
    Q4 = groups.cyclic(4)
    assert fixed_elements(action_from_automorphism_images(G, Q4, [inversion(Q4)])) == [0, Q4.power(1, 2)]


def test_semidirect_products():
    G, C3 = groups.cyclic(2), groups.cyclic(3)
    P = semidirect_product(trivial_action(G, C3)).group
    assert P.order == 6 and P.is_abelian
    S = semidirect_product(action_from_automorphism_images(G, C3, [inversion(C3)])).group
    assert S.order == 6 and not S.is_abelian
    assert groups.is_isomorphic_table(S, groups.symmetric(3))


def test_restriction():
    S3 = groups.symmetric(3)
    C4 = groups.cyclic(4)
    sign = [list(range(4)) if g == S3.index_of((1, 2, 0)) else inversion(C4) for g in S3.generators]
    A = action_from_automorphism_images(S3, C4, sign)
    ident = groups.identity_hom(S3)
    assert np.array_equal(restrict_action(A, ident).table, A.table)
    triv = groups.trivial_hom(groups.cyclic(2), S3)
    assert restrict_action(A, triv).is_trivial
    t = S3.index_of((1, 0, 2))
    B, emb = groups.subgroup(S3, [t])
    R = restrict_action(A, emb)
    assert [R.act(q, 1) for q in range(4)] == inversion(C4)
    with pytest.raises(InvalidInput):
        restrict_action(A, groups.identity_hom(groups.symmetric(3)))


def test_sub_and_quotient_ggroups():
    G, C4 = groups.cyclic(2), groups.cyclic(4)
    A = action_from_automorphism_images(G, C4, [inversion(C4)])
    half = [0, C4.power(1, 2)]
    sub = sub_ggroup(A, groups.subgroup(C4, half))
    assert sub.coeff.order == 2 and sub.is_trivial
    quo, q = quotient_ggroup(A, half)
    assert quo.coeff.order == 2 and quo.is_trivial


def test_module_detection():
    V = groups.closure_from_generators("permutation", [[1, 0, 2, 3], [0, 1, 3, 2]])
    mod = detect_module(trivial_action(groups.cyclic(3), V))
    assert mod.dimension == 2 and mod.prime == 2
    assert all(np.array_equal(m, np.eye(2, dtype=np.int64)) for m in mod.matrices)
    mod.verify()
    bad = detect_module(trivial_action(groups.cyclic(2), groups.cyclic(4)))
    assert isinstance(bad, NotAModule) and not bad
    U = groups.unitriangular(3, 2)
    z = sorted(groups.center(U)[1].image.tolist())
    layer, _ = quotient_ggroup(action_by_payload_conjugation(U, U), z)
    assert detect_module(layer).dimension == 2


def test_ggroup_verification_catches_bad_tables():
    G, Q = groups.cyclic(2), groups.cyclic(3)
    with pytest.raises(VerificationError):
        GGroup(G, Q, np.array([[0, 1], [1, 2], [2, 0]]))
