import itertools

import numpy as np
import pytest

from nacoh import groups
from nacoh.errors import InvalidInput
from nacoh.filtration import (MatrixGGroup, composition_series, group_algebra_span, is_irreducible, radical,
                              radical_powers, refine_to_irreducibles, trivial_matrix_group, unipotent_filtration)

import oracles


@pytest.mark.parametrize("n,p,span", [(3, 2, 4), (3, 3, 4), (4, 2, 7)])
def test_span_and_radical(n, p, span):
    Q = groups.unitriangular(n, p)
    A = group_algebra_span(Q)
    assert A.span_dim == oracles.rank_mod_p(oracles.flat(Q.payloads, p), p) == span
    J = radical(A, Q)
    assert J.span_dim == span - 1
    assert all(not np.tril(m).any() for m in J.matrices())


@pytest.mark.parametrize("n,p,dims", [(3, 2, [3, 1, 0]), (4, 2, [6, 3, 1, 0]), (3, 3, [3, 1, 0])])
def test_radical_powers(n, p, dims):
    Q = groups.unitriangular(n, p)
    J = radical(group_algebra_span(Q), Q)
    got = [P.span_dim for P in radical_powers(J)]
    assert got == dims == oracles.radical_dims(Q)


def test_trivial_group_algebra():
    Q = trivial_matrix_group(3, 2)
    A = group_algebra_span(Q)
    assert A.span_dim == 1
    J = radical(A, Q)
    assert J.span_dim == 0 and radical_powers(J) == [J]


def _commutator_check(Q, chain):
    for top, below in zip(chain, chain[1:]):
        below = set(below)
        for q in range(Q.order):
            for x in top:
                c = Q.mul(Q.mul(Q.inv(q), Q.inv(x)), Q.mul(q, x))
                assert c in below


@pytest.mark.parametrize("n,p,diag,orders", [
    (3, 2, False, [8, 2, 1]),
    (3, 3, True, [27, 3, 1]),
    (4, 2, False, [64, 8, 2, 1]),
])
def test_filtration_chain(n, p, diag, orders):
    Q = groups.unitriangular(n, p)
    G = groups.diagonal_group(n, p) if diag else trivial_matrix_group(n, p)
    f = unipotent_filtration(MatrixGGroup(G, Q))
    assert f.orders == orders == oracles.radical_chain_orders(Q)
    _commutator_check(Q, f.chain)
    assert [m.dimension for m in f.modules] == [int(round(np.log(a // b) / np.log(p)))
                                               for a, b in zip(orders, orders[1:])]


def test_ut3f3_diagonal_characters():
    Q = groups.unitriangular(3, 3)
    G = groups.diagonal_group(3, 3)
    f = unipotent_filtration(MatrixGGroup(G, Q))
    out = f.to_json()
    assert out["layer_dims"] == [2, 1]
    # the center E13 direction is scaled by d1^-1 d3
    for g, d in enumerate(G.payloads):
        m = f.modules[1].matrices[g]
        assert int(m[0, 0]) == (pow(int(d[0, 0]), -1, 3) * int(d[2, 2])) % 3


def test_trivial_action_gives_identity_matrices():
    f = unipotent_filtration(MatrixGGroup(trivial_matrix_group(3, 2), groups.unitriangular(3, 2)))
    for mod in f.modules:
        assert all(np.array_equal(m, np.eye(mod.dimension, dtype=np.int64)) for m in mod.matrices)


def test_elementary_abelian_is_one_layer():
    gens = [groups.elementary_matrix(3, 0, 2, 3), groups.elementary_matrix(3, 0, 1, 3)]
    Q = groups.closure_from_generators("matrix", gens, p=3)
    assert Q.order == 9 and Q.is_abelian
    f = unipotent_filtration(MatrixGGroup(trivial_matrix_group(3, 3), Q))
    assert f.orders == [9, 1] and f.modules[0].dimension == 2


def _invariant_lines(mats, d, p):
    lines = set()
    for v in itertools.product(range(p), repeat=d):
        if not any(v):
            continue
        line = frozenset(tuple((np.array(v) * s) % p) for s in range(1, p))
        if all(tuple((np.array(v) @ m) % p) in line for m in mats):
            lines.add(line)
    return lines


def test_refinement_layers_are_irreducible():
    Q = groups.unitriangular(3, 2)
    f = unipotent_filtration(MatrixGGroup(trivial_matrix_group(3, 2), Q))
    r = refine_to_irreducibles(f)
    assert r.orders == [8, 4, 2, 1]
    _commutator_check(Q, r.chain)
    for m in r.modules:
        assert m.dimension == 1


def test_irreducibility_against_invariant_lines():
    p = 3
    rot = np.array([[0, 1], [2, 0]])  # order 4, no eigenvalue in F3
    assert is_irreducible([rot], 2, p) == (not _invariant_lines([rot], 2, p))
    diag = np.array([[1, 0], [0, 2]])
    assert is_irreducible([diag], 2, p) == (not _invariant_lines([diag], 2, p))
    series = composition_series([diag], 2, p)
    assert [s.shape[0] for s in series] == [0, 1, 2]


def test_ut3f3_diagonal_refinement():
    f = unipotent_filtration(MatrixGGroup(groups.diagonal_group(3, 3), groups.unitriangular(3, 3)))
    r = refine_to_irreducibles(f)
    # the diagonal torus splits the top layer into the E12 and E23 lines
    assert r.orders == [27, 9, 3, 1]


def test_rejects_non_unitriangular():
    G = trivial_matrix_group(2, 3)
    Q = groups.closure_from_generators("matrix", [[[2, 0], [0, 1]]], p=3)
    with pytest.raises(InvalidInput):
        MatrixGGroup(G, Q)
