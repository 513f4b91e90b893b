"""Acceptance criteria 1-9, each timed against its runtime limit.

Run with ``pytest tests/test_acceptance.py`` (the verdicts appear in the
terminal summary) or directly with ``python3 tests/test_acceptance.py``.
"""

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from nacoh import groups, io, verify  # noqa: E402
from nacoh.actions import action_from_automorphism_images, semidirect_product, trivial_action  # noqa: E402
from nacoh.cocycles import h1, z1_enumerate, z2_h2  # noqa: E402
from nacoh.complements import classify_complements, complements  # noqa: E402
from nacoh.config import settings  # noqa: E402
from nacoh.filtration import (MatrixGGroup, is_irreducible, refine_to_irreducibles,  # noqa: E402
                              trivial_matrix_group, unipotent_filtration)
from nacoh.sequences import CUBOID_FACES, filtration_h1_check, subgroup_restrictions  # noqa: E402

import oracles  # noqa: E402
from acceptance_log import criterion  # noqa: E402


def _corpus(kind):
    return [i for i in io.load_corpus(io.corpus_dir("corpus")) if i.kind == kind]


def _negative(name):
    return next(i for i in io.load_corpus(io.corpus_dir("negative")) if i.name == name)


def test_criterion_1_seven_term_exactness():
    with criterion(1, "seven-term exactness", 10):
        insts = _corpus("extension")
        names = {i.name for i in insts}
        assert len(insts) >= 20
        assert {"c2_inv_c4", "ut3f2_center_trivial_c2", "ut3f2_center_inner", "c4_c2_trivial_c2"} <= names
        for inst in insts:
            out = verify.seven_term(inst.build())
            assert out["ok"], inst.name
        assert verify.seven_term(_corpus_by_name("c2_inv_c4"))["sizes"] == [2] * 7


def _corpus_by_name(name):
    return next(i for i in _corpus("extension") if i.name == name).build()


def test_criterion_2_twisting_coherence():
    with criterion(2, "twisting coherence", 60):
        total = 0
        for inst in _corpus("extension"):
            out = verify.twisting(inst.build())
            assert out["ok"], (inst.name, out["failures"])
            total += out["cocycles"]
        assert total > 0


def test_criterion_3_cuboids():
    with criterion(3, "cuboid commutativity", 120):
        checks = 0
        for inst in _corpus("extension"):
            out = verify.cuboids(inst.build(), inst.spec)
            assert out["ok"], (inst.name, out["failures"])
            checks += out["checks"]
        assert checks > 0
        neg = _negative("neg_cuboid_h3")
        out = verify.run_instance(neg, suites=("cuboid",))
        cub = out["suites"]["cuboid"]
        assert not cub["ok"] and cub["failures"]
        faces = {f for fail in cub["failures"] for f in fail["faces"]}
        # only faces through the corrupted arrow can break
        through_h3 = {face[0] for face in CUBOID_FACES if "h3" in face[1:]}
        assert faces and faces <= through_h3


def test_criterion_4_five_lemma_harness():
    with criterion(4, "five-lemma falsification harness", 300):
        evaluations = true_hyps = proper_true = 0
        for inst in _corpus("extension"):
            out = verify.five_lemma(inst.build(), inst.spec)
            assert not out["violations"], (inst.name, out["violations"])
            evaluations += out["evaluations"]
            true_hyps += out["hypotheses_true"]
            proper_true += out["proper_with_true_hypotheses"]
        # filtration induction, restricted to one subgroup per conjugacy class
        for inst in _corpus("matrix"):
            M = inst.build()
            if M.Q.order > 27 or M.G.order > 8:
                continue
            f = unipotent_filtration(M)
            for emb in subgroup_restrictions(M.G):
                v = filtration_h1_check(M.action, f.chain, rho=emb)
                assert not v.violations, inst.name
                evaluations += 1
                if v.hypotheses["layers"]:
                    true_hyps += 1
                    proper_true += emb.source.order < M.G.order
        assert evaluations >= 50 and true_hyps >= 10 and proper_true >= 3, (evaluations, true_hyps, proper_true)


def test_criterion_5_complements():
    with criterion(5, "complement correspondence", 30):
        c2, c3 = groups.cyclic(2), groups.cyclic(3)
        A = action_from_automorphism_images(c2, c3, [[c3.inv(q) for q in range(3)]])
        assert len(z1_enumerate(A)) == 3
        comps = complements(A, search=True)
        assert len(comps) == 3 and len(comps.classes) == 1 and len(h1(A)) == 1
        assert groups.is_isomorphic_table(semidirect_product(A).group, groups.symmetric(3))
        # raw subgroups of the product, independently of the package
        T = oracles.from_nacoh(comps.product.group)
        raw = [s for s in oracles.subgroups(T) if len(s) == 2 and not (s - {0}) & set(range(3))]
        assert len(raw) == 3
        searched = 0
        for inst in _corpus("extension"):
            out = verify.complement_suite(inst.build().Q)
            assert out["ok"], inst.name
            searched += out["search_ran"]
        assert searched > 0


def test_criterion_6_filtration():
    with criterion(6, "filtration correctness", 30):
        expected = [((3, 2), [8, 2, 1], [3, 1, 0]), ((3, 3), [27, 3, 1], [3, 1, 0]),
                    ((4, 2), [64, 8, 2, 1], [6, 3, 1, 0])]
        for (n, p), orders, dims in expected:
            Q = groups.unitriangular(n, p)
            f = unipotent_filtration(MatrixGGroup(trivial_matrix_group(n, p), Q))
            assert f.orders == orders == oracles.radical_chain_orders(Q)
            assert f.radical_dims == dims == oracles.radical_dims(Q)
            f.verify()
        for inst in _corpus("matrix"):
            f = unipotent_filtration(inst.build())
            f.verify()
            r = refine_to_irreducibles(f)
            r.verify()
            for i, mod in enumerate(r.modules):
                mats = [mod.matrices[g] for g in r.layers[i].acting.generators]
                assert is_irreducible(mats, mod.dimension, mod.prime), (inst.name, i)


def test_criterion_7_h2_equivalence():
    with criterion(7, "H2 solver equivalence", 60):
        c2, c3 = groups.cyclic(2), groups.cyclic(3)
        for G, expected in ((c2, 2), (c3, 1)):
            A = trivial_action(G, c2)
            assert z2_h2(A).class_count == expected
            assert oracles.h2_count(oracles.from_nacoh(G), oracles.from_nacoh(c2), A.table.tolist()) == expected
        compared = 0
        for inst in _corpus("extension"):
            R = inst.build().R
            out = verify.h2_suite(R)
            assert out["ok"], inst.name
            if R.coeff.order ** (R.acting.order ** 2) <= settings.brute_h2_cap:
                assert out["brute_classes"] == out["snf_classes"]
                compared += 1
        assert compared >= 10


def test_criterion_8_inflation_restriction():
    with criterion(8, "inflation-restriction", 60):
        with_u = 0
        confirmed = 0
        for inst in _corpus("extension"):
            out = verify.inf_res_suite(inst.build().Q)
            assert out["ok"], inst.name
            if out["instances"]:
                with_u += 1
            for rep in out["reports"]:
                assert all(e["exact"] for e in rep["exactness"]["nodes"])
                for c in rep["criteria"].values():
                    if c["holds"]:
                        assert c["conclusion"]
                        confirmed += 1
        assert with_u >= 5 and confirmed > 0


def test_criterion_9_determinism():
    with criterion(9, "determinism", 600):
        insts = io.load_corpus(io.corpus_dir("corpus"))
        report = verify.verify_corpus(insts)
        assert report["ok"], report["failed"]
        first = io.dump_json(report)
        second = io.dump_json(verify.verify_corpus(io.load_corpus(io.corpus_dir("corpus"))))
        assert first.encode() == second.encode()


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
