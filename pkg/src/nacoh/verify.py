"""Property suites run on corpus instances.

Every suite returns a JSON-ready dict with an ``ok`` flag.  Reports contain
no timings or object ids, so identical inputs give identical output.
"""

from __future__ import annotations

from . import groups
from .cocycles import h1, h2_brute_force, theta_gamma, pushforward_cocycle, z1_enumerate, z2_h2
from .complements import classify_complements, complements
from .config import settings
from .errors import BudgetExceeded, NacohError
from .filtration import refine_to_irreducibles, unipotent_filtration
from .groups import GroupHom
from .sequences import (check_exact, cuboid_check, five_lemma_h0_check, five_lemma_h1_check,
                        filtration_h1_check, inf_res, morphism_from_subgroup, morphism_to_quotient,
                        identity_morphism, seven_term_sequence, subgroup_restrictions, twisted_extension)


def seven_term(ext, corrupt=None):
    seq = seven_term_sequence(ext)
    if corrupt:
        x, y = corrupt["swap"]
        seq = seq.corrupted(corrupt["map"], x, y)
    rep = check_exact(seq)
    out = {"ok": rep.ok, "sizes": seq.sizes()}
    if not rep.ok:
        out["failures"] = rep.failures
        out["basepoint_failures"] = rep.basepoint_failures
    return out


def twisting(ext):
    """theta_gamma bijective and the twisted sequence exact, for every gamma in Z1(G, Q)."""
    bad = []
    z1 = z1_enumerate(ext.Q)
    base_q, base_s = h1(ext.Q), h1(ext.S)
    for gamma in z1:
        tw = twisted_extension(ext, gamma)
        exact = check_exact(seven_term_sequence(tw)).ok
        tq = theta_gamma(h1(tw.Q), gamma, base_q).is_bijective()
        ts = theta_gamma(h1(tw.S), pushforward_cocycle(gamma, ext.pi, ext.S), base_s).is_bijective()
        if not (exact and tq and ts):
            bad.append({"gamma": list(gamma.values), "exact": exact, "theta_Q": tq, "theta_S": ts})
    return {"ok": not bad, "cocycles": len(z1), "failures": bad}


def vias(ext, spec=None):
    """Restrictions to one subgroup per conjugacy class, a non-injective map, and morphisms."""
    G = ext.acting
    out = []
    for emb in subgroup_restrictions(G):
        out.append(("restrict|B|=%d" % emb.source.order, emb))
    if G.order > 1:
        out.append(("trivial_from_c2", groups.trivial_hom(groups.cyclic(2), G)))
    out.append(("identity_morphism", identity_morphism(ext)))
    spec = spec or {}
    for i, n in enumerate(spec.get("quotients", [])):
        out.append(("quotient_%d" % i, morphism_to_quotient(ext, n)))
    for i, q0 in enumerate(spec.get("subgroups", [])):
        out.append(("subgroup_%d" % i, morphism_from_subgroup(ext, q0)))
    return out


def _via_for(ext, via):
    # morphisms from a subgroup end at ext: the diagram starts at their source
    if hasattr(via, "source") and hasattr(via, "zeta"):
        return via.source, via
    return ext, via


def cuboids(ext, spec=None, corrupt=None):
    checks, failures = 0, []
    for name, via in vias(ext, spec):
        top, v = _via_for(ext, via)
        for gamma in z1_enumerate(top.Q):
            rep = cuboid_check(top, v, gamma, corrupt=corrupt)
            checks += 1
            if not rep.ok:
                failures.append({"via": name, "gamma": list(gamma.values),
                                 "faces": [f["square"] for f in rep.failures]})
    return {"ok": not failures, "checks": checks, "failures": failures}


def five_lemma(ext, spec=None):
    """All five-lemma verdicts over the via choices, with counters."""
    verdicts = []
    for name, via in vias(ext, spec):
        top, v = _via_for(ext, via)
        b_order = top.acting.order
        proper = isinstance(v, GroupHom) and len(v.image_set()) < top.acting.order
        for check in (five_lemma_h1_check, five_lemma_h0_check):
            verdict = check(top, v)
            verdicts.append({"via": name, "B_order": b_order, "B_proper": bool(proper), **verdict.to_json()})
    evaluations = sum(len(v["hypotheses"]) for v in verdicts)
    true_hyps = sum(sum(1 for h in v["hypotheses"].values() if h) for v in verdicts)
    proper_true = sum(1 for v in verdicts if v["B_proper"] and any(v["hypotheses"].values()))
    violations = [v for v in verdicts if v["violations"]]
    return {"ok": not violations, "evaluations": evaluations, "hypotheses_true": true_hyps,
            "proper_with_true_hypotheses": proper_true, "violations": violations, "verdicts": verdicts}


def complement_suite(A):
    comps = complements(A)
    comps.verify()
    cls = classify_complements(A, comps)
    out = comps.to_json()
    out.update({"ok": cls.bijective, "h1_classes": len(cls.h1), "z1_size": len(comps.cocycles),
                "search_ran": comps.search is not None})
    return out


def h2_suite(A):
    H = z2_h2(A)
    out = {"snf_classes": H.class_count, "z2_order": H.z2_order, "b2_order": H.b2_order}
    if A.coeff.order ** (A.acting.order ** 2) <= settings.brute_h2_cap:
        out["brute_classes"] = h2_brute_force(A)
        out["ok"] = out["brute_classes"] == H.class_count
    else:
        out["ok"] = True
    return out


def normal_subgroups(G, proper=True):
    subs = groups.all_subgroups(G, cap=max(64, G.order))
    out = [list(s) for s in subs if groups.is_normal(G, list(s))]
    if proper:
        out = [s for s in out if 1 < len(s) < G.order]
    return out


def inf_res_suite(A):
    reports = []
    for u in normal_subgroups(A.acting):
        r = inf_res(A, u)
        reports.append({"U": u, "ok": r.ok, **r.to_json()})
    return {"ok": all(r["ok"] for r in reports), "instances": len(reports), "reports": reports}


def filtration_suite(M):
    f = unipotent_filtration(M)
    r = refine_to_irreducibles(f)
    out = {"filtration": f.to_json(), "refined": r.to_json()}
    if M.Q.order ** max(1, len(M.G.generators)) <= settings.z1_budget and M.Q.order <= 64:
        v = filtration_h1_check(M.action, f.chain)
        out["h1_check"] = v.ok
        out["ok"] = v.ok
    else:
        out["ok"] = True
    return out


EXTENSION_SUITES = ("seven_term", "twisting", "cuboid", "five_lemma", "complements", "h2", "inf_res")


def run_instance(inst, suites=None):
    """Run the applicable suites on one instance; errors are recorded, not raised."""
    report = {"name": inst.name, "kind": inst.kind}
    corrupt = inst.spec.get("corrupt", {})
    try:
        obj = inst.build()
    except NacohError as exc:
        return {**report, "ok": False, "error": "%s: %s" % (type(exc).__name__, exc)}
    if inst.kind == "matrix":
        plan = {"filtration": lambda: filtration_suite(obj)}
    else:
        plan = {
            "seven_term": lambda: seven_term(obj, corrupt.get("seven_term")),
            "twisting": lambda: twisting(obj),
            "cuboid": lambda: cuboids(obj, inst.spec, _cuboid_corruption(corrupt)),
            "five_lemma": lambda: five_lemma(obj, inst.spec),
            "complements": lambda: complement_suite(obj.Q),
            "h2": lambda: h2_suite(obj.R),
            "inf_res": lambda: inf_res_suite(obj.Q),
        }
    results = {}
    for name, fn in plan.items():
        if suites is not None and name not in suites:
            continue
        try:
            results[name] = fn()
        except BudgetExceeded as exc:
            results[name] = {"ok": True, "skipped": "budget: %s" % exc}
        except NacohError as exc:
            results[name] = {"ok": False, "error": "%s: %s" % (type(exc).__name__, exc)}
    report["suites"] = results
    report["ok"] = all(r["ok"] for r in results.values())
    return report


def _cuboid_corruption(corrupt):
    c = corrupt.get("cuboid")
    if not c:
        return None
    return {c["arrow"]: tuple(c["swap"])}


def verify_corpus(instances, suites=None):
    reports = [run_instance(inst, suites) for inst in sorted(instances, key=lambda i: i.name)]
    return {"ok": all(r["ok"] for r in reports), "instances": len(reports),
            "failed": [r["name"] for r in reports if not r["ok"]], "reports": reports,
            "warnings": [] if reports else ["empty corpus: nothing was checked"]}
