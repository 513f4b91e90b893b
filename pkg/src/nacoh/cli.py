"""Command-line entry point: ``nacoh <command> [options]``.

Exit status: 0 success, 1 verification failure, 2 input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

import numpy as np

from . import groups, io, verify
from .actions import fixed_elements
from .cocycles import OneCocycle, h1, h2_brute_force, theta_gamma, twist, z1_enumerate, z2_h2
from .config import Settings, settings
from .errors import BudgetExceeded, InvalidInput, VerificationError
from .filtration import MatrixGGroup, refine_to_irreducibles, trivial_matrix_group, unipotent_filtration
from .sequences import (check_exact, cuboid_check, five_lemma_h0_check, five_lemma_h1_check, inf_res,
                        seven_term_sequence)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

COMMANDS = ("h0", "h1", "h2", "twist", "seven-term", "five-lemma", "cuboid", "inf-res", "filtration",
            "complements", "verify-corpus")

_BUDGETS = [f.name for f in dataclasses.fields(Settings) if f.name != "seed"]


def build_parser():
    ap = argparse.ArgumentParser(prog="nacoh", description="Finite non-abelian cohomology toolkit.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("directory", nargs="?", help="corpus directory (verify-corpus only)")
    ap.add_argument("--group", help="acting group G (JSON file)")
    ap.add_argument("--action", help="G-group: action spec with a 'coeff' group, or acting/coeff/action")
    ap.add_argument("--extension", help="central extension spec")
    ap.add_argument("--subgroup", help="elements of G (JSON list or {\"generators\": [...]}) or a file")
    ap.add_argument("--hom", help="homomorphism B -> G: {\"source\": group, \"images\": [...]}")
    ap.add_argument("--matrix-group", dest="matrix_group", help="unitriangular group, optionally with 'acting'")
    ap.add_argument("--cocycle", help="1-cocycle values as a JSON list (twist)")
    ap.add_argument("--out", choices=("json", "text"), default="json")
    ap.add_argument("--seed", type=int, default=None)
    for name in _BUDGETS:
        ap.add_argument("--budget-" + name.replace("_", "-"), dest="budget_" + name, type=int, default=None)
    return ap


def _json_arg(text):
    """Inline JSON or a path to a JSON file."""
    stripped = text.strip()
    if stripped[:1] in "[{":
        try:
            return json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise InvalidInput("inline JSON:%d:%d: %s" % (exc.lineno, exc.colno, exc.msg)) from None
    return io.load_json(text)


def _require(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise InvalidInput("--%s is required for %s" % (n.replace("_", "-"), args.command))


def _ggroup(args):
    _require(args, "action")
    spec = io.load_json(args.action)
    base = os.path.dirname(args.action)
    G = io.group_from_spec(args.group) if args.group else None
    if "type" in spec and "coeff" in spec:
        if G is None:
            if "acting" not in spec:
                raise InvalidInput("no acting group: pass --group or put 'acting' in the action file")
            G = io.group_from_spec(spec["acting"], base)
        return io.action_from_spec(spec, G, io.group_from_spec(spec["coeff"], base), base)
    return io.ggroup_from_spec(spec, base, acting=G)


def _via(args, G):
    if args.subgroup is not None:
        elems = io.elements_from_spec(G, _json_arg(args.subgroup))
        return groups.subgroup(G, groups.subgroup_generators(G, elems))[1]
    if args.hom is not None:
        spec = _json_arg(args.hom)
        src = io.group_from_spec(spec.get("source") or spec.get("group"))
        return io.hom_from_spec(src, G, spec)
    return None


def cmd_h0(args):
    A = _ggroup(args)
    fixed = fixed_elements(A)
    return {"order": len(fixed), "fixed_points": fixed}


def cmd_h1(args):
    return h1(_ggroup(args)).to_json()


def cmd_h2(args):
    A = _ggroup(args)
    out = z2_h2(A).to_json()
    if A.coeff.order ** (A.acting.order ** 2) <= settings.brute_h2_cap:
        out["brute_force_classes"] = h2_brute_force(A)
        out["ok"] = out["brute_force_classes"] == out["class_count"]
    return out


def cmd_twist(args):
    _require(args, "cocycle")
    A = _ggroup(args)
    gamma = OneCocycle(A, [io.element_index(A.coeff, v) for v in _json_arg(args.cocycle)])
    Ag = twist(A, gamma)
    cm = theta_gamma(h1(Ag), gamma, h1(A))
    return {"action": io.action_to_spec(Ag), "h1": h1(Ag).to_json(), "theta": cm.table,
            "theta_bijective": cm.is_bijective(), "ok": cm.is_bijective()}


def _extension(args):
    _require(args, "extension")
    return io.extension_from_spec(args.extension)


def cmd_seven_term(args):
    seq = seven_term_sequence(_extension(args))
    rep = check_exact(seq)
    return {"ok": rep.ok, "sizes": seq.sizes(), "node_names": [n.name for n in seq.nodes], **rep.to_json()}


def _via_list(args, ext):
    via = _via(args, ext.acting)
    if via is not None:
        return [("given", via)]
    return verify.vias(ext)


def cmd_cuboid(args):
    ext = _extension(args)
    checks, failures = 0, []
    for name, via in _via_list(args, ext):
        for gamma in z1_enumerate(ext.Q):
            rep = cuboid_check(ext, via, gamma)
            checks += 1
            if not rep.ok:
                failures.append({"via": name, "gamma": list(gamma.values), "squares": rep.failures})
    return {"ok": not failures, "checks": checks, "failures": failures}


def cmd_five_lemma(args):
    ext = _extension(args)
    verdicts = []
    for name, via in _via_list(args, ext):
        for check in (five_lemma_h1_check, five_lemma_h0_check):
            verdicts.append({"via": name, **check(ext, via).to_json()})
    return {"ok": not any(v["violations"] for v in verdicts), "verdicts": verdicts}


def cmd_inf_res(args):
    A = _ggroup(args)
    if args.subgroup is not None:
        us = [io.elements_from_spec(A.acting, _json_arg(args.subgroup))]
    else:
        us = verify.normal_subgroups(A.acting)
    reports = []
    for u in us:
        r = inf_res(A, u)
        reports.append({"U": u, "ok": r.ok, **r.to_json()})
    return {"ok": all(r["ok"] for r in reports), "reports": reports}


def cmd_filtration(args):
    _require(args, "matrix_group")
    spec = io.load_json(args.matrix_group)
    base = os.path.dirname(args.matrix_group)
    if "coeff" in spec:
        Q = io.group_from_spec(spec["coeff"], base)
        G = io.group_from_spec(spec["acting"], base) if "acting" in spec else None
    else:
        Q, G = io.group_from_spec(spec, base), None
    if args.group:
        G = io.group_from_spec(args.group)
    if G is None:
        G = trivial_matrix_group(Q.degree, Q.p)
    f = unipotent_filtration(MatrixGGroup(G, Q))
    out = f.to_json()
    out["refined"] = refine_to_irreducibles(f).to_json()
    return out


def cmd_complements(args):
    return verify.complement_suite(_ggroup(args))


def cmd_verify_corpus(args):
    directory = args.directory or io.corpus_dir()
    report = verify.verify_corpus(io.load_corpus(directory))
    for w in report["warnings"]:
        args.stderr.write("warning: %s\n" % w)
    return report


HANDLERS = {
    "h0": cmd_h0, "h1": cmd_h1, "h2": cmd_h2, "twist": cmd_twist, "seven-term": cmd_seven_term,
    "five-lemma": cmd_five_lemma, "cuboid": cmd_cuboid, "inf-res": cmd_inf_res, "filtration": cmd_filtration,
    "complements": cmd_complements, "verify-corpus": cmd_verify_corpus,
}


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return obj


def _text(obj, prefix=""):
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in
                                                         (v.values() if isinstance(v, dict) else v)):
                lines.append("%s%s:" % (prefix, k))
                lines.extend(_text(v, prefix + "  "))
            else:
                lines.append("%s%s: %s" % (prefix, k, json.dumps(v, sort_keys=True)))
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            lines.append("%s- [%d]" % (prefix, i))
            lines.extend(_text(v, prefix + "  "))
    else:
        lines.append(prefix + json.dumps(obj))
    return lines


def render(report, fmt):
    report = _plain(report)
    if fmt == "text":
        return "\n".join(_text(report)) + "\n"
    return io.dump_json(report)


def run(argv=None, stdout=None, stderr=None):
    """Parse ``argv``, run the command, write the report; returns the exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    overrides = {name: getattr(args, "budget_" + name) for name in _BUDGETS
                 if getattr(args, "budget_" + name) is not None}
    if args.seed is not None:
        overrides["seed"] = args.seed
    args.stderr = stderr
    saved = dataclasses.replace(settings)
    try:
        for k, v in overrides.items():
            setattr(settings, k, v)
        report = HANDLERS[args.command](args)
    except InvalidInput as exc:
        stderr.write("input error: %s\n" % exc)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        stderr.write("budget exceeded: %s\n" % exc)
        return EXIT_BUDGET
    except VerificationError as exc:
        stderr.write("verification failed: %s\n" % exc)
        return EXIT_FAIL
    finally:
        for field in dataclasses.fields(Settings):
            setattr(settings, field.name, getattr(saved, field.name))
    stdout.write(render(report, args.out))
    return EXIT_FAIL if report.get("ok") is False else EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
