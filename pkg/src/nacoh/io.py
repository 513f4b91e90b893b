"""JSON specs for groups, actions, extensions and corpus instances.

Element references are integer indices into the enumeration produced by the
group builders, which is deterministic for a given generator list.  Where a
spec names elements it may also give payloads (permutation image lists or
matrices) instead of indices.
"""

from __future__ import annotations

import json
import os

import numpy as np

from . import groups
from .actions import (GGroup, action_by_payload_conjugation, action_from_automorphism_images,
                      trivial_action)
from .errors import InvalidInput, VerificationError
from .groups import FiniteGroup, GroupHom


def load_json(path):
    """Parse a JSON file; errors carry the file position."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InvalidInput("cannot read %s: %s" % (path, exc.strerror)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput("%s:%d:%d: %s" % (path, exc.lineno, exc.colno, exc.msg)) from None


def dump_json(obj):
    """Canonical serialization: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=1, separators=(",", ": ")) + "\n"


def _resolve(spec, base):
    if isinstance(spec, str):
        path = spec if os.path.isabs(spec) or base is None else os.path.join(base, spec)
        return load_json(path), os.path.dirname(path)
    return spec, base


def _need(spec, key, what):
    if not isinstance(spec, dict):
        raise InvalidInput("%s spec must be a JSON object" % what)
    if key not in spec:
        raise InvalidInput("%s spec is missing %r" % (what, key))
    return spec[key]


# -- groups ----------------------------------------------------------------

_BUILDERS = {
    "trivial": lambda: groups.trivial_group(),
    "cyclic": groups.cyclic,
    "symmetric": groups.symmetric,
    "dihedral": groups.dihedral,
    "unitriangular": groups.unitriangular,
    "diagonal": groups.diagonal_group,
}


def group_from_spec(spec, base=None):
    spec, base = _resolve(spec, base)
    if isinstance(spec, dict) and "builder" in spec:
        name = spec["builder"]
        if name not in _BUILDERS:
            raise InvalidInput("unknown group builder %r" % (name,))
        try:
            return _BUILDERS[name](*spec.get("args", []))
        except TypeError as exc:
            raise InvalidInput("bad arguments for %s: %s" % (name, exc)) from None
    domain = _need(spec, "domain", "group")
    labels = spec.get("labels")
    if domain == "permutation":
        return groups.closure_from_generators("permutation", _need(spec, "generators", "group"),
                                              degree=spec.get("degree"), labels=labels)
    if domain == "matrix":
        return groups.closure_from_generators("matrix", _need(spec, "generators", "group"),
                                              p=_need(spec, "p", "matrix group"),
                                              degree=spec.get("dim", spec.get("degree")), labels=labels)
    if domain == "table":
        table = spec.get("table", spec.get("generators"))
        if table is None:
            raise InvalidInput("table group spec needs 'table'")
        t = np.asarray(table, dtype=np.int64)
        gens = spec.get("table_generators")
        if t.ndim == 2 and t.shape[0] == t.shape[1] and np.array_equal(t[0], np.arange(len(t))) \
                and np.array_equal(t[:, 0], np.arange(len(t))):
            # already numbered with identity 0: keep the indices as given
            try:
                if gens is None:
                    gens = groups._greedy_generators(t, 0)
                return FiniteGroup(t, gens, domain="table", payloads=list(range(len(t))), labels=labels)
            except VerificationError as exc:
                raise InvalidInput("table is not a group table: %s" % exc) from None
        return groups.from_table(t, gens, labels=labels)
    raise InvalidInput("unknown group domain %r" % (domain,))


def group_to_spec(G):
    if G.domain == "permutation":
        out = {"domain": "permutation", "degree": G.degree,
               "generators": [list(G.payloads[g]) for g in G.generators]}
    elif G.domain == "matrix":
        out = {"domain": "matrix", "dim": G.degree, "p": G.p,
               "generators": [G.payloads[g].tolist() for g in G.generators]}
    else:
        out = {"domain": "table", "table": G.cayley.tolist(), "table_generators": list(G.generators)}
    if G.labels is not None:
        out["labels"] = list(G.labels)
    return out


def element_index(G, ref):
    """An element given as an index or as a payload."""
    if isinstance(ref, int) and not isinstance(ref, bool):
        if not 0 <= ref < G.order:
            raise InvalidInput("element index %d out of range for a group of order %d" % (ref, G.order))
        return ref
    return G.index_of(ref)


def elements_from_spec(G, spec):
    """A subset given as a list of references or ``{"generators": [...]}`` (closed up)."""
    if isinstance(spec, dict):
        gens = [element_index(G, r) for r in _need(spec, "generators", "subgroup")]
        return groups.subgroup_elements(G, gens)
    if not isinstance(spec, list):
        raise InvalidInput("element set must be a list or {\"generators\": [...]}")
    return sorted({element_index(G, r) for r in spec})


def hom_from_spec(source, target, spec):
    """``{"images": [...]}`` gives generator images; ``{"table": [...]}`` the full map."""
    if "table" in spec:
        return GroupHom(source, target, [element_index(target, r) for r in spec["table"]])
    images = [element_index(target, r) for r in _need(spec, "images", "homomorphism")]
    return groups.hom_from_generator_images(source, target, images)


# -- actions ---------------------------------------------------------------


def action_from_spec(spec, G, Q, base=None):
    spec, base = _resolve(spec, base)
    kind = _need(spec, "type", "action")
    if kind == "trivial":
        return trivial_action(G, Q)
    if kind == "conjugation":
        return action_by_payload_conjugation(G, Q)
    if kind == "generator_images":
        if "automorphisms" in spec:
            auts = [[element_index(Q, r) for r in a] for a in spec["automorphisms"]]
        else:
            auts = [groups.hom_from_generator_images(Q, Q, [element_index(Q, r) for r in imgs]).image
                    for imgs in _need(spec, "images", "action")]
        return action_from_automorphism_images(G, Q, auts)
    raise InvalidInput("unknown action type %r" % (kind,))


def action_to_spec(A):
    if A.is_trivial:
        return {"type": "trivial"}
    return {"type": "generator_images",
            "automorphisms": [A.table[:, g].tolist() for g in A.acting.generators]}


def ggroup_from_spec(spec, base=None, acting=None):
    """``{"acting": group, "coeff": group, "action": action}``; ``acting`` overrides the file."""
    spec, base = _resolve(spec, base)
    G = acting if acting is not None else group_from_spec(_need(spec, "acting", "G-group"), base)
    Q = group_from_spec(_need(spec, "coeff", "G-group"), base)
    return action_from_spec(spec.get("action", {"type": "trivial"}), G, Q, base)


def ggroup_to_spec(A):
    return {"acting": group_to_spec(A.acting), "coeff": group_to_spec(A.coeff), "action": action_to_spec(A)}


# -- extensions ------------------------------------------------------------


def extension_from_spec(spec, base=None):
    """Either a G-group with a central ``kernel`` or three G-groups with ``iota`` and ``pi``."""
    from .sequences import CentralExtension, central_extension_from_subgroup

    spec, base = _resolve(spec, base)
    name = spec.get("name")
    if "kernel" in spec:
        A = ggroup_from_spec(spec, base)
        ext = central_extension_from_subgroup(A, elements_from_spec(A.coeff, spec["kernel"]), name=name)
        if "sigma" in spec:
            ext = ext.with_section([element_index(A.coeff, r) for r in spec["sigma"]])
        return ext
    G = group_from_spec(_need(spec, "acting", "extension"), base)
    parts = {}
    for k in ("R", "Q", "S"):
        sub = _need(spec, k, "extension")
        parts[k] = action_from_spec(sub.get("action", {"type": "trivial"}), G, group_from_spec(sub["group"], base), base)
    iota = hom_from_spec(parts["R"].coeff, parts["Q"].coeff, _need(spec, "iota", "extension"))
    pi = hom_from_spec(parts["Q"].coeff, parts["S"].coeff, _need(spec, "pi", "extension"))
    sigma = spec.get("sigma")
    if sigma is not None:
        sigma = [element_index(parts["Q"].coeff, r) for r in sigma]
    return CentralExtension(parts["R"], parts["Q"], parts["S"], iota, pi, sigma, name=name)


def extension_to_spec(ext):
    out = ggroup_to_spec(ext.Q)
    out["kernel"] = sorted(int(x) for x in ext.iota.image)
    if ext.name:
        out["name"] = ext.name
    return out


# -- corpus instances --------------------------------------------------------


class Instance:
    """A corpus entry: ``kind`` is "extension" or "matrix"; ``spec`` is the parsed JSON."""

    def __init__(self, name, kind, spec, path=None):
        self.name = name
        self.kind = kind
        self.spec = spec
        self.path = path
        self._built = None

    def __repr__(self):
        return "<Instance %s (%s)>" % (self.name, self.kind)

    def build(self):
        if self._built is None:
            base = os.path.dirname(self.path) if self.path else None
            if self.kind == "extension":
                self._built = extension_from_spec(self.spec, base)
            elif self.kind == "matrix":
                from .filtration import MatrixGGroup

                G = group_from_spec(_need(self.spec, "acting", "matrix instance"), base)
                Q = group_from_spec(_need(self.spec, "coeff", "matrix instance"), base)
                self._built = MatrixGGroup(G, Q)
            else:
                raise InvalidInput("unknown instance kind %r" % (self.kind,))
        return self._built


def load_instance(path):
    spec = load_json(path)
    name = spec.get("name") or os.path.splitext(os.path.basename(path))[0]
    return Instance(name, spec.get("kind", "extension"), spec, path)


def load_corpus(directory):
    """Every ``*.json`` in a directory, sorted by file name."""
    if not os.path.isdir(directory):
        raise InvalidInput("not a directory: %s" % directory)
    names = sorted(f for f in os.listdir(directory) if f.endswith(".json"))
    return [load_instance(os.path.join(directory, f)) for f in names]


def corpus_dir(which="corpus"):
    """Path of the shipped corpus (``"corpus"``) or negative controls (``"negative"``)."""
    return os.path.join(os.path.dirname(__file__), "data", which)
