"""Deterministic JSON serialization of workspaces: an index category plus
named presheaves, morphisms, category objects, and maps to check.

Same value => byte-identical text: elements are encoded canonically, all
dictionary keys are sorted, and tables are keyed by the compact JSON of the
encoded element.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .elements import Atom, Element, Fam, FinFunction, FinSet, Tup
from .fincat import DEFAULT_BOUND, FiniteCategory
from .topos import NatTrans, Presheaf, Topos
from .segal import CategoryObject, composable_pairs, validate_category_object

FORMAT_VERSION = 1


class WorkspaceError(ValueError):
    pass


# ---------------------------------------------------------------------------
# element codec


def encode_element(e: Element):
    if isinstance(e, Atom):
        return ["a", e.name]
    if isinstance(e, Tup):
        return ["t", [encode_element(x) for x in e.items]]
    if isinstance(e, Fam):
        return ["f", [[encode_element(k), encode_element(v)] for k, v in e.entries]]
    raise WorkspaceError(f"not an element: {e!r}")


def decode_element(data) -> Element:
    if not isinstance(data, list) or len(data) != 2:
        raise WorkspaceError(f"bad element encoding: {data!r}")
    tag, body = data
    if tag == "a":
        return Atom(body)
    if tag == "t":
        return Tup(decode_element(x) for x in body)
    if tag == "f":
        return Fam((decode_element(k), decode_element(v)) for k, v in body)
    raise WorkspaceError(f"bad element tag: {tag!r}")


def element_key(e: Element) -> str:
    return json.dumps(encode_element(e), separators=(",", ":"))


def decode_key(s: str) -> Element:
    return decode_element(json.loads(s))


def _encode_table(f: FinFunction) -> dict:
    return {element_key(k): encode_element(v) for k, v in f.table.items()}


def _decode_table(dom: FinSet, cod: FinSet, data: dict) -> FinFunction:
    table = {decode_key(k): decode_element(v) for k, v in data.items()}
    return FinFunction(dom, cod, table)


def encode_category(C: FiniteCategory) -> dict:
    return {
        "objects": [encode_element(o) for o in C.objects],
        "morphisms": [encode_element(m) for m in C.morphisms],
        "src": _encode_table(C.src),
        "tgt": _encode_table(C.tgt),
        "identity": _encode_table(C.identity),
        "comp": sorted(
            (
                [encode_element(g), encode_element(f), encode_element(h)]
                for (g, f), h in C.comp.items()
            ),
        ),
    }


def decode_category(data: dict) -> FiniteCategory:
    objs = FinSet(decode_element(o) for o in data["objects"])
    mors = FinSet(decode_element(m) for m in data["morphisms"])
    src = _decode_table(mors, objs, data["src"])
    tgt = _decode_table(mors, objs, data["tgt"])
    idf = _decode_table(objs, mors, data["identity"])
    comp = {
        (decode_element(g), decode_element(f)): decode_element(h)
        for g, f, h in data["comp"]
    }
    return FiniteCategory(objs, mors, src, tgt, idf, comp)


def encode_presheaf(X: Presheaf) -> dict:
    return {
        "at": {
            element_key(c): [encode_element(x) for x in s] for c, s in X.at.items()
        },
        "restrict": {
            element_key(u): _encode_table(f) for u, f in X.restrict.items()
        },
    }


def decode_presheaf(T: Topos, data: dict) -> Presheaf:
    at = {
        decode_key(c): FinSet(decode_element(x) for x in xs)
        for c, xs in data["at"].items()
    }
    idx = T.index
    restrict = {}
    for k, table in data["restrict"].items():
        u = decode_key(k)
        restrict[u] = _decode_table(at[idx.tgt(u)], at[idx.src(u)], table)
    return Presheaf(T, at, restrict)


def encode_nat_trans(f: NatTrans) -> dict:
    return {element_key(c): _encode_table(g) for c, g in f.component.items()}


def decode_nat_trans(dom: Presheaf, cod: Presheaf, data: dict) -> NatTrans:
    component = {}
    for k, table in data.items():
        c = decode_key(k)
        component[c] = _decode_table(dom.at[c], cod.at[c], table)
    return NatTrans(dom, cod, component)


# ---------------------------------------------------------------------------
# workspace


@dataclass
class Workspace:
    topos: Topos
    presheaves: dict = field(default_factory=dict)
    morphisms: dict = field(default_factory=dict)  # name -> NatTrans
    morphism_ends: dict = field(default_factory=dict)  # name -> (dom, cod) names
    category_objects: dict = field(default_factory=dict)  # name -> CategoryObject
    category_object_refs: dict = field(default_factory=dict)  # name -> ref dict
    maps: dict = field(default_factory=dict)  # alias -> morphism name

    def add_presheaf(self, name: str, X: Presheaf):
        self.presheaves[name] = X

    def add_morphism(self, name: str, f: NatTrans, dom_name: str, cod_name: str):
        if self.presheaves.get(dom_name) != f.dom or self.presheaves.get(cod_name) != f.cod:
            raise WorkspaceError(f"morphism {name!r} endpoints do not match named presheaves")
        self.morphisms[name] = f
        self.morphism_ends[name] = (dom_name, cod_name)

    def add_category_object(self, name: str, C: CategoryObject, refs: dict):
        """refs: {'C0': presheaf name, 'C1': presheaf name,
        's'/'t'/'e': morphism names}."""
        self.category_objects[name] = C
        self.category_object_refs[name] = dict(refs)

    def add_map(self, alias: str, morphism_name: str):
        if morphism_name not in self.morphisms:
            raise WorkspaceError(f"unknown morphism {morphism_name!r}")
        self.maps[alias] = morphism_name

    def validate(self) -> list[str]:
        report = []
        for name, X in self.presheaves.items():
            report.extend(f"presheaf {name}: {p}" for p in X.validate())
        for name, f in self.morphisms.items():
            report.extend(f"morphism {name}: {p}" for p in f.validate())
            dn, cn = self.morphism_ends[name]
            if f.dom != self.presheaves.get(dn) or f.cod != self.presheaves.get(cn):
                report.append(f"morphism {name}: endpoint names do not resolve")
        for name, C in self.category_objects.items():
            report.extend(
                f"category object {name}: {p}" for p in validate_category_object(C)
            )
        for alias, mname in self.maps.items():
            if mname not in self.morphisms:
                report.append(f"map {alias}: unknown morphism {mname!r}")
        return report


def encode_workspace(w: Workspace) -> dict:
    cats = {}
    for name, C in w.category_objects.items():
        refs = w.category_object_refs[name]
        cats[name] = {
            "C0": refs["C0"],
            "C1": refs["C1"],
            "s": refs["s"],
            "t": refs["t"],
            "e": refs["e"],
            "m": encode_nat_trans(C.m),
        }
    return {
        "format": FORMAT_VERSION,
        "bound": w.topos.bound,
        "index": encode_category(w.topos.index),
        "presheaves": {n: encode_presheaf(X) for n, X in w.presheaves.items()},
        "morphisms": {
            n: {
                "dom": w.morphism_ends[n][0],
                "cod": w.morphism_ends[n][1],
                "component": encode_nat_trans(f),
            }
            for n, f in w.morphisms.items()
        },
        "category_objects": cats,
        "maps": dict(w.maps),
    }


def decode_workspace(data: dict) -> Workspace:
    if data.get("format") != FORMAT_VERSION:
        raise WorkspaceError(f"unsupported format {data.get('format')!r}")
    index = decode_category(data["index"])
    T = Topos(index, int(data.get("bound", DEFAULT_BOUND)))
    w = Workspace(T)
    for name in sorted(data.get("presheaves", {})):
        w.add_presheaf(name, decode_presheaf(T, data["presheaves"][name]))
    for name in sorted(data.get("morphisms", {})):
        entry = data["morphisms"][name]
        dom = w.presheaves.get(entry["dom"])
        cod = w.presheaves.get(entry["cod"])
        if dom is None or cod is None:
            raise WorkspaceError(f"morphism {name!r} references unknown presheaves")
        f = decode_nat_trans(dom, cod, entry["component"])
        w.add_morphism(name, f, entry["dom"], entry["cod"])
    for name in sorted(data.get("category_objects", {})):
        entry = data["category_objects"][name]
        try:
            C0 = w.presheaves[entry["C0"]]
            C1 = w.presheaves[entry["C1"]]
            s = w.morphisms[entry["s"]]
            t = w.morphisms[entry["t"]]
            e = w.morphisms[entry["e"]]
        except KeyError as exc:
            raise WorkspaceError(f"category object {name!r}: unresolved {exc}") from exc
        cone = composable_pairs(T, C0, C1, s, t)
        m = decode_nat_trans(cone.apex, C1, entry["m"])
        C = CategoryObject(T, C0, C1, s, t, e, cone, m)
        w.add_category_object(name, C, {k: entry[k] for k in ("C0", "C1", "s", "t", "e")})
    for alias in sorted(data.get("maps", {})):
        w.add_map(alias, data["maps"][alias])
    problems = w.validate()
    if problems:
        raise WorkspaceError("invalid workspace: " + "; ".join(problems))
    return w


def dumps_workspace(w: Workspace) -> str:
    return json.dumps(encode_workspace(w), sort_keys=True, indent=1) + "\n"


def loads_workspace(text: str) -> Workspace:
    return decode_workspace(json.loads(text))


def save_workspace(w: Workspace, path):
    with open(path, "w") as fh:
        fh.write(dumps_workspace(w))


def load_workspace(path) -> Workspace:
    with open(path) as fh:
        return loads_workspace(fh.read())
