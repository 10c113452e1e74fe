"""JSON file formats for categories, functors and diagrams, and report encoding.

Category files::

    {"objects": ["*"],
     "morphisms": [{"id": "s", "dom": "*", "cod": "*"}],
     "compose": [{"first": "s", "then": "s", "equals": "id:*"}]}

Identities are implicit and named ``id:<object>``; ``compose`` lists every
composable pair of non-identity morphisms.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .category import (
    CatFunctor,
    FiniteCategory,
    FunctorError,
    Morphism,
    NatTransformation,
    ValidationReport,
    identity_id,
    validate_category,
    validate_functor,
)
from .grothendieck import CatDiagram, make_diagram, validate_diagram
from .homotopy import (
    Answer,
    ComponentObstruction,
    ContractibleCertificate,
    Exhaustion,
    HomologyObstruction,
    HomologyProfile,
    HomotopyInverseCertificate,
    IsomorphismCertificate,
    Verdict,
    ZigzagStep,
)

class ParseError(ValueError):
    def __init__(self, path: str | Path, message: str, location: str | None = None):
        self.path = str(path)
        self.location = location
        self.message = message
        where = f"{self.path}:{location}" if location else self.path
        super().__init__(f"{where}: {message}")


class ValidationFailed(ParseError):
    """The file parsed, but the structure it describes breaks a law."""

    def __init__(self, path: str | Path, report: ValidationReport, what: str = "category"):
        self.report = report
        first = "; ".join(str(v) for v in report.violations[:5])
        super().__init__(path, f"{what} fails validation: {first}")


def _no_duplicates(pairs: list[tuple[str, Any]]) -> dict:
    out: dict = {}
    for k, v in pairs:
        if k in out:
            raise ValueError(f"duplicate key {k!r}")
        out[k] = v
    return out


def load_json(path: str | Path) -> Any:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ParseError(path, "file not found") from None
    except UnicodeDecodeError as exc:
        raise ParseError(path, f"not UTF-8: {exc}") from None
    try:
        return json.loads(text, object_pairs_hook=_no_duplicates)
    except json.JSONDecodeError as exc:
        raise ParseError(path, exc.msg, f"{exc.lineno}:{exc.colno}") from None
    except ValueError as exc:
        raise ParseError(path, str(exc)) from None


def _expect(cond: bool, path, field: str, message: str) -> None:
    if not cond:
        raise ParseError(path, message, field)


def _check_keys(doc: Any, allowed: set[str], required: set[str], path, where: str = "") -> None:
    _expect(isinstance(doc, dict), path, where or "$", "expected a JSON object")
    for k in doc:
        _expect(k in allowed, path, f"{where}{k}" if where else k, f"unknown field {k!r}")
    for k in required:
        _expect(k in doc, path, where or "$", f"missing field {k!r}")


def category_from_doc(doc: Any, path: str | Path = "<doc>", validate: bool = True) -> FiniteCategory:
    _check_keys(doc, {"objects", "morphisms", "compose"}, {"objects"}, path)
    objects = doc["objects"]
    _expect(isinstance(objects, list), path, "objects", "expected a list of strings")
    seen: set[str] = set()
    for i, o in enumerate(objects):
        _expect(isinstance(o, str), path, f"objects[{i}]", "expected a string")
        _expect(o not in seen, path, f"objects[{i}]", f"duplicate object {o!r}")
        seen.add(o)
    morphisms = [Morphism(identity_id(o), o, o) for o in objects]
    identities = {m.id for m in morphisms}
    ids = set(identities)
    declared = doc.get("morphisms", [])
    _expect(isinstance(declared, list), path, "morphisms", "expected a list")
    for i, m in enumerate(declared):
        where = f"morphisms[{i}]"
        _check_keys(m, {"id", "dom", "cod"}, {"id", "dom", "cod"}, path, where + ".")
        for key in ("id", "dom", "cod"):
            _expect(isinstance(m[key], str), path, f"{where}.{key}", "expected a string")
        _expect(m["id"] not in identities, path, f"{where}.id", f"{m['id']!r} is reserved for an identity")
        _expect(m["id"] not in ids, path, f"{where}.id", f"duplicate morphism {m['id']!r}")
        for key in ("dom", "cod"):
            _expect(m[key] in seen, path, f"{where}.{key}", f"unknown object {m[key]!r}")
        ids.add(m["id"])
        morphisms.append(Morphism(m["id"], m["dom"], m["cod"]))
    by_id = {m.id: m for m in morphisms}

    table: dict[tuple[str, str], str] = {}
    for m in morphisms:
        table[(identity_id(m.cod), m.id)] = m.id
        table[(m.id, identity_id(m.dom))] = m.id
    entries = doc.get("compose", [])
    _expect(isinstance(entries, list), path, "compose", "expected a list")
    explicit: set[tuple[str, str]] = set()
    for i, e in enumerate(entries):
        where = f"compose[{i}]"
        _check_keys(e, {"first", "then", "equals"}, {"first", "then", "equals"}, path, where + ".")
        for key in ("first", "then", "equals"):
            _expect(isinstance(e[key], str), path, f"{where}.{key}", "expected a string")
            _expect(e[key] in by_id, path, f"{where}.{key}", f"unknown morphism {e[key]!r}")
        f, g, h = e["first"], e["then"], e["equals"]
        for key, val in (("first", f), ("then", g)):
            _expect(val not in identities, path, f"{where}.{key}", "composites with identities are implied")
        _expect(by_id[f].cod == by_id[g].dom, path, where, f"{f!r} then {g!r} is not composable")
        _expect((g, f) not in explicit, path, where, f"duplicate entry for {f!r} then {g!r}")
        explicit.add((g, f))
        table[(g, f)] = h
    c = FiniteCategory(list(objects), morphisms, {o: identity_id(o) for o in objects}, table)
    if validate:
        report = validate_category(c)
        if not report.ok:
            raise ValidationFailed(path, report)
    return c


def category_to_doc(c: FiniteCategory) -> dict:
    for o in c.objects:
        if c.identity[o] != identity_id(o):
            raise ValueError(f"identity of {o!r} is not named {identity_id(o)!r}")
    return {
        "objects": list(c.objects),
        "morphisms": [{"id": m.id, "dom": m.dom, "cod": m.cod} for m in c.non_identity()],
        "compose": [
            {"first": f, "then": g, "equals": c.compose(g, f)}
            for g, f in c.composable_pairs()
            if not c.is_identity(g) and not c.is_identity(f)
        ],
    }


class Loader:
    """Parses files, sharing each category among all files that reference it."""

    def __init__(self):
        self._categories: dict[Path, FiniteCategory] = {}

    def category(self, path: str | Path, validate: bool = True) -> FiniteCategory:
        key = Path(path).resolve()
        if key not in self._categories:
            self._categories[key] = category_from_doc(load_json(path), path, validate)
        return self._categories[key]

    def _ref(self, base: Path, ref: Any, path, field: str) -> FiniteCategory:
        _expect(isinstance(ref, str), path, field, "expected a file path")
        target = base.parent / ref
        try:
            return self.category(target)
        except ParseError as exc:
            raise ParseError(path, f"in referenced file: {exc}", field) from None

    def functor(self, path: str | Path, validate: bool = True) -> CatFunctor:
        doc = load_json(path)
        _check_keys(doc, {"source", "target", "on_objects", "on_morphisms"}, {"source", "target", "on_objects"}, path)
        base = Path(path)
        source = self._ref(base, doc["source"], path, "source")
        target = self._ref(base, doc["target"], path, "target")
        F = functor_from_body(doc, source, target, path)
        if validate:
            report = validate_functor(F)
            if not report.ok:
                raise ValidationFailed(path, report, "functor")
        return F

    def diagram(self, path: str | Path, validate: bool = True) -> CatDiagram:
        doc = load_json(path)
        _check_keys(doc, {"index", "values", "functors"}, {"index", "values"}, path)
        base = Path(path)
        index = self._ref(base, doc["index"], path, "index")
        values_doc = doc["values"]
        _expect(isinstance(values_doc, dict), path, "values", "expected an object")
        values = {}
        for o in index.objects:
            _expect(o in values_doc, path, "values", f"no value for index object {o!r}")
            values[o] = self._ref(base, values_doc[o], path, f"values.{o}")
        for o in values_doc:
            _expect(o in index, path, f"values.{o}", f"unknown index object {o!r}")
        fdoc = doc.get("functors", {})
        _expect(isinstance(fdoc, dict), path, "functors", "expected an object")
        functors = {}
        for m in index.non_identity():
            _expect(m.id in fdoc, path, "functors", f"no functor for index morphism {m.id!r}")
            functors[m.id] = functor_from_body(fdoc[m.id], values[m.dom], values[m.cod], path, f"functors.{m.id}.")
        for m in fdoc:
            _expect(index.has_morphism(m) and not index.is_identity(m), path, f"functors.{m}", f"unknown index morphism {m!r}")
        D = make_diagram(index, values, functors)
        if validate:
            report = validate_diagram(D)
            if not report.ok:
                raise ValidationFailed(path, report, "diagram")
        return D


def functor_from_body(doc: Any, source: FiniteCategory, target: FiniteCategory, path, where: str = "") -> CatFunctor:
    _check_keys(doc, {"source", "target", "on_objects", "on_morphisms"}, {"on_objects"}, path, where)
    obj_doc = doc["on_objects"]
    mor_doc = doc.get("on_morphisms", {})
    _expect(isinstance(obj_doc, dict), path, f"{where}on_objects", "expected an object")
    _expect(isinstance(mor_doc, dict), path, f"{where}on_morphisms", "expected an object")
    for k, v in obj_doc.items():
        _expect(k in source, path, f"{where}on_objects.{k}", f"unknown source object {k!r}")
        _expect(isinstance(v, str) and v in target, path, f"{where}on_objects.{k}", f"unknown target object {v!r}")
    for k, v in mor_doc.items():
        _expect(source.has_morphism(k), path, f"{where}on_morphisms.{k}", f"unknown source morphism {k!r}")
        _expect(isinstance(v, str) and target.has_morphism(v), path, f"{where}on_morphisms.{k}", f"unknown target morphism {v!r}")
    obj_map = {}
    for o in source.objects:
        _expect(o in obj_doc, path, f"{where}on_objects", f"no image for object {o!r}")
        obj_map[o] = obj_doc[o]
    mor_map = {}
    for m in source.morphisms:
        if m.id in mor_doc:
            mor_map[m.id] = mor_doc[m.id]
        elif source.is_identity(m.id):
            mor_map[m.id] = target.identity[obj_map[m.dom]]
        else:
            raise ParseError(path, f"no image for morphism {m.id!r}", f"{where}on_morphisms")
    return CatFunctor(source, target, obj_map, mor_map)


def parse_category(path: str | Path) -> FiniteCategory:
    return Loader().category(path)


def parse_functor(path: str | Path) -> CatFunctor:
    return Loader().functor(path)


def parse_diagram(path: str | Path) -> CatDiagram:
    return Loader().diagram(path)


# report encoding

def functor_to_doc(F: CatFunctor, source: str | None = None, target: str | None = None) -> dict:
    doc: dict[str, Any] = {}
    if source is not None:
        doc["source"] = source
    if target is not None:
        doc["target"] = target
    doc["on_objects"] = {o: F.ob(o) for o in F.source.objects}
    doc["on_morphisms"] = {m.id: F.mor(m.id) for m in F.source.non_identity()}
    return doc


def profile_to_doc(p: HomologyProfile) -> dict:
    return {
        "max_dim": p.max_dim,
        "stable_through": p.stable_through,
        "betti": list(p.betti),
        "torsion": {str(k): list(t) for k, t in enumerate(p.torsion) if t},
    }


def _step_to_doc(step: ZigzagStep) -> dict:
    t = step.transformation
    return {
        "direction": "forward" if step.forward else "backward",
        "from": functor_to_doc(t.source_functor),
        "to": functor_to_doc(t.target_functor),
        "components": dict(t.components),
    }


def verdict_to_doc(v: Verdict) -> dict:
    ev = v.evidence
    if isinstance(ev, IsomorphismCertificate):
        evidence = {"kind": "isomorphism", "inverse": functor_to_doc(ev.inverse)}
    elif isinstance(ev, ContractibleCertificate):
        evidence = {
            "kind": "contractible",
            "source_object": ev.source_object,
            "source_kind": ev.source_kind,
            "target_object": ev.target_object,
            "target_kind": ev.target_kind,
        }
    elif isinstance(ev, HomotopyInverseCertificate):
        evidence = {
            "kind": "homotopy_inverse",
            "inverse": functor_to_doc(ev.inverse),
            "source_zigzag": [_step_to_doc(s) for s in ev.source_zigzag],
            "target_zigzag": [_step_to_doc(s) for s in ev.target_zigzag],
        }
    elif isinstance(ev, ComponentObstruction):
        evidence = {
            "kind": "components",
            "source_components": ev.source_components,
            "target_components": ev.target_components,
        }
    elif isinstance(ev, HomologyObstruction):
        evidence = {
            "kind": "homology",
            "degree": ev.degree,
            "source": {"betti": ev.source_betti, "torsion": list(ev.source_torsion)},
            "target": {"betti": ev.target_betti, "torsion": list(ev.target_torsion)},
        }
    elif isinstance(ev, Exhaustion):
        evidence = {"kind": "exhaustion", "note": ev.note}
    else:
        raise TypeError(f"unknown evidence {ev!r}")
    return {"answer": v.answer.value, "evidence": evidence}


def verdict_from_doc(doc: dict, F: CatFunctor) -> Verdict:
    """Rebuild a verdict about ``F`` from its report encoding, for re-checking."""
    answer = Answer(doc["answer"])
    ev = doc["evidence"]
    kind = ev["kind"]
    C, D = F.source, F.target

    def functor(body: dict, src: FiniteCategory, tgt: FiniteCategory) -> CatFunctor:
        return functor_from_body(body, src, tgt, "<report>")

    def steps(items: list[dict], cat: FiniteCategory) -> tuple[ZigzagStep, ...]:
        out = []
        for s in items:
            t = NatTransformation(functor(s["from"], cat, cat), functor(s["to"], cat, cat), dict(s["components"]))
            out.append(ZigzagStep(t, s["direction"] == "forward"))
        return tuple(out)

    if kind == "isomorphism":
        evidence: object = IsomorphismCertificate(functor(ev["inverse"], D, C))
    elif kind == "contractible":
        evidence = ContractibleCertificate(ev["source_object"], ev["source_kind"], ev["target_object"], ev["target_kind"])
    elif kind == "homotopy_inverse":
        evidence = HomotopyInverseCertificate(
            functor(ev["inverse"], D, C), steps(ev["source_zigzag"], C), steps(ev["target_zigzag"], D)
        )
    elif kind == "components":
        evidence = ComponentObstruction(ev["source_components"], ev["target_components"])
    elif kind == "homology":
        evidence = HomologyObstruction(
            ev["degree"],
            ev["source"]["betti"],
            tuple(ev["source"]["torsion"]),
            ev["target"]["betti"],
            tuple(ev["target"]["torsion"]),
        )
    elif kind == "exhaustion":
        evidence = Exhaustion(ev["note"])
    else:
        raise FunctorError(f"unknown evidence kind {kind!r}")
    return Verdict(answer, evidence)


def report_violations(report: ValidationReport) -> list[dict]:
    return [{"law": v.law, "witnesses": list(v.witnesses)} for v in report.violations]
