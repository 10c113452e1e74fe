"""Grothendieck construction of a diagram of finite categories."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .category import (
    CatFunctor,
    CategoryError,
    FiniteCategory,
    Morphism,
    ValidationReport,
    compose_functors,
    identity_functor,
    identity_id,
    subcategory,
    validate_category,
    validate_functor,
)


@dataclass(eq=False)
class CatDiagram:
    """A functor ``index -> Cat``: a category per object, a functor per morphism."""

    index: FiniteCategory
    values: dict[str, FiniteCategory]
    functors: dict[str, CatFunctor]

    def value_at(self, obj: str) -> FiniteCategory:
        return self.values[obj]

    def functor_at(self, m: str) -> CatFunctor:
        return self.functors[m]


def make_diagram(
    index: FiniteCategory,
    values: Mapping[str, FiniteCategory],
    functors: Mapping[str, CatFunctor],
) -> CatDiagram:
    """Build a diagram, filling in identity functors for identity morphisms."""
    full = dict(functors)
    for o in index.objects:
        full.setdefault(index.identity[o], identity_functor(values[o]))
    return CatDiagram(index, dict(values), {m.id: full[m.id] for m in index.morphisms if m.id in full})


def validate_diagram(F: CatDiagram) -> ValidationReport:
    report = ValidationReport()
    D = F.index
    for o in D.objects:
        if o not in F.values:
            report.add("missing value", o)
    for m in D.morphisms:
        if m.id not in F.functors:
            report.add("missing functor", m.id)
    if not report.ok:
        return report
    for m in D.morphisms:
        Fm = F.functors[m.id]
        if Fm.source != F.values[m.dom] or Fm.target != F.values[m.cod]:
            report.add("source/target mismatch", m.id)
            continue
        for v in validate_functor(Fm).violations:
            report.add(f"functor {m.id}: {v.law}", *v.witnesses)
    if not report.ok:
        return report
    for o in D.objects:
        if F.functors[D.identity[o]] != identity_functor(F.values[o]):
            report.add("identity preservation", o)
    for g, f in D.composable_pairs():
        composite = compose_functors(F.functors[g], F.functors[f])
        if F.functors[D.compose(g, f)] != composite:
            report.add("composition preservation", g, f)
    return report


@dataclass(eq=False)
class GrothResult:
    diagram: CatDiagram
    total: FiniteCategory
    projection: CatFunctor
    object_decode: dict[str, tuple[str, str]]
    morphism_decode: dict[str, tuple[str, str]]
    morphism_source: dict[str, str]

    def encode_object(self, D: str, A: str) -> str:
        return object_id(D, A)

    def encode_morphism(self, d: str, a: str, source_fibre_object: str) -> str:
        D1 = self.diagram.index.dom(d)
        return morphism_id(self.diagram, d, a, D1, source_fibre_object)


def object_id(D: str, A: str) -> str:
    return f"{D}|{A}"


def morphism_id(F: CatDiagram, d: str, a: str, D1: str, A1: str) -> str:
    if F.index.is_identity(d) and F.values[F.index.cod(d)].is_identity(a):
        return identity_id(object_id(D1, A1))
    return f"{d}|{a}@{A1}"


def grothendieck(F: CatDiagram) -> GrothResult:
    """Total category ``Gr F`` with its projection to the index.

    Maps ``(D1, A1) -> (D2, A2)`` are pairs ``(d, a)`` with ``a: (F d) A1 -> A2``
    and ``(d', a') . (d, a) = (d' d, a' . (F d')(a))``.
    """
    D = F.index
    objects: list[str] = []
    object_decode: dict[str, tuple[str, str]] = {}
    for Dobj in D.objects:
        for A in F.values[Dobj].objects:
            oid = object_id(Dobj, A)
            objects.append(oid)
            object_decode[oid] = (Dobj, A)

    morphisms: list[Morphism] = []
    decode: dict[str, tuple[str, str]] = {}
    msource: dict[str, str] = {}
    # outgoing[(D1, A1)] lists (mid, d, a) in construction order
    for d in D.morphisms:
        Fd = F.functors[d.id]
        target_fibre = F.values[d.cod]
        for A1 in F.values[d.dom].objects:
            B = Fd.ob(A1)
            for a in target_fibre.outgoing(B):
                mid = morphism_id(F, d.id, a, d.dom, A1)
                if mid in decode:
                    raise CategoryError(f"identifier collision in Grothendieck construction: {mid}")
                A2 = target_fibre.cod(a)
                morphisms.append(Morphism(mid, object_id(d.dom, A1), object_id(d.cod, A2)))
                decode[mid] = (d.id, a)
                msource[mid] = A1
    identity = {oid: identity_id(oid) for oid in objects}

    by_id = {m.id: m for m in morphisms}
    out: dict[str, list[str]] = {o: [] for o in objects}
    for m in morphisms:
        out[m.dom].append(m.id)
    table: dict[tuple[str, str], str] = {}
    for first in morphisms:
        d, a = decode[first.id]
        D1, A1 = object_decode[first.dom]
        for second in out[first.cod]:
            d2, a2 = decode[second]
            Fd2 = F.functors[d2]
            fibre3 = F.values[D.cod(d2)]
            a_comp = fibre3.compose(a2, Fd2.mor(a))
            d_comp = D.compose(d2, d)
            cid = morphism_id(F, d_comp, a_comp, D1, A1)
            if cid not in by_id:
                raise CategoryError(f"composite {cid} missing from Grothendieck construction")
            table[(second, first.id)] = cid

    total = FiniteCategory(objects, morphisms, identity, table)
    projection = CatFunctor(
        total,
        D,
        {o: object_decode[o][0] for o in objects},
        {m.id: decode[m.id][0] for m in morphisms},
    )
    return GrothResult(F, total, projection, object_decode, decode, msource)


@dataclass(eq=False)
class FibreResult:
    category: FiniteCategory
    inclusion: CatFunctor
    to_value: CatFunctor
    from_value: CatFunctor


def fibre(G: GrothResult, D0: str) -> FibreResult:
    """The fibre of the projection over ``D0`` and its isomorphism with ``F(D0)``."""
    index = G.diagram.index
    if D0 not in index:
        raise KeyError(f"unknown index object {D0!r}")
    ident = index.identity[D0]
    objs = [o for o in G.total.objects if G.object_decode[o][0] == D0]
    mors = [m.id for m in G.total.morphisms if G.morphism_decode[m.id][0] == ident]
    cat = subcategory(G.total, objs, mors)
    value = G.diagram.values[D0]
    inclusion = CatFunctor(cat, G.total, {o: o for o in cat.objects}, {m.id: m.id for m in cat.morphisms})
    to_value = CatFunctor(
        cat,
        value,
        {o: G.object_decode[o][1] for o in cat.objects},
        {m.id: G.morphism_decode[m.id][1] for m in cat.morphisms},
    )
    from_value = CatFunctor(
        value,
        cat,
        {A: object_id(D0, A) for A in value.objects},
        {a.id: morphism_id(G.diagram, ident, a.id, D0, a.dom) for a in value.morphisms},
    )
    return FibreResult(cat, inclusion, to_value, from_value)


@dataclass(eq=False)
class DiagramMap:
    """Strictly natural family of functors ``F1(D) -> F2(D)``."""

    source: CatDiagram
    target: CatDiagram
    components: dict[str, CatFunctor]


def validate_diagram_map(t: DiagramMap) -> ValidationReport:
    report = ValidationReport()
    if t.source.index != t.target.index:
        report.add("index mismatch", "diagrams have different index categories")
        return report
    D = t.source.index
    for o in D.objects:
        c = t.components.get(o)
        if c is None:
            report.add("missing component", o)
        elif c.source != t.source.values[o] or c.target != t.target.values[o]:
            report.add("component typing", o)
    if not report.ok:
        return report
    for m in D.morphisms:
        lhs = compose_functors(t.components[m.cod], t.source.functors[m.id])
        rhs = compose_functors(t.target.functors[m.id], t.components[m.dom])
        if lhs != rhs:
            report.add("naturality", m.id)
    return report


def induced_functor(t: DiagramMap, G1: GrothResult, G2: GrothResult) -> CatFunctor:
    """``Gr F1 -> Gr F2``: ``(D, A) -> (D, t_D A)`` and ``(d, a) -> (d, t_D2 a)``."""
    index = t.source.index
    obj_map = {}
    for o in G1.total.objects:
        D, A = G1.object_decode[o]
        obj_map[o] = object_id(D, t.components[D].ob(A))
    mor_map = {}
    for m in G1.total.morphisms:
        d, a = G1.morphism_decode[m.id]
        D1 = index.dom(d)
        A1 = G1.morphism_source[m.id]
        mor_map[m.id] = morphism_id(
            t.target, d, t.components[index.cod(d)].mor(a), D1, t.components[D1].ob(A1)
        )
    return CatFunctor(G1.total, G2.total, obj_map, mor_map)


def check_total(G: GrothResult) -> ValidationReport:
    """Category laws of the total category plus functoriality of the projection."""
    report = validate_category(G.total)
    for v in validate_functor(G.projection).violations:
        report.add(f"projection: {v.law}", *v.witnesses)
    return report
