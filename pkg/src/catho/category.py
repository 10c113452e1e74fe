"""Finite categories, functors and natural transformations.

Every category here is explicit: a list of objects, a list of morphisms and a
total composition table.  Identity morphisms of constructed categories are
named ``id:<object>``.
"""
from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence


class CategoryError(ValueError):
    """Raised when input data cannot describe a category at all."""


class FunctorError(ValueError):
    """Raised when a functor refers to identifiers that do not exist."""


class SearchBoundExceeded(RuntimeError):
    """An exhaustive search would visit more nodes than allowed."""

    def __init__(self, what: str, bound: int):
        super().__init__(f"{what}: search bound {bound} exceeded")
        self.what = what
        self.bound = bound


def identity_id(obj: str) -> str:
    return f"id:{obj}"


@dataclass(frozen=True)
class Morphism:
    id: str
    dom: str
    cod: str


@dataclass(frozen=True)
class Violation:
    law: str
    witnesses: tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.law}: {', '.join(self.witnesses)}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def add(self, law: str, *witnesses: str) -> None:
        self.violations.append(Violation(law, tuple(str(w) for w in witnesses)))

    def laws(self) -> set[str]:
        return {v.law for v in self.violations}


class FiniteCategory:
    """An explicit finite category.

    ``compose`` maps ``(g, f)`` to the id of ``g . f`` (first ``f``, then
    ``g``) and is expected to be defined exactly on composable pairs.
    Instances are treated as immutable once built.
    """

    def __init__(
        self,
        objects: Iterable[str],
        morphisms: Iterable[Morphism],
        identity: Mapping[str, str],
        compose: Mapping[tuple[str, str], str],
    ):
        self.objects: tuple[str, ...] = tuple(objects)
        self.morphisms: tuple[Morphism, ...] = tuple(morphisms)
        self.identity: dict[str, str] = dict(identity)
        self.compose_table: dict[tuple[str, str], str] = dict(compose)
        self._by_id = {m.id: m for m in self.morphisms}
        self._obj_pos = {o: i for i, o in enumerate(self.objects)}
        self._mor_pos = {m.id: i for i, m in enumerate(self.morphisms)}
        self._identity_ids = set(self.identity.values())
        self._hom: dict[tuple[str, str], list[str]] = {}
        self._out: dict[str, list[str]] = {o: [] for o in self.objects}
        self._in: dict[str, list[str]] = {o: [] for o in self.objects}
        for m in self.morphisms:
            self._hom.setdefault((m.dom, m.cod), []).append(m.id)
            self._out.setdefault(m.dom, []).append(m.id)
            self._in.setdefault(m.cod, []).append(m.id)
        self._fingerprint: str | None = None

    # lookups
    def __contains__(self, obj: str) -> bool:
        return obj in self._obj_pos

    def has_morphism(self, m: str) -> bool:
        return m in self._by_id

    def morphism(self, m: str) -> Morphism:
        return self._by_id[m]

    def dom(self, m: str) -> str:
        return self._by_id[m].dom

    def cod(self, m: str) -> str:
        return self._by_id[m].cod

    def hom(self, a: str, b: str) -> list[str]:
        return self._hom.get((a, b), [])

    def outgoing(self, a: str) -> list[str]:
        return self._out.get(a, [])

    def incoming(self, b: str) -> list[str]:
        return self._in.get(b, [])

    def is_identity(self, m: str) -> bool:
        return m in self._identity_ids

    def compose(self, g: str, f: str) -> str:
        try:
            return self.compose_table[(g, f)]
        except KeyError:
            raise CategoryError(f"{g} . {f} is not defined") from None

    def compose_path(self, *ms: str) -> str:
        """Compose ``ms[0]`` then ``ms[1]`` then ... (diagrammatic order)."""
        result = ms[0]
        for m in ms[1:]:
            result = self.compose(m, result)
        return result

    def object_index(self, obj: str) -> int:
        return self._obj_pos[obj]

    def morphism_index(self, m: str) -> int:
        return self._mor_pos[m]

    def non_identity(self) -> list[Morphism]:
        return [m for m in self.morphisms if m.id not in self._identity_ids]

    def composable_pairs(self) -> Iterator[tuple[str, str]]:
        """Yield ``(g, f)`` with ``cod f = dom g`` in a deterministic order."""
        for f in self.morphisms:
            for g in self.outgoing(f.cod):
                yield g, f.id

    @property
    def size(self) -> tuple[int, int]:
        return len(self.objects), len(self.morphisms)

    # identity / equality
    def to_canonical(self) -> dict:
        return {
            "objects": list(self.objects),
            "morphisms": sorted([m.id, m.dom, m.cod] for m in self.morphisms),
            "identity": [[o, self.identity.get(o)] for o in self.objects],
            "compose": sorted([g, f, h] for (g, f), h in self.compose_table.items()),
        }

    def fingerprint(self) -> str:
        if self._fingerprint is None:
            blob = json.dumps(self.to_canonical(), separators=(",", ":"))
            self._fingerprint = hashlib.sha256(blob.encode()).hexdigest()
        return self._fingerprint

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiniteCategory):
            return NotImplemented
        return (
            self.objects == other.objects
            and set(self.morphisms) == set(other.morphisms)
            and self.identity == other.identity
            and self.compose_table == other.compose_table
        )

    def __hash__(self) -> int:
        return hash(self.fingerprint())

    def __repr__(self) -> str:
        return f"FiniteCategory({len(self.objects)} objects, {len(self.morphisms)} morphisms)"


def validate_category(c: FiniteCategory) -> ValidationReport:
    report = ValidationReport()
    seen: set[str] = set()
    for o in c.objects:
        if o in seen:
            report.add("distinct identifiers", f"object {o}")
        seen.add(o)
    seen = set()
    for m in c.morphisms:
        if m.id in seen:
            report.add("distinct identifiers", f"morphism {m.id}")
        seen.add(m.id)
        for end in (m.dom, m.cod):
            if end not in c:
                report.add("dangling reference", m.id, end)
    for o in c.objects:
        i = c.identity.get(o)
        if i is None:
            report.add("identity missing", o)
        elif not c.has_morphism(i):
            report.add("dangling reference", f"identity of {o}", i)
        elif c.dom(i) != o or c.cod(i) != o:
            report.add("identity typing", o, i)
    for (g, f), h in c.compose_table.items():
        for m in (g, f, h):
            if not c.has_morphism(m):
                report.add("dangling reference", f"compose({g}, {f})", m)
    if not report.ok:
        return report

    for (g, f), h in c.compose_table.items():
        if c.cod(f) != c.dom(g):
            report.add("composition domain", f"compose({g}, {f}) defined on a non-composable pair")
        elif c.dom(h) != c.dom(f) or c.cod(h) != c.cod(g):
            report.add("composition typing", g, f, h)
    for g, f in c.composable_pairs():
        if (g, f) not in c.compose_table:
            report.add("composition totality", g, f)
    if not report.ok:
        return report

    for m in c.morphisms:
        if c.compose(c.identity[m.cod], m.id) != m.id:
            report.add("left identity law", m.id)
        if c.compose(m.id, c.identity[m.dom]) != m.id:
            report.add("right identity law", m.id)
    for g, f in c.composable_pairs():
        gf = c.compose(g, f)
        for h in c.outgoing(c.cod(g)):
            if c.compose(h, gf) != c.compose(c.compose(h, g), f):
                report.add("associativity", h, g, f)
    return report


def subcategory(c: FiniteCategory, objects: Iterable[str], morphisms: Iterable[str]) -> FiniteCategory:
    """Restriction of ``c`` to the given objects and morphisms (input order kept)."""
    keep_obj = set(objects)
    keep_mor = set(morphisms)
    objs = [o for o in c.objects if o in keep_obj]
    mors = [m for m in c.morphisms if m.id in keep_mor]
    ident = {o: c.identity[o] for o in objs}
    table = {}
    for g, f in c.composable_pairs():
        if g in keep_mor and f in keep_mor:
            h = c.compose(g, f)
            if h not in keep_mor:
                raise CategoryError(f"subcategory not closed: {g} . {f} = {h}")
            table[(g, f)] = h
    return FiniteCategory(objs, mors, ident, table)


def opposite(c: FiniteCategory) -> FiniteCategory:
    return FiniteCategory(
        c.objects,
        [Morphism(m.id, m.cod, m.dom) for m in c.morphisms],
        c.identity,
        {(f, g): h for (g, f), h in c.compose_table.items()},
    )


# standard builders

def terminal() -> FiniteCategory:
    """The category with one object ``*`` and only its identity."""
    return discrete(["*"])


def discrete(objects: Sequence[str]) -> FiniteCategory:
    ids = {o: identity_id(o) for o in objects}
    return FiniteCategory(
        objects,
        [Morphism(ids[o], o, o) for o in objects],
        ids,
        {(ids[o], ids[o]): ids[o] for o in objects},
    )


def poset(elements: Sequence[str], relation: Iterable[tuple[str, str]]) -> FiniteCategory:
    """Category of a partial order; ``relation`` lists all pairs ``a <= b``."""
    rel = set(relation)
    elems = list(elements)
    for a, b in rel:
        if a not in elems or b not in elems:
            raise CategoryError(f"relation mentions unknown element in ({a}, {b})")
    for a in elems:
        if (a, a) not in rel:
            raise CategoryError(f"relation is not reflexive at {a}")
    for (a, b), (c, d) in itertools.product(rel, rel):
        if b == c and (a, d) not in rel:
            raise CategoryError(f"relation is not transitive: {a} <= {b} <= {d}")
        if (a, b) == (d, c) and a != b:
            raise CategoryError(f"relation is not antisymmetric: {a}, {b}")

    def name(a: str, b: str) -> str:
        return identity_id(a) if a == b else f"{a}<{b}"

    mors = [Morphism(name(a, b), a, b) for a in elems for b in elems if (a, b) in rel]
    table = {}
    for a, b, c in itertools.product(elems, repeat=3):
        if (a, b) in rel and (b, c) in rel:
            table[(name(b, c), name(a, b))] = name(a, c)
    return FiniteCategory(elems, mors, {a: identity_id(a) for a in elems}, table)


def linear_order(k: int) -> FiniteCategory:
    """The ordinal ``[k] = {0 < 1 < ... < k}``."""
    elems = [str(i) for i in range(k + 1)]
    return poset(elems, [(a, b) for a in elems for b in elems if int(a) <= int(b)])


def indiscrete(objects: Sequence[str]) -> FiniteCategory:
    """Exactly one morphism between any two objects."""

    def name(a: str, b: str) -> str:
        return identity_id(a) if a == b else f"{a}>{b}"

    mors = [Morphism(name(a, b), a, b) for a in objects for b in objects]
    table = {
        (name(b, c), name(a, b)): name(a, c)
        for a, b, c in itertools.product(objects, repeat=3)
    }
    return FiniteCategory(objects, mors, {a: identity_id(a) for a in objects}, table)


def group(elements: Sequence[str], multiply: Mapping[tuple[str, str], str]) -> FiniteCategory:
    """One-object category of a finite group.

    ``multiply[(g, h)]`` is the product ``g h``, read as the composite
    ``g . h``.  The neutral element becomes the identity ``id:*``.
    """
    elems = list(elements)
    if len(set(elems)) != len(elems):
        raise CategoryError("group elements are not distinct")
    for g, h in itertools.product(elems, repeat=2):
        if multiply.get((g, h)) not in elems:
            raise CategoryError(f"multiplication table incomplete or not closed at ({g}, {h})")
    neutral = [e for e in elems if all(multiply[(e, g)] == g == multiply[(g, e)] for g in elems)]
    if not neutral:
        raise CategoryError("multiplication table has no neutral element")
    e = neutral[0]
    for a, b, c in itertools.product(elems, repeat=3):
        if multiply[(multiply[(a, b)], c)] != multiply[(a, multiply[(b, c)])]:
            raise CategoryError(f"multiplication is not associative at ({a}, {b}, {c})")
    for g in elems:
        if not any(multiply[(g, h)] == e for h in elems):
            raise CategoryError(f"element {g} has no inverse")
    rename = {g: (identity_id("*") if g == e else g) for g in elems}
    ordered = [e] + [g for g in elems if g != e]
    return FiniteCategory(
        ["*"],
        [Morphism(rename[g], "*", "*") for g in ordered],
        {"*": identity_id("*")},
        {(rename[g], rename[h]): rename[multiply[(g, h)]] for g, h in itertools.product(elems, repeat=2)},
    )


def cyclic_group(k: int, generator: str = "s") -> FiniteCategory:
    names = ["e"] + [generator if i == 1 else f"{generator}{i}" for i in range(1, k)]
    return group(names, {(names[i], names[j]): names[(i + j) % k] for i in range(k) for j in range(k)})


def free_dag(nodes: Sequence[str], edges: Sequence[tuple[str, str, str]]) -> FiniteCategory:
    """Free category on a finite acyclic graph.

    ``edges`` holds ``(name, source, target)``.  Non-trivial paths are named by
    joining edge names with ``.`` in traversal order.
    """
    names = [e[0] for e in edges]
    if len(set(names)) != len(names):
        raise CategoryError("edge names are not distinct")
    out: dict[str, list[tuple[str, str]]] = {v: [] for v in nodes}
    for name, s, t in edges:
        if s not in out or t not in out:
            raise CategoryError(f"edge {name} has an unknown endpoint")
        out[s].append((name, t))

    state: dict[str, int] = {}

    def visit(v: str) -> None:
        state[v] = 1
        for _, t in out[v]:
            if state.get(t) == 1:
                raise CategoryError(f"graph has a cycle through {t}")
            if t not in state:
                visit(t)
        state[v] = 2

    for v in nodes:
        if v not in state:
            visit(v)

    paths: list[tuple[str, str, tuple[str, ...]]] = []

    def extend(start: str, at: str, path: tuple[str, ...]) -> None:
        for name, t in out[at]:
            p = path + (name,)
            paths.append((start, t, p))
            extend(start, t, p)

    for v in nodes:
        extend(v, v, ())
    ids = {v: identity_id(v) for v in nodes}
    mors = [Morphism(ids[v], v, v) for v in nodes]
    mors += [Morphism(".".join(p), s, t) for s, t, p in paths]
    by_node_out: dict[str, list[tuple[str, tuple[str, ...]]]] = {v: [] for v in nodes}
    for s, t, p in paths:
        by_node_out[s].append((t, p))
    table: dict[tuple[str, str], str] = {}
    for v in nodes:
        table[(ids[v], ids[v])] = ids[v]
    for s, t, p in paths:
        name = ".".join(p)
        table[(ids[t], name)] = name
        table[(name, ids[s])] = name
        for _, q in by_node_out[t]:
            table[(".".join(q), name)] = ".".join(p + q)
    return FiniteCategory(nodes, mors, ids, table)


def product(a: FiniteCategory, b: FiniteCategory) -> FiniteCategory:
    def ob(x: str, y: str) -> str:
        return f"({x},{y})"

    def mor(f: str, g: str, src: tuple[str, str]) -> str:
        if a.is_identity(f) and b.is_identity(g):
            return identity_id(ob(*src))
        return f"({f},{g})"

    objs = [ob(x, y) for x in a.objects for y in b.objects]
    mors = [
        Morphism(mor(f.id, g.id, (f.dom, g.dom)), ob(f.dom, g.dom), ob(f.cod, g.cod))
        for f in a.morphisms
        for g in b.morphisms
    ]
    table = {}
    for f2, f1 in a.composable_pairs():
        for g2, g1 in b.composable_pairs():
            table[(mor(f2, g2, (a.dom(f2), b.dom(g2))), mor(f1, g1, (a.dom(f1), b.dom(g1))))] = mor(
                a.compose(f2, f1), b.compose(g2, g1), (a.dom(f1), b.dom(g1))
            )
    return FiniteCategory(objs, mors, {o: identity_id(o) for o in objs}, table)


def build_standard(kind: str, **params) -> FiniteCategory:
    """Dispatch to a named builder: terminal, poset, group, free_dag, ..."""
    builders = {
        "terminal": terminal,
        "discrete": discrete,
        "indiscrete": indiscrete,
        "poset": poset,
        "linear_order": linear_order,
        "group": group,
        "cyclic_group": cyclic_group,
        "free_dag": free_dag,
    }
    if kind not in builders:
        raise CategoryError(f"unknown category kind {kind!r}")
    return builders[kind](**params)


# functors

class CatFunctor:
    def __init__(
        self,
        source: FiniteCategory,
        target: FiniteCategory,
        object_map: Mapping[str, str],
        morphism_map: Mapping[str, str],
    ):
        self.source = source
        self.target = target
        self.object_map = dict(object_map)
        self.morphism_map = dict(morphism_map)

    def ob(self, x: str) -> str:
        return self.object_map[x]

    def mor(self, m: str) -> str:
        return self.morphism_map[m]

    def key(self) -> tuple:
        """Canonical identity of the functor, usable for memoization."""
        return (
            self.source.fingerprint(),
            self.target.fingerprint(),
            tuple(self.object_map[o] for o in self.source.objects),
            tuple(self.morphism_map[m] for m in sorted(self.morphism_map)),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CatFunctor):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.object_map == other.object_map
            and self.morphism_map == other.morphism_map
        )

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"CatFunctor({self.source!r} -> {self.target!r})"


def validate_functor(F: CatFunctor) -> ValidationReport:
    src, tgt = F.source, F.target
    for o in src.objects:
        if o not in F.object_map:
            raise FunctorError(f"object {o} has no image")
        if F.object_map[o] not in tgt:
            raise FunctorError(f"object {o} is sent to unknown object {F.object_map[o]}")
    for m in src.morphisms:
        if m.id not in F.morphism_map:
            raise FunctorError(f"morphism {m.id} has no image")
        if not tgt.has_morphism(F.morphism_map[m.id]):
            raise FunctorError(f"morphism {m.id} is sent to unknown morphism {F.morphism_map[m.id]}")
    for extra in set(F.object_map) - set(src.objects):
        raise FunctorError(f"object map mentions unknown object {extra}")
    for extra in set(F.morphism_map) - set(F.source._by_id):
        raise FunctorError(f"morphism map mentions unknown morphism {extra}")

    report = ValidationReport()
    for m in src.morphisms:
        image = F.morphism_map[m.id]
        if tgt.dom(image) != F.object_map[m.dom] or tgt.cod(image) != F.object_map[m.cod]:
            report.add("dom/cod preservation", m.id, image)
    for o in src.objects:
        if F.morphism_map[src.identity[o]] != tgt.identity[F.object_map[o]]:
            report.add("identity preservation", o)
    if not report.ok:
        return report
    for g, f in src.composable_pairs():
        if F.morphism_map[src.compose(g, f)] != tgt.compose(F.morphism_map[g], F.morphism_map[f]):
            report.add("composition preservation", g, f)
    return report


def identity_functor(c: FiniteCategory) -> CatFunctor:
    return CatFunctor(c, c, {o: o for o in c.objects}, {m.id: m.id for m in c.morphisms})


def compose_functors(G: CatFunctor, F: CatFunctor) -> CatFunctor:
    """``G . F`` (first ``F``)."""
    return CatFunctor(
        F.source,
        G.target,
        {o: G.object_map[F.object_map[o]] for o in F.source.objects},
        {m.id: G.morphism_map[F.morphism_map[m.id]] for m in F.source.morphisms},
    )


def constant_functor(source: FiniteCategory, target: FiniteCategory, obj: str) -> CatFunctor:
    ident = target.identity[obj]
    return CatFunctor(source, target, {o: obj for o in source.objects}, {m.id: ident for m in source.morphisms})


def pick_object(target: FiniteCategory, obj: str, source: FiniteCategory | None = None) -> CatFunctor:
    """The functor ``O -> target`` with value ``obj``."""
    return constant_functor(source if source is not None else terminal(), target, obj)


def to_terminal(c: FiniteCategory, point: FiniteCategory | None = None) -> CatFunctor:
    point = point if point is not None else terminal()
    (star,) = point.objects
    return constant_functor(c, point, star)


def inverse_functor(F: CatFunctor) -> CatFunctor | None:
    """The inverse of ``F`` if ``F`` is bijective on objects and morphisms."""
    if len(F.source.objects) != len(F.target.objects) or len(F.source.morphisms) != len(F.target.morphisms):
        return None
    inv_obj = {v: k for k, v in F.object_map.items()}
    inv_mor = {v: k for k, v in F.morphism_map.items()}
    if len(inv_obj) != len(F.target.objects) or len(inv_mor) != len(F.target.morphisms):
        return None
    if set(inv_obj) != set(F.target.objects) or set(inv_mor) != set(F.target._by_id):
        return None
    return CatFunctor(
        F.target,
        F.source,
        {o: inv_obj[o] for o in F.target.objects},
        {m.id: inv_mor[m.id] for m in F.target.morphisms},
    )


def check_isomorphism(F: CatFunctor, G: CatFunctor) -> ValidationReport:
    """Check that ``F`` and ``G`` are mutually inverse functors."""
    report = ValidationReport()
    for name, H in (("forward", F), ("backward", G)):
        for v in validate_functor(H).violations:
            report.add(f"{name} functor: {v.law}", *v.witnesses)
    if not report.ok:
        return report
    if compose_functors(G, F) != identity_functor(F.source):
        report.add("inverse", "backward . forward is not the identity")
    if compose_functors(F, G) != identity_functor(F.target):
        report.add("inverse", "forward . backward is not the identity")
    return report


# structure

def connected_components(c: FiniteCategory) -> list[list[str]]:
    parent = {o: o for o in c.objects}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m in c.morphisms:
        a, b = find(m.dom), find(m.cod)
        if a != b:
            if c.object_index(a) < c.object_index(b):
                parent[b] = a
            else:
                parent[a] = b
    groups: dict[str, list[str]] = {}
    for o in c.objects:
        groups.setdefault(find(o), []).append(o)
    return list(groups.values())


def terminal_objects(c: FiniteCategory) -> list[str]:
    return [t for t in c.objects if all(len(c.hom(a, t)) == 1 for a in c.objects)]


def initial_objects(c: FiniteCategory) -> list[str]:
    return [i for i in c.objects if all(len(c.hom(i, a)) == 1 for a in c.objects)]


# natural transformations

@dataclass(eq=False)
class NatTransformation:
    source_functor: CatFunctor
    target_functor: CatFunctor
    components: dict[str, str]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NatTransformation):
            return NotImplemented
        return (
            self.source_functor == other.source_functor
            and self.target_functor == other.target_functor
            and self.components == other.components
        )


def check_naturality(t: NatTransformation) -> ValidationReport:
    F, G = t.source_functor, t.target_functor
    if F.source != G.source or F.target != G.target:
        raise FunctorError("natural transformation between functors with different source or target")
    C, D = F.source, F.target
    for o in C.objects:
        if o not in t.components:
            raise FunctorError(f"no component at object {o}")
        if not D.has_morphism(t.components[o]):
            raise FunctorError(f"component at {o} is unknown morphism {t.components[o]}")
    report = ValidationReport()
    for o in C.objects:
        c = t.components[o]
        if D.dom(c) != F.ob(o) or D.cod(c) != G.ob(o):
            report.add("component typing", o, c)
    if not report.ok:
        return report
    for m in C.morphisms:
        lhs = D.compose(t.components[m.cod], F.mor(m.id))
        rhs = D.compose(G.mor(m.id), t.components[m.dom])
        if lhs != rhs:
            report.add("naturality", m.id, m.dom, m.cod)
    return report


def _nat_trans_search(F: CatFunctor, G: CatFunctor, bound: int) -> Iterator[dict[str, str]]:
    """Backtracking over components with arc-consistency pruning."""
    C, D = F.source, F.target
    objs = list(C.objects)
    domains = {o: list(D.hom(F.ob(o), G.ob(o))) for o in objs}

    def square(m: Morphism, a: str, b: str) -> bool:
        return D.compose(b, F.mor(m.id)) == D.compose(G.mor(m.id), a)

    constraints = [m for m in C.non_identity()]
    for m in constraints:
        if m.dom == m.cod:
            domains[m.dom] = [a for a in domains[m.dom] if square(m, a, a)]
    binary = [m for m in constraints if m.dom != m.cod]
    changed = True
    while changed:
        changed = False
        for m in binary:
            keep_dom = [a for a in domains[m.dom] if any(square(m, a, b) for b in domains[m.cod])]
            keep_cod = [b for b in domains[m.cod] if any(square(m, a, b) for a in keep_dom)]
            if len(keep_dom) != len(domains[m.dom]) or len(keep_cod) != len(domains[m.cod]):
                domains[m.dom], domains[m.cod] = keep_dom, keep_cod
                changed = True
    if any(not domains[o] for o in objs):
        return

    pos = {o: i for i, o in enumerate(objs)}
    checks: list[list[Morphism]] = [[] for _ in objs]
    for m in binary:
        checks[max(pos[m.dom], pos[m.cod])].append(m)
    chosen: list[str] = [""] * len(objs)
    cursor = [0] * len(objs)
    level = 0
    visited = 0
    while level >= 0:
        if level == len(objs):
            yield dict(zip(objs, chosen))
            level -= 1
            continue
        o = objs[level]
        dom_list = domains[o]
        placed = False
        while cursor[level] < len(dom_list):
            cand = dom_list[cursor[level]]
            cursor[level] += 1
            visited += 1
            if visited > bound:
                raise SearchBoundExceeded("natural transformation search", bound)
            chosen[level] = cand
            if all(square(m, chosen[pos[m.dom]], chosen[pos[m.cod]]) for m in checks[level]):
                placed = True
                break
        if placed:
            level += 1
            if level < len(objs):
                cursor[level] = 0
        else:
            cursor[level] = 0
            level -= 1


def find_nat_trans(F: CatFunctor, G: CatFunctor, bound: int = 100_000) -> list[NatTransformation]:
    """All natural transformations ``F => G``, lexicographically ordered.

    Raises ``SearchBoundExceeded`` when more than ``bound`` search nodes would
    be needed; an empty list always means that none exist.
    """
    if F.source != G.source or F.target != G.target:
        raise FunctorError("functors do not share source and target")
    return [NatTransformation(F, G, comps) for comps in _nat_trans_search(F, G, bound)]


def first_nat_trans(F: CatFunctor, G: CatFunctor, bound: int = 100_000) -> NatTransformation | None:
    for comps in _nat_trans_search(F, G, bound):
        return NatTransformation(F, G, comps)
    return None


def find_functors(C: FiniteCategory, D: FiniteCategory, bound: int = 100_000) -> Iterator[CatFunctor]:
    """Enumerate functors ``C -> D`` deterministically.

    Objects are assigned in order; each non-identity morphism is assigned as
    soon as both its ends are.  Raises ``SearchBoundExceeded`` past ``bound``
    search nodes.
    """
    objs = list(C.objects)
    opos = {o: i for i, o in enumerate(objs)}
    movable = C.non_identity()
    ready: list[list[str]] = [[] for _ in objs]
    for m in movable:
        ready[max(opos[m.dom], opos[m.cod])].append(m.id)
    # variables: ("o", obj) then the morphisms that become ready
    variables: list[tuple[str, str]] = []
    for i, o in enumerate(objs):
        variables.append(("o", o))
        variables.extend(("m", m) for m in ready[i])
    vpos = {v: i for i, v in enumerate(variables)}
    # composition checks become decidable when the last of g, f, g.f is assigned
    comp_checks: list[list[tuple[str, str, str]]] = [[] for _ in variables]
    for g, f in C.composable_pairs():
        h = C.compose(g, f)
        involved = [vpos[("m", x)] for x in (g, f, h) if not C.is_identity(x)]
        involved += [vpos[("o", C.dom(f))], vpos[("o", C.cod(g))], vpos[("o", C.cod(f))]]
        comp_checks[max(involved)].append((g, f, h))

    obj_map: dict[str, str] = {}
    mor_map: dict[str, str] = {C.identity[o]: "" for o in objs}

    def candidates(v: tuple[str, str]) -> list[str]:
        kind, name = v
        if kind == "o":
            return list(D.objects)
        return D.hom(obj_map[C.dom(name)], obj_map[C.cod(name)])

    def image(m: str) -> str:
        if C.is_identity(m):
            return D.identity[obj_map[C.dom(m)]]
        return mor_map[m]

    cands: list[list[str]] = [[] for _ in variables]
    cursor = [0] * len(variables)
    level = 0
    visited = 0
    if variables:
        cands[0] = candidates(variables[0])
    while level >= 0:
        if level == len(variables):
            full = {m.id: image(m.id) for m in C.morphisms}
            yield CatFunctor(C, D, dict(obj_map), full)
            level -= 1
            continue
        kind, name = variables[level]
        placed = False
        while cursor[level] < len(cands[level]):
            cand = cands[level][cursor[level]]
            cursor[level] += 1
            visited += 1
            if visited > bound:
                raise SearchBoundExceeded("functor search", bound)
            if kind == "o":
                obj_map[name] = cand
            else:
                mor_map[name] = cand
            if all(image(h) == D.compose(image(g), image(f)) for g, f, h in comp_checks[level]):
                placed = True
                break
        if placed:
            level += 1
            if level < len(variables):
                cursor[level] = 0
                cands[level] = candidates(variables[level])
        else:
            cursor[level] = 0
            level -= 1
