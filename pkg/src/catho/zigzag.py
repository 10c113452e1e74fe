"""Zigzag comma categories and their Grothendieck descriptions.

An object of ``(f X |n Y)`` is an object ``X`` of the source of ``f`` with an
alternating zigzag of ``n`` legs in ``Y`` from ``fX = Y_n`` down to
``Y_0``.  Legs are stored as ``(u_n, ..., u_1)``; ``u_j`` points from ``Y_j``
to ``Y_{j-1}`` for odd ``j`` and from ``Y_{j-1}`` to ``Y_j`` for even ``j``.
A map is a commuting ladder with rungs ``(w_{n-1}, ..., w_1)``; the outer
rungs are ``w_n = f(x)`` and ``w_0 = g(z)``.

The one-sided category ``(f X |n Y)`` is built as the two-sided one with
``g`` the identity of ``Y``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .category import (
    CatFunctor,
    CategoryError,
    FiniteCategory,
    Morphism,
    ValidationReport,
    check_isomorphism,
    identity_functor,
    identity_id,
    inverse_functor,
    opposite,
    subcategory,
    validate_functor,
)
from .grothendieck import CatDiagram, GrothResult, grothendieck, make_diagram


@dataclass(frozen=True)
class ZigzagObject:
    x: str
    legs: tuple[str, ...]
    end: str


@dataclass(frozen=True)
class ZigzagMorphism:
    x_map: str
    rungs: tuple[str, ...]
    end_map: str
    source: str
    target: str


@dataclass(eq=False)
class PullbackResult:
    category: FiniteCategory
    proj_x: CatFunctor
    proj_z: CatFunctor


@dataclass(eq=False)
class CommaResult:
    category: FiniteCategory
    f: CatFunctor
    g: CatFunctor
    n: int
    one_sided: bool
    objects: dict[str, ZigzagObject]
    morphisms: dict[str, ZigzagMorphism]
    inclusion: CatFunctor
    """``h`` (one-sided) or ``k`` (two-sided)."""
    to_x: CatFunctor
    to_end: CatFunctor
    strict: PullbackResult | None = None

    @property
    def h(self) -> CatFunctor:
        if not self.one_sided:
            raise AttributeError("two-sided construction has k, not h")
        return self.inclusion

    @property
    def k(self) -> CatFunctor:
        if self.one_sided:
            raise AttributeError("one-sided construction has h, not k")
        return self.inclusion

    def vertices(self, obj: str) -> list[str]:
        o = self.objects[obj]
        return zigzag_vertices(self.f.target, self.f.ob(o.x), o.legs)

    def encode_object(self, x: str, legs: tuple[str, ...], end: str) -> str:
        return _object_id(x, legs, end)

    def encode_morphism(self, src: str, tgt: str, x: str, rungs: tuple[str, ...], z: str) -> str:
        mid = _morphism_id(self.f.source, self.g.source, self.f.target, src, tgt, x, rungs, z)
        if not self.category.has_morphism(mid):
            raise CategoryError(f"no ladder {mid} in the zigzag category")
        return mid


@dataclass(eq=False)
class SliceResult:
    category: FiniteCategory
    inclusion: CatFunctor


def zigzag_vertices(Y: FiniteCategory, start: str, legs: tuple[str, ...]) -> list[str]:
    """``[Y_n, ..., Y_0]`` for a zigzag starting at ``start``."""
    n = len(legs)
    verts = [start]
    for i, u in enumerate(legs):
        j = n - i
        verts.append(Y.cod(u) if j % 2 else Y.dom(u))
    return verts


def _square(Y: FiniteCategory, j: int, u: str, u2: str, w_hi: str, w_lo: str) -> bool:
    """Commutativity of the ladder square at leg ``j``."""
    if j % 2:
        return Y.compose(w_lo, u) == Y.compose(u2, w_hi)
    return Y.compose(w_hi, u) == Y.compose(u2, w_lo)


def _object_id(x: str, legs: tuple[str, ...], end: str) -> str:
    return "|".join((x, *legs, end))


def _morphism_id(
    X: FiniteCategory,
    Z: FiniteCategory,
    Y: FiniteCategory,
    src: str,
    tgt: str,
    x: str,
    rungs: tuple[str, ...],
    z: str,
) -> str:
    if src == tgt and X.is_identity(x) and Z.is_identity(z) and all(Y.is_identity(w) for w in rungs):
        return identity_id(src)
    return "|".join((x, *rungs, z)) + f":{src}->{tgt}"


def _enumerate_legs(Y: FiniteCategory, start: str, n: int):
    def rec(j: int, current: str, legs: tuple[str, ...]):
        if j == 0:
            yield legs, current
            return
        cands = Y.outgoing(current) if j % 2 else Y.incoming(current)
        for u in cands:
            nxt = Y.cod(u) if j % 2 else Y.dom(u)
            yield from rec(j - 1, nxt, legs + (u,))

    yield from rec(n, start, ())


def _build(f: CatFunctor, g: CatFunctor, n: int, one_sided: bool) -> CommaResult:
    if n < 1:
        raise ValueError("zigzag length n must be at least 1")
    if f.target != g.target:
        raise CategoryError("f and g do not share a target category")
    X, Y, Z = f.source, f.target, g.source

    over: dict[str, list[str]] = {}
    for z in Z.objects:
        over.setdefault(g.ob(z), []).append(z)

    objects: dict[str, ZigzagObject] = {}
    verts: dict[str, list[str]] = {}
    by_x: dict[str, list[str]] = {xo: [] for xo in X.objects}
    for xo in X.objects:
        for legs, y0 in _enumerate_legs(Y, f.ob(xo), n):
            for zo in over.get(y0, []):
                oid = _object_id(xo, legs, zo)
                if oid in objects:
                    raise CategoryError(f"identifier collision in zigzag category: {oid}")
                objects[oid] = ZigzagObject(xo, legs, zo)
                verts[oid] = zigzag_vertices(Y, f.ob(xo), legs)
                by_x[xo].append(oid)

    morphisms: dict[str, ZigzagMorphism] = {}
    mlist: list[Morphism] = []
    for src, A in objects.items():
        vA = verts[src]
        for x in X.outgoing(A.x):
            wn = f.mor(x)
            for tgt in by_x[X.cod(x)]:
                B = objects[tgt]
                vB = verts[tgt]
                zs = Z.hom(A.end, B.end)
                if not zs:
                    continue
                # rungs w_{n-1}..w_1 chosen top-down; each constrained by the leg above it
                partial: list[tuple[str, ...]] = [()]
                w_hi_of = {(): wn}
                for j in range(n, 1, -1):
                    i = n - j
                    nxt = []
                    for r in partial:
                        w_hi = w_hi_of[r]
                        for w in Y.hom(vA[i + 1], vB[i + 1]):
                            if _square(Y, j, A.legs[i], B.legs[i], w_hi, w):
                                r2 = r + (w,)
                                nxt.append(r2)
                                w_hi_of[r2] = w
                    partial = nxt
                for rungs in partial:
                    w1 = w_hi_of[rungs]
                    for z in zs:
                        if _square(Y, 1, A.legs[-1], B.legs[-1], w1, g.mor(z)):
                            mid = _morphism_id(X, Z, Y, src, tgt, x, rungs, z)
                            if mid in morphisms:
                                raise CategoryError(f"identifier collision in zigzag category: {mid}")
                            morphisms[mid] = ZigzagMorphism(x, rungs, z, src, tgt)
                            mlist.append(Morphism(mid, src, tgt))

    out: dict[str, list[str]] = {o: [] for o in objects}
    for m in mlist:
        out[m.dom].append(m.id)
    table: dict[tuple[str, str], str] = {}
    for m1 in mlist:
        a = morphisms[m1.id]
        for m2 in out[m1.cod]:
            b = morphisms[m2]
            rungs = tuple(Y.compose(w2, w1) for w2, w1 in zip(b.rungs, a.rungs))
            cid = _morphism_id(X, Z, Y, a.source, b.target, X.compose(b.x_map, a.x_map), rungs, Z.compose(b.end_map, a.end_map))
            if cid not in morphisms:
                raise CategoryError(f"ladder composite {cid} is missing")
            table[(m2, m1.id)] = cid

    cat = FiniteCategory(list(objects), mlist, {o: identity_id(o) for o in objects}, table)
    to_x = CatFunctor(cat, X, {o: A.x for o, A in objects.items()}, {m: a.x_map for m, a in morphisms.items()})
    to_end = CatFunctor(cat, Z, {o: A.end for o, A in objects.items()}, {m: a.end_map for m, a in morphisms.items()})

    if one_sided:
        inc_obj = {}
        inc_mor = {}
        for xo in X.objects:
            fx = f.ob(xo)
            inc_obj[xo] = _object_id(xo, (Y.identity[fx],) * n, fx)
        for m in X.morphisms:
            fm = f.mor(m.id)
            inc_mor[m.id] = _morphism_id(X, Z, Y, inc_obj[m.dom], inc_obj[m.cod], m.id, (fm,) * (n - 1), fm)
        inclusion = CatFunctor(X, cat, inc_obj, inc_mor)
        strict = None
    else:
        strict = strict_pullback(f, g)
        P = strict.category
        inc_obj = {}
        inc_mor = {}
        for po in P.objects:
            xo, zo = strict.proj_x.ob(po), strict.proj_z.ob(po)
            fx = f.ob(xo)
            inc_obj[po] = _object_id(xo, (Y.identity[fx],) * n, zo)
        for pm in P.morphisms:
            xm, zm = strict.proj_x.mor(pm.id), strict.proj_z.mor(pm.id)
            inc_mor[pm.id] = _morphism_id(
                X, Z, Y, inc_obj[pm.dom], inc_obj[pm.cod], xm, (f.mor(xm),) * (n - 1), zm
            )
        inclusion = CatFunctor(P, cat, inc_obj, inc_mor)
    return CommaResult(cat, f, g, n, one_sided, objects, morphisms, inclusion, to_x, to_end, strict)


def build_comma(f: CatFunctor, n: int) -> CommaResult:
    """``(f X |n Y)`` together with ``h: X -> (f X |n Y)``."""
    return _build(f, identity_functor(f.target), n, one_sided=True)


def build_two_sided(f: CatFunctor, g: CatFunctor, n: int) -> CommaResult:
    """``(f X |n g Z)`` together with ``k`` from the strict pullback."""
    return _build(f, g, n, one_sided=False)


def strict_pullback(f: CatFunctor, g: CatFunctor) -> PullbackResult:
    """``X x_Y Z`` with equality on the nose, and its two projections."""
    if f.target != g.target:
        raise CategoryError("f and g do not share a target category")
    X, Z = f.source, g.source
    objs = []
    pairs = {}
    for xo in X.objects:
        for zo in Z.objects:
            if f.ob(xo) == g.ob(zo):
                oid = f"{xo}|{zo}"
                objs.append(oid)
                pairs[oid] = (xo, zo)
    mors = []
    mpairs = {}

    def mid(x: str, z: str) -> str:
        if X.is_identity(x) and Z.is_identity(z):
            return identity_id(f"{X.dom(x)}|{Z.dom(z)}")
        return f"{x}|{z}"

    for xm in X.morphisms:
        for zm in Z.morphisms:
            if f.mor(xm.id) == g.mor(zm.id):
                m = mid(xm.id, zm.id)
                mors.append(Morphism(m, f"{xm.dom}|{zm.dom}", f"{xm.cod}|{zm.cod}"))
                mpairs[m] = (xm.id, zm.id)
    out: dict[str, list[str]] = {o: [] for o in objs}
    for m in mors:
        out[m.dom].append(m.id)
    table = {}
    for m1 in mors:
        x1, z1 = mpairs[m1.id]
        for m2 in out[m1.cod]:
            x2, z2 = mpairs[m2]
            table[(m2, m1.id)] = mid(X.compose(x2, x1), Z.compose(z2, z1))
    cat = FiniteCategory(objs, mors, {o: identity_id(o) for o in objs}, table)
    proj_x = CatFunctor(cat, X, {o: p[0] for o, p in pairs.items()}, {m: p[0] for m, p in mpairs.items()})
    proj_z = CatFunctor(cat, Z, {o: p[1] for o, p in pairs.items()}, {m: p[1] for m, p in mpairs.items()})
    return PullbackResult(cat, proj_x, proj_z)


def _slice(C: CommaResult, keep_obj: Callable[[ZigzagObject], bool], keep_mor: Callable[[ZigzagMorphism], bool]) -> SliceResult:
    objs = [o for o, A in C.objects.items() if keep_obj(A)]
    oset = set(objs)
    mors = [
        m for m, a in C.morphisms.items() if a.source in oset and a.target in oset and keep_mor(a)
    ]
    cat = subcategory(C.category, objs, mors)
    inclusion = CatFunctor(cat, C.category, {o: o for o in cat.objects}, {m.id: m.id for m in cat.morphisms})
    return SliceResult(cat, inclusion)


def slice_at_target(C: CommaResult, Y0: str) -> SliceResult:
    """``(f X |n Y0)``: zigzags ending at ``Y0`` and ladders ending at its identity."""
    if not C.one_sided:
        raise ValueError("slice_at_target needs the one-sided construction")
    if Y0 not in C.f.target:
        raise KeyError(f"unknown object {Y0!r}")
    ident = C.f.target.identity[Y0]
    return _slice(C, lambda A: A.end == Y0, lambda a: a.end_map == ident)


def slice_at_source(C: CommaResult, X0: str) -> SliceResult:
    """``(f X0 |n Y)``: zigzags starting at ``f X0`` and ladders with ``x = 1_X0``."""
    if X0 not in C.f.source:
        raise KeyError(f"unknown object {X0!r}")
    ident = C.f.source.identity[X0]
    return _slice(C, lambda A: A.x == X0, lambda a: a.x_map == ident)


def slice_two_sided(C: CommaResult, Z0: str) -> SliceResult:
    """``(f X |n g Z0)``: zigzags ending at ``g Z0`` and ladders with ``z = 1_Z0``."""
    if C.one_sided:
        raise ValueError("slice_two_sided needs the two-sided construction")
    if Z0 not in C.g.source:
        raise KeyError(f"unknown object {Z0!r}")
    ident = C.g.source.identity[Z0]
    return _slice(C, lambda A: A.end == Z0, lambda a: a.end_map == ident)


def end_change(two: CommaResult, one: CommaResult) -> CatFunctor:
    """The functor ``(f X |n g Z) -> (f X |n Y)`` induced by ``g``."""
    g = two.g
    obj = {o: _object_id(A.x, A.legs, g.ob(A.end)) for o, A in two.objects.items()}
    mor = {
        m: one.encode_morphism(obj[a.source], obj[a.target], a.x_map, a.rungs, g.mor(a.end_map))
        for m, a in two.morphisms.items()
    }
    return CatFunctor(two.category, one.category, obj, mor)


def square_fibre(two: CommaResult, one: CommaResult, Z0: str) -> CatFunctor:
    """``g'`` restricted to the fibre over ``Z0``, as an isomorphism onto the fibre over ``g Z0``."""
    gp = end_change(two, one)
    src = slice_two_sided(two, Z0).category
    tgt = slice_at_target(one, two.g.ob(Z0)).category
    F = CatFunctor(src, tgt, {o: gp.ob(o) for o in src.objects}, {m.id: gp.mor(m.id) for m in src.morphisms})
    inverse = inverse_functor(F)
    if inverse is None or not check_isomorphism(F, inverse).ok:
        raise IdentificationError(f"fibres over {Z0!r} and its image are not identified")
    return F


def contraction(C: CommaResult, k: int) -> CatFunctor:
    """Endofunctor of ``(f X |n Y)`` collapsing the last ``k`` legs.

    The legs ``u_k, ..., u_1`` become identities at ``Y_k``.  ``k = 0`` is the
    identity and ``k = n`` is ``h . p``; consecutive contractions are linked
    by a natural transformation, whose direction depends on the parity of
    ``k``.
    """
    if not C.one_sided:
        raise ValueError("contraction needs the one-sided construction")
    n, Y = C.n, C.f.target
    if not 0 <= k <= n:
        raise ValueError("k out of range")
    obj = {}
    for o, A in C.objects.items():
        yk = C.vertices(o)[n - k]
        obj[o] = _object_id(A.x, A.legs[: n - k] + (Y.identity[yk],) * k, yk)
    mor = {}
    for m, a in C.morphisms.items():
        if k == 0:
            wk = a.end_map
        elif k == n:
            wk = C.f.mor(a.x_map)
        else:
            wk = a.rungs[n - 1 - k]
        kept = a.rungs[: max(n - 1 - k, 0)]
        rungs = kept + (wk,) * (n - 1 - len(kept))
        mor[m] = C.encode_morphism(obj[a.source], obj[a.target], a.x_map, rungs, wk)
    return CatFunctor(C.category, C.category, obj, mor)


# identifications with Grothendieck constructions

class IdentificationError(CategoryError):
    pass


@dataclass(eq=False)
class Identification:
    which: str
    diagram: CatDiagram
    groth: GrothResult
    reversed: bool
    """True when the comparison runs through the opposite of the total category."""
    source: FiniteCategory
    iso: CatFunctor
    inverse: CatFunctor


def _slice_functor(
    C: CommaResult,
    src: FiniteCategory,
    tgt: FiniteCategory,
    obj_fn: Callable[[ZigzagObject], str],
    mor_fn: Callable[[ZigzagMorphism], tuple[str, tuple[str, ...], str]],
) -> CatFunctor:
    obj = {o: obj_fn(C.objects[o]) for o in src.objects}
    mor = {}
    for m in src.morphisms:
        a = C.morphisms[m.id] if not src.is_identity(m.id) else None
        if a is None:
            mor[m.id] = identity_id(obj[m.dom])
            continue
        x, rungs, e = mor_fn(a)
        mor[m.id] = C.encode_morphism(obj[a.source], obj[a.target], x, rungs, e)
    F = CatFunctor(src, tgt, obj, mor)
    bad = validate_functor(F)
    if not bad.ok:
        raise IdentificationError(f"transition functor is not a functor: {bad.violations[:3]}")
    return F


def _finish(which: str, C: CommaResult, diagram: CatDiagram, reversed_: bool, mor_to_comma) -> Identification:
    G = grothendieck(diagram)
    source = opposite(G.total) if reversed_ else G.total
    obj = {o: G.object_decode[o][1] for o in source.objects}
    mor = {}
    for m in source.morphisms:
        if source.is_identity(m.id):
            mor[m.id] = identity_id(obj[m.dom])
        else:
            mor[m.id] = mor_to_comma(G, m.id)
    iso = CatFunctor(source, C.category, obj, mor)
    inverse = inverse_functor(iso)
    if inverse is None:
        raise IdentificationError(f"{which}: comparison functor is not bijective")
    report = check_isomorphism(iso, inverse)
    if not report.ok:
        raise IdentificationError(f"{which}: {report.violations[:3]}")
    return Identification(which, diagram, G, reversed_, source, iso, inverse)


def over_target(C: CommaResult) -> Identification:
    """``(f X |n Y)`` as the Grothendieck construction of ``Y -> (f X |n Y)``."""
    if not C.one_sided:
        raise ValueError("over_target needs the one-sided construction")
    Y = C.f.target
    slices = {y: slice_at_target(C, y).category for y in Y.objects}
    functors = {}
    for m in Y.non_identity():
        functors[m.id] = _slice_functor(
            C,
            slices[m.dom],
            slices[m.cod],
            lambda A, m=m: _object_id(A.x, A.legs[:-1] + (Y.compose(m.id, A.legs[-1]),), m.cod),
            lambda a, m=m: (a.x_map, a.rungs, Y.identity[m.cod]),
        )
    diagram = make_diagram(Y, slices, functors)

    def to_comma(G: GrothResult, mid: str) -> str:
        d, a = G.morphism_decode[mid]
        src = G.morphism_source[mid]
        lad = C.morphisms[a]
        return C.encode_morphism(src, lad.target, lad.x_map, lad.rungs, d)

    return _finish("over_target", C, diagram, False, to_comma)


def over_z(C: CommaResult) -> Identification:
    """``(f X |n g Z)`` as the Grothendieck construction of ``Z -> (f X |n g Z)``."""
    if C.one_sided:
        raise ValueError("over_z needs the two-sided construction")
    Z, Y, g = C.g.source, C.f.target, C.g
    slices = {z: slice_two_sided(C, z).category for z in Z.objects}
    functors = {}
    for m in Z.non_identity():
        functors[m.id] = _slice_functor(
            C,
            slices[m.dom],
            slices[m.cod],
            lambda A, m=m: _object_id(A.x, A.legs[:-1] + (Y.compose(g.mor(m.id), A.legs[-1]),), m.cod),
            lambda a, m=m: (a.x_map, a.rungs, Z.identity[m.cod]),
        )
    diagram = make_diagram(Z, slices, functors)

    def to_comma(G: GrothResult, mid: str) -> str:
        d, a = G.morphism_decode[mid]
        src = G.morphism_source[mid]
        lad = C.morphisms[a]
        return C.encode_morphism(src, lad.target, lad.x_map, lad.rungs, d)

    return _finish("over_z", C, diagram, False, to_comma)


def over_source(C: CommaResult) -> Identification:
    """``(f X |n Y)`` over ``X`` (``n`` even) or over ``X^op`` (``n`` odd).

    For odd ``n`` the fibres are the opposites of ``(f X0 |n Y)`` and the
    comparison is with the opposite of the total category.
    """
    if not C.one_sided:
        raise ValueError("over_source needs the one-sided construction")
    X, Y, f, n = C.f.source, C.f.target, C.f, C.n
    odd = n % 2 == 1
    slices = {x: slice_at_source(C, x).category for x in X.objects}
    functors = {}
    if odd:
        index = opposite(X)
        values = {x: opposite(s) for x, s in slices.items()}
        for m in X.non_identity():
            # in X^op the map runs cod -> dom; precompose u_n with f(m)
            functors[m.id] = _slice_functor(
                C,
                values[m.cod],
                values[m.dom],
                lambda A, m=m: _object_id(m.dom, (Y.compose(A.legs[0], f.mor(m.id)),) + A.legs[1:], A.end),
                lambda a, m=m: (X.identity[m.dom], a.rungs, a.end_map),
            )
    else:
        index = X
        values = slices
        for m in X.non_identity():
            functors[m.id] = _slice_functor(
                C,
                values[m.dom],
                values[m.cod],
                lambda A, m=m: _object_id(m.cod, (Y.compose(f.mor(m.id), A.legs[0]),) + A.legs[1:], A.end),
                lambda a, m=m: (X.identity[m.cod], a.rungs, a.end_map),
            )
    diagram = make_diagram(index, values, functors)

    def to_comma(G: GrothResult, mid: str) -> str:
        d, a = G.morphism_decode[mid]
        src = G.morphism_source[mid]
        lad = C.morphisms[a]
        if odd:
            # a: A2 -> G(d)(A1) in the slice; the comma map runs A2 -> A1
            return C.encode_morphism(lad.source, src, d, lad.rungs, lad.end_map)
        return C.encode_morphism(src, lad.target, d, lad.rungs, lad.end_map)

    return _finish("over_source", C, diagram, odd, to_comma)


def groth_identification(which: str, C: CommaResult) -> Identification:
    """Identifier-level isomorphism between a zigzag category and a Grothendieck construction."""
    table = {"over_target": over_target, "over_source": over_source, "over_z": over_z}
    if which not in table:
        raise ValueError(f"unknown identification {which!r}")
    return table[which](C)


def check_comma(C: CommaResult) -> ValidationReport:
    """Functoriality of the structure maps and injectivity of ``h``/``k``."""
    report = ValidationReport()
    for name, F in (("inclusion", C.inclusion), ("to_x", C.to_x), ("to_end", C.to_end)):
        for v in validate_functor(F).violations:
            report.add(f"{name}: {v.law}", *v.witnesses)
    inc = C.inclusion
    if len(set(inc.object_map.values())) != len(inc.object_map):
        report.add("monomorphism", "not injective on objects")
    if len(set(inc.morphism_map.values())) != len(inc.morphism_map):
        report.add("monomorphism", "not injective on morphisms")
    return report
