import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catho.category import (
    CatFunctor,
    CategoryError,
    FiniteCategory,
    FunctorError,
    Morphism,
    NatTransformation,
    SearchBoundExceeded,
    build_standard,
    check_isomorphism,
    check_naturality,
    compose_functors,
    connected_components,
    cyclic_group,
    discrete,
    find_functors,
    find_nat_trans,
    free_dag,
    identity_functor,
    indiscrete,
    initial_objects,
    inverse_functor,
    linear_order,
    opposite,
    pick_object,
    poset,
    product,
    terminal,
    terminal_objects,
    validate_category,
    validate_functor,
)
from catho import corpus


def magma(table: dict[tuple[str, str], str]) -> FiniteCategory:
    elems = sorted({g for g, _ in table})
    mors = [Morphism("id:*", "*", "*")] + [Morphism(g, "*", "*") for g in elems]
    full = dict(table)
    for g in ["id:*"] + elems:
        full[("id:*", g)] = g
        full[(g, "id:*")] = g
    return FiniteCategory(["*"], mors, {"*": "id:*"}, full)


@pytest.mark.parametrize("name", sorted(corpus.categories()))
def test_corpus_categories_validate(name):
    assert validate_category(corpus.categories()[name]).ok


def test_terminal_shape():
    O = terminal()
    assert list(O.objects) == ["*"]
    assert [m.id for m in O.morphisms] == ["id:*"]


def test_z2_from_table():
    c = build_standard("group", elements=["e", "s"], multiply={("e", "e"): "e", ("e", "s"): "s", ("s", "e"): "s", ("s", "s"): "e"})
    assert validate_category(c).ok
    assert c.compose("s", "s") == "id:*"


def test_associativity_violation_is_reported():
    c = magma({("a", "a"): "a", ("a", "b"): "a", ("b", "a"): "b", ("b", "b"): "a"})
    report = validate_category(c)
    assert "associativity" in report.laws()
    assert report.violations[0].witnesses


def test_missing_composite_is_reported():
    c = FiniteCategory(
        ["a", "b", "c"],
        [Morphism("id:a", "a", "a"), Morphism("id:b", "b", "b"), Morphism("id:c", "c", "c"),
         Morphism("f", "a", "b"), Morphism("g", "b", "c")],
        {"a": "id:a", "b": "id:b", "c": "id:c"},
        {("id:a", "id:a"): "id:a", ("id:b", "id:b"): "id:b", ("id:c", "id:c"): "id:c",
         ("f", "id:a"): "f", ("id:b", "f"): "f", ("g", "id:b"): "g", ("id:c", "g"): "g"},
    )
    assert "composition totality" in validate_category(c).laws()


def test_bad_identity_is_reported():
    c = FiniteCategory(
        ["*"],
        [Morphism("id:*", "*", "*"), Morphism("s", "*", "*")],
        {"*": "id:*"},
        {("id:*", "id:*"): "id:*", ("s", "s"): "s", ("id:*", "s"): "id:*", ("s", "id:*"): "s"},
    )
    assert validate_category(c).laws() & {"left identity law", "right identity law"}


@pytest.mark.parametrize(
    "kind,params",
    [
        ("group", {"elements": ["e", "a"], "multiply": {("e", "e"): "e", ("e", "a"): "a", ("a", "e"): "a", ("a", "a"): "a"}}),
        ("free_dag", {"nodes": ["x", "y"], "edges": [("f", "x", "y"), ("g", "y", "x")]}),
        ("poset", {"elements": ["x", "y"], "relation": [("x", "x"), ("y", "y"), ("x", "y"), ("y", "x")]}),
        ("poset", {"elements": ["x", "y", "z"], "relation": [("x", "x"), ("y", "y"), ("z", "z"), ("x", "y"), ("y", "z")]}),
        ("nope", {}),
    ],
)
def test_builders_reject_bad_input(kind, params):
    with pytest.raises(CategoryError):
        build_standard(kind, **params)


def test_free_dag_paths():
    c = free_dag(["a", "b", "c"], [("f", "a", "b"), ("g", "b", "c"), ("h", "a", "c")])
    assert validate_category(c).ok
    assert sorted(c.hom("a", "c")) == ["f.g", "h"]
    assert c.compose("g", "f") == "f.g"


@pytest.mark.parametrize("name", sorted(corpus.categories()))
def test_opposite_is_involutive(name):
    c = corpus.categories()[name]
    op = opposite(c)
    assert validate_category(op).ok
    assert opposite(op) == c


def test_product_of_interval_with_itself():
    I = linear_order(1)
    sq = product(I, I)
    assert validate_category(sq).ok
    assert len(sq.objects) == 4 and len(sq.morphisms) == 9
    assert terminal_objects(sq) == ["(1,1)"]
    assert initial_objects(sq) == ["(0,0)"]


def test_end_objects():
    # indiscrete categories have every object both initial and terminal
    E = indiscrete(["a", "b"])
    assert terminal_objects(E) == ["a", "b"]
    assert initial_objects(E) == ["a", "b"]
    assert terminal_objects(cyclic_group(2)) == []
    assert terminal_objects(discrete(["a", "b"])) == []


def test_components():
    assert len(connected_components(discrete(["a", "b", "c"]))) == 3
    assert len(connected_components(corpus.categories()["V"])) == 1


@pytest.mark.parametrize("name", sorted(corpus.functors()))
def test_corpus_functors_validate(name):
    assert validate_functor(corpus.functors()[name]).ok


def test_functor_law_violations():
    BZ2 = cyclic_group(2)
    bad = CatFunctor(BZ2, BZ2, {"*": "*"}, {"id:*": "s", "s": "s"})
    assert "identity preservation" in validate_functor(bad).laws()
    I, I2 = linear_order(1), linear_order(2)
    twisted = CatFunctor(I, I2, {"0": "1", "1": "0"}, {"id:0": "id:1", "id:1": "id:0", "0<1": "0<1"})
    assert "dom/cod preservation" in validate_functor(twisted).laws()
    Z3 = cyclic_group(3, generator="r")
    not_hom = CatFunctor(Z3, BZ2, {"*": "*"}, {"id:*": "id:*", "r": "s", "r2": "s"})
    assert "composition preservation" in validate_functor(not_hom).laws()


def test_dangling_functor_raises():
    O = terminal()
    with pytest.raises(FunctorError):
        validate_functor(CatFunctor(O, O, {"*": "nowhere"}, {"id:*": "id:*"}))


def test_inverse_and_isomorphism():
    E = indiscrete(["a", "b"])
    swap = corpus.functors()["swap_EZ2"]
    inv = inverse_functor(swap)
    assert inv is not None
    assert check_isomorphism(swap, inv).ok
    assert inverse_functor(pick_object(E, "a")) is None


def _all_functors_brute(C, D):
    found = []
    for objs in itertools.product(D.objects, repeat=len(C.objects)):
        om = dict(zip(C.objects, objs))
        choices = [D.hom(om[m.dom], om[m.cod]) for m in C.morphisms]
        for ms in itertools.product(*choices):
            F = CatFunctor(C, D, om, {m.id: x for m, x in zip(C.morphisms, ms)})
            if validate_functor(F).ok:
                found.append(F.key())
    return sorted(found)


@pytest.mark.parametrize(
    "src,tgt",
    [("I", "I2"), ("BZ2", "BZ2"), ("BZ3", "BZ3"), ("BZ2", "BZ3"), ("EZ2", "BZ2"), ("V", "I"), ("K", "EZ2"), ("I", "K")],
)
def test_functor_search_matches_brute_force(src, tgt):
    C, D = corpus.categories()[src], corpus.categories()[tgt]
    searched = sorted(F.key() for F in find_functors(C, D))
    assert searched == _all_functors_brute(C, D)
    assert len(set(searched)) == len(searched)


def _all_transformations_brute(F, G):
    objs = F.source.objects
    choices = [F.target.hom(F.ob(o), G.ob(o)) for o in objs]
    out = []
    for comps in itertools.product(*choices):
        t = NatTransformation(F, G, dict(zip(objs, comps)))
        if check_naturality(t).ok:
            out.append(tuple(comps))
    return sorted(out)


def test_nat_trans_search_matches_brute_force():
    C = corpus.categories()
    pairs = []
    for a, b in [("I", "I2"), ("BZ2", "BZ2"), ("V", "I"), ("EZ2", "EZ2"), ("BZ3", "BZ3")]:
        fs = list(find_functors(C[a], C[b]))
        pairs += [(F, G) for F in fs for G in fs]
    assert len(pairs) > 40
    for F, G in pairs:
        got = sorted(tuple(t.components[o] for o in F.source.objects) for t in find_nat_trans(F, G))
        assert got == _all_transformations_brute(F, G)


def test_center_of_z2():
    # natural endo-transformations of the identity of BG are central elements
    BZ2 = cyclic_group(2)
    assert len(find_nat_trans(identity_functor(BZ2), identity_functor(BZ2))) == 2


def test_nat_trans_search_bound():
    I = linear_order(4)
    F = identity_functor(I)
    with pytest.raises(SearchBoundExceeded):
        list(find_functors(I, I, bound=3))
    assert find_nat_trans(F, F)


def test_naturality_violation():
    BZ3 = cyclic_group(3, generator="r")
    e = identity_functor(BZ3)
    # conjugation is trivial in an abelian group, so any component is natural;
    # a non-natural one needs two different functors
    triv = CatFunctor(BZ3, BZ3, {"*": "*"}, {m.id: "id:*" for m in BZ3.morphisms})
    t = NatTransformation(e, triv, {"*": "r"})
    assert "naturality" in check_naturality(t).laws()


def test_compose_functors_is_associative():
    F = corpus.functors()
    a = F["pick1_I"]
    b = F["I_to_I2"]
    c = identity_functor(corpus.categories()["I2"])
    left = compose_functors(c, compose_functors(b, a))
    right = compose_functors(compose_functors(c, b), a)
    assert left.key() == right.key()


@st.composite
def random_posets(draw):
    k = draw(st.integers(1, 5))
    elems = [f"p{i}" for i in range(k)]
    # a random DAG on the natural order, closed transitively
    rel = {(a, a) for a in elems}
    for i in range(k):
        for j in range(i + 1, k):
            if draw(st.booleans()):
                rel.add((elems[i], elems[j]))
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), list(rel)):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return poset(elems, rel)


@settings(max_examples=40, deadline=None)
@given(random_posets(), random_posets())
def test_random_posets_and_products_validate(p, q):
    assert validate_category(p).ok
    assert validate_category(product(p, q)).ok
    assert opposite(opposite(p)) == p
