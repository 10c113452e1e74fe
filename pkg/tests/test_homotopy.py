import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catho import corpus
from catho.category import (
    CatFunctor,
    cyclic_group,
    discrete,
    group,
    identity_functor,
    indiscrete,
    linear_order,
    poset,
    product,
    to_terminal,
)
from catho.homotopy import (
    Answer,
    ComponentObstruction,
    Config,
    ContractibleCertificate,
    Exhaustion,
    HomologyObstruction,
    HomotopyInverseCertificate,
    IsomorphismCertificate,
    NerveBoundExceeded,
    Verdict,
    boundary_squared_zero,
    chain_complex,
    contractible,
    homology,
    nerve,
    verify_verdict,
    weak_equivalence,
)
from catho.snf import dense_smith_diagonal
from catho.theorems import h_verdict
from catho.zigzag import build_comma

C = corpus.categories()
F = corpus.functors()


def klein_four():
    elems = ["e", "x", "y", "xy"]
    bits = {"e": (0, 0), "x": (1, 0), "y": (0, 1), "xy": (1, 1)}
    back = {v: k for k, v in bits.items()}
    mult = {(a, b): back[((bits[a][0] + bits[b][0]) % 2, (bits[a][1] + bits[b][1]) % 2)] for a in elems for b in elems}
    return group(elems, mult)


def crown():
    # two minima below two maxima: a poset model of the circle
    rel = [(a, a) for a in "abcd"] + [(a, b) for a in "ab" for b in "cd"]
    return poset(list("abcd"), rel)


def suspension_sphere():
    # three levels of two incomparable points: the 2-sphere
    levels = [("a", "b"), ("c", "d"), ("e", "f")]
    elems = [x for lv in levels for x in lv]
    rel = [(x, x) for x in elems]
    for i, j in itertools.combinations(range(3), 2):
        rel += [(x, y) for x in levels[i] for y in levels[j]]
    return poset(elems, rel)


def projection(P, first_of):
    D = discrete(sorted({first_of(o) for o in P.objects}))
    return CatFunctor(P, D, {o: first_of(o) for o in P.objects}, {m.id: "id:" + first_of(m.dom) for m in P.morphisms})


def test_nerve_counts():
    assert [len(x) for x in nerve(linear_order(2), 2).simplices] == [3, 3, 1, 0]
    assert [len(x) for x in nerve(cyclic_group(2), 3).simplices] == [1, 1, 1, 1, 1]
    assert [len(x) for x in nerve(cyclic_group(3, "r"), 2).simplices] == [1, 2, 4, 8]


def test_z2_boundaries_by_hand():
    # every k-simplex of B(Z/2) is (s, ..., s); inner faces are degenerate,
    # so the only boundary coefficient is 1 + (-1)^k
    cc = chain_complex(nerve(cyclic_group(2), 3))
    for k in range(1, 5):
        assert cc.boundary_matrix(k) == [[1 + (-1) ** k]]


@pytest.mark.parametrize("name", sorted(C))
def test_boundary_squares_to_zero(name):
    assert boundary_squared_zero(chain_complex(nerve(C[name], 3)))


@pytest.mark.parametrize(
    "cat,betti,torsion",
    [
        (cyclic_group(2), (1, 0, 0, 0), ((), (2,), (), (2,))),
        (cyclic_group(3, "r"), (1, 0, 0, 0), ((), (3,), (), (3,))),
        (klein_four(), (1, 0, 0, 0), ((), (2, 2), (2,), (2, 2, 2))),
        (discrete(["a", "b"]), (2, 0, 0, 0), ((), (), (), ())),
        (indiscrete(["a", "b", "c"]), (1, 0, 0, 0), ((), (), (), ())),
        (crown(), (1, 1, 0, 0), ((), (), (), ())),
        (suspension_sphere(), (1, 0, 1, 0), ((), (), (), ())),
        (corpus.categories()["K"], (1, 1, 0, 0), ((), (), (), ())),
    ],
)
def test_known_homology(cat, betti, torsion):
    p = homology(cat, 3)
    assert p.complete
    assert p.betti == betti
    assert p.torsion == torsion


def dense_homology(c, max_dim):
    cc = chain_complex(nerve(c, max_dim))
    out = []
    for k in range(max_dim + 1):
        size = len(cc.basis[k])
        r_k = len(dense_smith_diagonal(cc.boundary_matrix(k))) if k >= 1 and size else 0
        nxt = cc.boundary_matrix(k + 1) if cc.basis[k + 1] else []
        inv = dense_smith_diagonal(nxt) if nxt and nxt[0] else []
        out.append((size - r_k - len(inv), tuple(d for d in inv if d > 1)))
    return out


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**9))
def test_sparse_matches_dense_on_random_posets(seed):
    rng = random.Random(seed)
    k = rng.randint(1, 6)
    elems = [f"p{i}" for i in range(k)]
    rel = {(a, a) for a in elems}
    for i, j in itertools.combinations(range(k), 2):
        if rng.random() < 0.4:
            rel.add((elems[i], elems[j]))
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), list(rel)):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    P = poset(elems, rel)
    p = homology(P, 2)
    assert [p.degree(i) for i in range(3)] == dense_homology(P, 2)


def test_partial_profile():
    c = cyclic_group(3, "r")
    with pytest.raises(NerveBoundExceeded):
        homology(c, 3, simplex_bound=20)
    p = homology(c, 3, simplex_bound=20, allow_partial=True)
    assert not p.complete
    # 1 + 2 + 4 + 8 chains fit under the bound, the 16 in dimension 4 do not
    assert p.stable_through == 2
    assert p.betti == (1, 0, 0) and p.torsion == ((), (3,), ())


def test_isomorphism_verdict():
    v = weak_equivalence(F["swap_EZ2"])
    assert v.yes and isinstance(v.evidence, IsomorphismCertificate)
    assert verify_verdict(F["swap_EZ2"], v).ok


def test_end_object_verdicts():
    # E(Z/2) has initial and terminal objects, so it is contractible
    v = contractible(C["EZ2"])
    assert v.yes and isinstance(v.evidence, ContractibleCertificate)
    assert v.evidence.source_kind == "terminal"
    v = weak_equivalence(F["V_to_I"])
    assert v.yes
    assert verify_verdict(F["V_to_I"], v).ok


def test_component_obstruction():
    f = to_terminal(C["D2"])
    v = weak_equivalence(f)
    assert v.no and v.evidence == ComponentObstruction(2, 1)
    assert verify_verdict(f, v).ok


def test_homology_obstruction():
    v = weak_equivalence(F["e_BZ2"])
    assert v.no and isinstance(v.evidence, HomologyObstruction)
    assert v.evidence.degree == 1
    assert (v.evidence.source_torsion, v.evidence.target_torsion) == ((), (2,))
    assert verify_verdict(F["e_BZ2"], v).ok
    assert contractible(C["BZ2"]).no


def test_homotopy_inverse_certificate():
    P = product(C["D2"], C["I"])
    pr = projection(P, lambda o: o[1:-1].split(",")[0])
    v = weak_equivalence(pr)
    assert v.yes and isinstance(v.evidence, HomotopyInverseCertificate)
    assert verify_verdict(pr, v).ok


def test_unknown_carries_a_note():
    c = build_comma(F["id_K"], 2)
    v = weak_equivalence(c.h, Config(search_bound=2))
    assert v.answer is Answer.UNKNOWN
    assert isinstance(v.evidence, Exhaustion) and "homology agrees" in v.evidence.note
    assert verify_verdict(c.h, v).ok


@pytest.mark.parametrize("n", [1, 2, 3])
def test_search_bound_counts_intermediate_functors(n):
    # the contractions give a zigzag of n transformations through n - 1 functors
    c = build_comma(F["id_K"], n)
    for bound in range(3):
        v = h_verdict(c, Config(search_bound=bound))
        assert v.yes == (bound >= n - 1)
        if v.yes:
            assert len(v.evidence.target_zigzag) <= bound + 1
            assert verify_verdict(c.h, v).ok


def test_forged_evidence_is_rejected():
    f = F["e_BZ2"]
    wrong = Verdict(Answer.YES, IsomorphismCertificate(F["id_O"]))
    assert not verify_verdict(f, wrong).ok
    assert not verify_verdict(f, Verdict(Answer.YES, ContractibleCertificate("*", "terminal", "*", "terminal"))).ok
    assert not verify_verdict(f, Verdict(Answer.NO, ComponentObstruction(1, 2))).ok
    assert not verify_verdict(f, Verdict(Answer.NO, HomologyObstruction(2, 0, (), 0, (2,)))).ok
    assert not verify_verdict(f, Verdict(Answer.UNKNOWN, Exhaustion(""))).ok
    assert not verify_verdict(f, Verdict(Answer.YES, Exhaustion("nothing"))).ok
    ident = identity_functor(C["BZ2"])
    assert verify_verdict(ident, Verdict(Answer.YES, HomotopyInverseCertificate(ident, (), ()))).ok
    trivial = CatFunctor(C["BZ2"], C["BZ2"], {"*": "*"}, {"id:*": "id:*", "s": "id:*"})
    assert not verify_verdict(ident, Verdict(Answer.YES, HomotopyInverseCertificate(trivial, (), ()))).ok


def test_config_defaults():
    cfg = Config()
    assert (cfg.max_dim, cfg.search_bound) == (3, 2)
    assert homology(cyclic_group(2), 1).betti == (1, 0)
