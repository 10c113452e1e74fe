"""Random valid diagrams for property tests."""
import random
from functools import lru_cache

from catho import corpus
from catho.category import compose_functors, find_functors, free_dag, identity_functor
from catho.grothendieck import CatDiagram, make_diagram

FIBRES = ["O", "I", "I2", "BZ2", "BZ3", "EZ2", "D2", "V", "K"]

# index shapes on at most three objects; edges are (name, source, target)
SHAPES = [
    (["a"], []),
    (["a", "b"], [("f", "a", "b")]),
    (["a", "b"], [("f", "a", "b"), ("g", "a", "b")]),
    (["a", "b", "c"], [("f", "a", "b"), ("g", "b", "c")]),
    (["a", "b", "c"], [("f", "a", "b"), ("g", "b", "c"), ("h", "a", "c")]),
    (["a", "b", "c"], [("f", "a", "b"), ("g", "a", "c")]),
    (["a", "b", "c"], [("f", "a", "c"), ("g", "b", "c")]),
    (["a", "b", "c"], []),
]


@lru_cache(maxsize=None)
def functors_between(src: str, tgt: str):
    C = corpus.categories()
    return list(find_functors(C[src], C[tgt]))


def random_diagram(rng: random.Random) -> CatDiagram:
    nodes, edges = rng.choice(SHAPES)
    index = free_dag(nodes, edges)
    names = {}
    for v in nodes:
        # only fibres that admit a functor along every incoming edge
        names[v] = rng.choice(FIBRES)
    for _ in range(50):
        ok = all(functors_between(names[s], names[t]) for _, s, t in edges)
        if ok:
            break
        v = rng.choice(nodes)
        names[v] = rng.choice(FIBRES)
    else:
        names = {v: "O" for v in nodes}
    C = corpus.categories()
    values = {v: C[names[v]] for v in nodes}
    on_edges = {e: rng.choice(functors_between(names[s], names[t])) for e, s, t in edges}
    functors = {}
    for m in index.non_identity():
        parts = m.id.split(".")
        F = on_edges[parts[0]]
        for p in parts[1:]:
            F = compose_functors(on_edges[p], F)
        functors[m.id] = F
    return make_diagram(index, values, functors)


def group_action_diagram() -> CatDiagram:
    """Z/2 acting on the indiscrete category on two objects by swapping them."""
    C = corpus.categories()
    return make_diagram(C["BZ2"], {"*": C["EZ2"]}, {"s": corpus.functors()["swap_EZ2"]})


def identity_diagram(name: str) -> CatDiagram:
    c = corpus.categories()[name]
    return make_diagram(corpus.categories()["O"], {"*": c}, {"id:*": identity_functor(c)})
