"""A small fixed corpus of categories, functors, zigzags and diagrams."""
from __future__ import annotations

from functools import lru_cache

from .category import (
    CatFunctor,
    FiniteCategory,
    constant_functor,
    cyclic_group,
    discrete,
    free_dag,
    identity_functor,
    indiscrete,
    linear_order,
    pick_object,
    terminal,
    to_terminal,
)
from .grothendieck import CatDiagram, make_diagram


@lru_cache(maxsize=None)
def categories() -> dict[str, FiniteCategory]:
    return {
        "O": terminal(),
        "I": linear_order(1),
        "I2": linear_order(2),
        "BZ2": cyclic_group(2),
        "BZ3": cyclic_group(3, generator="r"),
        "EZ2": indiscrete(["a", "b"]),
        "D2": discrete(["a", "b"]),
        "V": free_dag(["l", "c", "r"], [("p", "c", "l"), ("q", "c", "r")]),
        "K": free_dag(["a", "b"], [("u", "a", "b"), ("v", "a", "b")]),
    }


def _swap(c: FiniteCategory) -> CatFunctor:
    """Exchange ``a`` and ``b`` in EZ2 or D2."""
    flip = {"a": "b", "b": "a"}

    def rename(m: str) -> str:
        return "".join(flip.get(ch, ch) for ch in m)

    return CatFunctor(c, c, flip, {m.id: rename(m.id) for m in c.morphisms})


@lru_cache(maxsize=None)
def functors() -> dict[str, CatFunctor]:
    C = categories()
    O, I, I2, BZ2, EZ2, D2, V = (C[k] for k in ("O", "I", "I2", "BZ2", "EZ2", "D2", "V"))
    ez2_to_bz2 = CatFunctor(
        EZ2, BZ2, {"a": "*", "b": "*"}, {"id:a": "id:*", "id:b": "id:*", "a>b": "s", "b>a": "s"}
    )
    i_to_i2 = CatFunctor(I, I2, {"0": "0", "1": "2"}, {"id:0": "id:0", "id:1": "id:2", "0<1": "0<2"})
    v_to_i = CatFunctor(
        V, I, {"c": "0", "l": "1", "r": "1"}, {"id:c": "id:0", "id:l": "id:1", "id:r": "id:1", "p": "0<1", "q": "0<1"}
    )
    return {
        "id_O": identity_functor(O),
        "e_BZ2": pick_object(BZ2, "*"),
        "e_BZ3": pick_object(C["BZ3"], "*"),
        "id_I": identity_functor(I),
        "pick0_I": pick_object(I, "0"),
        "pick1_I": pick_object(I, "1"),
        "I_to_O": to_terminal(I),
        "D2_to_O": to_terminal(D2),
        "EZ2_to_O": to_terminal(EZ2),
        "pick_a_EZ2": pick_object(EZ2, "a"),
        "EZ2_to_BZ2": ez2_to_bz2,
        "swap_EZ2": _swap(EZ2),
        "I_to_I2": i_to_i2,
        "V_to_I": v_to_i,
        "id_BZ2": identity_functor(BZ2),
        "const_I2_1": constant_functor(I, I2, "1"),
        "id_K": identity_functor(C["K"]),
        "pick_b_K": pick_object(C["K"], "b"),
    }


def comma_functors() -> list[str]:
    """Functors for which the zigzag categories stay small for ``n <= 3``."""
    return [
        "id_O",
        "e_BZ2",
        "e_BZ3",
        "id_I",
        "pick0_I",
        "pick1_I",
        "I_to_O",
        "D2_to_O",
        "EZ2_to_O",
        "pick_a_EZ2",
        "EZ2_to_BZ2",
        "I_to_I2",
        "V_to_I",
        "id_BZ2",
        "id_K",
        "pick_b_K",
    ]


@lru_cache(maxsize=None)
def zigzags() -> dict[str, tuple[CatFunctor, CatFunctor]]:
    F = functors()
    C = categories()
    return {
        "O-O": (F["id_O"], F["id_O"]),
        "loop_BZ2": (F["e_BZ2"], F["e_BZ2"]),
        "loop_BZ3": (F["e_BZ3"], F["e_BZ3"]),
        "I_at_1": (F["id_I"], F["pick1_I"]),
        "0_to_1": (F["pick0_I"], F["pick1_I"]),
        "1_to_0": (F["pick1_I"], F["pick0_I"]),
        "product_I": (F["I_to_O"], F["I_to_O"]),
        "EZ2_BZ2": (F["EZ2_to_BZ2"], F["e_BZ2"]),
        "V_I": (F["V_to_I"], F["pick1_I"]),
        "I_I2": (F["I_to_I2"], identity_functor(C["I2"])),
    }


@lru_cache(maxsize=None)
def diagrams() -> dict[str, CatDiagram]:
    C = categories()
    F = functors()
    O, I, BZ2, EZ2, D2 = (C[k] for k in ("O", "I", "BZ2", "EZ2", "D2"))
    bz2_on_ez2 = make_diagram(BZ2, {"*": EZ2}, {"s": F["swap_EZ2"]})
    return {
        "const_O_over_I": make_diagram(I, {"0": O, "1": O}, {"0<1": identity_functor(O)}),
        "const_BZ2_over_O": make_diagram(O, {"*": BZ2}, {}),
        "O_to_EZ2": make_diagram(I, {"0": O, "1": EZ2}, {"0<1": F["pick_a_EZ2"]}),
        "O_to_BZ2": make_diagram(I, {"0": O, "1": BZ2}, {"0<1": F["e_BZ2"]}),
        "D2_to_O": make_diagram(I, {"0": D2, "1": O}, {"0<1": F["D2_to_O"]}),
        "const_I_over_I": make_diagram(I, {"0": I, "1": I}, {"0<1": identity_functor(I)}),
        "swap_over_BZ2": bz2_on_ez2,
        "EZ2_to_BZ2": make_diagram(I, {"0": EZ2, "1": BZ2}, {"0<1": F["EZ2_to_BZ2"]}),
    }
