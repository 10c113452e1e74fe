"""Properties Q, B_n and C_n, homotopy-fibre models and homotopy pullbacks."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .category import CatFunctor, FiniteCategory, compose_functors, pick_object
from .grothendieck import CatDiagram, fibre, grothendieck
from .homotopy import Answer, Config, Hints, Verdict, weak_equivalence
from .zigzag import (
    CommaResult,
    PullbackResult,
    build_comma,
    build_two_sided,
    contraction,
    groth_identification,
    slice_at_target,
    strict_pullback,
)


class Outcome(str, enum.Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    UNKNOWN = "Unknown"


class Conclusion(str, enum.Enum):
    STRICT_IS_HOMOTOPY_PULLBACK = "StrictIsHomotopyPullback"
    STRICT_IS_NOT = "StrictIsNot"
    MODEL_ONLY = "ModelOnly"
    INCONCLUSIVE = "Inconclusive"


@dataclass(eq=False)
class PropertyReport:
    property: str
    overall: Outcome
    verdicts: list[tuple[str, Verdict]] = field(default_factory=list)
    """Per-morphism verdicts (Q and B_n)."""
    sub_reports: list[tuple[str, "PropertyReport"]] = field(default_factory=list)
    """Per-object B_n reports (C_n)."""

    @property
    def holds(self) -> bool:
        return self.overall is Outcome.HOLDS


def _aggregate(answers: list[Answer | Outcome]) -> Outcome:
    values = [a.value for a in answers]
    if any(v in ("No", "Fails") for v in values):
        return Outcome.FAILS
    if all(v in ("Yes", "Holds") for v in values):
        return Outcome.HOLDS
    return Outcome.UNKNOWN


class VerdictCache:
    """Memoizes verdicts by the canonical encoding of the functor."""

    def __init__(self):
        self._store: dict[tuple, Verdict] = {}

    def get(self, F: CatFunctor, config: Config) -> Verdict:
        key = (F.key(), config)
        if key not in self._store:
            self._store[key] = weak_equivalence(F, config)
        return self._store[key]


def check_property_Q(F: CatDiagram, config: Config = Config(), cache: VerdictCache | None = None, label: str = "Q") -> PropertyReport:
    """Does the diagram send every map of its index to a weak equivalence?"""
    cache = cache or VerdictCache()
    verdicts = [(m.id, cache.get(F.functors[m.id], config)) for m in F.index.non_identity()]
    return PropertyReport(label, _aggregate([v.answer for _, v in verdicts]), verdicts)


def check_property_Bn(f: CatFunctor, n: int, config: Config = Config(), cache: VerdictCache | None = None) -> PropertyReport:
    """Property Q for ``Y -> (f X |n -)``."""
    ident = groth_identification("over_target", build_comma(f, n))
    return check_property_Q(ident.diagram, config, cache, label=f"B{n}")


def check_property_Cn(y_cat: FiniteCategory, n: int, config: Config = Config(), cache: VerdictCache | None = None) -> PropertyReport:
    """Property B_n for every object-picking functor ``O -> y_cat``."""
    cache = cache or VerdictCache()
    subs = [(y, check_property_Bn(pick_object(y_cat, y), n, config, cache)) for y in y_cat.objects]
    return PropertyReport(f"C{n}", _aggregate([r.overall for _, r in subs]), sub_reports=subs)


@dataclass(eq=False)
class HomotopyFibreModel:
    category: FiniteCategory
    inclusion: CatFunctor
    report: PropertyReport

    @property
    def is_homotopy_fibre(self) -> bool:
        return self.report.holds


def homotopy_fibre_model(f: CatFunctor, n: int, Y: str, config: Config = Config()) -> HomotopyFibreModel:
    """``(f X |n Y)``; a homotopy fibre of ``f`` over ``Y`` when ``f`` has property B_n."""
    if Y not in f.target:
        raise KeyError(f"unknown object {Y!r}")
    comma = build_comma(f, n)
    sl = slice_at_target(comma, Y)
    return HomotopyFibreModel(sl.category, sl.inclusion, check_property_Bn(f, n, config))


def h_hints(comma: CommaResult) -> Hints:
    """Projection to X and the leg contractions, offered to the certificate search for ``h``."""
    return Hints(
        inverses=[comma.to_x],
        target_functors=[contraction(comma, k) for k in range(1, comma.n)],
    )


def h_verdict(comma: CommaResult, config: Config = Config()) -> Verdict:
    """Weak-equivalence verdict for ``h: X -> (f X |n Y)``."""
    return weak_equivalence(comma.h, config, h_hints(comma))


@dataclass(eq=False)
class PullbackReport:
    f: CatFunctor
    g: CatFunctor
    n: int
    model: CommaResult
    strict: PullbackResult
    k_verdict: Verdict
    bn_report: PropertyReport
    conclusion: Conclusion


def _conclude(bn: PropertyReport, k: Verdict) -> Conclusion:
    if not bn.holds:
        return Conclusion.INCONCLUSIVE
    if k.answer is Answer.YES:
        return Conclusion.STRICT_IS_HOMOTOPY_PULLBACK
    if k.answer is Answer.NO:
        return Conclusion.STRICT_IS_NOT
    return Conclusion.MODEL_ONLY


def homotopy_pullback(f: CatFunctor, g: CatFunctor, n: int, config: Config = Config()) -> PullbackReport:
    """Model the homotopy pullback of ``f`` and ``g`` and compare the strict pullback with it."""
    bn = check_property_Bn(f, n, config)
    model = build_two_sided(f, g, n)
    k_verdict = weak_equivalence(model.k, config)
    return PullbackReport(f, g, n, model, model.strict, k_verdict, bn, _conclude(bn, k_verdict))


def fibre_comparisons(F: CatDiagram, config: Config = Config()) -> list[tuple[str, Verdict]]:
    """Verdicts for the maps between fibres of ``Gr F`` induced by the index morphisms."""
    G = grothendieck(F)
    fibres = {o: fibre(G, o) for o in F.index.objects}
    out = []
    for m in F.index.non_identity():
        through = compose_functors(
            fibres[m.cod].from_value, compose_functors(F.functors[m.id], fibres[m.dom].to_value)
        )
        out.append((m.id, weak_equivalence(through, config)))
    return out


__all__ = [
    "Conclusion",
    "HomotopyFibreModel",
    "Outcome",
    "PropertyReport",
    "PullbackReport",
    "VerdictCache",
    "check_property_Bn",
    "check_property_Cn",
    "check_property_Q",
    "fibre_comparisons",
    "h_hints",
    "h_verdict",
    "homotopy_fibre_model",
    "homotopy_pullback",
    "strict_pullback",
]
