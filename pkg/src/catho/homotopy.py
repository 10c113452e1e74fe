"""Nerve homology and three-valued weak-equivalence verdicts for functors.

A ``Yes`` always carries a certificate and a ``No`` always carries an
obstruction; both can be re-checked with :func:`verify_verdict`, which does
not share the enumeration or elimination code used to produce them.
``Unknown`` is not a claim.
"""
from __future__ import annotations

import enum
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .category import (
    CatFunctor,
    FiniteCategory,
    NatTransformation,
    SearchBoundExceeded,
    ValidationReport,
    check_isomorphism,
    check_naturality,
    compose_functors,
    connected_components,
    find_functors,
    first_nat_trans,
    identity_functor,
    initial_objects,
    inverse_functor,
    terminal_objects,
    to_terminal,
    validate_functor,
)
from .snf import dense_smith_diagonal, smith_diagonal


@dataclass(frozen=True)
class Config:
    max_dim: int = 3
    search_bound: int = 2
    """Maximum number of intermediate functors in a zigzag of natural transformations."""
    simplex_bound: int = 200_000
    functor_limit: int = 32
    search_budget: int = 50_000
    pool_limit: int = 16


class NerveBoundExceeded(SearchBoundExceeded):
    def __init__(self, bound: int, dim: int):
        super().__init__(f"nerve enumeration in dimension {dim}", bound)
        self.dim = dim


# nerve and homology

@dataclass(eq=False)
class TruncatedNerve:
    category: FiniteCategory
    max_dim: int
    simplices: list[list]
    """``simplices[0]`` are objects; ``simplices[k]`` are k-tuples of composable non-identity morphisms."""


def _enumerate_chains(c: FiniteCategory, top: int, bound: int) -> Iterator[list]:
    """Yield the nondegenerate simplices dimension by dimension, up to ``top``."""
    level: list = list(c.objects)
    total = len(level)
    yield level
    outgoing = {o: [m for m in c.outgoing(o) if not c.is_identity(m)] for o in c.objects}
    prev: list[tuple[str, ...]] = []
    for k in range(1, top + 1):
        if k == 1:
            cur = [(m.id,) for m in c.non_identity()]
        else:
            cur = [s + (m,) for s in prev for m in outgoing[c.cod(s[-1])]]
        total += len(cur)
        if total > bound:
            raise NerveBoundExceeded(bound, k)
        yield cur
        prev = cur


def nerve(c: FiniteCategory, max_dim: int, bound: int = 200_000) -> TruncatedNerve:
    """Nondegenerate simplices through dimension ``max_dim + 1``."""
    if max_dim < 0:
        raise ValueError("max_dim must be non-negative")
    return TruncatedNerve(c, max_dim, list(_enumerate_chains(c, max_dim + 1, bound)))


@dataclass(eq=False)
class ChainComplex:
    basis: list[list]
    boundaries: dict[int, list[dict[int, int]]]
    """``boundaries[k][j]`` is the boundary of the j-th k-simplex as ``{row: coefficient}``."""

    def boundary_matrix(self, k: int) -> list[list[int]]:
        rows = len(self.basis[k - 1])
        cols = self.boundaries[k]
        return [[col.get(r, 0) for col in cols] for r in range(rows)]


def _faces(c: FiniteCategory, s: tuple[str, ...]) -> Iterator[tuple[int, object]]:
    """``(sign, face)`` for the nonvanishing faces of a simplex in the normalized complex."""
    k = len(s)
    if k == 1:
        yield 1, c.cod(s[0])
        yield -1, c.dom(s[0])
        return
    yield 1, s[1:]
    for i in range(1, k):
        comp = c.compose(s[i], s[i - 1])
        if not c.is_identity(comp):
            yield (-1) ** i, s[: i - 1] + (comp,) + s[i + 1 :]
    yield (-1) ** k, s[:-1]


def chain_complex(n: TruncatedNerve) -> ChainComplex:
    c = n.category
    index = [{s: i for i, s in enumerate(level)} for level in n.simplices]
    boundaries = {}
    for k in range(1, len(n.simplices)):
        cols = []
        for s in n.simplices[k]:
            col: dict[int, int] = {}
            for sign, face in _faces(c, s):
                r = index[k - 1][face]
                col[r] = col.get(r, 0) + sign
            cols.append({r: v for r, v in col.items() if v})
        boundaries[k] = cols
    return ChainComplex(n.simplices, boundaries)


def boundary_squared_zero(cc: ChainComplex) -> bool:
    for k in range(2, len(cc.basis)):
        lower = cc.boundaries[k - 1]
        for col in cc.boundaries[k]:
            acc: dict[int, int] = {}
            for r, v in col.items():
                for r2, v2 in lower[r].items():
                    acc[r2] = acc.get(r2, 0) + v * v2
            if any(acc.values()):
                return False
    return True


@dataclass(frozen=True)
class HomologyProfile:
    max_dim: int
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    """Only the stable degrees ``0 .. len(betti) - 1`` are recorded."""

    @property
    def stable_through(self) -> int:
        return len(self.betti) - 1

    @property
    def complete(self) -> bool:
        return self.stable_through >= self.max_dim

    def degree(self, k: int) -> tuple[int, tuple[int, ...]]:
        return self.betti[k], self.torsion[k]


def homology(
    c: FiniteCategory,
    max_dim: int,
    simplex_bound: int = 200_000,
    allow_partial: bool = False,
) -> HomologyProfile:
    """Integral homology of the nerve in degrees ``0 .. max_dim``.

    With ``allow_partial`` the profile stops at the last degree whose
    computation completed instead of raising ``NerveBoundExceeded``.
    """
    levels: list[list] = []
    try:
        for level in _enumerate_chains(c, max_dim + 1, simplex_bound):
            levels.append(level)
    except NerveBoundExceeded:
        if not allow_partial:
            raise
    cc = chain_complex(TruncatedNerve(c, max_dim, levels))
    top = len(levels) - 1
    invariants = {k: smith_diagonal(cc.boundaries[k]) for k in range(1, top + 1)}
    betti, torsion = [], []
    for k in range(0, min(max_dim, top - 1) + 1):
        r_k = len(invariants[k]) if k >= 1 else 0
        inv_next = invariants[k + 1]
        betti.append(len(levels[k]) - r_k - len(inv_next))
        torsion.append(tuple(d for d in inv_next if d > 1))
    return HomologyProfile(max_dim, tuple(betti), tuple(torsion))


# verdicts

class Answer(str, enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


@dataclass(eq=False)
class IsomorphismCertificate:
    inverse: CatFunctor


@dataclass(frozen=True)
class ContractibleCertificate:
    source_object: str
    source_kind: str
    target_object: str
    target_kind: str


@dataclass(eq=False)
class ZigzagStep:
    transformation: NatTransformation
    forward: bool
    """True when the transformation runs from the current functor to the next."""


@dataclass(eq=False)
class HomotopyInverseCertificate:
    inverse: CatFunctor
    source_zigzag: tuple[ZigzagStep, ...]
    """Links ``inverse . F`` to the identity of the source."""
    target_zigzag: tuple[ZigzagStep, ...]
    """Links ``F . inverse`` to the identity of the target."""


@dataclass(frozen=True)
class ComponentObstruction:
    source_components: int
    target_components: int


@dataclass(frozen=True)
class HomologyObstruction:
    degree: int
    source_betti: int
    source_torsion: tuple[int, ...]
    target_betti: int
    target_torsion: tuple[int, ...]


@dataclass(frozen=True)
class Exhaustion:
    note: str


@dataclass(eq=False)
class Verdict:
    answer: Answer
    evidence: object

    @property
    def yes(self) -> bool:
        return self.answer is Answer.YES

    @property
    def no(self) -> bool:
        return self.answer is Answer.NO


@dataclass
class Hints:
    """Extra candidates for the homotopy-inverse search; results are still verified."""

    inverses: list[CatFunctor] = field(default_factory=list)
    source_functors: list[CatFunctor] = field(default_factory=list)
    target_functors: list[CatFunctor] = field(default_factory=list)


_sinks: list[list] = []


@contextmanager
def collect_verdicts():
    """Record every ``(functor, verdict)`` produced while the context is active."""
    sink: list = []
    _sinks.append(sink)
    try:
        yield sink
    finally:
        # by identity: two sinks may hold equal contents
        for i, s in enumerate(_sinks):
            if s is sink:
                del _sinks[i]
                break


def _emit(F: CatFunctor, v: Verdict) -> Verdict:
    for sink in _sinks:
        sink.append((F, v))
    return v


def _end_object(c: FiniteCategory) -> tuple[str, str] | None:
    t = terminal_objects(c)
    if t:
        return t[0], "terminal"
    i = initial_objects(c)
    if i:
        return i[0], "initial"
    return None


class _Pool:
    """Endofunctors used as intermediate stops in zigzags, computed lazily."""

    def __init__(self, c: FiniteCategory, hints: Sequence[CatFunctor], config: Config):
        self.c = c
        self.hints = list(hints)
        self.config = config
        self._enumerated: list[CatFunctor] | None = None

    def enumerated(self) -> list[CatFunctor]:
        if self._enumerated is None:
            found = []
            try:
                for G in find_functors(self.c, self.c, self.config.search_budget):
                    found.append(G)
                    if len(found) >= self.config.pool_limit:
                        break
            except SearchBoundExceeded:
                pass
            self._enumerated = found
        return self._enumerated


def _zigzag_to_identity(start: CatFunctor, pool: _Pool, config: Config) -> tuple[ZigzagStep, ...] | None:
    c = start.source
    ident = identity_functor(c)
    if start == ident:
        return ()
    edges: dict[tuple[int, int], ZigzagStep | None] = {}

    def link(nodes: list[CatFunctor], a: int, b: int) -> ZigzagStep | None:
        if (a, b) not in edges:
            step = None
            try:
                t = first_nat_trans(nodes[a], nodes[b], config.search_budget)
                if t is not None:
                    step = ZigzagStep(t, True)
                else:
                    t = first_nat_trans(nodes[b], nodes[a], config.search_budget)
                    if t is not None:
                        step = ZigzagStep(t, False)
            except SearchBoundExceeded:
                step = None
            edges[(a, b)] = step
        return edges[(a, b)]

    max_steps = config.search_bound + 1
    for extra in (pool.hints, pool.hints + pool.enumerated()):
        nodes = [start]
        keys = {start.key(), ident.key()}
        for p in extra:
            if p.key() not in keys:
                keys.add(p.key())
                nodes.append(p)
        nodes.append(ident)
        goal = len(nodes) - 1
        edges.clear()
        parent: dict[int, tuple[int, ZigzagStep]] = {}
        frontier = [0]
        seen = {0}
        for _ in range(max_steps):
            nxt = []
            for a in frontier:
                for b in range(len(nodes)):
                    if b in seen:
                        continue
                    step = link(nodes, a, b)
                    if step is None:
                        continue
                    seen.add(b)
                    parent[b] = (a, step)
                    nxt.append(b)
            if goal in seen:
                path = []
                node = goal
                while node != 0:
                    a, step = parent[node]
                    path.append(step)
                    node = a
                return tuple(reversed(path))
            frontier = nxt
            if not frontier:
                break
    return None


def _homotopy_inverse(F: CatFunctor, config: Config, hints: Hints) -> HomotopyInverseCertificate | None:
    C, D = F.source, F.target
    pool_c = _Pool(C, hints.source_functors, config)
    pool_d = _Pool(D, hints.target_functors, config)
    tried: set = set()

    def candidates() -> Iterator[CatFunctor]:
        for G in hints.inverses:
            yield G
        count = 0
        try:
            for G in find_functors(D, C, config.search_budget):
                yield G
                count += 1
                if count >= config.functor_limit:
                    return
        except SearchBoundExceeded:
            return

    for G in candidates():
        if G.key() in tried:
            continue
        tried.add(G.key())
        if G.source != D or G.target != C or not validate_functor(G).ok:
            continue
        z_source = _zigzag_to_identity(compose_functors(G, F), pool_c, config)
        if z_source is None:
            continue
        z_target = _zigzag_to_identity(compose_functors(F, G), pool_d, config)
        if z_target is None:
            continue
        return HomotopyInverseCertificate(G, z_source, z_target)
    return None


def weak_equivalence(F: CatFunctor, config: Config = Config(), hints: Hints | None = None) -> Verdict:
    """Decide, where possible, whether the nerve of ``F`` is a weak equivalence."""
    hints = hints or Hints()
    inv = inverse_functor(F)
    if inv is not None and check_isomorphism(F, inv).ok:
        return _emit(F, Verdict(Answer.YES, IsomorphismCertificate(inv)))
    s_end, t_end = _end_object(F.source), _end_object(F.target)
    if s_end and t_end:
        return _emit(F, Verdict(Answer.YES, ContractibleCertificate(s_end[0], s_end[1], t_end[0], t_end[1])))
    cs, ct = len(connected_components(F.source)), len(connected_components(F.target))
    if cs != ct:
        return _emit(F, Verdict(Answer.NO, ComponentObstruction(cs, ct)))
    cert = _homotopy_inverse(F, config, hints)
    if cert is not None:
        return _emit(F, Verdict(Answer.YES, cert))
    hs = homology(F.source, config.max_dim, config.simplex_bound, allow_partial=True)
    ht = homology(F.target, config.max_dim, config.simplex_bound, allow_partial=True)
    common = min(hs.stable_through, ht.stable_through)
    for k in range(common + 1):
        if hs.degree(k) != ht.degree(k):
            return _emit(
                F,
                Verdict(Answer.NO, HomologyObstruction(k, hs.betti[k], hs.torsion[k], ht.betti[k], ht.torsion[k])),
            )
    note = (
        f"no isomorphism, no initial/terminal objects on both sides, no homotopy inverse among "
        f"{config.functor_limit} candidates with zigzags of at most {config.search_bound} intermediate functors; "
        f"homology agrees in stable degrees 0..{common}"
    )
    return _emit(F, Verdict(Answer.UNKNOWN, Exhaustion(note)))


def contractible(c: FiniteCategory, config: Config = Config()) -> Verdict:
    """Verdict for the unique functor ``c -> O``."""
    return weak_equivalence(to_terminal(c), config)


# independent verification

def _count_components(c: FiniteCategory) -> int:
    adj: dict[str, set[str]] = {o: set() for o in c.objects}
    for m in c.morphisms:
        adj[m.dom].add(m.cod)
        adj[m.cod].add(m.dom)
    seen: set[str] = set()
    count = 0
    for o in c.objects:
        if o in seen:
            continue
        count += 1
        stack = [o]
        seen.add(o)
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return count


def _independent_homology(c: FiniteCategory, k: int) -> tuple[int, tuple[int, ...]]:
    """H_k by brute-force chains and dense elimination."""
    ids = {c.identity[o] for o in c.objects}
    proper = [m for m in c.morphisms if m.id not in ids]

    def chains(length: int) -> list:
        if length == 0:
            return [o for o in c.objects]
        result = [(m.id,) for m in proper]
        for _ in range(length - 1):
            result = [s + (m.id,) for s in result for m in proper if m.dom == c.cod(s[-1])]
        return result

    def matrix(dim: int) -> list[list[int]]:
        rows = chains(dim - 1)
        cols = chains(dim)
        pos = {s: i for i, s in enumerate(rows)}
        M = [[0] * len(cols) for _ in rows]
        for j, s in enumerate(cols):
            if dim == 1:
                M[pos[c.cod(s[0])]][j] += 1
                M[pos[c.dom(s[0])]][j] -= 1
                continue
            for i in range(dim + 1):
                if i == 0:
                    face = s[1:]
                elif i == dim:
                    face = s[:-1]
                else:
                    comp = c.compose(s[i], s[i - 1])
                    if comp in ids:
                        continue
                    face = s[: i - 1] + (comp,) + s[i + 1 :]
                M[pos[face]][j] += (-1) ** i
        return M

    size_k = len(chains(k))
    rank_k = len(dense_smith_diagonal(matrix(k))) if k >= 1 else 0
    inv = dense_smith_diagonal(matrix(k + 1))
    return size_k - rank_k - len(inv), tuple(d for d in inv if d > 1)


def _is_end_object(c: FiniteCategory, obj: str, kind: str) -> bool:
    if obj not in c:
        return False
    if kind == "terminal":
        return all(sum(1 for m in c.morphisms if m.dom == a and m.cod == obj) == 1 for a in c.objects)
    if kind == "initial":
        return all(sum(1 for m in c.morphisms if m.dom == obj and m.cod == a) == 1 for a in c.objects)
    return False


def _check_zigzag(start: CatFunctor, steps: Sequence[ZigzagStep], report: ValidationReport, label: str) -> None:
    current = start
    for i, step in enumerate(steps):
        t = step.transformation
        nat = check_naturality(t)
        if not nat.ok:
            report.add(f"{label} zigzag", f"step {i} is not natural")
            return
        if step.forward:
            if t.source_functor != current:
                report.add(f"{label} zigzag", f"step {i} does not start at the current functor")
                return
            current = t.target_functor
        else:
            if t.target_functor != current:
                report.add(f"{label} zigzag", f"step {i} does not end at the current functor")
                return
            current = t.source_functor
    if current != identity_functor(start.source):
        report.add(f"{label} zigzag", "does not end at the identity")


def verify_verdict(F: CatFunctor, verdict: Verdict) -> ValidationReport:
    """Re-check the evidence attached to a verdict about ``F``."""
    report = ValidationReport()
    ev = verdict.evidence
    if verdict.answer is Answer.YES:
        if isinstance(ev, IsomorphismCertificate):
            for v in check_isomorphism(F, ev.inverse).violations:
                report.add("isomorphism", str(v))
        elif isinstance(ev, ContractibleCertificate):
            if not _is_end_object(F.source, ev.source_object, ev.source_kind):
                report.add("contractible", f"{ev.source_object} is not {ev.source_kind} in the source")
            if not _is_end_object(F.target, ev.target_object, ev.target_kind):
                report.add("contractible", f"{ev.target_object} is not {ev.target_kind} in the target")
        elif isinstance(ev, HomotopyInverseCertificate):
            G = ev.inverse
            if G.source != F.target or G.target != F.source:
                report.add("homotopy inverse", "inverse has the wrong source or target")
                return report
            for v in validate_functor(G).violations:
                report.add("homotopy inverse", str(v))
            if report.ok:
                _check_zigzag(compose_functors(G, F), ev.source_zigzag, report, "source")
                _check_zigzag(compose_functors(F, G), ev.target_zigzag, report, "target")
        else:
            report.add("evidence", "Yes verdict without a certificate")
    elif verdict.answer is Answer.NO:
        if isinstance(ev, ComponentObstruction):
            cs, ct = _count_components(F.source), _count_components(F.target)
            if (cs, ct) != (ev.source_components, ev.target_components) or cs == ct:
                report.add("component obstruction", f"recomputed {cs} vs {ct}")
        elif isinstance(ev, HomologyObstruction):
            hs = _independent_homology(F.source, ev.degree)
            ht = _independent_homology(F.target, ev.degree)
            if hs != (ev.source_betti, ev.source_torsion) or ht != (ev.target_betti, ev.target_torsion):
                report.add("homology obstruction", f"recomputed {hs} vs {ht} in degree {ev.degree}")
            elif hs == ht:
                report.add("homology obstruction", "recomputed profiles agree")
        else:
            report.add("evidence", "No verdict without an obstruction")
    else:
        if not isinstance(ev, Exhaustion) or not ev.note:
            report.add("evidence", "Unknown verdict without an exhaustion note")
    return report
