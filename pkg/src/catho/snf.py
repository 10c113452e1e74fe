"""Smith normal form of sparse integer matrices.

Only the diagonal is produced (no transformation matrices): that is all
homology needs.  Entries are Python ints, so there is no overflow.
"""
from __future__ import annotations

from math import gcd
from typing import Iterable, Mapping

SparseRow = dict[int, int]


def _to_rows(rows: Iterable[Mapping[int, int]]) -> list[SparseRow]:
    return [{c: v for c, v in r.items() if v} for r in rows]


def smith_diagonal(rows: Iterable[Mapping[int, int]]) -> list[int]:
    """Invariant factors ``d_1 | d_2 | ... | d_r`` (all positive) of the matrix.

    The matrix is given as sparse rows ``{column: value}``.  The rank is the
    length of the result.
    """
    work = {i: r for i, r in enumerate(_to_rows(rows)) if r}
    cols: dict[int, set[int]] = {}
    for i, r in work.items():
        for c in r:
            cols.setdefault(c, set()).add(i)

    def drop_row(i: int) -> None:
        for c in work[i]:
            cols[c].discard(i)
        del work[i]

    def add_multiple(target: int, source: int, q: int) -> None:
        # row[target] -= q * row[source]
        tr = work[target]
        for c, v in work[source].items():
            nv = tr.get(c, 0) - q * v
            if nv:
                if c not in tr:
                    cols[c].add(target)
                tr[c] = nv
            elif c in tr:
                del tr[c]
                cols[c].discard(target)
        if not tr:
            del work[target]

    diagonal: list[int] = []

    # unit pivots: eliminating the column and dropping the row is exact
    progress = True
    while progress:
        progress = False
        for i in sorted(work):
            if i not in work:
                continue
            row = work[i]
            pivot_col = next((c for c in sorted(row) if abs(row[c]) == 1), None)
            if pivot_col is None:
                continue
            pv = row[pivot_col]
            for j in sorted(cols[pivot_col] - {i}):
                add_multiple(j, i, work[j][pivot_col] * pv)
            drop_row(i)
            diagonal.append(1)
            progress = True

    # general Euclidean elimination on whatever remains
    while work:
        i, c, v = min(
            ((i, c, v) for i, r in work.items() for c, v in r.items()),
            key=lambda t: (abs(t[2]), t[0], t[1]),
        )
        dirty = False
        for j in sorted(cols[c] - {i}):
            q = work[j][c] // v
            add_multiple(j, i, q)
            if j in work and c in work[j]:
                dirty = True
        if dirty:
            continue
        row = work[i]
        others = [(cc, vv) for cc, vv in row.items() if cc != c]
        if others:
            # column operations: col cc -= q * col c only touches row i
            leftover = False
            for cc, vv in others:
                r = vv - (vv // v) * v
                if r:
                    row[cc] = r
                    leftover = True
                else:
                    del row[cc]
                    cols[cc].discard(i)
            if leftover:
                continue
        drop_row(i)
        diagonal.append(abs(v))

    return _normalize(diagonal)


def _normalize(diagonal: list[int]) -> list[int]:
    """Turn a diagonal into invariant factors by gcd/lcm exchanges."""
    units = [d for d in diagonal if d == 1]
    rest = sorted(d for d in diagonal if d != 1)
    changed = True
    while changed:
        changed = False
        for a in range(len(rest)):
            for b in range(a + 1, len(rest)):
                x, y = rest[a], rest[b]
                if y % x:
                    g = gcd(x, y)
                    rest[a], rest[b] = g, x * y // g
                    changed = True
        rest.sort()
    return units + rest


def rank(rows: Iterable[Mapping[int, int]]) -> int:
    return len(smith_diagonal(rows))


def dense_smith_diagonal(matrix: list[list[int]]) -> list[int]:
    """Textbook dense Smith normal form; used as an independent check."""
    A = [list(r) for r in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        A[t], A[pi] = A[pi], A[t]
        for r in A:
            r[t], r[pj] = r[pj], r[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for r in A:
                        r[j] -= q * r[t]
                if A[t][j]:
                    done = False
            if done:
                break
            nz = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
            nz += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
            _, pi, pj = min(nz)
            A[t], A[pi] = A[pi], A[t]
            for r in A:
                r[t], r[pj] = r[pj], r[t]
        diag.append(abs(A[t][t]))
        t += 1
    return _normalize(diag)
