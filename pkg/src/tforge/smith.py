"""Smith normal form of sparse integer matrices.

Rows are dicts ``{column: nonzero int}``.  Unit pivots are eliminated
sparsely first (shortest row, then sparsest column); whatever is left has no
unit entry and is finished by a dense Smith normal form.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from math import gcd


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: tuple[int, ...] = field(default=())

    def __post_init__(self):
        t = self.torsion
        if any(d < 2 for d in t):
            raise ValueError("invariant factors must be at least 2")
        if any(t[i + 1] % t[i] for i in range(len(t) - 1)):
            raise ValueError("invariant factors must form a divisibility chain")

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": [str(d) for d in self.torsion]}

    def __str__(self):
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def dense_smith_diagonal(mat: list[list[int]]) -> list[int]:
    """Nonzero diagonal entries d1 | d2 | ... of the Smith form (absolute values)."""
    A = [list(r) for r in mat if any(r)]
    if not A:
        return []
    m, n = len(A), len(A[0])
    diag = []
    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    if q:
                        ri, rt = A[i], A[t]
                        for k in range(t, n):
                            ri[k] -= q * rt[k]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    if q:
                        for row in A:
                            row[j] -= q * row[t]
                    if A[t][j]:
                        done = False
            if done:
                # pivot must divide the rest of the block
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if A[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                rb, rt = A[bad], A[t]
                for k in range(t, n):
                    rt[k] += rb[k]
                continue
            # move the smallest nonzero entry of row/column t to the pivot spot
            best = (abs(p), t, t)
            for i in range(t + 1, m):
                v = A[i][t]
                if v and abs(v) < best[0]:
                    best = (abs(v), i, t)
            for j in range(t + 1, n):
                v = A[t][j]
                if v and abs(v) < best[0]:
                    best = (abs(v), t, j)
            _, i, j = best
            if i != t:
                A[t], A[i] = A[i], A[t]
            if j != t:
                for row in A:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    # normalize to a divisibility chain
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            g = gcd(a, b)
            if g != a:
                diag[i], diag[j] = g, a * b // g
    return diag


def sparse_invariants(rows, ncols: int) -> AbelianInvariants:
    """Invariants of Z^ncols modulo the row lattice."""
    R: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for r in rows:
        d = {c: v for c, v in r.items() if v}
        if not d:
            continue
        rid = len(R)
        R[rid] = d
        for c in d:
            cols.setdefault(c, set()).add(rid)

    heap = [(len(d), rid) for rid, d in R.items()]
    heapq.heapify(heap)
    unit_rank = 0
    while heap:
        ln, rid = heapq.heappop(heap)
        row = R.get(rid)
        if row is None or len(row) != ln:
            continue
        units = [c for c, v in row.items() if v in (1, -1)]
        if not units:
            continue
        c = min(units, key=lambda k: len(cols[k]))
        pv = row[c]
        del R[rid]
        for k in row:
            cols[k].discard(rid)
        for other in list(cols[c]):
            orow = R[other]
            f = orow[c] * pv  # pivot is a unit, so this clears column c
            for k, v in row.items():
                nv = orow.get(k, 0) - f * v
                if nv:
                    if k not in orow:
                        cols[k].add(other)
                    orow[k] = nv
                elif k in orow:
                    del orow[k]
                    cols[k].discard(other)
            if orow:
                heapq.heappush(heap, (len(orow), other))
            else:
                del R[other]
        del cols[c]
        unit_rank += 1

    live_cols = sorted(k for k, s in cols.items() if s)
    index = {k: i for i, k in enumerate(live_cols)}
    dense = []
    for d in R.values():
        row = [0] * len(live_cols)
        for k, v in d.items():
            row[index[k]] = v
        dense.append(row)
    diag = dense_smith_diagonal(dense)
    rank = unit_rank + len(diag)
    return AbelianInvariants(ncols - rank, tuple(d for d in diag if d > 1))
