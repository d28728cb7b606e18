"""Smith normal form over the integers.

Two routes share one contract, the invariant factors of a matrix:

* :func:`smith_normal_form` works on a dense copy and can return unimodular
  ``U``, ``V`` with ``U @ M @ V == D``. The pivot is always a nonzero entry of
  least absolute value in the active block (ties: lowest row, then column).
* :func:`invariant_factors` first splits off unit pivots by sparse
  elimination and hands the (usually tiny) remainder to the dense route. It is
  what the homology code uses on large boundary matrices.

Entries are Python ints, so there is no overflow to guard against.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complex import IntMatrix

__all__ = ["SmithForm", "invariant_factors", "matrix_rank", "smith_normal_form"]


@dataclass(frozen=True)
class SmithForm:
    D: IntMatrix
    rank: int
    invariant_factors: tuple[int, ...]
    U: IntMatrix | None = None
    V: IntMatrix | None = None


def _min_pivot(A: list[list[int]], t: int) -> tuple[int, int] | None:
    best = None
    best_val = 0
    for i in range(t, len(A)):
        row = A[i]
        for j in range(t, len(row)):
            v = row[j]
            if v and (best is None or abs(v) < best_val):
                best, best_val = (i, j), abs(v)
                if best_val == 1:
                    return best
    return best


def _dense_snf(A: list[list[int]], track: bool) -> tuple[list[list[int]], list[list[int]] | None, list[list[int]] | None]:
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if track else None

    def swap_rows(i: int, k: int) -> None:
        A[i], A[k] = A[k], A[i]
        if U is not None:
            U[i], U[k] = U[k], U[i]

    def swap_cols(j: int, k: int) -> None:
        for row in A:
            row[j], row[k] = row[k], row[j]
        if V is not None:
            for row in V:
                row[j], row[k] = row[k], row[j]

    def add_row(dst: int, src: int, f: int) -> None:
        # row_dst += f * row_src
        a, b = A[dst], A[src]
        for j in range(n):
            if b[j]:
                a[j] += f * b[j]
        if U is not None:
            a, b = U[dst], U[src]
            for j in range(m):
                if b[j]:
                    a[j] += f * b[j]

    def add_col(dst: int, src: int, f: int) -> None:
        for row in A:
            if row[src]:
                row[dst] += f * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] += f * row[src]

    for t in range(min(m, n)):
        piv = _min_pivot(A, t)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    clean = clean and not A[i][t]
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    clean = clean and not A[t][j]
            if not clean:
                # a nonzero remainder is smaller than |p|: move the least one in
                i, j = min(
                    [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                    + [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                )[1:]
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-v for v in A[t]]
            if U is not None:
                U[t] = [-v for v in U[t]]
    return A, U, V


def smith_normal_form(M: IntMatrix, transforms: bool = False) -> SmithForm:
    """Diagonal form ``D`` with ``d1 | d2 | ...``; ``U``, ``V`` on request."""
    A = M.to_dense()
    A, U, V = _dense_snf(A, transforms)
    diag = tuple(A[i][i] for i in range(min(M.nrows, M.ncols)) if A[i][i])
    return SmithForm(
        D=IntMatrix.from_dense(A, M.ncols),
        rank=len(diag),
        invariant_factors=diag,
        U=IntMatrix.from_dense(U, M.nrows) if U is not None else None,
        V=IntMatrix.from_dense(V, M.ncols) if V is not None else None,
    )


def _eliminate_units(M: IntMatrix) -> tuple[int, list[list[int]]]:
    """Split off unit pivots; return their count and the dense remainder."""
    rows: dict[int, dict[int, int]] = {i: r for i, r in enumerate(M.rows()) if r}
    colidx: dict[int, set[int]] = {}
    for i, r in rows.items():
        for j in r:
            colidx.setdefault(j, set()).add(i)

    units = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(colidx):
            holders = colidx.get(c)
            if not holders:
                continue
            best = None
            for i in holders:
                if abs(rows[i][c]) == 1 and (best is None or (len(rows[i]), i) < (len(rows[best]), best)):
                    best = i
            if best is None:
                continue
            prow = rows.pop(best)
            sign = prow[c]
            for i in list(holders):
                if i == best:
                    continue
                row = rows[i]
                f = row[c] * sign
                for j, a in prow.items():
                    v = row.get(j, 0) - f * a
                    if v:
                        row[j] = v
                        colidx.setdefault(j, set()).add(i)
                    else:
                        row.pop(j, None)
                        colidx[j].discard(i)
                if not row:
                    del rows[i]
            for j in prow:
                colidx[j].discard(best)
            del colidx[c]
            units += 1
            progress = True
        colidx = {j: s for j, s in colidx.items() if s}

    live_cols = sorted(colidx)
    pos = {j: k for k, j in enumerate(live_cols)}
    rest = []
    for i in sorted(rows):
        dense = [0] * len(live_cols)
        for j, v in rows[i].items():
            dense[pos[j]] = v
        rest.append(dense)
    return units, rest


def invariant_factors(M: IntMatrix) -> tuple[int, ...]:
    """Nonzero invariant factors of ``M`` in divisibility order."""
    units, rest = _eliminate_units(M)
    if rest and rest[0]:
        A, _, _ = _dense_snf(rest, False)
        tail = tuple(A[i][i] for i in range(min(len(A), len(A[0]))) if A[i][i])
    else:
        tail = ()
    return (1,) * units + tail


def matrix_rank(M: IntMatrix) -> int:
    return len(invariant_factors(M))
