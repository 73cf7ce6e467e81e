"""Exact solving of linear systems over the integers.

Solves A x = b for integer x by column-style Hermite elimination on sparse
columns, with a tracked unimodular transform so a particular solution is
recovered when one exists. The outcome distinguishes integer solvability,
rational-only solvability, and infeasibility over the rationals, which is
what the bounded membership verdicts need.

Also provides an integer row-echelon reduction used to replace generator
lists by equivalent smaller ones: the reduced rows span the same lattice of
integer combinations as the input rows.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Mapping, Sequence

INT = "int"
RATIONAL = "rational"
INFEASIBLE = "infeasible"


def solve_int_columns(
    columns: Sequence[Mapping[Hashable, int]], rhs: Mapping[Hashable, int]
) -> tuple[str, dict[int, int] | None]:
    """Solve sum_j x_j * columns[j] = rhs over the integers.

    Columns and rhs are sparse vectors over an arbitrary hashable row space.
    Returns (INT, coeffs) with coeffs mapping column index to nonzero value,
    (RATIONAL, None) if solvable over Q but not Z, or (INFEASIBLE, None).
    """
    rhs = {k: v for k, v in rhs.items() if v}
    row_index: dict[Hashable, int] = {}
    for col in columns:
        for key in col:
            row_index.setdefault(key, len(row_index))
    for key in rhs:
        row_index.setdefault(key, len(row_index))
    nrows, ncols = len(row_index), len(columns)
    b = [0] * nrows
    for key, val in rhs.items():
        b[row_index[key]] = val
    if ncols == 0:
        return (INT, {}) if not any(b) else (INFEASIBLE, None)
    cols = [
        {row_index[k]: v for k, v in col.items() if v} for col in columns
    ]
    status, x = _hermite_solve(cols, b, ncols)
    if status != INT:
        return status, None
    return INT, {j: v for j, v in x.items() if v}


def _hermite_solve(
    cols: list[dict[int, int]], b: list[int], ncols: int
) -> tuple[str, dict[int, int] | None]:
    nrows = len(b)
    # ucols[j] tracks the column operations: current_cols = original_A @ U.
    ucols: list[dict[int, int]] = [{j: 1} for j in range(ncols)]

    def axpy(dst: dict[int, int], src: dict[int, int], q: int):
        for k, v in src.items():
            s = dst.get(k, 0) - q * v
            if s:
                dst[k] = s
            else:
                dst.pop(k, None)

    pivots: list[tuple[int, int]] = []  # (row, column) in elimination order
    p = 0
    for r in range(nrows):
        if p >= ncols:
            break
        active = [j for j in range(p, ncols) if cols[j].get(r)]
        if not active:
            continue
        while len(active) > 1:
            active.sort(key=lambda j: (abs(cols[j][r]), j))
            jm = active[0]
            base = cols[jm][r]
            nxt = []
            for j in active[1:]:
                q = cols[j][r] // base
                if q:
                    axpy(cols[j], cols[jm], q)
                    axpy(ucols[j], ucols[jm], q)
                if cols[j].get(r):
                    nxt.append(j)
            nxt.append(jm)
            active = nxt
        j = active[0]
        if j != p:
            cols[j], cols[p] = cols[p], cols[j]
            ucols[j], ucols[p] = ucols[p], ucols[j]
        if cols[p][r] < 0:
            cols[p] = {k: -v for k, v in cols[p].items()}
            ucols[p] = {k: -v for k, v in ucols[p].items()}
        pivots.append((r, p))
        p += 1

    # Forward-substitute on the staircase; pivot values are forced, so a
    # fractional value means no integer solution exists at all.
    y: dict[int, Fraction] = {}
    pivot_at_row = dict(pivots)
    contributors: dict[int, list[int]] = {}
    for _, pc in pivots:
        for k in cols[pc]:
            contributors.setdefault(k, []).append(pc)
    rational_only = False
    for r in range(nrows):
        residual = Fraction(b[r])
        for pc in contributors.get(r, ()):
            if pc in y and y[pc]:
                residual -= cols[pc][r] * y[pc]
        if r in pivot_at_row:
            c = pivot_at_row[r]
            val = residual / cols[c][r]
            if val.denominator != 1:
                rational_only = True
            y[c] = val
        elif residual != 0:
            return INFEASIBLE, None
    if rational_only:
        return RATIONAL, None
    x: dict[int, int] = {}
    for c, yc in y.items():
        if yc:
            yc = int(yc)
            for i, u in ucols[c].items():
                s = x.get(i, 0) + yc * u
                if s:
                    x[i] = s
                else:
                    x.pop(i, None)
    return INT, x


def row_reduce_int(
    rows: Sequence[Mapping[Hashable, int]], key_order
) -> list[dict[Hashable, int]]:
    """Integer row-echelon reduction preserving the lattice of combinations.

    key_order maps a row key to a sortable value; elimination pivots on the
    largest key first, so the leading entry of each output row sits at a
    distinct key. Output rows are ordered by leading key ascending with a
    positive leading coefficient; zero rows are dropped. The output rows and
    the input rows generate the same set of integer linear combinations.
    """
    work = [dict(r) for r in rows if any(r.values())]
    keys = sorted({k for r in work for k in r}, key=key_order, reverse=True)
    done: list[dict[Hashable, int]] = []
    for key in keys:
        live = [r for r in work if r.get(key)]
        if not live:
            continue
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[key]))
            base = live[0]
            nxt = [base]
            for r in live[1:]:
                q = r[key] // base[key]
                if q:
                    for k, v in base.items():
                        s = r.get(k, 0) - q * v
                        if s:
                            r[k] = s
                        else:
                            r.pop(k, None)
                if r.get(key):
                    nxt.append(r)
            live = nxt[1:] + [base]
        pivot = live[0]
        work = [r for r in work if r is not pivot and any(r.values())]
        if pivot[key] < 0:
            pivot = {k: -v for k, v in pivot.items()}
        done.append(pivot)
    done.sort(key=lambda r: key_order(max(r, key=key_order)))
    return done
