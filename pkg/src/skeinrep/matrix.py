"""Dense matrices over Q(zeta_{2p}) as lists of rows, plus exact row reduction."""

from __future__ import annotations

from typing import Sequence

from .cyclo import CycloContext, CycloNum

Matrix = list[list[CycloNum]]


def zeros(ctx: CycloContext, rows: int, cols: int) -> Matrix:
    z = ctx.zero()
    return [[z] * cols for _ in range(rows)]


def eye(ctx: CycloContext, n: int) -> Matrix:
    m = zeros(ctx, n, n)
    for i in range(n):
        m[i][i] = ctx.one()
    return m


def diag(ctx: CycloContext, values: Sequence[CycloNum]) -> Matrix:
    m = zeros(ctx, len(values), len(values))
    for i, v in enumerate(values):
        m[i][i] = v
    return m


def matmul(a: Matrix, b: Matrix, ctx: CycloContext) -> Matrix:
    n, k = len(a), len(b)
    cols = len(b[0]) if b else 0
    if a and len(a[0]) != k:
        raise ValueError(f"shape mismatch: {len(a)}x{len(a[0])} @ {k}x{cols}")
    out = zeros(ctx, n, cols)
    for i in range(n):
        row = a[i]
        acc = [ctx.zero()] * cols
        for t in range(k):
            x = row[t]
            if x:
                bt = b[t]
                for j in range(cols):
                    y = bt[j]
                    if y:
                        acc[j] = acc[j] + x * y
        out[i] = acc
    return out


def add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(a: Matrix, s) -> Matrix:
    return [[x * s for x in row] for row in a]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def conjugate(a: Matrix) -> Matrix:
    return [[x.conjugate() for x in row] for row in a]


def is_zero(a: Matrix) -> bool:
    return not any(x for row in a for x in row)


def flatten(a: Matrix) -> list[CycloNum]:
    return [x for row in a for x in row]


def unflatten(v: Sequence[CycloNum], n: int) -> Matrix:
    return [list(v[i * n:(i + 1) * n]) for i in range(n)]


def rref(rows: list[list[CycloNum]], ctx: CycloContext) -> tuple[list[list[CycloNum]], list[int]]:
    """Reduced row echelon form; pivots taken in fixed column order."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv if x else x for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def kernel(rows: list[list[CycloNum]], ncols: int, ctx: CycloContext) -> list[list[CycloNum]]:
    """Basis of {x : rows . x = 0}, one vector per free column."""
    red, pivots = rref(rows, ctx) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ctx.zero()] * ncols
        v[f] = ctx.one()
        for row, pc in zip(red, pivots):
            if row[f]:
                v[pc] = -row[f]
        basis.append(v)
    return basis


def inverse(a: Matrix, ctx: CycloContext) -> Matrix:
    n = len(a)
    aug = [list(row) + e for row, e in zip(a, eye(ctx, n))]
    red, pivots = rref(aug, ctx)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def to_json(a: Matrix) -> list:
    return [[x.to_json() for x in row] for row in a]


def from_json(data: list) -> Matrix:
    return [[CycloNum.from_json(x) for x in row] for row in data]
