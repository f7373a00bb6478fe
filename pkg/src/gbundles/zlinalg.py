"""Exact integer matrix algebra.

Matrices are plain row-major lists of lists of Python ints, so entries have
arbitrary precision.  A matrix with ``r`` rows and zero columns is represented
as ``[[], [], ...]``; use :func:`shape` with an explicit column count when a
matrix may have no rows.
"""

from __future__ import annotations

from dataclasses import dataclass

Matrix = list[list[int]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = 1
    return m


def copy(m: Matrix) -> Matrix:
    return [list(row) for row in m]


def transpose(m: Matrix, cols: int | None = None) -> Matrix:
    if not m:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*m)]


def matmul(a: Matrix, b: Matrix, inner: int | None = None, cols: int | None = None) -> Matrix:
    """Product ``a @ b``.

    ``inner`` and ``cols`` only matter for degenerate shapes (``a`` or ``b``
    without rows), where they cannot be read off the data.
    """
    n = len(b) if inner is None else inner
    p = (len(b[0]) if b else 0) if cols is None else cols
    out = zeros(len(a), p)
    for i, row in enumerate(a):
        orow = out[i]
        for k in range(n):
            aik = row[k]
            if aik:
                brow = b[k]
                for j in range(p):
                    orow[j] += aik * brow[j]
    return out


def matvec(a: Matrix, v: list[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def hstack(*blocks: Matrix, rows: int | None = None) -> Matrix:
    """Concatenate matrices side by side; all blocks must share a row count."""
    if rows is None:
        rows = len(blocks[0])
    out: Matrix = [[] for _ in range(rows)]
    for block in blocks:
        if len(block) != rows:
            raise ValueError("hstack: row count mismatch")
        for i in range(rows):
            out[i].extend(block[i])
    return out


def det(m: Matrix) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = copy(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SnfDecomposition:
    """``D = U @ M @ V`` with ``U``, ``V`` unimodular.

    ``U_inv`` is carried along because cokernel sections need it and it costs
    nothing to track during the row operations.
    """

    U: Matrix
    D: Matrix
    V: Matrix
    U_inv: Matrix
    rows: int
    cols: int

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(self.rows, self.cols))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(m: Matrix, cols: int | None = None) -> SnfDecomposition:
    """Smith normal form with deterministic pivoting.

    The pivot at each stage is the entry of least nonzero absolute value in
    the trailing submatrix, ties broken by lowest row, then lowest column.
    """
    r = len(m)
    c = (len(m[0]) if m else 0) if cols is None else cols
    d = copy(m)
    u = identity(r)
    u_inv = identity(r)
    v = identity(c)

    def swap_rows(i: int, j: int) -> None:
        if i == j:
            return
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]
        for row in u_inv:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i: int, j: int) -> None:
        if i == j:
            return
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src: int, dst: int, q: int) -> None:
        # row_dst += q * row_src
        if not q:
            return
        ds, dd = d[src], d[dst]
        for k in range(c):
            dd[k] += q * ds[k]
        us, ud = u[src], u[dst]
        for k in range(r):
            ud[k] += q * us[k]
        for row in u_inv:
            row[src] -= q * row[dst]

    def add_col(src: int, dst: int, q: int) -> None:
        # col_dst += q * col_src
        if not q:
            return
        for row in d:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def negate_row(i: int) -> None:
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]
        for row in u_inv:
            row[i] = -row[i]

    for t in range(min(r, c)):
        while True:
            best = None
            for i in range(t, r):
                row = d[i]
                for j in range(t, c):
                    x = row[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, pi, pj = best
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = d[t][t]
            dirty = False
            for i in range(t + 1, r):
                if d[i][t]:
                    add_row(t, i, -(d[i][t] // p))
                    dirty = dirty or d[i][t] != 0
            for j in range(t + 1, c):
                if d[t][j]:
                    add_col(t, j, -(d[t][j] // p))
                    dirty = dirty or d[t][j] != 0
            if dirty:
                continue
            bad = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if d[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        if t < r and t < c and d[t][t] < 0:
            negate_row(t)
    return SnfDecomposition(u, d, v, u_inv, r, c)


def kernel_basis(m: Matrix, cols: int | None = None) -> Matrix:
    """Columns form a Z-basis of ``{v : m @ v = 0}`` (returned as ``cols x k``)."""
    c = (len(m[0]) if m else 0) if cols is None else cols
    snf = smith_normal_form(m, c)
    keep = range(snf.rank, c)
    return [[snf.V[i][j] for j in keep] for i in range(c)]


@dataclass(frozen=True)
class Cokernel:
    """``Z^rows / im(M)`` in canonical coordinates.

    ``projection`` maps ambient coordinates to canonical ones (torsion
    coordinates first, to be reduced modulo ``torsion``); ``lift`` is a section
    whose columns are ambient representatives of the canonical generators.
    """

    torsion: tuple[int, ...]
    free_rank: int
    projection: Matrix
    lift: Matrix
    ambient_dim: int


def cokernel(m: Matrix, rows: int | None = None, cols: int | None = None) -> Cokernel:
    r = len(m) if rows is None else rows
    if not m:
        m = [[] for _ in range(r)]
    snf = smith_normal_form(m, cols)
    diag = snf.diagonal
    torsion_idx = [i for i, x in enumerate(diag) if x > 1]
    free_idx = [i for i, x in enumerate(diag) if x == 0] + list(range(len(diag), r))
    chosen = torsion_idx + free_idx
    proj = [list(snf.U[i]) for i in chosen]
    torsion = tuple(diag[i] for i in torsion_idx)
    for k, f in enumerate(torsion):
        proj[k] = [x % f for x in proj[k]]
    lift = [[snf.U_inv[a][i] for i in chosen] for a in range(r)]
    return Cokernel(torsion, len(free_idx), proj, lift, r)


def in_column_span(m: Matrix, v: list[int]) -> bool:
    """Whether ``v`` is an integer combination of the columns of ``m``."""
    if len(v) != len(m):
        raise ValueError(f"vector length {len(v)} does not match {len(m)} rows")
    snf = smith_normal_form(m)
    w = matvec(snf.U, v)
    diag = snf.diagonal
    for i, x in enumerate(w):
        dii = diag[i] if i < len(diag) else 0
        if dii == 0:
            if x != 0:
                return False
        elif x % dii:
            return False
    return True


def solve(m: Matrix, b: list[int], cols: int | None = None) -> list[int] | None:
    """An integer solution of ``m @ x = b``, or ``None`` if there is none."""
    c = (len(m[0]) if m else 0) if cols is None else cols
    if len(b) != len(m):
        raise ValueError("right-hand side length does not match row count")
    snf = smith_normal_form(m, c)
    w = matvec(snf.U, b)
    diag = snf.diagonal
    y = [0] * c
    for i, x in enumerate(w):
        dii = diag[i] if i < len(diag) else 0
        if dii == 0:
            if x:
                return None
        else:
            q, rem = divmod(x, dii)
            if rem:
                return None
            y[i] = q
    return matvec(snf.V, y)
