"""Pure-Python integer normal-form kernels.

These are the reference implementations; ``_kernels.pyx`` follows the same
steps on checked 64-bit integers so both backends return identical
matrices. Inputs and outputs are lists of lists of Python ints.
"""

from __future__ import annotations

Rows = list[list[int]]


def _identity(n: int) -> Rows:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _nearest(x: int, piv: int) -> int:
    """Quotient with the remainder of least absolute value; limits entry growth."""
    q, r = divmod(x, piv)
    if 2 * abs(r) > abs(piv):
        q += 1
    return q


def hnf_rows(a: Rows, ncols: int) -> Rows:
    """Row-style Hermite normal form; returns only the nonzero rows.

    Pivots are positive and strictly increasing in column; entries above a
    pivot lie in ``[0, pivot)``.
    """
    m = [row[:] for row in a]
    nrows = len(m)
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        while True:
            best = -1
            for i in range(r, nrows):
                x = m[i][col]
                if x and (best < 0 or abs(x) < abs(m[best][col])):
                    best = i
            if best < 0:
                break
            if best != r:
                m[r], m[best] = m[best], m[r]
            piv = m[r][col]
            clean = True
            for i in range(r + 1, nrows):
                x = m[i][col]
                if x:
                    q = _nearest(x, piv)
                    if q:
                        ri, rr = m[i], m[r]
                        for j in range(col, ncols):
                            ri[j] -= q * rr[j]
                    if m[i][col]:
                        clean = False
            if clean:
                break
        if m[r][col] != 0:
            if m[r][col] < 0:
                m[r] = [-x for x in m[r]]
            piv = m[r][col]
            for i in range(r):
                q = m[i][col] // piv
                if q:
                    ri, rr = m[i], m[r]
                    for j in range(col, ncols):
                        ri[j] -= q * rr[j]
            r += 1
    return m[:r]


def snf_triple(a: Rows, nrows: int, ncols: int) -> tuple[Rows, Rows, Rows]:
    """Smith normal form ``(U, S, V)`` with ``U a V == S``.

    Pivot choice is the smallest nonzero absolute value in the active block.
    Diagonal entries come out nonnegative, zeros last, each dividing the next.
    """
    s = [row[:] for row in a]
    u = _identity(nrows)
    v = _identity(ncols)

    def swap_rows(i: int, j: int) -> None:
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst: int, src: int, q: int) -> None:
        # row_dst += q * row_src
        sd, ss = s[dst], s[src]
        for j in range(ncols):
            sd[j] += q * ss[j]
        ud, us = u[dst], u[src]
        for j in range(nrows):
            ud[j] += q * us[j]

    def add_col(dst: int, src: int, q: int) -> None:
        for row in s:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    t = 0
    limit = min(nrows, ncols)
    while t < limit:
        bi = bj = -1
        best = 0
        for i in range(t, nrows):
            for j in range(t, ncols):
                x = s[i][j]
                if x and (best == 0 or abs(x) < best):
                    best, bi, bj = abs(x), i, j
        if bi < 0:
            break
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)
        while True:
            piv = s[t][t]
            dirty = False
            for i in range(t + 1, nrows):
                x = s[i][t]
                if x:
                    add_row(i, t, -_nearest(x, piv))
                    if s[i][t]:
                        dirty = True
            for j in range(t + 1, ncols):
                x = s[t][j]
                if x:
                    add_col(j, t, -_nearest(x, piv))
                    if s[t][j]:
                        dirty = True
            if dirty:
                # move the smallest leftover in row/column t onto the pivot
                bi, bj, best = t, t, abs(s[t][t])
                for i in range(t + 1, nrows):
                    x = s[i][t]
                    if x and abs(x) < best:
                        best, bi, bj = abs(x), i, t
                for j in range(t + 1, ncols):
                    x = s[t][j]
                    if x and abs(x) < best:
                        best, bi, bj = abs(x), t, j
                if bi != t:
                    swap_rows(t, bi)
                if bj != t:
                    swap_cols(t, bj)
                continue
            bad = -1
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if s[i][j] % piv:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad < 0:
                break
            add_row(t, bad, 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, s, v


def det_bareiss(a: Rows) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [row[:] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        mkk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            ri, rk = m[i], m[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * mkk - mik * rk[j]) // prev
            ri[k] = 0
        prev = mkk
    return sign * m[n - 1][n - 1]
