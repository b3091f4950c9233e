"""Small exact linear-algebra kernels.

Everything here works over any exact field whose elements support ``+ - * /``
and truthiness-as-nonzero (Fraction, FieldElement, ComplexFieldElement), or
over the integers where noted.  Matrices are lists of row lists.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form.  Returns (matrix, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int, zero, one) -> list[list]:
    """Basis of {x : rows @ x = 0}, one vector per free column (unit there)."""
    if not rows:
        return [[one if i == j else zero for i in range(ncols)] for j in range(ncols)]
    m, piv = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for r, c in enumerate(piv):
            v[c] = -m[r][f]
        basis.append(v)
    return basis


def det(mat: Sequence[Sequence]):
    """Determinant by fraction-producing elimination."""
    m = [list(r) for r in mat]
    n = len(m)
    out = 1
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return m[0][0] * 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            out = -out
        piv = m[c][c]
        out = out * piv
        inv = 1 / piv
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return out


def int_det(mat: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    m = [list(r) for r in mat]
    n = len(m)
    sgn, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            p = next((i for i in range(k + 1, n) if m[i][k]), None)
            if p is None:
                return 0
            m[k], m[p] = m[p], m[k]
            sgn = -sgn
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sgn * m[n - 1][n - 1] if n else 1


def leading_minors(mat: Sequence[Sequence]) -> list:
    """All leading principal minors, via pivots of Gaussian elimination.

    Stops (returning the minors computed so far plus a zero) at the first
    vanishing pivot.
    """
    m = [list(r) for r in mat]
    n = len(m)
    minors = []
    cur = None
    for c in range(n):
        piv = m[c][c]
        cur = piv if cur is None else cur * piv
        minors.append(cur)
        if not piv:
            break
        inv = 1 / piv
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return minors


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), start=0 * row[0]) for col in bt] for row in a]


def transpose(a):
    return [list(r) for r in zip(*a)]


def symmetric_signature(gram: Sequence[Sequence[Fraction]]) -> tuple[int, int]:
    """(n_plus, n_minus) of a rational symmetric matrix by congruence diagonalization."""
    m = [[Fraction(x) for x in row] for row in gram]
    n = len(m)
    pos = neg = 0
    for k in range(n):
        if m[k][k] == 0:
            j = next((j for j in range(k + 1, n) if m[j][j] != 0), None)
            if j is not None:
                _swap_sym(m, k, j)
            else:
                j = next((j for j in range(k + 1, n) if m[k][j] != 0), None)
                if j is None:
                    continue
                # e_k <- e_k + e_j; new diagonal entry is 2*m[k][j] != 0
                for t in range(n):
                    m[k][t] += m[j][t]
                for t in range(n):
                    m[t][k] += m[t][j]
        piv = m[k][k]
        if piv > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = m[i][k] / piv
            if f:
                for t in range(n):
                    m[i][t] -= f * m[k][t]
                for t in range(n):
                    m[t][i] -= f * m[t][k]
    return pos, neg


def _swap_sym(m, i, j):
    m[i], m[j] = m[j], m[i]
    for row in m:
        row[i], row[j] = row[j], row[i]


def ldl(gram: Sequence[Sequence[Fraction]]):
    """q(y) = sum_i d[i] * (y_i + sum_{j>i} mu[i][j] y_j)**2 for a PD matrix.

    Returns (d, mu) or None when the matrix is not positive definite.  The
    last term involves y_{n-1} alone, so enumeration fixes it first.
    """
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    d = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        s = a[i][i] - sum(d[k] * mu[k][i] ** 2 for k in range(i))
        if s <= 0:
            return None
        d[i] = s
        for j in range(i + 1, n):
            t = a[i][j] - sum(d[k] * mu[k][i] * mu[k][j] for k in range(i))
            mu[i][j] = t / s
    return d, mu


def lll_gram(gram: Sequence[Sequence[Fraction]], delta: Fraction = Fraction(3, 4)):
    """LLL reduction of a positive-definite rational Gram matrix.

    Returns the unimodular integer matrix T (columns = new basis in old
    coordinates) such that T^T gram T is LLL-reduced.
    """
    n = len(gram)
    g = [[Fraction(x) for x in row] for row in gram]
    t = [[int(i == j) for j in range(n)] for i in range(n)]  # columns are basis vectors

    def col_swap(j, k):
        for r in range(n):
            t[r][j], t[r][k] = t[r][k], t[r][j]
        g[j], g[k] = g[k], g[j]
        for row in g:
            row[j], row[k] = row[k], row[j]

    def gso():
        mu = [[Fraction(0)] * n for _ in range(n)]
        bb = [Fraction(0)] * n
        for i in range(n):
            for j in range(i):
                s = g[i][j] - sum(mu[j][k] * mu[i][k] * bb[k] for k in range(j))
                mu[i][j] = s / bb[j]
            bb[i] = g[i][i] - sum(mu[i][k] ** 2 * bb[k] for k in range(i))
        return mu, bb

    k = 1
    mu, bb = gso()
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                _col_add_exact(g, t, k, j, -q)
                mu, bb = gso()
        if bb[k] >= (delta - mu[k][k - 1] ** 2) * bb[k - 1]:
            k += 1
        else:
            col_swap(k, k - 1)
            mu, bb = gso()
            k = max(k - 1, 1)
    return t


def _col_add_exact(g, t, j, k, c):
    """b_j <- b_j + c b_k on both Gram and transform."""
    n = len(g)
    for r in range(n):
        t[r][j] += c * t[r][k]
    gjj = g[j][j] + 2 * c * g[j][k] + c * c * g[k][k]
    for r in range(n):
        if r != j:
            g[r][j] = g[r][j] + c * g[r][k]
            g[j][r] = g[r][j]
    g[j][j] = gjj


def int_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Saturated basis of {x in Z^n : rows @ x = 0}.

    Column-style unimodular reduction: M V = [H | 0]; the columns of V that
    land on zero columns span the integer kernel and, V being unimodular,
    that span is a direct summand.
    """
    m = [list(r) for r in rows]
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    nrows = len(m)
    col = 0
    for r in range(nrows):
        if col >= ncols:
            break
        while True:
            nz = [c for c in range(col, ncols) if m[r][c]]
            if not nz:
                break
            p = min(nz, key=lambda c: (abs(m[r][c]), c))
            _swap_cols(m, v, col, p)
            done = True
            for c in range(col + 1, ncols):
                if m[r][c]:
                    q = m[r][c] // m[r][col]
                    _addmul_cols(m, v, c, col, -q)
                    if m[r][c]:
                        done = False
            if done:
                break
        if any(m[r][c] for c in range(col, ncols)):
            col += 1
    return [[v[i][c] for i in range(ncols)] for c in range(col, ncols)]


def _swap_cols(m, v, a, b):
    for row in m:
        row[a], row[b] = row[b], row[a]
    for row in v:
        row[a], row[b] = row[b], row[a]


def _addmul_cols(m, v, dst, src, c):
    for row in m:
        row[dst] += c * row[src]
    for row in v:
        row[dst] += c * row[src]


def hermite_rows(vectors: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row Hermite normal form of the lattice spanned by the given vectors.

    Canonical for the lattice, so two generating sets span the same lattice
    iff their HNFs coincide.
    """
    m = [list(v) for v in vectors if any(v)]
    if not m:
        return []
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(m)) if m[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(m[i][c]))
            m[r], m[p] = m[p], m[r]
            for i in range(r + 1, len(m)):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
            if all(m[i][c] == 0 for i in range(r + 1, len(m))):
                break
        if r < len(m) and m[r][c]:
            if m[r][c] < 0:
                m[r] = [-a for a in m[r]]
            for i in range(r):
                q = m[i][c] // m[r][c]
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
            r += 1
            if r == len(m):
                break
    return [row for row in m[:r]]


def primitive(v: Sequence[int]) -> list[int]:
    g = math.gcd(*v)
    if g == 0:
        return list(v)
    out = [a // g for a in v]
    first = next(a for a in out if a)
    return [-a for a in out] if first < 0 else out


def clear_denominators(v: Sequence[Fraction]) -> list[int]:
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
    return primitive([int(Fraction(x) * den) for x in v])
