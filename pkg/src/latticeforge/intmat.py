"""Exact integer matrix algorithms.

Matrices are lists of rows holding Python ints (or Fractions where noted).
All routines skip zero entries in their inner loops, which keeps them fast on
the block-diagonal Gram matrices produced by direct sums.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m, ncols=None):
    if not m:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*m)]


def matmul(a, b):
    """Product of an r x k and a k x c matrix (sparse-aware)."""
    if not a:
        return []
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * cols
        for k, x in enumerate(row):
            if x:
                for j, y in enumerate(b[k]):
                    if y:
                        acc[j] += x * y
        out.append(acc)
    return out


def matvec(m, v):
    return [sum(x * y for x, y in zip(row, v) if x) for row in m]


def bilinear(gram, x, y):
    """x^T G y for vectors of ints or Fractions."""
    total = 0
    for i, xi in enumerate(x):
        if xi:
            row = gram[i]
            total += xi * sum(row[j] * yj for j, yj in enumerate(y) if yj and row[j])
    return total


def congruence(basis, gram):
    """Gram matrix B G B^T of the rows of ``basis``."""
    bg = matmul(basis, gram)
    return matmul(bg, transpose(basis, len(gram)))


def determinant(m):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in m]
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
        piv = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            f = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (piv * rowi[j] - f * rowk[j]) // prev
            rowi[k] = 0
        prev = piv
    return sign * a[n - 1][n - 1]


def inverse(m):
    """Exact inverse over Q (Gauss-Jordan on Fractions)."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for r in range(n):
            f = a[r][c]
            if r != c and f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


@dataclass(frozen=True)
class SnfResult:
    """U * M * V = D with U, V unimodular and D in Smith normal form."""

    u: list
    d: list
    v: list

    @property
    def diagonal(self):
        return [self.d[i][i] for i in range(min(len(self.d), len(self.v)))]


def _smith(matrix, track):
    a = [list(map(int, row)) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    u = identity(m) if track else None
    vt = identity(n) if track else None  # V stored transposed: column ops become row ops

    def add_row(dst, src, f, rows):
        rs, rd = rows[src], rows[dst]
        for j, x in enumerate(rs):
            if x:
                rd[j] += f * x

    def add_col(dst, src, f):
        for row in a:
            x = row[src]
            if x:
                row[dst] += f * x
        if track:
            add_row(dst, src, f, vt)

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                row = a[i]
                for j in range(t, n):
                    x = row[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, i, j = best
            if i != t:
                a[t], a[i] = a[i], a[t]
                if track:
                    u[t], u[i] = u[i], u[t]
            if j != t:
                for row in a:
                    row[t], row[j] = row[j], row[t]
                if track:
                    vt[t], vt[j] = vt[j], vt[t]
            piv = a[t][t]
            clean = True
            for i in range(t + 1, m):
                x = a[i][t]
                if x:
                    q = x // piv
                    add_row(i, t, -q, a)
                    if track:
                        add_row(i, t, -q, u)
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, n):
                x = a[t][j]
                if x:
                    add_col(j, t, -(x // piv))
                    if a[t][j]:
                        clean = False
            if not clean:
                continue
            bad = None
            for i in range(t + 1, m):
                if any(x % piv for x in a[i][t + 1:] if x):
                    bad = i
                    break
            if bad is None:
                break
            add_row(t, bad, 1, a)
            if track:
                add_row(t, bad, 1, u)
        if t < m and t < n and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if track:
                u[t] = [-x for x in u[t]]
        if all(not a[i][j] for i in range(t, m) for j in range(t, n)):
            break
    return a, u, (transpose(vt, n) if track else None)


def smith_normal_form(matrix):
    """Smith normal form with unimodular transforms.

    >>> smith_normal_form([[2, 1], [1, 2]]).diagonal
    [1, 3]
    """
    d, u, v = _smith(matrix, track=True)
    return SnfResult(u=u, d=d, v=v)


def invariant_factors(matrix):
    """Diagonal of the Smith normal form (zeros included, transforms skipped)."""
    d, _, _ = _smith(matrix, track=False)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def hermite_normal_form(rows):
    """Row-style HNF: nonzero rows, positive pivots, reduced above pivots.

    The row space over Z is preserved; zero rows are dropped.
    """
    a = [list(map(int, r)) for r in rows if any(r)]
    if not a:
        return []
    n = len(a[0])
    r = 0
    for c in range(n):
        # Euclid down column c over rows r..end
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[p] = a[p], a[r]
            piv = a[r][c]
            done = True
            for i in range(r + 1, len(a)):
                x = a[i][c]
                if x:
                    q = x // piv
                    ri, rr = a[i], a[r]
                    for j in range(c, n):
                        if rr[j]:
                            ri[j] -= q * rr[j]
                    if ri[c]:
                        done = False
            if done:
                break
        if r < len(a) and a[r][c]:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            piv = a[r][c]
            for i in range(r):
                q = a[i][c] // piv
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
            if r == len(a):
                break
    return a[:r]


def kernel(matrix, ncols=None):
    """Saturated Z-basis (rows, HNF-normalized) of {x : M x = 0}."""
    if not matrix:
        return identity(ncols or 0)
    n = len(matrix[0])
    res = smith_normal_form(matrix)
    rank = sum(1 for x in res.diagonal if x)
    basis = [[res.v[i][j] for i in range(n)] for j in range(rank, n)]
    return hermite_normal_form(basis)


def saturation(rows, ncols):
    """(Q-span of rows) intersected with Z^n, as an HNF basis."""
    if not rows:
        return []
    return kernel(kernel(rows, ncols), ncols)


def solve_rational(basis, vec):
    """Coefficients c with c * basis = vec for a square invertible basis."""
    inv = inverse(basis)
    n = len(basis)
    return [sum(Fraction(vec[k]) * inv[k][j] for k in range(n) if vec[k]) for j in range(n)]


def common_denominator(values):
    den = 1
    for x in values:
        den = lcm(den, Fraction(x).denominator)
    return den


def content(values):
    g = 0
    for x in values:
        g = gcd(g, int(x))
    return g
