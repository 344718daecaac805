"""Positive definite tools: short vectors, half-rescaling, small isometry tests."""

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .errors import NotHalfScalable, NotPositiveDefinite, RankTooLarge
from .lattice import signature, validate

MAX_ISOMETRY_RANK = 8
THETA_DEPTH = 4


@dataclass(frozen=True)
class ShortVectorReport:
    bound: int
    counts: dict = field(default_factory=dict)
    minimum: int = None

    def to_json(self):
        return {"bound": self.bound, "minimum": self.minimum,
                "counts": {str(k): v for k, v in sorted(self.counts.items())}}


def _require_positive_definite(lat):
    if lat.rank == 0:
        return
    sig = signature(lat)
    if sig.t_minus or sig.t_plus != lat.rank:
        raise NotPositiveDefinite(f"signature ({sig.t_plus},{sig.t_minus}) is not positive definite")


def _ldl(gram):
    """Q(x) = sum_i d[i] * (x_i + sum_{j>i} mu[i][j] x_j)^2, exactly."""
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    d = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = a[i][i]
        for j in range(i + 1, n):
            mu[i][j] = a[i][j] / d[i]
        for j in range(i + 1, n):
            if mu[i][j]:
                for k in range(j, n):
                    a[j][k] -= mu[i][j] * a[i][k]
                    a[k][j] = a[j][k]
    return d, mu


def _floor(x):
    return x.numerator // x.denominator


def _ceil(x):
    return -((-x.numerator) // x.denominator)


def _range(d, c, rem):
    """Integers x with d * (x + c)^2 <= rem."""
    t = rem / d
    s = isqrt(_floor(t)) + 1  # s >= sqrt(t)
    lo, hi = _ceil(-c - s), _floor(-c + s)
    while lo <= hi and d * (lo + c) ** 2 > rem:
        lo += 1
    while hi >= lo and d * (hi + c) ** 2 > rem:
        hi -= 1
    return lo, hi


def iter_short_vectors(lat, bound):
    """Yield (vector, norm) for every nonzero v with v.G.v <= bound (Fincke-Pohst)."""
    _require_positive_definite(lat)
    n = lat.rank
    if n == 0:
        return
    d, mu = _ldl(lat.gram)
    bound = Fraction(bound)
    x = [0] * n

    def rec(i, rem):
        c = sum((mu[i][j] * x[j] for j in range(i + 1, n) if x[j]), Fraction(0))
        lo, hi = _range(d[i], c, rem)
        for v in range(lo, hi + 1):
            x[i] = v
            r = rem - d[i] * (v + c) ** 2
            if i == 0:
                if any(x):
                    yield tuple(x), int(bound - r)
            else:
                yield from rec(i - 1, r)
        x[i] = 0

    yield from rec(n - 1, bound)


def short_vectors(lat, bound):
    """Counts of lattice vectors by norm up to ``bound`` (zero excluded)."""
    if bound <= 0:
        raise ValueError("bound must be positive")
    counts = {}
    for _, nv in iter_short_vectors(lat, bound):
        counts[nv] = counts.get(nv, 0) + 1
    return ShortVectorReport(int(bound), dict(sorted(counts.items())), min(counts) if counts else None)


def half_rescale_check(lat):
    """L(1/2), provided all norms are divisible by 4 and all products are even."""
    for i, row in enumerate(lat.gram):
        for j, x in enumerate(row):
            if x % 2 or (i == j and x % 4):
                raise NotHalfScalable(f"gram[{i}][{j}] = {x} blocks rescaling by 1/2", entry=(i, j))
    return validate([[x // 2 for x in row] for row in lat.gram])


def _theta(lat, depth):
    return short_vectors(lat, depth).counts if lat.rank else {}


def isometric_small(l1, l2):
    """Isometry test for positive definite lattices of rank <= 8."""
    for lat in (l1, l2):
        if lat.rank > MAX_ISOMETRY_RANK:
            raise RankTooLarge(f"rank {lat.rank} exceeds {MAX_ISOMETRY_RANK}")
        _require_positive_definite(lat)
    if l1.rank != l2.rank or l1.det != l2.det:
        return False
    if l1.rank == 0:
        return True
    if _theta(l1, THETA_DEPTH) != _theta(l2, THETA_DEPTH):
        return False
    if max(l2.gram[i][i] for i in range(l2.rank)) < max(l1.gram[i][i] for i in range(l1.rank)):
        l1, l2 = l2, l1  # map the shorter basis, fewer candidates
    g1 = l1.gram
    n = l1.rank
    top = max(g1[i][i] for i in range(n))
    by_norm = {}
    for v, nv in iter_short_vectors(l2, top):
        by_norm.setdefault(nv, []).append(v)
    cands = [by_norm.get(g1[i][i], []) for i in range(n)]
    order = sorted(range(n), key=lambda i: (len(cands[i]), i))
    images = {}

    def rec(pos):
        if pos == n:
            return True
        i = order[pos]
        for v in cands[i]:
            if all(l2.inner(v, images[j]) == g1[i][j] for j in order[:pos]):
                images[i] = v
                if rec(pos + 1):
                    return True
                del images[i]
        return False

    # equal determinants make any Gram-preserving image basis a basis of l2
    return rec(0)
