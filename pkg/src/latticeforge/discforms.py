"""Finite quadratic forms (discriminant forms of even lattices).

A form is stored on generators g_1..g_k of orders n_1 | ... | n_k with
q(g_i) in Q/2Z and b(g_i, g_j) in Q/Z.  Internally every value is scaled by a
common denominator ``den`` so searches and exhaustive sums run on ints.
"""

import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from . import intmat
from .errors import (DimensionMismatch, GroupTooLarge, NotIsotropic, NotTwoElementary,
                     OddLattice, InvalidArgument)
from .lattice import Degenerate, FiniteAbelianGroup, IntegerLattice

DEFAULT_MAX_GROUP = 2 ** 16


def max_group_order():
    """Bound on brute-force group sizes (env ``LATTICEFORGE_MAX_GROUP``)."""
    raw = os.environ.get("LATTICEFORGE_MAX_GROUP")
    return int(raw) if raw else DEFAULT_MAX_GROUP


def _mod(x, m):
    x = Fraction(x)
    return x - m * ((x / m).numerator // (x / m).denominator)


@dataclass(frozen=True)
class FiniteQuadraticForm:
    orders: tuple
    q: tuple
    b: tuple
    # Representative dual vectors of the generators, when the form comes from a lattice.
    lifts: tuple = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        orders = tuple(int(n) for n in self.orders)
        k = len(orders)
        q = tuple(_mod(x, 2) for x in self.q)
        b = tuple(tuple(_mod(x, 1) for x in row) for row in self.b)
        if len(q) != k or len(b) != k or any(len(r) != k for r in b):
            raise DimensionMismatch("orders, q and b must have matching sizes")
        for i in range(k):
            if _mod(b[i][i] - q[i], 1):
                raise InvalidArgument(f"b(g{i},g{i}) must equal q(g{i}) mod 1")
            if _mod(orders[i] * q[i] * orders[i], 2) or _mod(2 * orders[i] * q[i], 2):
                raise InvalidArgument(f"q(g{i}) incompatible with order {orders[i]}")
            for j in range(k):
                if b[i][j] != b[j][i]:
                    raise InvalidArgument("b must be symmetric")
                if _mod(orders[i] * b[i][j], 1):
                    raise InvalidArgument(f"b(g{i},g{j}) incompatible with order {orders[i]}")
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "b", b)
        den = 1
        for x in q:
            den = lcm(den, x.denominator)
        for row in b:
            for x in row:
                den = lcm(den, x.denominator)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_qi", tuple(int(x * den) for x in q))
        object.__setattr__(self, "_bi", tuple(tuple(int(x * den) for x in row) for row in b))

    # -- basic structure -------------------------------------------------
    @property
    def rank(self):
        return len(self.orders)

    @property
    def order(self):
        n = 1
        for x in self.orders:
            n *= x
        return n

    @property
    def group(self):
        k = self.rank
        diag = [[self.orders[i] * int(i == j) for j in range(k)] for i in range(k)]
        return FiniteAbelianGroup(tuple(d for d in intmat.invariant_factors(diag) if d > 1))

    def element(self, coords):
        if len(coords) != self.rank:
            raise DimensionMismatch(f"expected {self.rank} coordinates, got {len(coords)}")
        return tuple(int(c) % n for c, n in zip(coords, self.orders))

    def _qint(self, x):
        den = self.den
        tot = 0
        qi, bi = self._qi, self._bi
        for i, xi in enumerate(x):
            if xi:
                tot += xi * xi * qi[i]
                row = bi[i]
                for j in range(i + 1, len(x)):
                    if x[j]:
                        tot += 2 * xi * x[j] * row[j]
        return tot % (2 * den)

    def _bint(self, x, y):
        tot = 0
        bi = self._bi
        for i, xi in enumerate(x):
            if xi:
                row = bi[i]
                tot += xi * sum(row[j] * yj for j, yj in enumerate(y) if yj)
        return tot % self.den

    def evaluate(self, x):
        """q(x) in [0, 2)."""
        return Fraction(self._qint(self.element(x)), self.den)

    def bilinear(self, x, y):
        """b(x, y) in [0, 1)."""
        return Fraction(self._bint(self.element(x), self.element(y)), self.den)

    def elements(self):
        """All group elements, lexicographic in the coordinates."""
        out = [()]
        for n in self.orders:
            out = [x + (c,) for x in out for c in range(n)]
        return out

    def values(self):
        """q-values (scaled by den) of all elements, by incremental enumeration."""
        k = self.rank
        qi, bi = self._qi, self._bi
        den2 = 2 * self.den
        vals = []

        def rec(level, qx, bx):
            if level == k:
                vals.append(qx)
                return
            for _ in range(self.orders[level]):
                rec(level + 1, qx, bx)
                qx = (qx + qi[level] + 2 * bx[level]) % den2
                row = bi[level]
                bx = [(v + row[j]) % self.den for j, v in enumerate(bx)]

        rec(0, 0, [0] * k)
        return vals

    def direct_sum(self, other):
        k1, k2 = self.rank, other.rank
        b = [[Fraction(0)] * (k1 + k2) for _ in range(k1 + k2)]
        for i in range(k1):
            for j in range(k1):
                b[i][j] = self.b[i][j]
        for i in range(k2):
            for j in range(k2):
                b[k1 + i][k1 + j] = other.b[i][j]
        lifts = None
        if self.lifts is not None and other.lifts is not None:
            n1 = len(self.lifts[0]) if self.lifts else 0
            n2 = len(other.lifts[0]) if other.lifts else 0
            lifts = tuple(tuple(v) + (Fraction(0),) * n2 for v in self.lifts) + \
                tuple((Fraction(0),) * n1 + tuple(v) for v in other.lifts)
        return FiniteQuadraticForm(self.orders + other.orders, self.q + other.q,
                                   tuple(map(tuple, b)), lifts)

    def negate(self):
        return FiniteQuadraticForm(self.orders, tuple(-x for x in self.q),
                                   tuple(tuple(-x for x in r) for r in self.b), self.lifts)

    def lift(self, x):
        """Dual vector representing the element x (needs ``lifts``)."""
        if self.lifts is None:
            raise InvalidArgument("form carries no lattice lifts")
        x = self.element(x)
        n = len(self.lifts[0]) if self.lifts else 0
        out = [Fraction(0)] * n
        for c, v in zip(x, self.lifts):
            if c:
                for j, y in enumerate(v):
                    out[j] += c * y
        return out

    def to_json(self):
        return {
            "orders": list(self.orders),
            "q": [_frac_str(x) for x in self.q],
            "b": [[_frac_str(x) for x in row] for row in self.b],
        }


def _frac_str(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def discriminant_form(lat):
    """q_L on A_L = L*/L for an even nondegenerate lattice.

    Generators come from the Smith normal form U G V = D: the i-th generator
    of order d_i is represented by the dual vector V[:, i] / d_i.
    """
    if not isinstance(lat, IntegerLattice):
        raise TypeError("expected an IntegerLattice")
    if lat.det == 0:
        raise Degenerate("discriminant form of a degenerate lattice")
    if not lat.is_even:
        raise OddLattice("discriminant quadratic form needs an even lattice")
    g = lat.matrix()
    snf = intmat.smith_normal_form(g)
    n = lat.rank
    orders, cols = [], []
    for i, d in enumerate(snf.diagonal):
        if d > 1:
            orders.append(d)
            cols.append([snf.v[r][i] for r in range(n)])
    gcols = [intmat.matvec(g, c) for c in cols]
    k = len(cols)
    b = [[Fraction(sum(x * y for x, y in zip(cols[i], gcols[j]) if x), orders[i] * orders[j])
          for j in range(k)] for i in range(k)]
    q = [b[i][i] for i in range(k)]
    lifts = tuple(tuple(Fraction(x, d) for x in c) for c, d in zip(cols, orders))
    return FiniteQuadraticForm(tuple(orders), tuple(q), tuple(map(tuple, b)), lifts)


def evaluate(q, x):
    return q.evaluate(x)


def two_elementary_invariants(q):
    """(l, delta) for a form on (Z/2)^l.

    delta is read off the generators: b is 1/2-valued, so 2b(x, y) is
    integral and integrality of q spreads from generators to every element.
    """
    if any(n != 2 for n in q.orders):
        raise NotTwoElementary(f"invariant factors {list(q.orders)} are not all 2")
    delta = 0 if all(x.denominator == 1 for x in q.q) else 1
    return q.rank, delta


# -- Gauss sums ----------------------------------------------------------

def _cyclotomic_squarefree(n):
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    # Phi_n = prod_{d | n} (x^d - 1)^{mu(n/d)}
    num, den = [1], [1]
    for d in range(1, n + 1):
        if n % d:
            continue
        mu = _moebius(n // d)
        if mu == 0:
            continue
        f = [-1] + [0] * (d - 1) + [1]
        if mu == 1:
            num = _polymul(num, f)
        else:
            den = _polymul(den, f)
    quo, rem = _polydiv(num, den)
    assert not any(rem)
    return quo


def _moebius(n):
    res, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            res = -res
        p += 1
    return -res if n > 1 else res


def _polymul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _polydiv(a, b):
    a = list(a)
    db = len(b) - 1
    quo = [0] * max(len(a) - db, 1)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            quo[k - db] = c  # b is monic
            for j, y in enumerate(b):
                a[k - db + j] -= c * y
    return quo, a[:db]


def _prime_factors(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _is_zero_cyclotomic(vec, m):
    """Whether sum vec[k] * zeta_m^k vanishes (vec has length m)."""
    rad = 1
    for p in _prime_factors(m):
        rad *= p
    phi = _cyclotomic_squarefree(rad)  # Phi_m(x) = Phi_rad(x^(m/rad))
    step = m // rad
    deg = (len(phi) - 1) * step
    terms = [(e * step, c) for e, c in enumerate(phi) if c]
    a = list(vec)
    for k in range(m - 1, deg - 1, -1):
        c = a[k]
        if c:
            for e, coef in terms:
                a[k - deg + e] -= c * coef
    return not any(a[:deg])


def _sqrt_element(r, m):
    """Coefficients of sqrt(r) in Z[zeta_m] for squarefree r (needs 8r | m)."""
    vec = [0] * m
    vec[0] = 1
    for p in _prime_factors(r):
        if p == 2:
            e = m // 8
            f = [0] * m
            f[e] += 1
            f[(-e) % m] += 1
        else:
            step = m // p
            f = [0] * m
            for x in range(p):
                f[(x * x % p) * step] += 1
            if p % 4 == 3:  # Gauss sum is i*sqrt(p); multiply by -i
                i3 = 3 * (m // 4)
                f = [f[(k - i3) % m] for k in range(m)]
        vec = _cycmul(vec, f, m)
    return vec


def _cycmul(a, b, m):
    out = [0] * m
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[(i + j) % m] += x * y
    return out


def gauss_sum_counts(q):
    """Histogram c with sum_x exp(pi i q(x)) = sum_a c[a] zeta_{2 den}^a."""
    limit = max_group_order()
    if q.order > limit:
        raise GroupTooLarge(f"group order {q.order} exceeds {limit}")
    counts = [0] * (2 * q.den)
    for v in q.values():
        counts[v] += 1
    return counts


def milgram_signature(q):
    """Signature mod 8 from the Gauss sum, decided by exact cyclotomic arithmetic.

    The sum must equal sqrt|A| * zeta_8^sigma; each candidate sigma is
    compared exactly inside Z[zeta_m], with sqrt|A| written via quadratic
    Gauss sums.
    """
    counts = gauss_sum_counts(q)
    r, sq = q.order, 1
    for p in _prime_factors(q.order):
        while r % (p * p) == 0:
            r //= p * p
            sq *= p
    m = lcm(2 * q.den, 8, *_prime_factors(r))
    scale = m // (2 * q.den)
    total = [0] * m
    for a, c in enumerate(counts):
        if c:
            total[a * scale] += c
    root = [sq * x for x in _sqrt_element(r, m)]
    e8 = m // 8
    for sigma in range(8):
        diff = [total[k] - root[(k - sigma * e8) % m] for k in range(m)]
        if _is_zero_cyclotomic(diff, m):
            return sigma
    raise Degenerate("Gauss sum does not have absolute value sqrt|A|; form is degenerate")


# -- isometry searches ---------------------------------------------------

def _check_size(*forms, bound=None):
    limit = min(max_group_order(), bound) if bound else max_group_order()
    for f in forms:
        if f.order > limit:
            raise GroupTooLarge(f"group order {f.order} exceeds {limit}")


class _Table:
    """All elements of a form with their scaled q-values and b-rows."""

    def __init__(self, form, den):
        self.form = form
        self.elems = form.elements()
        scale = den // form.den
        self.qv = [form._qint(x) * scale for x in self.elems]
        bi = form._bi
        k = form.rank
        self.brow = [[sum(x[i] * bi[i][j] for i in range(k) if x[i]) * scale % den
                      for j in range(k)] for x in self.elems]
        self.den = den

    def b(self, a, c):
        x = self.elems[c]
        row = self.brow[a]
        return sum(row[j] * xj for j, xj in enumerate(x) if xj) % self.den


def _search_maps(src, dst, sign, limit_one):
    """Backtrack over images of src generators in dst.

    Requires dst(phi g_i) = sign * src(g_i) for q and b and n_i * phi(g_i) = 0.
    Nondegeneracy of b makes every such map injective, hence bijective.
    """
    if src.order != dst.order:
        return [] if limit_one else 0
    den = lcm(src.den, dst.den)
    tab = _Table(dst, den)
    sc = den // src.den
    k = src.rank
    tq = [(sign * src._qi[i] * sc) % (2 * den) for i in range(k)]
    tb = [[(sign * src._bi[i][j] * sc) % den for j in range(k)] for i in range(k)]
    cands = []
    for i in range(k):
        n = src.orders[i]
        c = [a for a, x in enumerate(tab.elems)
             if tab.qv[a] == tq[i] and all((n * xi) % m == 0 for xi, m in zip(x, dst.orders))]
        c.sort(key=lambda a: (tab.qv[a], tab.elems[a]))
        cands.append(c)
    order = sorted(range(k), key=lambda i: (len(cands[i]), i))
    chosen = {}
    found = []
    count = 0

    def rec(pos):
        nonlocal count
        if pos == k:
            if limit_one:
                found.append(dict(chosen))
                return True
            count += 1
            return False
        i = order[pos]
        for a in cands[i]:
            if all(tab.b(a, chosen[j]) == tb[i][j] for j in order[:pos]):
                chosen[i] = a
                if rec(pos + 1):
                    return True
                del chosen[i]
        return False

    rec(0)
    if limit_one:
        if not found:
            return []
        return [tuple(tab.elems[found[0][i]] for i in range(k))]
    return count


def find_anti_isometry(q1, q2):
    """Images phi(g_i) in q2 of the generators of q1 with q2(phi x) = -q1(x), or None."""
    _check_size(q1, q2, bound=2 ** 12)
    if q1.group != q2.group:
        return None
    res = _search_maps(q1, q2, -1, True)
    return res[0] if res else None


def find_isometry(q1, q2):
    _check_size(q1, q2, bound=2 ** 12)
    if q1.group != q2.group:
        return None
    res = _search_maps(q1, q2, 1, True)
    return res[0] if res else None


def apply_map(phi, q1, x):
    """Image of x under the homomorphism with generator images ``phi``."""
    x = q1.element(x)
    k2 = len(phi[0]) if phi else 0
    out = [0] * k2
    for c, img in zip(x, phi):
        for j, y in enumerate(img):
            out[j] += c * y
    return out


def orthogonal_group_order(q):
    """|O(q)|, counted by backtracking over generator images."""
    _check_size(q, bound=2 ** 12)
    return _search_maps(q, q, 1, False)


# -- subgroups -----------------------------------------------------------

def p_primary_part(q, p):
    """Restriction of q to the p-Sylow subgroup."""
    orders, gens = [], []
    for i, n in enumerate(q.orders):
        pp = 1
        while n % p == 0:
            n //= p
            pp *= p
        if pp > 1:
            orders.append(pp)
            coords = [0] * q.rank
            coords[i] = n
            gens.append(coords)
    return _induced(q, orders, gens)


def _induced(q, orders, gens):
    """Form on the subgroup (or subquotient) spanned by ``gens`` with given orders."""
    qs = [q.evaluate(g) for g in gens]
    bs = [[q.bilinear(g, h) for h in gens] for g in gens]
    lifts = None
    if q.lifts is not None:
        lifts = tuple(tuple(q.lift(g)) for g in gens)
    return FiniteQuadraticForm(tuple(orders), tuple(qs), tuple(map(tuple, bs)), lifts)


def subgroup_perp_quotient(q, H):
    """Induced form on H^perp / H for an isotropic subgroup spanned by ``H``."""
    H = [q.element(h) for h in H]
    for h in H:
        if q.evaluate(h):
            raise NotIsotropic(f"q{h} = {q.evaluate(h)} is nonzero")
        for g in H:
            if q.bilinear(h, g):
                raise NotIsotropic(f"b{h, g} = {q.bilinear(h, g)} is nonzero")
    k = q.rank
    if not H or k == 0:
        return q
    den = q.den
    # H^perp lifted to Z^k: x with sum_j x_j B(g_j, h) = 0 mod den, for every h in H
    cond = [[sum(h[i] * q._bi[i][j] for i in range(k)) % den for j in range(k)] for h in H]
    m = len(cond)
    big = [row + [den * int(r == c) for c in range(m)] for r, row in enumerate(cond)]
    ker = intmat.kernel(big, k + m)
    perp = intmat.hermite_normal_form([row[:k] for row in ker])
    # relation lattice: orders and H itself
    rel = [[q.orders[i] * int(i == j) for j in range(k)] for i in range(k)] + [list(h) for h in H]
    rel_c = [[int(c) for c in intmat.solve_rational(perp, r)] for r in rel]
    snf = intmat.smith_normal_form(rel_c)
    vinv = intmat.inverse(snf.v)
    orders, gens = [], []
    for i, d in enumerate(snf.diagonal):
        if d > 1:
            c = [int(x) for x in vinv[i]]
            orders.append(d)
            gens.append([sum(c[t] * perp[t][j] for t in range(k)) for j in range(k)])
    order_pairs = sorted(zip(orders, gens), key=lambda t: t[0])
    return _induced(q, [o for o, _ in order_pairs], [g for _, g in order_pairs])
