"""Integral lattices given by symmetric integer Gram matrices."""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from operator import index

from . import intmat
from .errors import Degenerate, EmptyMatrix, NonSymmetric, NotSquare, ZeroScale


@dataclass(frozen=True)
class Signature:
    t_plus: int
    t_minus: int

    def __iter__(self):
        return iter((self.t_plus, self.t_minus))

    def __add__(self, other):
        return Signature(self.t_plus + other.t_plus, self.t_minus + other.t_minus)


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Finite abelian group in invariant-factor form n_1 | n_2 | ... (all > 1)."""

    invariant_factors: tuple = ()

    def __post_init__(self):
        facs = tuple(int(n) for n in self.invariant_factors)
        if any(n <= 1 for n in facs):
            raise ValueError("invariant factors must exceed 1")
        if any(b % a for a, b in zip(facs, facs[1:])):
            raise ValueError("invariant factors must form a divisibility chain")
        object.__setattr__(self, "invariant_factors", facs)

    @property
    def order(self):
        n = 1
        for f in self.invariant_factors:
            n *= f
        return n

    @property
    def length(self):
        """Minimal number of generators (the l-invariant)."""
        return len(self.invariant_factors)

    def is_two_elementary(self):
        return all(n == 2 for n in self.invariant_factors)

    def primary_part(self, p):
        facs = []
        for n in self.invariant_factors:
            pp = 1
            while n % p == 0:
                n //= p
                pp *= p
            if pp > 1:
                facs.append(pp)
        return FiniteAbelianGroup(tuple(facs))


def _as_int(x):
    if isinstance(x, bool):
        raise TypeError("boolean Gram entry")
    if isinstance(x, Fraction):
        if x.denominator != 1:
            raise TypeError(f"non-integral Gram entry {x}")
        return int(x)
    return index(x)


@dataclass(frozen=True)
class IntegerLattice:
    """A finite-rank lattice with a symmetric integral bilinear form.

    Instances are immutable; build them through :func:`validate` or the
    constructor, which performs the same checks.
    """

    gram: tuple = field(default=())

    def __post_init__(self):
        rows = tuple(tuple(_as_int(x) for x in row) for row in self.gram)
        n = len(rows)
        if any(len(r) != n for r in rows):
            if n == 1 and len(rows[0]) == 0:
                raise EmptyMatrix("use [] for the rank-0 lattice")
            raise NotSquare(f"Gram matrix is not square ({n} rows)")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise NonSymmetric(f"gram[{i}][{j}]={rows[i][j]} but gram[{j}][{i}]={rows[j][i]}",
                                       entry=(i, j))
        object.__setattr__(self, "gram", rows)

    @property
    def rank(self):
        return len(self.gram)

    @cached_property
    def is_even(self):
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @cached_property
    def det(self):
        return intmat.determinant(self.gram)

    @property
    def is_nondegenerate(self):
        return self.det != 0

    @property
    def is_unimodular(self):
        return abs(self.det) == 1

    def matrix(self):
        """Mutable list-of-lists copy of the Gram matrix."""
        return [list(r) for r in self.gram]

    def inner(self, x, y):
        return intmat.bilinear(self.gram, x, y)

    def norm(self, x):
        return intmat.bilinear(self.gram, x, x)

    def to_json(self):
        return {"gram": self.matrix()}

    def __repr__(self):
        return f"IntegerLattice(rank={self.rank}, gram={self.matrix()})"


def validate(gram):
    """Check a square integer matrix and wrap it as an :class:`IntegerLattice`."""
    return IntegerLattice(tuple(tuple(row) for row in gram))


def determinant(lat):
    return lat.det


def signature(lat):
    """Exact (t+, t-) by congruence diagonalization over Q.

    When every remaining diagonal entry is zero, a row/column is added to
    another to expose a nonzero pivot.
    """
    n = lat.rank
    a = [[Fraction(x) for x in row] for row in lat.gram]
    active = list(range(n))
    pos = neg = 0
    while active:
        piv = next((i for i in active if a[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i != j and a[i][j]), None)
            if pair is None:
                raise Degenerate("degenerate Gram matrix (det = 0)")
            i, j = pair
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        p = a[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        prow = a[piv]
        support = [l for l in active if prow[l]]
        for k in support:
            f = a[k][piv] / p
            rowk = a[k]
            for l in support:
                rowk[l] -= f * prow[l]
        for k in support:
            a[k][piv] = a[piv][k] = Fraction(0)
    return Signature(pos, neg)


def direct_sum(*lattices):
    n = sum(l.rank for l in lattices)
    out = [[0] * n for _ in range(n)]
    off = 0
    for lat in lattices:
        for i, row in enumerate(lat.gram):
            out[off + i][off:off + lat.rank] = row
        off += lat.rank
    return validate(out)


def rescale(lat, a):
    """L(a): every Gram entry multiplied by the nonzero integer ``a``."""
    a = index(a)
    if a == 0:
        raise ZeroScale("scale factor must be nonzero")
    return validate([[a * x for x in row] for row in lat.gram])


def change_basis(lat, basis):
    """Gram matrix of the lattice vectors given as integer rows of ``basis``."""
    return validate(intmat.congruence([list(r) for r in basis], lat.matrix()))


def smith_normal_form(lat_or_matrix):
    m = lat_or_matrix.matrix() if isinstance(lat_or_matrix, IntegerLattice) else lat_or_matrix
    return intmat.smith_normal_form(m)


def discriminant_group(lat):
    """A_L = L*/L as invariant factors of the Gram matrix."""
    if lat.det == 0:
        raise Degenerate("discriminant group of a degenerate lattice")
    facs = intmat.invariant_factors(lat.matrix())
    return FiniteAbelianGroup(tuple(abs(f) for f in facs if abs(f) > 1))
