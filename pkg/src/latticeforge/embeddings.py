"""Overlattices by gluing, orthogonal complements and primitivity."""

from dataclasses import dataclass, field
from fractions import Fraction

from . import intmat
from .discforms import apply_map, discriminant_form, find_anti_isometry, p_primary_part
from .errors import (Degenerate, DimensionMismatch, InvalidArgument, NotFiniteIndex, NotIsotropic,
                     OddLattice)
from .lattice import IntegerLattice, direct_sum, validate


@dataclass(frozen=True)
class SublatticeBasis:
    ambient: IntegerLattice
    basis: tuple = field(default=())

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.basis)
        if any(len(r) != self.ambient.rank for r in rows):
            raise DimensionMismatch("basis vectors must have the ambient rank")
        object.__setattr__(self, "basis", rows)

    @property
    def rank(self):
        return len(self.basis)


@dataclass(frozen=True)
class GlueData:
    """A base lattice plus rational dual vectors (read modulo the base)."""

    base: IntegerLattice
    generators: tuple = field(default=())

    def __post_init__(self):
        gens = tuple(tuple(Fraction(x) for x in g) for g in self.generators)
        if any(len(g) != self.base.rank for g in gens):
            raise DimensionMismatch("glue vectors must have the base rank")
        object.__setattr__(self, "generators", gens)


def overlattice_basis(glue):
    """Rational basis (rows, base coordinates) of base + span(generators)."""
    base = glue.base
    g = base.matrix()
    n = base.rank
    if not base.is_even:
        raise OddLattice("gluing needs an even base lattice")
    gens = [list(v) for v in glue.generators]
    for v in gens:
        gv = intmat.matvec(g, v)
        if any(Fraction(x).denominator != 1 for x in gv):
            shown = ", ".join(str(x) for x in v)
            raise NotFiniteIndex(f"glue vector [{shown}] is not in the dual lattice")
    for i, v in enumerate(gens):
        nv = intmat.bilinear(g, v, v)
        if Fraction(nv).denominator != 1 or nv % 2:
            raise NotIsotropic(f"glue vector {i} has norm {nv}, not in 2Z")
        for w in gens[i + 1:]:
            if Fraction(intmat.bilinear(g, v, w)).denominator != 1:
                raise NotIsotropic("glue vectors pair nonintegrally")
    den = intmat.common_denominator(x for v in gens for x in v)
    stacked = [[den * int(i == j) for j in range(n)] for i in range(n)]
    stacked += [[int(den * x) for x in v] for v in gens]
    hnf = intmat.hermite_normal_form(stacked)
    return [[Fraction(x, den) for x in row] for row in hnf]


def overlattice(glue):
    """Even overlattice generated by ``glue.base`` and the glue vectors.

    The basis is the Hermite normal form of the denominator-cleared generating
    set, so the output Gram matrix is deterministic.
    """
    basis = overlattice_basis(glue)
    gram = intmat.congruence(basis, glue.base.matrix())
    return validate([[int(x) for x in row] for row in gram])


def complement_basis(sub):
    """Saturated basis (HNF rows, ambient coordinates) of sub^perp."""
    amb = sub.ambient
    if amb.det == 0:
        raise Degenerate("orthogonal complement in a degenerate ambient")
    if not sub.basis:
        return intmat.identity(amb.rank)
    c = intmat.matmul([list(r) for r in sub.basis], amb.matrix())
    return intmat.kernel(c, amb.rank)


def orthogonal_complement(sub):
    """Gram matrix of the (always saturated) orthogonal complement."""
    basis = complement_basis(sub)
    return validate(intmat.congruence(basis, sub.ambient.matrix()))


def saturation(sub):
    return SublatticeBasis(sub.ambient, intmat.saturation([list(r) for r in sub.basis], sub.ambient.rank))


def is_primitive(sub):
    """True iff Z^n / span(basis) is torsion free."""
    if not sub.basis:
        return True
    facs = intmat.invariant_factors([list(r) for r in sub.basis])
    return len(facs) == sub.rank and all(f == 1 for f in facs)


def anti_isometric_glue(first, second, p=2):
    """Glue first + second along the graph of an anti-isometry of their p-parts.

    Returns ``(GlueData, phi)`` for the direct sum ``first + second``; raises
    if no anti-isometry exists.
    """
    q1 = p_primary_part(discriminant_form(first), p)
    q2 = p_primary_part(discriminant_form(second), p)
    phi = find_anti_isometry(q1, q2)
    if phi is None:
        raise InvalidArgument("no anti-isometry between the p-primary discriminant forms")
    base = direct_sum(first, second)
    gens = []
    for i in range(q1.rank):
        e = [0] * q1.rank
        e[i] = 1
        gens.append(list(q1.lift(e)) + list(q2.lift(apply_map(phi, q1, e))))
    return GlueData(base, tuple(map(tuple, gens))), phi
