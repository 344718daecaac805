"""Exact integral lattices, discriminant forms and K3-embedding decisions."""

from .catalog import lattice, named, parse
from .definite import half_rescale_check, isometric_small, short_vectors
from .discforms import (FiniteQuadraticForm, discriminant_form, find_anti_isometry, milgram_signature,
                        orthogonal_group_order, p_primary_part, subgroup_perp_quotient,
                        two_elementary_invariants)
from .embeddings import GlueData, SublatticeBasis, is_primitive, orthogonal_complement, overlattice
from .lattice import (FiniteAbelianGroup, IntegerLattice, Signature, determinant, direct_sum,
                      discriminant_group, rescale, signature, smith_normal_form, validate)
from .nikulin import (ClassificationReport, TwoElemInvariants, classify, enumerate_2elem_candidates,
                      hassett_rho1, k3_embedding_status, kappa, two_elementary_exists)

__version__ = "0.1.0"

__all__ = [
    "lattice", "named", "parse",
    "half_rescale_check", "isometric_small", "short_vectors",
    "FiniteQuadraticForm", "discriminant_form", "find_anti_isometry", "milgram_signature",
    "orthogonal_group_order", "p_primary_part", "subgroup_perp_quotient", "two_elementary_invariants",
    "GlueData", "SublatticeBasis", "is_primitive", "orthogonal_complement", "overlattice",
    "FiniteAbelianGroup", "IntegerLattice", "Signature", "determinant", "direct_sum",
    "discriminant_group", "rescale", "signature", "smith_normal_form", "validate",
    "ClassificationReport", "TwoElemInvariants", "classify", "enumerate_2elem_candidates",
    "hassett_rho1", "k3_embedding_status", "kappa", "two_elementary_exists",
]
