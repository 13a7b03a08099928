"""C-triviality of low-dimensional manifolds from their homology."""

__version__ = "0.1.0"

from ._backend import NAME as BACKEND
from .algebra import FGAbelianGroup, IntMatrix, determinantal_divisors, ext_z2_dim, hom_z2_dim, invariant_factors, snf
from .classify import Basis, Obstruction, ObstructionKind, Outcome, Verdict, classify, classify_complex, explain
from .complexes import (
    Z,
    Z2,
    ChainComplex,
    HomologyProfile,
    Mod2Cochain,
    SimplicialComplex,
    cohomology,
    cohomology_basis_mod2,
    homology,
    mod2_profile_from_z,
    uct_check,
)
from .manifold import ManifoldCertificate, certify, duality_euler_checks, orientation, verify_closed
from .steenrod import CupIContext, cup, cup_i, sq2, sq2_matrix, sq2_rho2_injective

__all__ = [
    "BACKEND",
    "FGAbelianGroup",
    "IntMatrix",
    "snf",
    "invariant_factors",
    "determinantal_divisors",
    "ext_z2_dim",
    "hom_z2_dim",
    "Z",
    "Z2",
    "SimplicialComplex",
    "ChainComplex",
    "HomologyProfile",
    "Mod2Cochain",
    "homology",
    "cohomology",
    "uct_check",
    "mod2_profile_from_z",
    "cohomology_basis_mod2",
    "ManifoldCertificate",
    "certify",
    "verify_closed",
    "orientation",
    "duality_euler_checks",
    "CupIContext",
    "cup",
    "cup_i",
    "sq2",
    "sq2_matrix",
    "sq2_rho2_injective",
    "Outcome",
    "Basis",
    "ObstructionKind",
    "Obstruction",
    "Verdict",
    "classify",
    "classify_complex",
    "explain",
]
