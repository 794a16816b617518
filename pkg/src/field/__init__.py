"""
Finite-field layer: F_{p^{2m}} with its subfield F_q and unit circle U_{q+1}.
"""

from .gf_core import FieldCtx, FieldElem, build_field
from .polynomials import first_irreducible, is_irreducible, lexicographic_irreducibles

__all__ = ["FieldCtx", "FieldElem", "build_field", "first_irreducible", "is_irreducible", "lexicographic_irreducibles"]
