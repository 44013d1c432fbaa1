"""Signs of permutations of quadratic residues modulo an odd prime."""

from .core import PrimeCtx, centered, legendre, smallest_primitive_root, sorted_qrs
from .invariants import quad_invariants
from .perm import sigma_sign

__all__ = ["PrimeCtx", "centered", "legendre", "quad_invariants", "sigma_sign", "smallest_primitive_root", "sorted_qrs"]
