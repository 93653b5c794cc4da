"""Weighted Dirichlet spaces, local Dirichlet integrals and de Branges-Rovnyak spaces H(b).

Numerical toolkit: rational/polynomial carriers, disk quadrature, superharmonic
weights, the pair (b, a) built from a rational symbol, and verification suites.
"""

from .series_core import ComplexPoly, DomainError, RationalFn, cauchy_kernel, h2_inner
from .weights import AtomicMeasure, AtomicWeight, PowerWeight, SampledWeight, SignedAtomicMeasure, omega
from .dirichlet import dirichlet_area, local_dirichlet
from .debranges import PairBA, f_plus, hb_norm_sq, pair_closed_form, pair_from_phi

__all__ = [
    "AtomicMeasure", "AtomicWeight", "ComplexPoly", "DomainError", "PairBA", "PowerWeight",
    "RationalFn", "SampledWeight", "SignedAtomicMeasure", "cauchy_kernel", "dirichlet_area",
    "f_plus", "h2_inner", "hb_norm_sq", "local_dirichlet", "omega", "pair_closed_form", "pair_from_phi",
]
