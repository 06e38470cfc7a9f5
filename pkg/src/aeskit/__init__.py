"""SU(2) and SU(1,1) algebra eigenstates.

Construction of eigenstates of complex linear combinations of Lie-algebra
generators, their spectrum classification, closed-form normalization
factors and generator moments, intelligent-state families, and the
brute-force oracles that verify all of it.
"""

from . import errors, spectrum, specfun, su2, su11, oracle, verify, cli  # noqa: F401
from .spectrum import SpectrumClass  # noqa: F401

__version__ = "0.1.0"
