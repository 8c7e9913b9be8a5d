"""Exact graded commutative algebra for the theta pairing and torsion in
tensor products over one-dimensional rings."""

__version__ = "0.1.0"

from .errors import AlgebraError
from .gb import Infinite
from .homology import betti, detect_periodicity, ext_ring, resolve, tor, tor_lengths
from .kernel import QQ, PolyMatrix, PolyRing, PrimeField
from .mfact import MatrixFactorization, mf_cokernel, mf_from_resolution, verify_mf
from .modops import (PresentedModule, class_in_reduced_grothendieck, cyclic_module,
                     direct_sum, dual, free_module, ideal_module, is_free,
                     is_torsion_free, length, minimize, present, pushforward,
                     rank_at_prime, syzygy_module, tensor, torsion_submodule,
                     tr_omega_tr_omega, transpose)
from .ring import QuotientRing, find_nonzerodivisor, is_nonzerodivisor, make_ring
from .theta import hw_verdict, theorem32_check, theta, theta_bilinearity_check
