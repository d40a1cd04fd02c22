"""Exact and rigorously enclosed evaluation of Siegel masses of standard
lattices over totally real fields, automorphism-order bounds, Euler-transform
machinery for indecomposable-lattice counting, and the degree-2 growth
condition scan."""

from .arith import (ExactFactored, bernoulli, constant_A, gamma_half_product,
                    gen_bernoulli, kellner_C, l_value_exact,
                    odd_prime_sum_constant, prime_sum_constant, zeta_enclosure,
                    zeta_even_exact)
from .characters import QuadraticCharacter, character, kronecker
from .config import RunConfig
from .enclosure import RealEnclosure
from .fields import (DyadicPrime, FieldDescriptor, RealQuadraticField,
                     make_descriptor, make_quadratic, rational_field,
                     squarefree_range)
from .genera import G, genera_bound, norm_group_count, partition_max_check, unit_square_classes
from .groupbounds import (AutBoundCoeff, SchurData, coeff_A_K,
                          collins_friedland_bound, schur_M)
from .mass import (DyadicPsi, MassBreakdown, korner_mass, log_mass_expansion,
                   mass_asymptotic_CK, mass_lower_In, mass_upper_In,
                   mass_upper_unimodular, psi_dyadic, sigma_exact, xi_factor)
from .transforms import (criterion_lower_bound, euler_transform,
                         inverse_euler_transform, max_term_lower_bound,
                         rank_bounds_AB)
from .wright import WrightVerdict, wright_condition, wright_scan
from .effective import (M_n, class_and_U_report, disc_bound_n2, finite_bounds,
                        mass2_lower, mass_bounds_to_field_bounds, odlyzko_floor,
                        pfeuffer_general_lower, shortgap_lower, stark_louboutin)

__version__ = "0.1.0"
