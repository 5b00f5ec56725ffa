"""Exact symbolic computation for the quantum groups U_q(f(K)).

Layers: exact scalars in Q(zeta_2m)(q) (`scalars`), the PBW rewriting engine
(`algebra`), the hyperbolic realization and spectrum classifier
(`hyperbolic`), weight modules (`weightmod`), Whittaker modules
(`whittaker`), and the CLI (`cli`).
"""

from .scalars import (Scalar, ScalarField, ScalarDivisionError, CycloNumber,
                      cyclotomic_polynomial, field_for_m, q_number,
                      scalar_arith, scalar_field)
from .algebra import (Algebra, AlgebraElement, LaurentPoly, casimir,
                      commutator, center_membership, express_in_omega,
                      is_central, multiply, pbw_monomial_count,
                      weight_decompose)
from .hyperbolic import (CharacterPoint, RElement, SpectrumClass,
                         classify_point, classify_report, evaluate,
                         orbit_distinct, theta_apply, theta_xi)
from .weightmod import (WeightModule, are_isomorphic, casimir_scalar,
                        construct_weight_module, enumerate_finite_irreps,
                        is_irreducible_finite, quotient_oracle_action,
                        verify_relations)
from .whittaker import (CenterIdeal, WhittakerCharacter, WhittakerModule,
                        annihilator_slice_check, endomorphism_dimension,
                        is_irreducible_whittaker, make_whittaker_module,
                        pi_projection, reduced_action, submodule_lattice,
                        verify_freeness, whittaker_vectors)

__version__ = "0.1.0"
