"""Exact labeled-multigraph engine for Hamiltonian circle actions on 4-dimensional orbifolds."""

from .algorithms import (FamilyTag, NoMatch, NotMinimal, VerifyReport, classify_minimal,
                         desingularize, minimalize, verify_all)
from .arith import HJExpansion, Rational, gcd, hj_evaluate, hj_expand, mod_inverse
from .catalog import (catalog_samples, gen_cp1cp1_quot, gen_ruled, gen_tsw, gen_wpp,
                      gen_wpp_surface)
from .errors import *  # noqa: F401,F403
from .graph import (Edge, FatVertex, IsolatedVertex, Multigraph, OrbiWeightData, SingularType,
                    ValidationReport, canonical_form, derive_weights, is_isomorphic, validate)
from .localization import (SurfaceNormalData, check_integral_c1, check_integral_omega,
                           check_integral_one, residuals, solve_surface_degrees)
from .rewrite import (BlowUpSpec, RewriteRecord, Unbounded, blow_down, blow_up, classify_case,
                      max_admissible)
from .seifert import (SeifertInvariant, blow_down_order, degree_Opq, degree_quotient,
                      euler_class, fat_vertex_seifert, normalized_seifert, seifert_of_Opq,
                      sphere_data, sphere_degree)

__version__ = "0.1.0"
