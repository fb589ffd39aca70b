"""Relative Steiner polynomials of convex bodies.

Build the polynomials from quermassintegral data, locate their complex
roots with certified error radii, certify stability questions exactly,
and check the conjectured root ordering against the relative inradius
and circumradius.
"""

from .quermass import (AF_REL_TOL, EXACT_REL_TOL, ROOT_REL_TOL,
                       QuermassVector, RadiusPair, SteinerPolynomial,
                       build_polynomial, quermass_of, shift_by_gauge,
                       swap_bodies, swap_radii, vieta_sums)
from .rootfind import (Annulus, Root, RootFindingError, RootSet,
                       annulus_bounds, find_roots, re_sum_bounds)
from .hurwitz import (BOUNDARY, STABLE, UNSTABLE, RationalPolynomial,
                      is_hurwitz, min_unstable_dimension, truncated_binomial)
from .bodies import (BodySpec, BodySpecError, LensGeometry, RealizedBody,
                     cap_body_roots_closed_form, crosspolytope_quermass,
                     external_angle, make_ball, make_cap_body, make_lens,
                     make_planar3d, make_segment, make_two_tangential,
                     parse_body_spec, realize_body, truncated_binomial_body,
                     truncated_binomial_quermass, unit_ball_volume,
                     vertex_angle_sum)
from .checker import (FAILS, HOLDS, MARGIN_TOL, NOT_APPLICABLE,
                      ClauseVerdict, ConjectureReport,
                      cap_circumradius_inequality, check_conjecture,
                      lens_violation_test)
from .quadrature import (IntegrandSpec, QuadratureError, erf, erf_array,
                         integrate_gaussian_erf, solve_scalar)
from .reproduce import SCENARIOS, ScenarioResult, run_scenario

__version__ = "0.1.0"
