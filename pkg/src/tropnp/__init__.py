"""Exact arithmetic toolkit for tropical Newton-Puiseux polynomials."""

from .core import (AffineFunc, DimensionError, Monomial, NPPoly, ParseError, PolyInY, RationalPL,
                   argmin_monomials, eval_poly, is_tropical_root, parse_poly, parse_poly_in_y,
                   trop_add, trop_mul, trop_pow, trop_prod, trop_sum)
from .curve import (PL1D, build_curve, build_resolution_graph, curve_from_system, dc_decompose,
                    enumerate_resolutions, np_to_pl, pl_to_np, resolve_curve, resolve_curve_rational,
                    verify_curve_resolution)
from .divider import divide, is_divisible
from .geom import (essential_monomials, extract_skeleton, poly_equal, prevariety, reduce_poly,
                   sign_partition)
from .lp import lp_solve, relative_interior_feasible
from .resolver import (brute_force_resolutions, candidate_coeffs, combine_min, lemma_partition_check,
                       minimal_resolution_monic, minimal_resolution_rational, verify_rational_resolution,
                       verify_resolution)
from .sat import (CNF3, assignment_to_resolution, brute_force_system, extract_assignment, parse_dimacs,
                  reduce_3sat, verify_system_resolution)

__version__ = "0.1.0"
