"""Exact analysis of rational solutions of polynomial-exponential equations.

    sum_i P_i(X) * exp(X . alpha_i) = 0

with log-rational exponents alpha = 2*pi*i*rho + sum_m c_m log g_m.
"""
from .errors import HypothesisError, InputError, PolyexpError
from .exact_arith import CycNum, cyc_embed, cyc_normalize, cyclotomic_polynomial, sqrt_rational
from .linalg import (ZLattice, congruence_lattice, hnf, integer_kernel, lattice_index, lattice_intersection,
                     lattice_member, nearest_point, rref_kernel, snf)
from .model import (AlphaMatrix, CycPolyMV, EqSystem, Generator, GroupVal, LogCoord, exp_value,
                    mult_independent, normalize_alpha, poly_eval, radical_member, system, validate_system)
from .roots_of_unity import (DZParams, dz_feasible, dz_order_bound, enumerate_vanishing_sums,
                             system_order_bound)
from .search import (SearchSpec, classify, distance_report, empirical_denominator, evaluate_at,
                     finiteness_monitor, search_box, translate_check, verify_system)
from .specialization import PolyTuple, build_specializations, linear_dimension
from .structure import (complement_and_projections, compute_H, compute_V, corollary_congruence_lattice,
                        split_space)

__version__ = "0.1.0"

__all__ = [
    "AlphaMatrix",
    "CycNum",
    "CycPolyMV",
    "DZParams",
    "EqSystem",
    "Generator",
    "GroupVal",
    "HypothesisError",
    "InputError",
    "LogCoord",
    "PolyTuple",
    "PolyexpError",
    "SearchSpec",
    "ZLattice",
    "build_specializations",
    "classify",
    "complement_and_projections",
    "compute_H",
    "compute_V",
    "congruence_lattice",
    "corollary_congruence_lattice",
    "cyc_embed",
    "cyc_normalize",
    "cyclotomic_polynomial",
    "distance_report",
    "dz_feasible",
    "dz_order_bound",
    "empirical_denominator",
    "enumerate_vanishing_sums",
    "evaluate_at",
    "exp_value",
    "finiteness_monitor",
    "hnf",
    "integer_kernel",
    "lattice_index",
    "lattice_intersection",
    "lattice_member",
    "linear_dimension",
    "mult_independent",
    "nearest_point",
    "normalize_alpha",
    "poly_eval",
    "radical_member",
    "rref_kernel",
    "search_box",
    "snf",
    "split_space",
    "sqrt_rational",
    "system",
    "system_order_bound",
    "translate_check",
    "validate_system",
    "verify_system",
]
