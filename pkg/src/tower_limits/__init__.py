"""Dynamics of integer polynomials on residue rings and profinite limits of their towers."""

from .config import Config, DEFAULT
from .errors import BudgetExceeded, Inconclusive, NotTowerStable, PolynomialSyntaxError, PreperiodicStart
from .polyparse import Polynomial, derivative, eval_mod, maps_naturals_into_naturals, parse_poly, render
from .arith import alpha, factorize, lcm_all
from .dynamics import GraphSummary, OrbitShape, analyze_map, iterate_reduced, orbit_shape
from .periods import (
    PeriodCertificate,
    closed_form_linear_iterate,
    lambda_chain,
    lambda_exact,
    lambda_multiple,
    lift_prime_power,
    linear_cycle_bounds,
    multiplier,
)
from .stability import (
    StabilityReport,
    ctow_partial,
    is_f_valid_base,
    is_p_cycle,
    is_valid_base,
    tower_stability_report,
)
from .limits import (
    DigitStream,
    PreperiodicWitness,
    TowerTrace,
    detect_preperiodic,
    digit_stream,
    fixed_point_check,
    profinite_limit_mod,
    tower_sequence_mod,
    verify_selfref,
)
