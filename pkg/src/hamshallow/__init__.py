"""Reduced-degree polynomial approximations of Hamiltonian functions.

Chebyshev and Laurent approximants with certified error bounds, QSP/GQSP
phase synthesis, and dense desk-scale verification of the resulting
circuit blocks.
"""

from .chebapprox import ApproxReport, erf_approx, exp_approx, gauss_approx, monomial_approx
from .composer import Atom, DegreeTuple, LinearComb, MixedApprox, Product, approximate, degree_of, spec_from_dict
from .errors import (
    DomainError,
    HamshallowError,
    ParameterError,
    PreconditionError,
    SizeError,
    SolverError,
    UsageError,
    ValidationError,
)
from .hamiltonian import PauliHamiltonian, block_encoding, parse_hamiltonian
from .laurentapprox import TrigVariant, erf_trig_approx, exp_trig_approx, gauss_trig_approx, trig_power_approx
from .polyops import ChebyshevSeries, LaurentPoly, cheb_eval, laurent_eval, poly_from_dict, sup_norm_error
from .qsp import PhaseProgram, complementary_poly, find_gqsp_angles, find_qsp_phases
from .resources import DepthReport, depth_report
from .simulator import VerificationReport, exact_function_matrix, verify, verify_gqsp, verify_mixed, verify_qsp
from .trotter import suzuki_matrix, trotter_steps

__version__ = "0.1.0"
