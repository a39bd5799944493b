"""Ramanujan summation and the polynomial expansion of zeta in the critical strip."""

from .basis import BasisFamily, RationalPoly, build_family, eval_P, eval_P_table
from .quadrature import QuadratureResult, QuadratureSpec
from .rsum import AnalyticFunction, RamanujanSum, phi_interpolant, preset, ramanujan_sum, ramanujan_zeta
from .specfun import ZetaOracleConfig, digamma, euler_gamma, zeta_reference
from .zexpand import CoefficientRecord, ExpansionResult, coeff_x, coeff_y, coeff_z, zeta_expansion

__version__ = "0.1.0"

__all__ = [
    "AnalyticFunction",
    "BasisFamily",
    "CoefficientRecord",
    "ExpansionResult",
    "QuadratureResult",
    "QuadratureSpec",
    "RamanujanSum",
    "RationalPoly",
    "ZetaOracleConfig",
    "build_family",
    "coeff_x",
    "coeff_y",
    "coeff_z",
    "digamma",
    "euler_gamma",
    "eval_P",
    "eval_P_table",
    "phi_interpolant",
    "preset",
    "ramanujan_sum",
    "ramanujan_zeta",
    "zeta_expansion",
    "zeta_reference",
]
