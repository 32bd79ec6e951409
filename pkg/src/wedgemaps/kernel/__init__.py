from .arith import divisors, integer_nth_root, mobius, mobius_transform, totient
from .matrix import Matrix, char_poly, determinant, exterior_power, power_sums, trace_power
from .poly import (
    NotAPerfectPower,
    Poly,
    RationalFunction,
    cyclotomic,
    cyclotomic_factorization,
    format_poly,
    poly_gcd,
    ratfunc_normalize,
    ratfunc_nth_root,
)
from .scalar import Scalar, exact
from .series import PowerSeries, series_exp_log, series_nth_root

__all__ = [
    "Matrix", "Poly", "PowerSeries", "RationalFunction", "NotAPerfectPower", "Scalar",
    "char_poly", "cyclotomic", "cyclotomic_factorization", "determinant", "divisors", "exact", "exterior_power",
    "format_poly", "integer_nth_root", "mobius", "mobius_transform", "poly_gcd",
    "power_sums", "ratfunc_normalize", "ratfunc_nth_root", "series_exp_log",
    "series_nth_root", "totient", "trace_power",
]
