from .parser import parse_rational_function
from .poly import IntPolynomial, poly_gcd, resultant
from .rational import (
    Pole,
    RationalFunction,
    check_linear_independence,
    derivative,
    evaluate_mod_p,
    is_nonconstant,
    normalize,
)
from .separable import SeparableSum, leibniz_determinant
from .stratification import StratificationBundle, build_stratification_bundle, jacobian_minor

__all__ = [
    "IntPolynomial",
    "Pole",
    "RationalFunction",
    "SeparableSum",
    "StratificationBundle",
    "build_stratification_bundle",
    "check_linear_independence",
    "derivative",
    "evaluate_mod_p",
    "is_nonconstant",
    "jacobian_minor",
    "leibniz_determinant",
    "normalize",
    "parse_rational_function",
    "poly_gcd",
    "resultant",
]
