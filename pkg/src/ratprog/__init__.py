"""Three-term progressions x, x + F(y), x + G(y) over F_p with rational F and G."""

from .errors import (
    BadPrime,
    BoundViolation,
    DependentInput,
    DivisionByZeroFunction,
    ExpressionSyntaxError,
    IdentityFailure,
    InsufficientData,
    NonpositiveEpsilon,
    NotPrime,
    PrimeMismatch,
    PrimeTooLarge,
    RatProgError,
    RoundingFailure,
    UnsupportedExponent,
    ZeroInverse,
)
from .fp_arith import FieldElement, Prime, additive_character, batch_inverse, mod_inverse
from .goodprime import is_good_prime
from .progression import (
    KernelTable,
    PetReport,
    count_progressions_in_set,
    dual_function,
    kernel_table,
    lambda_counting,
    twisted_two_term,
    verify_pet_inequality,
)
from .ratfield import RationalFunction, build_stratification_bundle, parse_rational_function
from .spectral import GridFunction, LevelSplit, Spectrum, dft, inverse_dft, level_set_split, norm

__version__ = "0.1.0"
