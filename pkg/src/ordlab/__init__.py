"""ordlab: exact workbench for the multiplicative monoid of ordinals in
Cantor normal form."""

from .ordinal import (
    ONE,
    OMEGA,
    OMEGA_PLUS_ONE,
    OMEGA_SQUARED,
    OMEGA_SQUARED_PLUS_ONE,
    ZERO,
    Order,
    Ordinal,
    add,
    compare,
    degree,
    format_ordinal,
    from_int,
    is_limit,
    is_successor,
    left_sub,
    mul,
    omega_power,
    parse_ordinal,
    power,
    valuation,
)
from .factorization import (
    Factorization,
    LimitPrime,
    NaturalPrime,
    SuccessorPrime,
    classify_prime,
    commutant_powers,
    commute,
    jacobsthal_factorize,
    max_successor_right_factor,
    product_of_factorizations,
    recompose,
    successor_common_root,
)

__version__ = "0.1.0"
