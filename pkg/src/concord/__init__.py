"""concord: exact obstruction calculus for knot concordance filtrations.

The package is organized around the pipeline a concordance computation walks:

``laurent``
    exact Laurent polynomial arithmetic over Q with a unit-canonical form
``coprimality``
    root classification and coprimality under every power substitution
``seifert``
    Seifert matrices, Alexander polynomials, certified signature profiles
``modules``
    cyclic Alexander modules, Blanchfield pairings, localization verdicts
``operators``
    doubling operators, robustness certificates, composition bookkeeping
``obstruction``
    vanishing/survival verdicts, family certificates, injectivity reports
``cli``
    the ``concord`` command line tool
"""

from .errors import (
    InconclusiveError,
    JumpPointError,
    PolyParseError,
    PreconditionError,
)
from .laurent import (
    Factorization,
    LaurentPoly,
    Rational,
    augmentation,
    eq_up_to_unit,
    factor,
    gcd,
    normalize,
    parse_poly,
    reciprocal,
    resultant,
    serialize,
    substitute_power,
)

__version__ = "0.1.0"

__all__ = [
    "Factorization",
    "InconclusiveError",
    "JumpPointError",
    "LaurentPoly",
    "PolyParseError",
    "PreconditionError",
    "Rational",
    "augmentation",
    "eq_up_to_unit",
    "factor",
    "gcd",
    "normalize",
    "parse_poly",
    "reciprocal",
    "resultant",
    "serialize",
    "substitute_power",
    "__version__",
]
