"""Exact characters of window-constrained sequence spaces for affine type A.

The package verifies, coefficient by coefficient at finite depth, that the
brute-force generating function of admissible sequences, a signed sum over
good words, and the alternating Weyl-group sum over the product denominator
all agree where they should, and audits the underlying labelling of group
elements by translated good words.
"""

from .admissible import (
    ConfigurationError,
    DominantWeightSpec,
    char_bruteforce,
    check_difference_equation,
    dominant_specs,
    enumerate_semiinfinite,
    enumerate_x,
)
from .character import (
    CharacterResult,
    ConvergenceError,
    bosonic,
    limit_char,
    specialize_fjlmm,
    stabilization_check,
    translated_char,
    weyl_denominator,
    weyl_kac,
)
from .monomials import (
    GoodMonomial,
    InjectivityError,
    bijection_audit,
    enumerate_good,
    f_of,
    h_of,
    ratio_check,
    weyl_of,
)
from .series import FactoredSeries, SeriesError, TruncatedSeries, geom_inverse, pochhammer, shift
from .weyl import (
    Weight,
    WeylElement,
    conjugate,
    enumerate_weyl,
    pair,
    r_chain,
    reflection,
    special_s,
)

__all__ = [
    "CharacterResult",
    "ConfigurationError",
    "ConvergenceError",
    "DominantWeightSpec",
    "FactoredSeries",
    "GoodMonomial",
    "InjectivityError",
    "SeriesError",
    "TruncatedSeries",
    "Weight",
    "WeylElement",
    "bijection_audit",
    "bosonic",
    "char_bruteforce",
    "check_difference_equation",
    "conjugate",
    "dominant_specs",
    "enumerate_good",
    "enumerate_semiinfinite",
    "enumerate_weyl",
    "enumerate_x",
    "f_of",
    "geom_inverse",
    "h_of",
    "limit_char",
    "pair",
    "pochhammer",
    "r_chain",
    "ratio_check",
    "reflection",
    "shift",
    "special_s",
    "specialize_fjlmm",
    "stabilization_check",
    "translated_char",
    "weyl_denominator",
    "weyl_kac",
    "weyl_of",
]

__version__ = "0.1.0"
