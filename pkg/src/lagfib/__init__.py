"""Exact classification of rank-2 lattices on surfaces and of the Lagrangian
fibrations over them."""

from .errors import LagfibError, ParseError, PreconditionError
from .exact import rat, snf, rational_snf, rational_gcd
from .affine import IntAffine2, Affine2, affine, compose, conjugate, klein_word, has_fixed_point
from .lattice import LatticeNF, normalize, is_isomorphic, klein_normal_form, is_standard_pair
from .cohomology import h2, coboundary_image, twisting_moduli, twisting_canonical, shift_integral
from .fibration import (build_torus_fibration, build_torus_translation_fibration,
                        build_klein_fibration, build_t3_example, verify, classify,
                        enumerate_fibrations)

__version__ = "0.1.0"

__all__ = [
    "LagfibError",
    "ParseError",
    "PreconditionError",
    "rat",
    "snf",
    "rational_snf",
    "rational_gcd",
    "IntAffine2",
    "Affine2",
    "affine",
    "compose",
    "conjugate",
    "klein_word",
    "has_fixed_point",
    "LatticeNF",
    "normalize",
    "is_isomorphic",
    "klein_normal_form",
    "is_standard_pair",
    "h2",
    "coboundary_image",
    "twisting_moduli",
    "twisting_canonical",
    "shift_integral",
    "build_torus_fibration",
    "build_torus_translation_fibration",
    "build_klein_fibration",
    "build_t3_example",
    "verify",
    "classify",
    "enumerate_fibrations",
]
