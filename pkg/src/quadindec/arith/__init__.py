"""Exact arithmetic kernel."""

from .interval import RatInterval, decide_sign, interval_of, sqrt_interval
from .modsqrt import sqrt_mod_all, sqrt_mod_min, sqrt_mod_prime_power, tonelli_shanks
from .ntheory import factorize, is_prime, is_square, is_squarefree
from .poly import IntPoly
from .quadratic import QuadInt, QuadNum, QuadSurd, is_totally_positive, norm, surd_sign, surd_step

__all__ = [
    "IntPoly",
    "QuadInt",
    "QuadNum",
    "QuadSurd",
    "RatInterval",
    "decide_sign",
    "factorize",
    "interval_of",
    "is_prime",
    "is_square",
    "is_squarefree",
    "is_totally_positive",
    "norm",
    "sqrt_interval",
    "sqrt_mod_all",
    "sqrt_mod_min",
    "sqrt_mod_prime_power",
    "surd_sign",
    "surd_step",
    "tonelli_shanks",
]
