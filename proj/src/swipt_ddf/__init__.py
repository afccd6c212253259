"""SWIPT-enabled differential decode-and-forward relaying.

Thin Python layer over the C++ core: Monte-Carlo SER, closed-form and
numeric SER averages, ratio optimization and detector operation counts.
"""

from ._core import (
    NoInteriorOptimum,
    avg_ser_closed,
    avg_ser_numeric,
    bessel_k1,
    count_operations,
    exp_integral_e1,
    optimal_ratio,
    q_function,
    ser_derivative_ps,
    simulate_ser,
)

__all__ = [
    "NoInteriorOptimum",
    "avg_ser_closed",
    "avg_ser_numeric",
    "bessel_k1",
    "count_operations",
    "exp_integral_e1",
    "optimal_ratio",
    "q_function",
    "ser_derivative_ps",
    "simulate_ser",
]

__version__ = "0.1.0"
