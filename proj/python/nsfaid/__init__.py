"""Finite-alphabet iterative LDPC decoding toolkit.

Thin facade over the compiled module: fixed-point decoding kernels,
exact density evolution, framing-function search, Monte-Carlo BER
simulation and layered-schedule analysis.
"""

from ._core import *  # noqa: F401,F403

__version__ = "0.1.0"
