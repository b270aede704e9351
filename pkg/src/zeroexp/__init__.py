"""A zero-entropy, weakly mixing process on three symbols with exponential return times.

Exact cylinder measures, occurrence arithmetic on the ruler skeleton, and
empirical return-time statistics checked against explicit error bounds.
"""

from .construct import enumerate_family, negate, pi_project, sample_point, shift_to_nonzero
from .dyadic import DyadicRational
from .measure import cylinder_measure, mu_cylinder, mu_zero_run, nu_cylinder, occurrence_progression, theta
from .params import DepthError, ParameterError, ProcessParams
from .ruler import omega, p, skeleton_prefix, z, z0

__version__ = "0.1.0"
