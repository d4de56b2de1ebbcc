"""Cubic and quartic Dirichlet characters, central L-values and moment experiments."""

from ._cqlab import *  # noqa: F401,F403
from ._cqlab import __doc__  # noqa: F401

FAMILIES = ("cubic", "quartic")
