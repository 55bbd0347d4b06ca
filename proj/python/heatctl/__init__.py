"""Point-flux control of the planar heat equation for radial targets."""

from ._heatctl import *  # noqa: F401,F403
from ._heatctl import Control, RadialProfile

__version__ = "0.1.0"


def exp_mixture(*terms):
    """exp_mixture((c, rate), ...) -> sum c e^{-rate r}."""
    return RadialProfile.exp_mixture(list(terms))
