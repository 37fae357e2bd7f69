"""Frenet apparatus, involutes and evolutes of curves in Galilean 3-space."""

from ._galcurve import *  # noqa: F401,F403
from ._galcurve import GalcurveError, __doc__  # noqa: F401
