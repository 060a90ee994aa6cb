"""Tropical transfer-matrix bounds for domination numbers of cylinders."""

from ._cyldom import *  # noqa: F401,F403
from ._cyldom import __doc__  # noqa: F401

__version__ = "0.1.0"
