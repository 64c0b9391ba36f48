"""Finite universal algebra: congruence lattices, duplications, catalog shapes."""

from ._conlat import *  # noqa: F401,F403
from ._conlat import __doc__  # noqa: F401

__version__ = "0.1.0"
