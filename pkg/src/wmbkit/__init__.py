"""Exact verification toolkit for weak multiplier bialgebras and their antipodes."""
from . import algebra, exactlin, wmb, base, antipode, modules  # noqa: F401
from .constructors import catalog, parse_presentation  # noqa: F401
from .wmb import Sampler, classify, verify  # noqa: F401

__version__ = "0.1.0"
