"""Synchronization-error analysis and simulation for physical-layer network coding."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
