"""Numerical checks for the two-dimensional noncommutative Swanson model."""

from ._swanson2d import *  # noqa: F401,F403
from ._swanson2d import __version__  # noqa: F401
