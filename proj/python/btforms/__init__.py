"""Bakamjian-Thomas two-body mass operators in the three forms of dynamics."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
