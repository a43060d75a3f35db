"""Streaming model evaluation: windowed metric time series over prediction/label replay."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
