"""WDM fiber XPM phase-noise simulation and capacity toolkit."""

from wdmxpm._core import *  # noqa: F401,F403
from wdmxpm._core import __version__  # noqa: F401
