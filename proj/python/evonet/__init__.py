"""Evolutionary random-graph model of a block-gossip overlay network.

Thin Python layer over the C++ core: topology generators, closed-form
degree/diameter analytics, hop-synchronous block propagation, forking
probability bounds with Monte Carlo validation, difficulty calibration,
network-size equilibrium and arrival-log ingest.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
