"""Standalone figure scripts over the simulator's CSV outputs.

These scripts never recompute simulation quantities: they aggregate
(mean over seeds) and render, nothing else.
"""

__version__ = "0.1.0"
