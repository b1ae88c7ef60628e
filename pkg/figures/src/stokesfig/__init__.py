"""Figure pipeline for simulation CSV outputs.

Reads only the documented CSV schemas (trace.csv, positions_<struct>.csv,
pressure_<time>.csv, sigma.csv) and renders the summary figures; it knows
nothing about the simulation internals.
"""

__version__ = "0.1.0"

from .render import FIGURES, FigureSpec, render
