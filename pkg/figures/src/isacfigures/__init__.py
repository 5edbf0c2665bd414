"""Figure rendering for isac-bench CSV outputs."""

__version__ = "0.1.0"

from .families import FAMILIES
from .render import render, render_all
from .specs import EmptyCsvError, MissingColumnError, PlotSpec, Series
