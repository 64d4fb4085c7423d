"""Figure renderers for esdlab CSV outputs.  CSV in, images out; no physics."""

from plotkit.csvdata import SchemaError, Table, read_table
from plotkit.figures import FIGURE_IDS, FigureSpec, RenderResult, render

__version__ = "0.1.0"
