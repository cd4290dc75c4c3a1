from .figures import FigureSpec, RenderedFigure, plot_predictive, plot_trace
from .schemas import SchemaError, read_bands, read_observed, read_trace

__version__ = "0.1.0"

__all__ = [
    "FigureSpec",
    "RenderedFigure",
    "SchemaError",
    "plot_predictive",
    "plot_trace",
    "read_bands",
    "read_observed",
    "read_trace",
]
