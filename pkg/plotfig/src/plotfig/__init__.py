"""Publication-style rendering of nessprobe response-curve CSV files."""

from .render import (
    CURVE_STYLES,
    CurveData,
    PlotDataError,
    PlotSpec,
    RenderResult,
    build_spec,
    discover,
    load_curve,
    render,
)

__version__ = "0.1.0"

__all__ = [
    "CURVE_STYLES",
    "CurveData",
    "PlotDataError",
    "PlotSpec",
    "RenderResult",
    "build_spec",
    "discover",
    "load_curve",
    "render",
]
