"""Render response-curve CSV files into publication-style figures.

The renderer never recomputes physics: every plotted ordinate is taken
verbatim from the CSV columns, and after drawing, the figure's line data is
read back and compared bit-for-bit against the parsed inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)

EXPECTED_HEADER = ["t", "linear", "exact", "asymptote"]

# one style per curve role, fixed for visual comparability across figures
CURVE_STYLES: dict[str, dict] = {
    "steady_state": {"color": "#1f77b4", "linestyle": "-", "linewidth": 1.8, "label": "steady-state response"},
    "equilibrium": {"color": "#2ca02c", "linestyle": "--", "linewidth": 1.6, "label": "equilibrium response"},
    "unitary": {"color": "#9467bd", "linestyle": "-", "linewidth": 0.9, "label": "unitary response"},
    "perturbed_value": {"color": "#d62728", "linestyle": ":", "linewidth": 1.8, "label": "perturbed value"},
    "equilibrium_perturbed_value": {"color": "#7f7f7f", "linestyle": ":", "linewidth": 1.6, "label": "perturbed value (uncoupled)"},
    "infinite_coupling": {"color": "#ff7f0e", "linestyle": "-.", "linewidth": 1.4, "label": "infinite coupling response"},
}

FIGURE_PANELS: dict[str, tuple[str, ...]] = {
    "fig2": ("",),
    "fig3": ("",),
    "fig4": ("",),
    "fig5": ("a", "b"),
    "fig7": ("",),
}


class PlotDataError(Exception):
    """Missing or ill-formed input CSV; carries the offending path."""

    def __init__(self, path: Path, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = path


@dataclass(frozen=True)
class CurveData:
    role: str
    path: Path
    t: np.ndarray
    linear: np.ndarray
    exact: np.ndarray
    asymptote: np.ndarray


@dataclass(frozen=True)
class PlotSpec:
    """What to render: per-panel curve files plus output destination."""

    figure_id: str
    panels: tuple[tuple[str, tuple[CurveData, ...]], ...]
    out_path: Path
    fmt: str = "png"
    xlabel: str = r"$\omega_1 t$"
    ylabel: str = "dimensionless energy response"


@dataclass
class RenderResult:
    """Written image plus the line data read back from the figure."""

    path: Path
    readback: dict[str, tuple[np.ndarray, np.ndarray]] = field(default_factory=dict)


def load_curve(path: Path, role: str) -> CurveData:
    """Parse one curve CSV, validating the standard header and row shape."""
    if not path.exists():
        raise PlotDataError(path, "file not found")
    with open(path, newline="\n") as fh:
        header = fh.readline().strip().split(",")
        if header != EXPECTED_HEADER:
            raise PlotDataError(path, f"unexpected header {header!r}")
        rows = []
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            parts = line.strip().split(",")
            if len(parts) != 4:
                raise PlotDataError(path, f"line {lineno}: expected 4 columns, got {len(parts)}")
            try:
                rows.append([float(v) for v in parts])
            except ValueError:
                raise PlotDataError(path, f"line {lineno}: non-numeric value") from None
    if not rows:
        raise PlotDataError(path, "no data rows")
    data = np.array(rows)
    return CurveData(
        role=role, path=path, t=data[:, 0], linear=data[:, 1], exact=data[:, 2], asymptote=data[:, 3]
    )


def discover(figure_id: str, indir: str | Path) -> list[tuple[str, tuple[CurveData, ...]]]:
    """Collect the curve CSVs belonging to a figure id, grouped by panel."""
    if figure_id not in FIGURE_PANELS:
        raise PlotDataError(Path(indir) / figure_id, f"unknown figure id {figure_id!r}")
    indir = Path(indir)
    panels = []
    for panel in FIGURE_PANELS[figure_id]:
        prefix = f"{figure_id}{panel}_"
        curves = []
        for role in CURVE_STYLES:
            candidate = indir / f"{prefix}{role}.csv"
            if candidate.exists():
                curves.append(load_curve(candidate, role))
        if not curves:
            raise PlotDataError(indir / f"{prefix}*.csv", "no curve files found")
        panels.append((panel, tuple(curves)))
    return panels


def build_spec(figure_id: str, indir: str | Path, outdir: str | Path, fmt: str = "png") -> PlotSpec:
    if fmt not in ("png", "svg"):
        raise PlotDataError(Path(str(fmt)), f"unsupported format {fmt!r}")
    panels = discover(figure_id, indir)
    out_path = Path(outdir) / f"{figure_id}.{fmt}"
    return PlotSpec(figure_id=figure_id, panels=tuple(panels), out_path=out_path, fmt=fmt)


def render(spec: PlotSpec) -> RenderResult:
    """Draw the figure, verify the plotted arrays against the inputs, and save.

    Every curve is drawn from its CSV's `linear` column; `perturbed value`
    roles are horizontal guides drawn from their (constant) asymptote column.
    A bit-identical read-back check of all line data guards against any
    accidental transformation of the ordinates.
    """
    n_panels = len(spec.panels)
    with plt.rc_context({"svg.hashsalt": "plotfig", "figure.dpi": 120}):
        fig, axes = plt.subplots(
            n_panels, 1, figsize=(6.4, 3.6 * n_panels), squeeze=False, constrained_layout=True
        )
        result = RenderResult(path=spec.out_path)
        for (panel, curves), ax in zip(spec.panels, axes[:, 0]):
            for curve in curves:
                style = CURVE_STYLES[curve.role]
                y = curve.asymptote if curve.role.endswith("perturbed_value") else curve.linear
                (line,) = ax.plot(curve.t, y, **style)
                key = f"{spec.figure_id}{panel}_{curve.role}"
                result.readback[key] = (np.asarray(line.get_xdata()), np.asarray(line.get_ydata()))
                if not (
                    np.array_equal(result.readback[key][0], curve.t)
                    and np.array_equal(result.readback[key][1], y)
                ):
                    plt.close(fig)
                    raise PlotDataError(curve.path, "plotted data does not match the CSV ordinates")
            title = spec.figure_id + (f" ({panel})" if panel else "")
            ax.set_title(title)
            ax.set_xlabel(spec.xlabel)
            ax.set_ylabel(spec.ylabel)
            ax.legend(loc="best", fontsize=8)
        spec.out_path.parent.mkdir(parents=True, exist_ok=True)
        metadata = {"Date": None} if spec.fmt == "svg" else {"Software": "plotfig"}
        fig.savefig(spec.out_path, format=spec.fmt, metadata=metadata)
        plt.close(fig)
    return result
