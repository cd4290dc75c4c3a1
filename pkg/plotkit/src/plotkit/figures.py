"""Band and trace figures over the engine's CSV outputs.

Each renderer returns the figure together with the exact arrays it
plotted, so tests and callers can assert on the data model rather than on
rendered pixels.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .schemas import read_bands, read_observed, read_trace


@dataclass(frozen=True)
class FigureSpec:
    """What to draw and where to write it."""

    bands_path: str | None = None
    data_path: str | None = None
    trace_path: str | None = None
    output_image_path: str | None = None
    title: str | None = None


@dataclass
class RenderedFigure:
    """A figure plus the arrays each artist draws."""

    figure: object
    data: dict = field(default_factory=dict)

    def save(self, path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        self.figure.savefig(path, dpi=150, bbox_inches="tight")
        plt.close(self.figure)
        return path


def plot_predictive(spec: FigureSpec) -> RenderedFigure:
    """Posterior-predictive ribbon (2.5-97.5%), median line, observed overlay.

    The observed data, when given, is drawn as a solid black line over the
    shaded band. A zero-width band collapses onto the median line.
    """
    if not spec.bands_path:
        raise ValueError("FigureSpec.bands_path is required for a predictive figure")
    bands = read_bands(spec.bands_path)
    observed = read_observed(spec.data_path) if spec.data_path else None

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ribbon = ax.fill_between(bands["day"], bands["q025"], bands["q975"],
                             alpha=0.35, color="tab:blue",
                             label="95% predictive band")
    median_line, = ax.plot(bands["day"], bands["q50"], color="tab:blue",
                           lw=1.8, label="predictive median")
    data = {
        "day": bands["day"],
        "q025": bands["q025"],
        "q50": bands["q50"],
        "q975": bands["q975"],
    }
    if observed is not None:
        obs_line, = ax.plot(observed["day"], observed["volume_mm3"],
                            color="black", lw=1.8, label="observed")
        data["observed_day"] = observed["day"]
        data["observed_volume"] = observed["volume_mm3"]
        data["observed_line"] = obs_line
    ax.set_xlabel("day")
    ax.set_ylabel("tumour volume (mm$^3$)")
    if spec.title:
        ax.set_title(spec.title)
    ax.legend(loc="upper left", frameon=False)
    data["ribbon"] = ribbon
    data["median_line"] = median_line
    rendered = RenderedFigure(fig, data)
    if spec.output_image_path:
        rendered.save(spec.output_image_path)
    return rendered


def plot_trace(spec: FigureSpec) -> RenderedFigure:
    """Tolerance schedule (log scale) and MCMC acceptance rate by iteration."""
    if not spec.trace_path:
        raise ValueError("FigureSpec.trace_path is required for a trace figure")
    trace = read_trace(spec.trace_path)

    fig, (ax_eps, ax_acc) = plt.subplots(1, 2, figsize=(10, 4))
    style = {"marker": "o", "ms": 4} if len(trace["iteration"]) == 1 else {"marker": "o", "ms": 3}
    eps_line, = ax_eps.plot(trace["iteration"], trace["epsilon"],
                            color="tab:red", **style)
    ax_eps.set_yscale("log")
    ax_eps.set_xlabel("iteration")
    ax_eps.set_ylabel("tolerance")
    acc_line, = ax_acc.plot(trace["iteration"], trace["mcmc_acceptance_rate"],
                            color="tab:green", **style)
    ax_acc.set_xlabel("iteration")
    ax_acc.set_ylabel("MCMC acceptance rate")
    ax_acc.set_ylim(0, 1.05)
    if spec.title:
        fig.suptitle(spec.title)
    rendered = RenderedFigure(fig, {
        "iteration": trace["iteration"],
        "epsilon": trace["epsilon"],
        "acceptance_rate": trace["mcmc_acceptance_rate"],
        "epsilon_line": eps_line,
        "acceptance_line": acc_line,
    })
    if spec.output_image_path:
        rendered.save(spec.output_image_path)
    return rendered
