"""Optional decay-curve plots; needs the ``plot`` extra."""

from __future__ import annotations

import logging
from pathlib import Path

from spectrumgan.evalsuite import SpectrumReport
from spectrumgan.spectrum import ReferenceSpectrum

logger = logging.getLogger(__name__)


def _pyplot():
    try:
        import matplotlib
    except ImportError as exc:
        raise RuntimeError(
            "Plotting requires `matplotlib`. Install it with "
            "`uv sync --extra plot`, then rerun the command."
        ) from exc
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def plot_spectra(
    report: SpectrumReport,
    path: Path,
    reference: ReferenceSpectrum | None = None,
) -> None:
    """Value against normalized rank, one curve per layer."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 4))
    for index, layer in enumerate(report.layers):
        ax.plot(
            layer.normalized_ranks,
            layer.values,
            marker=".",
            label=f"layer {index} (area {layer.decay_area:.3f})",
        )
    if reference is not None:
        ax.plot(
            reference.normalized_ranks,
            reference.values,
            linestyle="--",
            color="black",
            label="reference",
        )
    ax.set_xlabel("normalized rank")
    ax.set_ylabel("singular value")
    ax.set_title(f"Singular-value decay at iteration {report.iteration}")
    ax.legend()
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    logger.info("Wrote spectrum plot to %s", path)
