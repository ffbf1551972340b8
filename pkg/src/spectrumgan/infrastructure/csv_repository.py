"""CSV artifacts of a run: metrics, spectra snapshots and bound rows."""

from __future__ import annotations

import csv
import logging
from collections.abc import Iterable
from pathlib import Path

import numpy as np

from spectrumgan.errors import CorruptArtifactError
from spectrumgan.evalsuite import (
    FIDELITY_FIELDS,
    METRIC_FIELDS,
    GenBoundInput,
    LayerFidelity,
    LayerSpectrum,
    MetricRow,
    SpectrumReport,
)
from spectrumgan.infrastructure.checkpoint import save_checkpoint
from spectrumgan.spectrum import ReferenceSpectrum
from spectrumgan.svdnet import Checkpoint

logger = logging.getLogger(__name__)

SPECTRA_FIELDS = ("layer", "k", "normalized_rank", "value")
GENBOUND_FIELDS = (
    "n",
    "d",
    "L",
    "beta",
    "rho_phi",
    "delta",
    "epsilon",
    "bound",
)
REFERENCE_FIELDS = ("normalized_rank", "value")


def _write_rows(
    path: Path, fields: tuple[str, ...], rows: Iterable[dict]
) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)


def _append_row(path: Path, fields: tuple[str, ...], row: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fresh = not path.exists() or path.stat().st_size == 0
    with path.open("a", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=fields, lineterminator="\n")
        if fresh:
            writer.writeheader()
        writer.writerow(row)


def write_spectra_csv(path: Path, report: SpectrumReport) -> None:
    _write_rows(
        path,
        SPECTRA_FIELDS,
        (
            {
                "layer": index,
                "k": k,
                "normalized_rank": float(rank),
                "value": float(value),
            }
            for index, layer in enumerate(report.layers)
            for k, (rank, value) in enumerate(
                zip(layer.normalized_ranks, layer.values), 1
            )
        ),
    )


def read_spectra_csv(path: Path, iteration: int = 0) -> SpectrumReport:
    """Rebuild a report from ``layer,k,normalized_rank,value`` rows."""
    layers: dict[int, list[tuple[int, float, float]]] = {}
    try:
        with path.open("r", encoding="utf-8", newline="") as f:
            reader = csv.DictReader(f)
            if tuple(reader.fieldnames or ()) != SPECTRA_FIELDS:
                raise CorruptArtifactError(
                    f"{path}: expected header {','.join(SPECTRA_FIELDS)}"
                )
            for record in reader:
                layers.setdefault(int(record["layer"]), []).append(
                    (
                        int(record["k"]),
                        float(record["normalized_rank"]),
                        float(record["value"]),
                    )
                )
    except (OSError, KeyError, TypeError, ValueError) as exc:
        raise CorruptArtifactError(f"cannot read spectra {path}") from exc
    if sorted(layers) != list(range(len(layers))):
        raise CorruptArtifactError(f"{path}: layer indices are not 0..L-1")
    spectra = []
    for index in range(len(layers)):
        rows = sorted(layers[index])
        spectra.append(
            LayerSpectrum(
                values=np.array([value for _, _, value in rows]),
                normalized_ranks=np.array([rank for _, rank, _ in rows]),
            )
        )
    return SpectrumReport(iteration=iteration, layers=tuple(spectra))


def write_fidelity_csv(path: Path, report: list[LayerFidelity]) -> None:
    _write_rows(path, FIDELITY_FIELDS, (layer.as_row() for layer in report))


def write_reference_csv(path: Path, reference: ReferenceSpectrum) -> None:
    _write_rows(
        path,
        REFERENCE_FIELDS,
        (
            {"normalized_rank": float(rank), "value": float(value)}
            for rank, value in zip(
                reference.normalized_ranks, reference.values
            )
        ),
    )


def append_genbound_row(
    path: Path, inp: GenBoundInput, bound: float
) -> None:
    _append_row(
        path,
        GENBOUND_FIELDS,
        {
            "n": inp.n,
            "d": inp.d,
            "L": inp.depth,
            "beta": inp.beta,
            "rho_phi": inp.rho_phi,
            "delta": inp.delta,
            "epsilon": inp.epsilon,
            "bound": bound,
        },
    )


class FileRunRepository:
    """Run artifacts under one output directory.

    ``metrics.csv`` is truncated when the repository is opened so that
    a rerun into the same directory produces the same bytes.
    """

    def __init__(self, output_dir: Path) -> None:
        self.output_dir = output_dir
        self.output_dir.mkdir(parents=True, exist_ok=True)
        _write_rows(self.metrics_path, METRIC_FIELDS, [])

    @property
    def metrics_path(self) -> Path:
        return self.output_dir / "metrics.csv"

    def spectra_path(self, iteration: int) -> Path:
        return self.output_dir / f"spectra_{iteration}.csv"

    def checkpoint_path(self, name: str) -> Path:
        return self.output_dir / f"{name}.json"

    def append_metrics(self, row: MetricRow) -> None:
        _append_row(self.metrics_path, METRIC_FIELDS, row.as_row())

    def save_spectra(self, report: SpectrumReport) -> None:
        write_spectra_csv(self.spectra_path(report.iteration), report)

    def save_checkpoint(self, name: str, checkpoint: Checkpoint) -> None:
        save_checkpoint(self.checkpoint_path(name), checkpoint)
