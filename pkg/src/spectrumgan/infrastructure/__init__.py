"""File adapters: checkpoints, CSV artifacts and optional plots."""

from spectrumgan.infrastructure.checkpoint import (
    checkpoint_from_dict,
    checkpoint_to_dict,
    load_checkpoint,
    save_checkpoint,
)
from spectrumgan.infrastructure.csv_repository import (
    FileRunRepository,
    append_genbound_row,
    read_spectra_csv,
    write_fidelity_csv,
    write_reference_csv,
    write_spectra_csv,
)
from spectrumgan.infrastructure.plotting import plot_spectra

__all__ = [
    "FileRunRepository",
    "append_genbound_row",
    "checkpoint_from_dict",
    "checkpoint_to_dict",
    "load_checkpoint",
    "plot_spectra",
    "read_spectra_csv",
    "save_checkpoint",
    "write_fidelity_csv",
    "write_reference_csv",
    "write_spectra_csv",
]
