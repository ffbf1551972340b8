"""One row of the training metrics table."""

from __future__ import annotations

from dataclasses import asdict, dataclass

METRIC_FIELDS = (
    "iter",
    "modes_covered",
    "hq_fraction",
    "lip_empirical",
    "lip_bound",
    "orth_penalty_max",
    "reg_value",
    "disc_loss",
    "gen_loss",
)


@dataclass(frozen=True)
class MetricRow:
    iter: int
    modes_covered: int
    hq_fraction: float
    lip_empirical: float
    lip_bound: float
    orth_penalty_max: float
    reg_value: float
    disc_loss: float
    gen_loss: float

    def as_row(self) -> dict[str, float | int]:
        return asdict(self)
