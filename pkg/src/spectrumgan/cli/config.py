"""JSON run configuration and the run manifest.

A run config mirrors ``TrainConfig`` plus ``output_dir`` and ``plot``.
Unknown keys are rejected, every present key is type-checked and every
missing key is filled with its default and recorded in the manifest.
"""

from __future__ import annotations

import json
import logging
import os
import platform
from dataclasses import asdict, dataclass, field
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
from typing import Any

import numpy as np

from spectrumgan.errors import ConfigError
from spectrumgan.evalsuite import RingSpec
from spectrumgan.optim import (
    AdamSettings,
    GenLossForm,
    LossFamily,
    TrainConfig,
)
from spectrumgan.spectrum import ControllerTag

logger = logging.getLogger(__name__)

OUTPUT_DIR_ENV = "SPECTRUMGAN_OUTPUT_DIR"
DEFAULT_OUTPUT_DIR = Path("runs")
MANIFEST_FORMAT = "spectrumgan-manifest"

INT_FIELDS = (
    "n_dis",
    "batch_size",
    "iterations",
    "z_dim",
    "seed",
    "eval_interval",
    "eval_samples",
    "lip_pairs",
)
FLOAT_FIELDS = ("lambda_orth", "gamma", "ref_scale")
CHOICE_FIELDS: dict[str, tuple[str, ...]] = {
    "controller": tuple(tag.value for tag in ControllerTag),
    "loss_family": tuple(family.value for family in LossFamily),
    "gen_loss_form": tuple(form.value for form in GenLossForm),
}
WIDTH_FIELDS = ("disc_hidden", "gen_hidden")
NULLABLE_FIELDS = ("gamma", "n_dis", "disc_adam", "gen_adam")
ADAM_KEYS = ("lr", "beta1", "beta2", "eps")
RING_KEYS = ("modes", "radius", "sigma")
KNOWN_KEYS = (
    *CHOICE_FIELDS,
    *FLOAT_FIELDS,
    *INT_FIELDS,
    *WIDTH_FIELDS,
    "disc_adam",
    "gen_adam",
    "ring",
    "output_dir",
    "plot",
)


@dataclass(frozen=True)
class RunConfig:
    train: TrainConfig
    output_dir: Path = DEFAULT_OUTPUT_DIR
    plot: bool = False
    defaulted: tuple[str, ...] = field(default_factory=tuple)


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _check_numbers(
    record: Any, keys: tuple[str, ...], prefix: str, diagnostics: list[str]
) -> None:
    if not isinstance(record, dict):
        diagnostics.append(f"{prefix}: expected an object")
        return
    for key in sorted(set(record) - set(keys)):
        diagnostics.append(f"{prefix}.{key}: unknown key")
    for key in keys:
        if key in record and not _is_number(record[key]):
            diagnostics.append(f"{prefix}.{key}: expected a number")


def _diagnose(data: dict[str, Any]) -> list[str]:
    diagnostics = [
        f"{key}: unknown key" for key in sorted(set(data) - set(KNOWN_KEYS))
    ]
    for key, value in data.items():
        if value is None and key in NULLABLE_FIELDS:
            continue
        if key in INT_FIELDS and not _is_int(value):
            diagnostics.append(f"{key}: expected an integer, got {value!r}")
        elif key in FLOAT_FIELDS and not _is_number(value):
            diagnostics.append(f"{key}: expected a number, got {value!r}")
        elif key in CHOICE_FIELDS and value not in CHOICE_FIELDS[key]:
            choices = ", ".join(CHOICE_FIELDS[key])
            diagnostics.append(
                f"{key}: expected one of {choices}, got {value!r}"
            )
        elif key in WIDTH_FIELDS and not (
            isinstance(value, list) and all(_is_int(v) for v in value)
        ):
            diagnostics.append(f"{key}: expected a list of integers")
        elif key in ("disc_adam", "gen_adam"):
            _check_numbers(value, ADAM_KEYS, key, diagnostics)
        elif key == "ring":
            _check_numbers(value, RING_KEYS, key, diagnostics)
            if isinstance(value, dict) and not _is_int(
                value.get("modes", 8)
            ):
                diagnostics.append("ring.modes: expected an integer")
        elif key == "output_dir" and not isinstance(value, str):
            diagnostics.append("output_dir: expected a string")
        elif key == "plot" and not isinstance(value, bool):
            diagnostics.append("plot: expected true or false")
    return diagnostics


def output_dir_override(configured: Path) -> Path:
    override = os.environ.get(OUTPUT_DIR_ENV)
    if override:
        logger.info("Output directory overridden by %s", OUTPUT_DIR_ENV)
        return Path(override)
    return configured


def parse_run_config(data: Any) -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError(["config must be a JSON object"])
    diagnostics = _diagnose(data)
    if diagnostics:
        raise ConfigError(diagnostics)

    kwargs: dict[str, Any] = {
        key: data[key]
        for key in (*CHOICE_FIELDS, *FLOAT_FIELDS, *INT_FIELDS)
        if key in data
    }
    for key in WIDTH_FIELDS:
        if key in data:
            kwargs[key] = tuple(data[key])
    try:
        for key in ("disc_adam", "gen_adam"):
            if data.get(key) is not None:
                kwargs[key] = AdamSettings(**data[key])
        if "ring" in data:
            kwargs["ring"] = RingSpec(**data["ring"])
        train = TrainConfig(**kwargs)
    except ValueError as exc:
        raise ConfigError([str(exc)]) from exc

    return RunConfig(
        train=train,
        output_dir=output_dir_override(
            Path(data.get("output_dir", DEFAULT_OUTPUT_DIR))
        ),
        plot=bool(data.get("plot", False)),
        defaulted=tuple(
            key for key in KNOWN_KEYS if data.get(key) is None
        ),
    )


def load_run_config(path: Path) -> RunConfig:
    """Read a run config, or the ``config`` block of a run manifest."""
    try:
        with path.open("r", encoding="utf-8") as f:
            data = json.load(f)
    except OSError as exc:
        raise ConfigError([f"{path}: cannot read ({exc})"]) from exc
    except json.JSONDecodeError as exc:
        raise ConfigError([f"{path}: invalid JSON ({exc})"]) from exc
    if isinstance(data, dict) and data.get("format") == MANIFEST_FORMAT:
        logger.info("Reproducing run from manifest %s", path)
        data = data.get("config")
    return parse_run_config(data)


def resolved_config(run_config: RunConfig) -> dict[str, Any]:
    """The run config with every default filled in, as JSON values."""
    train = run_config.train
    return {
        "controller": str(train.controller),
        "loss_family": str(train.loss_family),
        "gen_loss_form": str(train.gen_loss_form),
        "lambda_orth": train.lambda_orth,
        "gamma": train.gamma,
        "ref_scale": train.ref_scale,
        "n_dis": train.n_dis,
        "batch_size": train.batch_size,
        "iterations": train.iterations,
        "disc_adam": asdict(train.disc_adam or AdamSettings()),
        "gen_adam": asdict(train.gen_adam or AdamSettings()),
        "z_dim": train.z_dim,
        "disc_hidden": list(train.disc_hidden),
        "gen_hidden": list(train.gen_hidden),
        "ring": asdict(train.ring),
        "seed": train.seed,
        "eval_interval": train.eval_interval,
        "eval_samples": train.eval_samples,
        "lip_pairs": train.lip_pairs,
        "output_dir": str(run_config.output_dir),
        "plot": run_config.plot,
    }


def _package_version() -> str:
    try:
        return version("spectrumgan")
    except PackageNotFoundError:
        return "unknown"


def build_manifest(run_config: RunConfig) -> dict[str, Any]:
    config = resolved_config(run_config)
    return {
        "format": MANIFEST_FORMAT,
        "config": config,
        "defaults_applied": {
            key: config[key] for key in run_config.defaulted
        },
        "seed": run_config.train.seed,
        "versions": {
            "spectrumgan": _package_version(),
            "numpy": np.__version__,
            "python": platform.python_version(),
        },
    }


def write_manifest(path: Path, run_config: RunConfig) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as f:
        json.dump(build_manifest(run_config), f, indent=2, sort_keys=True)
        f.write("\n")
    logger.info("Wrote run manifest to %s", path)
