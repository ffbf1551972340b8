"""JSON checkpoints of discriminator, generator and controller state.

Arrays are stored as ``{"shape": [...], "data": [...]}`` with row-major
flat data. Floats are written with ``repr`` precision so a load/save
round-trip reproduces forward outputs exactly.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any

import numpy as np

from spectrumgan.errors import CorruptArtifactError
from spectrumgan.spectrum import PowerVectors, SpectrumController
from spectrumgan.svdnet import (
    Checkpoint,
    DenseLayer,
    DiscNet,
    GenNet,
    SvdLayer,
)

logger = logging.getLogger(__name__)

CHECKPOINT_FORMAT = "spectrumgan-checkpoint"
CHECKPOINT_VERSION = 1


def _encode(array: np.ndarray) -> dict[str, Any]:
    return {
        "shape": list(array.shape),
        "data": np.ascontiguousarray(array).reshape(-1).tolist(),
    }


def _decode(record: Any, name: str) -> np.ndarray:
    try:
        shape = tuple(int(n) for n in record["shape"])
        data = np.asarray(record["data"], dtype=np.float64)
        return np.ascontiguousarray(data.reshape(shape))
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptArtifactError(f"{name}: malformed array") from exc


def checkpoint_to_dict(checkpoint: Checkpoint) -> dict[str, Any]:
    controller = checkpoint.controller
    return {
        "format": CHECKPOINT_FORMAT,
        "version": CHECKPOINT_VERSION,
        "dims": checkpoint.disc.dims,
        "iteration": checkpoint.iteration,
        "seed": checkpoint.seed,
        "controller": {
            "tag": str(controller.tag),
            "gamma": controller.gamma,
            "ref_scale": controller.ref_scale,
            "seed": controller.seed,
            "power_state": {
                str(index): {"u": _encode(vec.u), "v": _encode(vec.v)}
                for index, vec in sorted(controller.power_state.items())
            },
        },
        "disc": [
            {
                "u": _encode(layer.u),
                "e": _encode(layer.e),
                "v": _encode(layer.v),
                "bias": _encode(layer.bias),
            }
            for layer in checkpoint.disc.layers
        ],
        "gen": None
        if checkpoint.gen is None
        else [
            {"weight": _encode(layer.weight), "bias": _encode(layer.bias)}
            for layer in checkpoint.gen.layers
        ],
        "rng_states": checkpoint.rng_states,
    }


def _svd_layer(record: Any, index: int) -> SvdLayer:
    name = f"disc layer {index}"
    u = _decode(record["u"], f"{name}.u")
    e = _decode(record["e"], f"{name}.e")
    v = _decode(record["v"], f"{name}.v")
    bias = _decode(record["bias"], f"{name}.bias")
    if (
        u.ndim != 2
        or v.ndim != 2
        or e.shape != (u.shape[1],)
        or v.shape[1] != u.shape[1]
        or bias.shape != (v.shape[0],)
    ):
        raise CorruptArtifactError(f"{name}: inconsistent factor shapes")
    return SvdLayer(u=u, e=e, v=v, bias=bias)


def _dense_layer(record: Any, index: int) -> DenseLayer:
    name = f"gen layer {index}"
    weight = _decode(record["weight"], f"{name}.weight")
    bias = _decode(record["bias"], f"{name}.bias")
    if weight.ndim != 2 or bias.shape != (weight.shape[1],):
        raise CorruptArtifactError(f"{name}: inconsistent shapes")
    return DenseLayer(weight=weight, bias=bias)


def _controller(record: Any) -> SpectrumController:
    controller = SpectrumController(
        tag=record["tag"],
        gamma=float(record["gamma"]),
        ref_scale=float(record["ref_scale"]),
        seed=int(record["seed"]),
    )
    for key, vectors in record.get("power_state", {}).items():
        controller.power_state[int(key)] = PowerVectors(
            u=_decode(vectors["u"], f"power u[{key}]"),
            v=_decode(vectors["v"], f"power v[{key}]"),
        )
    return controller


def _check_chain(dims: list[int], widths: list[tuple[int, int]]) -> None:
    chained = [widths[0][0]] + [d_out for _, d_out in widths]
    if chained != dims:
        raise CorruptArtifactError(
            f"layer shapes {chained} do not match recorded dims {dims}"
        )
    if dims[-1] != 1:
        raise CorruptArtifactError(
            f"discriminator must end in one logit, got width {dims[-1]}"
        )


def checkpoint_from_dict(data: Any) -> Checkpoint:
    try:
        if data.get("format") != CHECKPOINT_FORMAT:
            raise CorruptArtifactError("not a spectrumgan checkpoint")
        disc_layers = [
            _svd_layer(record, index)
            for index, record in enumerate(data["disc"])
        ]
        if not disc_layers:
            raise CorruptArtifactError("checkpoint has no layers")
        _check_chain(
            [int(d) for d in data["dims"]],
            [(layer.d_in, layer.d_out) for layer in disc_layers],
        )
        gen = None
        if data.get("gen"):
            gen = GenNet(
                layers=[
                    _dense_layer(record, index)
                    for index, record in enumerate(data["gen"])
                ]
            )
        return Checkpoint(
            disc=DiscNet(layers=disc_layers),
            controller=_controller(data["controller"]),
            iteration=int(data["iteration"]),
            seed=int(data["seed"]),
            gen=gen,
            rng_states=dict(data.get("rng_states") or {}),
        )
    except CorruptArtifactError:
        raise
    except (AttributeError, KeyError, TypeError, ValueError) as exc:
        raise CorruptArtifactError(f"malformed checkpoint: {exc}") from exc


def save_checkpoint(path: Path, checkpoint: Checkpoint) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as f:
        json.dump(checkpoint_to_dict(checkpoint), f)
        f.write("\n")
    logger.info(
        "Wrote checkpoint (iteration %d) to %s", checkpoint.iteration, path
    )


def load_checkpoint(path: Path) -> Checkpoint:
    try:
        with path.open("r", encoding="utf-8") as f:
            data = json.load(f)
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CorruptArtifactError(f"cannot read checkpoint {path}") from exc
    return checkpoint_from_dict(data)
