"""Bias-corrected Adam over a dict of named parameter arrays."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from spectrumgan.errors import RejectedInputError, TrainingFault

DEFAULT_EPS = 1e-8


@dataclass(eq=False)
class AdamState:
    lr: float
    beta1: float
    beta2: float
    eps: float = DEFAULT_EPS
    t: int = 0
    m: dict[str, np.ndarray] = field(default_factory=dict)
    v: dict[str, np.ndarray] = field(default_factory=dict)

    def copy(self) -> AdamState:
        return AdamState(
            lr=self.lr,
            beta1=self.beta1,
            beta2=self.beta2,
            eps=self.eps,
            t=self.t,
            m={name: value.copy() for name, value in self.m.items()},
            v={name: value.copy() for name, value in self.v.items()},
        )


def _check_gradients(
    params: dict[str, np.ndarray],
    grads: dict[str, np.ndarray],
    iteration: int,
) -> None:
    if params.keys() != grads.keys():
        missing = sorted(set(params) ^ set(grads))
        raise RejectedInputError(f"parameter/gradient names differ: {missing}")
    for name, grad in grads.items():
        if grad.shape != params[name].shape:
            raise RejectedInputError(
                f"{name}: gradient shape {grad.shape} does not match "
                f"parameter shape {params[name].shape}"
            )
        if not np.all(np.isfinite(grad)):
            raise TrainingFault(
                "non-finite gradient", parameter=name, iteration=iteration
            )


def adam_step(
    params: dict[str, np.ndarray],
    grads: dict[str, np.ndarray],
    state: AdamState,
    *,
    iteration: int | None = None,
) -> AdamState:
    """Descend one step, updating ``params`` and ``state`` in place.

    Every gradient is validated before any parameter moves, so a fault
    leaves the parameters at their last good values.
    """
    _check_gradients(
        params, grads, state.t if iteration is None else iteration
    )
    state.t += 1
    correction1 = 1.0 - state.beta1**state.t
    correction2 = 1.0 - state.beta2**state.t
    for name, param in params.items():
        grad = grads[name]
        m = state.m.setdefault(name, np.zeros_like(param))
        v = state.v.setdefault(name, np.zeros_like(param))
        m *= state.beta1
        m += (1.0 - state.beta1) * grad
        v *= state.beta2
        v += (1.0 - state.beta2) * grad * grad
        step = (m / correction1) / (np.sqrt(v / correction2) + state.eps)
        param -= state.lr * step
    return state
