"""Exception hierarchy shared by every spectrumgan package."""

from __future__ import annotations


class SpectrumGanError(Exception):
    """Base class for errors raised by spectrumgan."""


class RejectedInputError(SpectrumGanError, ValueError):
    """Input shapes or counts do not satisfy an operation's contract."""


class DomainError(SpectrumGanError, ValueError):
    """A value lies outside the domain of a numeric function."""


class ConfigError(SpectrumGanError, ValueError):
    def __init__(self, diagnostics: list[str]) -> None:
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


class DegeneracyError(SpectrumGanError, ArithmeticError):
    """Columns are (numerically) linearly dependent."""


class NumericError(SpectrumGanError, ArithmeticError):
    def __init__(self, message: str, *, residual: float) -> None:
        self.residual = residual
        super().__init__(f"{message} (residual={residual:.3e})")


class PowerIterationRestartError(SpectrumGanError, ArithmeticError):
    """The power step collapsed to a zero vector; reseed ``u``."""


class ZeroSpectrumError(SpectrumGanError, ArithmeticError):
    """Normalizing by a vanishing largest singular value."""


class StateError(SpectrumGanError, RuntimeError):
    """An operation was called out of order."""


class TrainingFault(SpectrumGanError, RuntimeError):
    def __init__(self, message: str, *, parameter: str, iteration: int):
        self.parameter = parameter
        self.iteration = iteration
        super().__init__(
            f"{message} (parameter={parameter}, iteration={iteration})"
        )


class CorruptArtifactError(SpectrumGanError, RuntimeError):
    """A checkpoint or CSV artifact cannot be parsed."""
