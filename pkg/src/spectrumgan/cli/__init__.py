from spectrumgan.cli.main import main

__all__ = ["main"]
