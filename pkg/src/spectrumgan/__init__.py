"""SVD-parameterized GAN discriminators with spectrum control."""


def main() -> int:
    from spectrumgan.cli import main as cli_main

    return cli_main()
