"""spectrumgan command line: train, spectra, gradcheck, genbound, reference.

Exit codes: 0 success, 1 failed check or training fault, 2 bad input,
3 corrupt artifact.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from spectrumgan.cli.config import (
    DEFAULT_OUTPUT_DIR,
    load_run_config,
    output_dir_override,
    write_manifest,
)
from spectrumgan.errors import (
    ConfigError,
    CorruptArtifactError,
    DomainError,
    RejectedInputError,
    TrainingFault,
)
from spectrumgan.evalsuite import (
    GenBoundInput,
    excess_gen_bound,
    fidelity_report,
    log_covering_number,
    spectrum_report,
)
from spectrumgan.gradcheck import GradientCheck, run_gradcheck_suite
from spectrumgan.infrastructure import (
    FileRunRepository,
    append_genbound_row,
    load_checkpoint,
    plot_spectra,
    write_fidelity_csv,
    write_reference_csv,
    write_spectra_csv,
)
from spectrumgan.optim import train
from spectrumgan.spectrum import ControllerTag, sample_reference_spectrum
from spectrumgan.spectrum.model import DEFAULT_REF_SCALE
from spectrumgan.svdnet import apply_singular_value_update

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_CORRUPT_ARTIFACT = 3

logger = logging.getLogger(__name__)


def build_argparser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        "spectrumgan",
        description="SVD-parameterized GAN discriminators with spectrum "
        "control",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    train_parser = subparsers.add_parser(
        "train", help="Run adversarial training from a JSON config"
    )
    train_parser.add_argument(
        "config", type=Path, help="Run config or a previous run manifest"
    )

    spectra_parser = subparsers.add_parser(
        "spectra", help="Write singular-value decay curves of a checkpoint"
    )
    spectra_parser.add_argument("checkpoint", type=Path)
    spectra_parser.add_argument("out", type=Path, help="Output CSV path")
    spectra_parser.add_argument(
        "--fidelity",
        type=Path,
        default=None,
        help="Also write parameterized vs realized spectrum statistics.",
    )
    spectra_parser.add_argument(
        "--plot", type=Path, default=None, help="Render a PNG of the curves"
    )

    gradcheck_parser = subparsers.add_parser(
        "gradcheck", help="Finite-difference check of every gradient"
    )
    gradcheck_parser.add_argument("--seed", type=int, default=0)

    genbound_parser = subparsers.add_parser(
        "genbound", help="Evaluate the spectrum-controlled gen. bound"
    )
    genbound_parser.add_argument("--n", type=int, required=True)
    genbound_parser.add_argument("--d", type=int, required=True)
    genbound_parser.add_argument(
        "--L",
        dest="depth",
        type=int,
        default=None,
        help="Depth; defaults to the number of --bw values.",
    )
    genbound_parser.add_argument("--bx", type=float, default=1.0)
    genbound_parser.add_argument(
        "--bw",
        type=float,
        nargs="+",
        default=[1.0],
        help="Per-layer spectral-norm bounds; one value is broadcast.",
    )
    genbound_parser.add_argument("--rho", type=float, default=1.0)
    genbound_parser.add_argument("--delta", type=float, default=0.1)
    genbound_parser.add_argument("--epsilon", type=float, default=0.0)
    genbound_parser.add_argument(
        "--covering-eps",
        type=float,
        default=None,
        help="Also print the log covering number at this radius.",
    )
    genbound_parser.add_argument(
        "--out",
        type=Path,
        default=None,
        help="CSV to append to (default: <output dir>/genbound.csv).",
    )

    reference_parser = subparsers.add_parser(
        "reference", help="Sample the reference singular-value curve"
    )
    reference_parser.add_argument("out", type=Path)
    reference_parser.add_argument("--count", type=int, default=256)
    reference_parser.add_argument(
        "--scale", type=float, default=DEFAULT_REF_SCALE
    )
    reference_parser.add_argument("--seed", type=int, default=0)
    return parser


def cmd_train(config_path: Path) -> int:
    run_config = load_run_config(config_path)
    output_dir = run_config.output_dir
    logger.info("Config: %s", run_config.train)
    logger.info("Output: %s", output_dir)

    repository = FileRunRepository(output_dir)
    write_manifest(output_dir / "manifest.json", run_config)
    result = train(run_config.train, repository)
    if run_config.plot and result.spectra:
        last = result.spectra[-1]
        plot_spectra(last, output_dir / f"spectra_{last.iteration}.png")
    return EXIT_OK


def cmd_spectra(
    checkpoint_path: Path,
    out_path: Path,
    fidelity_path: Path | None = None,
    plot_path: Path | None = None,
) -> int:
    checkpoint = load_checkpoint(checkpoint_path)
    disc, controller = checkpoint.disc, checkpoint.controller
    if (
        controller.tag is ControllerTag.POWER_ITER_SN
        and len(controller.power_state) < disc.depth
    ):
        apply_singular_value_update(disc, controller)

    report = spectrum_report(disc, controller, checkpoint.iteration)
    write_spectra_csv(out_path, report)
    logger.info(
        "Wrote %d spectrum rows to %s",
        sum(layer.rank for layer in report.layers),
        out_path,
    )
    for index, area in enumerate(report.decay_areas):
        logger.info("layer %d decay area %.4f", index, area)

    fidelity = fidelity_report(disc, controller)
    for layer in fidelity:
        logger.info(
            "layer %d max |e' - s| %.3e orth_u %.3e orth_v %.3e",
            layer.layer,
            layer.max_deviation,
            layer.orth_u,
            layer.orth_v,
        )
    if fidelity_path is not None:
        write_fidelity_csv(fidelity_path, fidelity)
    if plot_path is not None:
        plot_spectra(report, plot_path)
    return EXIT_OK


def cmd_gradcheck(
    seed: int = 0, checks: Sequence[GradientCheck] | None = None
) -> int:
    report = run_gradcheck_suite(seed, checks)
    for outcome in report.outcomes:
        status = "ok" if outcome.relative_error <= report.tolerance else "FAIL"
        print(
            f"{outcome.component:<28} {outcome.relative_error:.3e} {status}"
        )
    worst = report.worst
    print(f"worst: {worst.component} {worst.relative_error:.3e}")
    if not report.passed:
        for outcome in report.failures:
            logger.error(
                "Gradient check failed: %s (rel. err %.3e)",
                outcome.component,
                outcome.relative_error,
            )
        return EXIT_CHECK_FAILED
    return EXIT_OK


def genbound_input(args: argparse.Namespace) -> GenBoundInput:
    depth = args.depth if args.depth is not None else len(args.bw)
    b_w = list(args.bw)
    if len(b_w) == 1 and depth > 1:
        b_w = b_w * depth
    return GenBoundInput(
        n=args.n,
        d=args.d,
        depth=depth,
        b_x=args.bx,
        b_w=tuple(b_w),
        rho_phi=args.rho,
        delta=args.delta,
        epsilon=args.epsilon,
    )


def cmd_genbound(args: argparse.Namespace) -> int:
    inp = genbound_input(args)
    bound = excess_gen_bound(inp)
    print(f"beta = {inp.beta:.6g}")
    if inp.spectrum_constrained:
        print("spectrum-constrained regime: beta = B_x")
    print(f"excess generalization bound = {bound:.6g}")
    if args.covering_eps is not None:
        value = log_covering_number(
            inp.d, inp.depth, inp.beta, args.covering_eps
        )
        print(f"log covering number = {value:.6g}")

    out = args.out or output_dir_override(DEFAULT_OUTPUT_DIR) / "genbound.csv"
    append_genbound_row(out, inp, bound)
    logger.info("Appended bound to %s", out)
    return EXIT_OK


def cmd_reference(out: Path, count: int, scale: float, seed: int) -> int:
    reference = sample_reference_spectrum(count, scale, seed)
    write_reference_csv(out, reference)
    logger.info("Wrote %d reference values to %s", count, out)
    return EXIT_OK


def dispatch(args: argparse.Namespace) -> int:
    if args.command == "train":
        return cmd_train(args.config)
    if args.command == "spectra":
        return cmd_spectra(args.checkpoint, args.out, args.fidelity, args.plot)
    if args.command == "gradcheck":
        return cmd_gradcheck(args.seed)
    if args.command == "genbound":
        return cmd_genbound(args)
    if args.command == "reference":
        return cmd_reference(args.out, args.count, args.scale, args.seed)
    raise RuntimeError(f"Unknown command {args.command}")


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(
        level=logging.INFO,
        format="%(asctime)s | %(levelname)s | %(name)s | %(message)s",
    )
    argv = argv if argv is not None else sys.argv[1:]
    args = build_argparser().parse_args(argv)
    try:
        return dispatch(args)
    except ConfigError as exc:
        for diagnostic in exc.diagnostics:
            logger.error("config: %s", diagnostic)
        return EXIT_BAD_INPUT
    except (DomainError, RejectedInputError) as exc:
        logger.error("%s", exc)
        return EXIT_BAD_INPUT
    except CorruptArtifactError as exc:
        logger.error("%s", exc)
        return EXIT_CORRUPT_ARTIFACT
    except TrainingFault as exc:
        logger.error("%s", exc)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    raise SystemExit(main())
