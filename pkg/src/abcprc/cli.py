"""Command-line entry point: ``abcprc --algorithm prc --kernel-var 0.01 ...``."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .errors import ABCError
from .experiment import ALGORITHMS, OUT_DIR_ENV, ExperimentConfig, default_out_dir, run_experiment
from .model import PAPER_N, PAPER_SIGMA2, PAPER_YBAR
from .samplers.particles import DEFAULT_MAX_SIM_CALLS


def _seed_list(text):
    try:
        seeds = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seed list {text!r}") from None
    if not seeds:
        raise argparse.ArgumentTypeError("seed list must not be empty")
    return seeds


def build_parser():
    p = argparse.ArgumentParser(
        prog="abcprc",
        description="Run rejection ABC, ABC-MCMC or ABC-PRC (plain or weight-corrected) "
                    "on the known-variance Gaussian mean problem.",
    )
    p.add_argument("--algorithm", choices=ALGORITHMS, default="prc")
    p.add_argument("--ybar", type=float, default=PAPER_YBAR, help="observed sample mean")
    p.add_argument("--n", type=int, default=PAPER_N, help="sample size")
    p.add_argument("--sigma2", type=float, default=PAPER_SIGMA2, help="known data variance")
    p.add_argument("--prior-lo", type=float, default=-15.0)
    p.add_argument("--prior-hi", type=float, default=15.0)
    p.add_argument("--kernel-var", type=float, default=0.1, help="perturbation kernel variance")
    p.add_argument("--kernel-mean", type=float, default=0.0)
    p.add_argument("--schedule", default="paper-2007",
                   help="preset name or file with one tolerance per line")
    p.add_argument("--eps", type=float, default=None,
                   help="tolerance for rejection/mcmc (default 0.01 / 0.05)")
    p.add_argument("--particles", type=int, default=1000)
    p.add_argument("--chain-len", type=int, default=200_000)
    p.add_argument("--burn-in", type=int, default=10_000)
    p.add_argument("--seeds", type=_seed_list, default=[1, 2, 3, 4, 5],
                   help="comma-separated seed list")
    p.add_argument("--out-dir", type=Path, default=None,
                   help=f"output directory (default ${OUT_DIR_ENV} or ./abc-out)")
    p.add_argument("--max-sim-calls", type=int, default=DEFAULT_MAX_SIM_CALLS,
                   help="simulator budget per iteration")
    p.add_argument("--threads", type=int, default=1,
                   help="worker threads; output does not depend on this")
    p.add_argument("--checkpoints", type=int, default=20)
    p.add_argument("--bins", type=int, default=50)
    p.add_argument("--plot", action="store_true", help="also write an SVG histogram per seed")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = ExperimentConfig(
            algorithm=args.algorithm, ybar=args.ybar, n=args.n, sigma2=args.sigma2,
            prior_lo=args.prior_lo, prior_hi=args.prior_hi,
            kernel_var=args.kernel_var, kernel_mean=args.kernel_mean,
            schedule=args.schedule, eps=args.eps, particles=args.particles,
            chain_len=args.chain_len, burn_in=args.burn_in, seeds=args.seeds,
            out_dir=args.out_dir or default_out_dir(), max_sim_calls=args.max_sim_calls,
            threads=args.threads, checkpoints=args.checkpoints, bins=args.bins,
            plot=args.plot,
        )
        run_experiment(cfg)
    except ABCError as exc:
        print(f"abcprc: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
