"""Experiment runner: one sampler, many seeds, CSV outputs and a summary line."""
from __future__ import annotations

import logging
import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import io
from .diagnostics import ConvergenceTrace, TracePoint, build_trace
from .errors import InvalidInputError
from .kernels import GaussianKernel
from .model import PAPER_N, PAPER_SIGMA2, PAPER_YBAR, GaussianModelSpec, UniformPrior, analytic_posterior
from .rng import derive
from .samplers import (
    SamplerConfig,
    abc_mcmc,
    abc_prc_corrected,
    abc_prc_uncorrected,
    abc_rejection,
)
from .samplers.particles import DEFAULT_MAX_SIM_CALLS, Checkpoint, RunTrace
from .schedules import load_schedule

log = logging.getLogger(__name__)

ALGORITHMS = ("rejection", "mcmc", "prc", "prc-corrected")
OUT_DIR_ENV = "ABCPRC_OUT_DIR"
DEFAULT_EPS = {"rejection": 0.01, "mcmc": 0.05}


def default_out_dir() -> Path:
    return Path(os.environ.get(OUT_DIR_ENV, "abc-out"))


@dataclass
class ExperimentConfig:
    algorithm: str = "prc"
    ybar: float = PAPER_YBAR
    n: int = PAPER_N
    sigma2: float = PAPER_SIGMA2
    prior_lo: float = -15.0
    prior_hi: float = 15.0
    kernel_var: float = 0.1
    kernel_mean: float = 0.0
    schedule: str = "paper-2007"
    eps: Optional[float] = None
    particles: int = 1000
    chain_len: int = 200_000
    burn_in: int = 10_000
    seeds: tuple = (1, 2, 3, 4, 5)
    out_dir: Optional[Path] = None
    max_sim_calls: int = DEFAULT_MAX_SIM_CALLS
    threads: Optional[int] = 1
    checkpoints: int = 20
    bins: int = 50
    plot: bool = False

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise InvalidInputError(f"unknown algorithm {self.algorithm!r}; choose from {ALGORITHMS}")
        self.seeds = tuple(int(s) for s in self.seeds)
        if not self.seeds:
            raise InvalidInputError("seed list must not be empty")
        if self.out_dir is None:
            self.out_dir = default_out_dir()
        self.out_dir = Path(self.out_dir)
        if self.eps is None:
            self.eps = DEFAULT_EPS.get(self.algorithm)

    @property
    def model(self) -> GaussianModelSpec:
        return GaussianModelSpec(ybar=self.ybar, n=self.n, sigma2=self.sigma2)

    @property
    def prior(self) -> UniformPrior:
        return UniformPrior(self.prior_lo, self.prior_hi)

    @property
    def kernel(self) -> GaussianKernel:
        return GaussianKernel(self.kernel_var, self.kernel_mean)

    def sampler_config(self, seed) -> SamplerConfig:
        return SamplerConfig(
            n_particles=self.particles,
            schedule=load_schedule(self.schedule),
            kernel=self.kernel,
            prior=self.prior,
            seed=seed,
            max_sim_calls_per_iteration=self.max_sim_calls,
            checkpoint_count=self.checkpoints,
            threads=self.threads,
        )


@dataclass
class SeedResult:
    seed: int
    trace: ConvergenceTrace
    values: np.ndarray
    files: dict = field(default_factory=dict)

    @property
    def final_variance(self) -> float:
        return self.trace.final.variance


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    oracle_variance: float
    seeds: list

    @property
    def final_variances(self) -> list:
        return [r.final_variance for r in self.seeds]

    @property
    def median_final_variance(self) -> float:
        return float(np.median(self.final_variances))

    def summary_line(self) -> str:
        kv = "-" if self.config.algorithm == "rejection" else f"{self.config.kernel_var:g}"
        return (f"algorithm={self.config.algorithm} kernel_var={kv} "
                f"median_final_variance={self.median_final_variance:.6g} "
                f"oracle_variance={self.oracle_variance:.6g} seeds={len(self.seeds)}")


def _mcmc_trace(chain, n_points, burn_in, oracle) -> ConvergenceTrace:
    """Running moments of the chain at evenly spaced lengths."""
    total = chain.size
    ends = np.unique(np.round(np.linspace(1, total, min(n_points, total))).astype(int))
    moved = np.concatenate([[False], chain[1:] != chain[:-1]])
    moves = np.cumsum(moved)
    csum = np.cumsum(chain)
    csq = np.cumsum(chain * chain)
    points = []
    for e in ends:
        if e < 2:
            continue
        mean = csum[e - 1] / e
        var = max(csq[e - 1] / e - mean * mean, 0.0)
        points.append(TracePoint(int(e), mean, float(var), math.nan,
                                 int(e + burn_in), moves[e - 1] / e))
    # exact moments at the final point; the cumulative-sum form loses digits
    if points:
        last = points[-1]
        points[-1] = TracePoint(last.iteration, float(chain.mean()), float(chain.var()),
                                last.epsilon, last.sim_calls, last.acceptance_rate)
    return ConvergenceTrace(tuple(points), oracle.variance)


def run_seed(cfg: ExperimentConfig, seed: int):
    """Run the configured sampler for one seed; returns (trace, values, weights, distances)."""
    spec, oracle = cfg.model, analytic_posterior(cfg.model)
    if cfg.algorithm in ("prc", "prc-corrected"):
        sampler = abc_prc_corrected if cfg.algorithm == "prc-corrected" else abc_prc_uncorrected
        run = sampler(spec, cfg.sampler_config(seed))
        final = run.final.particles
        return build_trace(run, oracle), final.values, final.weights, final.distances
    if cfg.algorithm == "rejection":
        pset = abc_rejection(spec, cfg.prior, cfg.eps, cfg.particles, cfg.max_sim_calls,
                             rng=derive(seed), threads=cfg.threads)
        run = RunTrace([Checkpoint(1, cfg.eps, pset)], pset.sim_calls, [(len(pset), pset.sim_calls)])
        return build_trace(run, oracle), pset.values, pset.weights, pset.distances
    init = min(max(cfg.ybar, cfg.prior_lo), cfg.prior_hi)
    chain = abc_mcmc(spec, cfg.prior, cfg.kernel, cfg.eps, cfg.chain_len, init,
                     rng=derive(seed), burn_in=cfg.burn_in)
    return _mcmc_trace(chain, cfg.checkpoints, cfg.burn_in, oracle), chain, None, None


def run_experiment(cfg: ExperimentConfig, emit=print) -> ExperimentResult:
    oracle = analytic_posterior(cfg.model)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    results = []
    for seed in cfg.seeds:
        trace, values, weights, dists = run_seed(cfg, seed)
        stem = cfg.out_dir / f"{cfg.algorithm}_seed{seed}"
        files = {
            "trace": stem.with_name(stem.name + "_trace.csv"),
            "particles": stem.with_name(stem.name + "_particles.csv"),
            "histogram": stem.with_name(stem.name + "_histogram.csv"),
        }
        io.write_trace_csv(files["trace"], trace)
        io.write_particles_csv(files["particles"], values, weights, dists)
        io.write_histogram_csv(files["histogram"], values, oracle, cfg.bins)
        if cfg.plot:
            files["plot"] = stem.with_name(stem.name + "_histogram.svg")
            io.write_histogram_svg(files["plot"], values, oracle, cfg.bins,
                                   title=f"{cfg.algorithm}, seed {seed}")
        log.info("seed %d: final variance %.6g", seed, trace.final.variance)
        results.append(SeedResult(seed, trace, values, files))
    result = ExperimentResult(cfg, oracle.variance, results)
    if emit is not None:
        emit(result.summary_line())
    return result
