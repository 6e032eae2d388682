"""Sequential ABC by partial rejection control, with and without the
reciprocal-kernel-density weight correction."""
from __future__ import annotations

import logging

import numpy as np

from ..errors import InvalidInputError
from ..kernels import corrected_weights
from ..model import GaussianModelSpec
from ..rng import as_stream
from ._engine import accept_sequential, accept_slotted, make_executor
from .particles import Checkpoint, ParticleSet, RunTrace, SamplerConfig, checkpoint_iterations, resample

log = logging.getLogger(__name__)


def _pool_proposal(pool: ParticleSet):
    def propose(stream, size):
        return resample(pool, size, stream)
    return propose


def _run_prc(spec: GaussianModelSpec, config: SamplerConfig, rng, corrected: bool) -> RunTrace:
    stream = as_stream(config.seed if rng is None else rng)
    n = config.n_particles
    kernel = config.kernel
    schedule = config.schedule
    slotted = config.threads is not None
    record_at = set(checkpoint_iterations(len(schedule), config.checkpoint_count).tolist())

    if slotted:
        init = np.array([config.prior.sample(stream.child(0, i)) for i in range(n)])
    else:
        init = config.prior.sample(stream, n)
    pool = ParticleSet.equal(init, iteration=0)

    trace = RunTrace()
    executor = make_executor(config.threads) if slotted else None
    rate = 0.5
    try:
        for t, eps in enumerate(schedule, start=1):
            propose = _pool_proposal(pool)
            if slotted:
                streams = [stream.child(t, i) for i in range(n)]
                res, perturbed = accept_slotted(
                    propose, spec, eps, n, config.max_sim_calls_per_iteration, streams,
                    rate_hint=rate, executor=executor, iteration=t,
                    after=lambda v, s: kernel.perturb(v, s),
                )
            else:
                res = accept_sequential(propose, spec, eps, n, config.max_sim_calls_per_iteration,
                                        stream, rate_hint=rate, iteration=t)
                perturbed = kernel.perturb(res.values, stream)
            rate = res.rate
            trace.sim_call_count += res.sim_calls
            trace.acceptance_counts.append((n, res.sim_calls))
            if t in record_at:
                accepted = ParticleSet.equal(res.values, iteration=t, distances=res.distances,
                                             sim_calls=res.sim_calls)
                trace.checkpoints.append(Checkpoint(t, eps, accepted))
            log.debug("t=%d eps=%g calls=%d", t, eps, res.sim_calls)

            if corrected:
                w = corrected_weights(perturbed, res.values, kernel)
                pool = ParticleSet.from_unnormalized(perturbed, w, iteration=t)
            else:
                pool = ParticleSet.equal(perturbed, iteration=t)
    finally:
        if executor is not None:
            executor.shutdown()
    trace.final_weights = pool.weights
    return trace


def abc_prc_uncorrected(spec: GaussianModelSpec, config: SamplerConfig, rng=None) -> RunTrace:
    """ABC-PRC in its equal-weights form.

    Every iteration draws candidates uniformly from the current pool, keeps
    the first N whose simulated summary falls within the iteration's
    tolerance, records them if the iteration is a checkpoint, and perturbs
    them with the kernel to form the next pool. No weights are carried, so
    with a narrow kernel the population contracts below the true posterior.
    """
    return _run_prc(spec, config, rng, corrected=False)


def abc_prc_corrected(spec: GaussianModelSpec, config: SamplerConfig, rng=None) -> RunTrace:
    """ABC-PRC with the pool reweighted after each perturbation.

    Perturbed particle i gets weight ``1 / sum_j K(perturbed_i | accepted_j)``
    and candidates are drawn from the pool in proportion to those weights.
    """
    return _run_prc(spec, config, rng, corrected=True)


def power_posterior_reference(base_variance: float, t: int) -> float:
    """Variance of a Gaussian density raised to the power ``t`` and renormalised."""
    if t < 1:
        raise InvalidInputError(f"t must be >= 1, got {t}")
    if not base_variance > 0:
        raise InvalidInputError("base_variance must be > 0")
    return base_variance / t
