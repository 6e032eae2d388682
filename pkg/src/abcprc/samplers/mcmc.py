from __future__ import annotations

import math

import numpy as np

from ..errors import InvalidInputError
from ..kernels import GaussianKernel
from ..model import GaussianModelSpec, UniformPrior
from ..rng import as_stream

_CHUNK = 1 << 15


def abc_mcmc(spec: GaussianModelSpec, prior: UniformPrior, kernel: GaussianKernel,
             eps: float, chain_len: int, init: float, rng=0, burn_in: int = 0) -> np.ndarray:
    """Likelihood-free Metropolis-Hastings chain.

    A proposal replaces the current state only if it lies inside the prior
    support, its simulated summary is within ``eps`` of the observed one,
    and the usual Hastings test passes; otherwise the chain repeats the
    current state. The first ``burn_in`` states are dropped and
    ``chain_len`` states returned.
    """
    if not eps > 0:
        raise InvalidInputError(f"eps must be > 0, got {eps}")
    if chain_len < 1 or burn_in < 0:
        raise InvalidInputError("chain_len must be >= 1 and burn_in >= 0")
    if not (prior.lo <= init <= prior.hi):
        raise InvalidInputError(f"init {init} outside prior bounds [{prior.lo}, {prior.hi}]")
    stream = as_stream(rng)
    gen = stream.generator
    total = burn_in + chain_len
    chain = np.empty(total)
    lo, hi, ybar = prior.lo, prior.hi, spec.ybar
    sd_sim = math.sqrt(spec.sigma2)
    off = kernel.mean_offset
    symmetric = off == 0.0
    theta = float(init)
    done = 0
    while done < total:
        m = min(_CHUNK, total - done)
        steps = gen.normal(off, kernel.scale, m)
        noise = gen.normal(0.0, sd_sim, (m, spec.n)).mean(axis=1)
        u = gen.random(m)
        for k in range(m):
            prop = theta + steps[k]
            if lo <= prop <= hi and abs(prop + noise[k] - ybar) <= eps:
                if symmetric:
                    ratio = 1.0
                else:
                    # flat prior inside the bounds cancels; only the kernel remains
                    ratio = kernel.density(theta, prop) / kernel.density(prop, theta)
                if u[k] <= min(1.0, ratio):
                    theta = prop
            chain[done + k] = theta
        done += m
    return chain[burn_in:]
