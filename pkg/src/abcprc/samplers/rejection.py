from __future__ import annotations

from ..errors import InvalidInputError
from ..model import GaussianModelSpec, UniformPrior
from ..rng import as_stream
from ._engine import accept_sequential, accept_slotted, make_executor
from .particles import DEFAULT_MAX_SIM_CALLS, ParticleSet


def _prior_proposal(prior):
    def propose(stream, size):
        return prior.sample(stream, size)
    return propose


def abc_rejection(spec: GaussianModelSpec, prior: UniformPrior, eps: float, n_accept: int,
                  guard: int = DEFAULT_MAX_SIM_CALLS, rng=0, threads=None) -> ParticleSet:
    """Plain rejection ABC: draw from the prior, keep draws whose simulated
    summary lands within ``eps`` of the observed one.

    The returned set is equally weighted; ``sim_calls`` on it holds the
    number of simulator calls spent. Raises BudgetExceededError once more
    than ``guard`` calls would be needed.
    """
    if not eps > 0:
        raise InvalidInputError(f"eps must be > 0, got {eps}")
    if n_accept < 1:
        raise InvalidInputError("n_accept must be >= 1")
    stream = as_stream(rng)
    propose = _prior_proposal(prior)
    if threads is None:
        res = accept_sequential(propose, spec, eps, n_accept, guard, stream)
    else:
        streams = [stream.child(1, i) for i in range(n_accept)]
        executor = make_executor(threads)
        try:
            res, _ = accept_slotted(propose, spec, eps, n_accept, guard, streams,
                                    rate_hint=0.5, executor=executor)
        finally:
            if executor is not None:
                executor.shutdown()
    return ParticleSet.equal(res.values, iteration=1, distances=res.distances,
                             sim_calls=res.sim_calls)
