"""Accept-until-N machinery shared by the rejection and PRC samplers.

Two execution modes:

* sequential: one stream; candidates are drawn in batches and the first
  ``n`` acceptances in draw order are kept.
* slotted: slot ``i`` of iteration ``t`` owns ``stream.child(t, i)`` and
  draws until its own first acceptance. Slots are independent, so any
  thread count yields the same result.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..errors import BudgetExceededError
from ..model import distance, simulate_summary

MAX_BATCH = 1 << 18
MAX_SLOT_BATCH = 1 << 16


class AcceptResult:
    __slots__ = ("values", "distances", "sim_calls")

    def __init__(self, values, distances, sim_calls):
        self.values = values
        self.distances = distances
        self.sim_calls = sim_calls

    @property
    def rate(self):
        return len(self.values) / self.sim_calls if self.sim_calls else 1.0


def _budget_error(calls, got, n, eps, iteration, budget):
    where = f"iteration {iteration}, " if iteration is not None else ""
    return BudgetExceededError(
        f"simulator budget of {budget} calls exceeded ({where}eps={eps:g}): "
        f"{calls} calls yielded {got} of {n} acceptances",
        sim_calls=calls, accepted=got, iteration=iteration, epsilon=eps,
    )


def accept_sequential(propose, spec, eps, n, budget, stream, rate_hint=0.5, iteration=None):
    """Draw candidates from ``propose(stream, size)`` until ``n`` are accepted."""
    values, dists = [], []
    got = calls = 0
    rate = max(rate_hint, 1e-9)
    while got < n:
        left = budget - calls
        if left <= 0:
            raise _budget_error(calls, got, n, eps, iteration, budget)
        need = n - got
        size = int(min(math.ceil(need / rate * 1.1) + 16, MAX_BATCH, left))
        cand = propose(stream, size)
        d = distance(simulate_summary(cand, spec, stream), spec.ybar)
        ok = np.flatnonzero(d <= eps)
        if ok.size >= need:
            ok = ok[:need]
            calls += int(ok[-1]) + 1
        else:
            calls += size
        values.append(cand[ok])
        dists.append(d[ok])
        got += ok.size
        rate = max(got / calls, 1.0 / (calls + 1))
    return AcceptResult(np.concatenate(values), np.concatenate(dists), calls)


def accept_one(propose, spec, eps, budget, stream, first_batch):
    """Slot worker: return (value, distance, calls) of the first acceptance.

    Batches start at ``first_batch`` and double. Returns value None when the
    budget runs out.
    """
    calls = 0
    size = first_batch
    while calls < budget:
        size = min(size, budget - calls)
        cand = propose(stream, size)
        d = distance(simulate_summary(cand, spec, stream), spec.ybar)
        ok = np.flatnonzero(d <= eps)
        if ok.size:
            k = int(ok[0])
            return float(cand[k]), float(d[k]), calls + k + 1
        calls += size
        size = min(2 * size, MAX_SLOT_BATCH)
    return None, math.nan, calls


def first_batch_size(rate_hint):
    return int(min(max(math.ceil(1.0 / max(rate_hint, 1e-9)), 4), 4096))


def accept_slotted(propose, spec, eps, n, budget, streams, rate_hint, executor=None,
                   iteration=None, after=None):
    """Run ``n`` slot workers; ``streams[i]`` belongs to slot ``i``.

    ``after(value, stream)``, if given, runs in the worker right after the
    slot's acceptance using the same stream (used for perturbation).
    """
    b0 = first_batch_size(rate_hint)

    def work(i):
        s = streams[i]
        v, d, c = accept_one(propose, spec, eps, budget, s, b0)
        moved = after(v, s) if (after is not None and v is not None) else None
        return v, d, c, moved

    if executor is None:
        out = [work(i) for i in range(n)]
    else:
        out = list(executor.map(work, range(n)))
    calls = sum(o[2] for o in out)
    got = sum(o[0] is not None for o in out)
    if got < n or calls > budget:
        raise _budget_error(calls, got, n, eps, iteration, budget)
    res = AcceptResult(np.array([o[0] for o in out]), np.array([o[1] for o in out]), calls)
    moved = np.array([o[3] for o in out]) if after is not None else None
    return res, moved


def make_executor(threads):
    if threads is None or threads <= 1:
        return None
    return ThreadPoolExecutor(max_workers=threads)
