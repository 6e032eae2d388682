import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from abcprc.errors import InvalidInputError
from abcprc.model import (
    GaussianModelSpec,
    UniformPrior,
    analytic_posterior,
    distance,
    simulate_summary,
    summarize,
)
from abcprc.rng import derive

reals = st.floats(-1e3, 1e3, allow_nan=False)
pos = st.floats(1e-3, 1e3)


def test_summarize():
    assert summarize([1, 2, 3]) == 2.0
    assert summarize([5.0]) == 5.0
    with pytest.raises(InvalidInputError):
        summarize([])


def test_from_observations():
    spec = GaussianModelSpec.from_observations([1.0, 2.0, 6.0], sigma2=1.0)
    assert spec.ybar == 3.0 and spec.n == 3


def test_paper_spec_posterior():
    post = analytic_posterior(GaussianModelSpec.paper())
    assert post.mean == 4.786624
    assert post.variance == 0.9


@pytest.mark.parametrize(
    "kw, mean, var",
    [
        (dict(mu0=0, tau2=1, sigma2=1, n=1, ybar=2), 1.0, 0.5),
        (dict(mu0=3, tau2=math.inf, sigma2=4, n=16, ybar=7), 7.0, 0.25),
    ],
)
def test_posterior_examples(kw, mean, var):
    post = analytic_posterior(GaussianModelSpec(**kw))
    assert post.mean == pytest.approx(mean, abs=1e-15)
    assert post.variance == pytest.approx(var, abs=1e-15)


@pytest.mark.parametrize(
    "kw",
    [dict(ybar=0, n=10, sigma2=0), dict(ybar=0, n=0, sigma2=1), dict(ybar=0, n=3, sigma2=1, tau2=0),
     dict(ybar=0, n=2.5, sigma2=1)],
)
def test_invalid_spec(kw):
    with pytest.raises(InvalidInputError):
        GaussianModelSpec(**kw)


@given(mu0=reals, tau2=pos, sigma2=pos, n=st.integers(1, 1000), ybar=reals)
def test_precision_additivity(mu0, tau2, sigma2, n, ybar):
    post = analytic_posterior(GaussianModelSpec(ybar=ybar, n=n, sigma2=sigma2, mu0=mu0, tau2=tau2))
    assert 1.0 / post.variance == pytest.approx(1.0 / tau2 + n / sigma2, rel=1e-12)


@given(sigma2=pos, n=st.integers(1, 1000), ybar=reals)
def test_flat_prior_limit(sigma2, n, ybar):
    flat = analytic_posterior(GaussianModelSpec(ybar=ybar, n=n, sigma2=sigma2))
    assert flat.mean == ybar and flat.variance == sigma2 / n
    errs = []
    for k in (4, 8, 12):
        p = analytic_posterior(GaussianModelSpec(ybar=ybar, n=n, sigma2=sigma2, mu0=1.0, tau2=10.0**k))
        errs.append(abs(p.variance - flat.variance) + abs(p.mean - flat.mean))
    assert errs[0] >= errs[1] >= errs[2]
    assert errs[2] < 1e-6 * (1 + abs(ybar))


def test_simulate_summary_calibration():
    spec = GaussianModelSpec.paper()
    theta = 4.786624
    s = simulate_summary(np.full(100_000, theta), spec, derive(11))
    m = s.size
    assert abs(s.mean() - theta) < 4 * math.sqrt(0.9 / m)
    assert abs(s.var() - 0.9) < 0.05 * 0.9
    assert abs(s.var() - 0.9) < 4 * 0.9 * math.sqrt(2 / m)


def test_simulate_summary_deterministic():
    spec = GaussianModelSpec.paper()
    assert simulate_summary(1.0, spec, derive(5)) == simulate_summary(1.0, spec, derive(5))
    assert isinstance(simulate_summary(1.0, spec, derive(5)), float)


def test_distance():
    assert distance(4.786624, 4.786624) == 0.0
    assert distance(5.0, 4.0) == 1.0
    assert distance(3.0, 5.5) == 2.5
    assert np.array_equal(distance(np.array([1.0, 3.0]), 2.0), [1.0, 1.0])


@given(a=reals, b=reals)
def test_distance_symmetry(a, b):
    assert distance(a, b) == distance(b, a)
    assert (distance(a, b) == 0) == (a == b)


def test_uniform_prior():
    prior = UniformPrior()
    x = prior.sample(derive(1), 10_000)
    assert x.min() >= -15 and x.max() <= 15
    assert np.all(prior.density([-15, 0, 15]) == 1 / 30)
    assert prior.density(15.1) == 0
    with pytest.raises(InvalidInputError):
        UniformPrior(1, 1)


def test_simulate_summary_broadcasts():
    s = simulate_summary(np.zeros((200, 50)), GaussianModelSpec.paper(), derive(13))
    assert s.shape == (200, 50)
