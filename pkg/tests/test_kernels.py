import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from abcprc.errors import DegenerateWeightsError, InvalidInputError
from abcprc.kernels import GaussianKernel, corrected_weights, kernel_density, perturb
from abcprc.rng import derive

finite = st.floats(-50, 50, allow_nan=False)
particles = st.lists(finite, min_size=1, max_size=12)


def scalar_normal_pdf(x, m, v):
    # written independently of kernels.kernel_density
    return math.exp(-((x - m) ** 2) / (2 * v)) / math.sqrt(2 * math.pi * v)


def test_kernel_variance_must_be_positive():
    with pytest.raises(InvalidInputError):
        GaussianKernel(0.0)
    with pytest.raises(InvalidInputError):
        GaussianKernel(-1.0)


def test_perturb_calibration():
    k = GaussianKernel(0.01)
    x = k.perturb(np.ones(100_000), derive(3))
    assert abs(x.mean() - 1.0) < 0.05 * 0.1
    assert abs(x.var() - 0.01) < 0.05 * 0.01


def test_perturb_offset_and_determinism():
    k = GaussianKernel(1.0, mean_offset=2.0)
    assert perturb(0.0, k, derive(9)) == perturb(0.0, k, derive(9))
    assert abs(k.perturb(np.zeros(50_000), derive(1)).mean() - 2.0) < 0.02


def test_kernel_density_values():
    assert kernel_density(0, 0, 1) == pytest.approx(1 / math.sqrt(2 * math.pi), rel=1e-15)
    assert kernel_density(0, 0, 1) == pytest.approx(0.3989423, abs=1e-7)
    assert kernel_density(1, 0, 1) == kernel_density(0, 1, 1)


@given(c=finite, v=st.floats(1e-3, 1e2), dx=st.floats(1e-3, 10))
def test_density_mode_at_center(c, v, dx):
    assert kernel_density(c, c, v) >= kernel_density(c + dx, c, v)
    assert kernel_density(c, c, v) >= kernel_density(c - dx, c, v)


@pytest.mark.parametrize("c, v", [(0.0, 1.0), (4.7, 0.01), (-3.0, 10.0)])
def test_density_normalisation(c, v):
    sd = math.sqrt(v)
    area, _ = integrate.quad(lambda x: kernel_density(x, c, v), c - 8 * sd, c + 8 * sd,
                             epsabs=1e-12, epsrel=1e-12)
    assert abs(area - 1.0) < 1e-6


def test_weights_symmetric_case():
    w = corrected_weights([0.0, 0.0], [0.0, 0.0], GaussianKernel(1.0))
    assert w[0] == w[1]


def test_single_weight_is_sqrt_two_pi():
    w = corrected_weights([1.0], [1.0], GaussianKernel(1.0))
    assert w[0] == pytest.approx(math.sqrt(2 * math.pi), rel=1e-14)
    assert w[0] == pytest.approx(2.5066283, abs=1e-7)


def test_weight_ratio_against_scalar_oracle():
    w = corrected_weights([0.0, 10.0], [0.0, 0.0], GaussianKernel(1.0))
    s1 = sum(scalar_normal_pdf(0.0, c, 1.0) for c in (0.0, 0.0))
    s2 = sum(scalar_normal_pdf(10.0, c, 1.0) for c in (0.0, 0.0))
    assert w[1] / w[0] == pytest.approx(s1 / s2, rel=1e-12)
    assert w[1] / w[0] == pytest.approx(math.exp(50), rel=1e-12)


def test_degenerate_weight_names_particle():
    with pytest.raises(DegenerateWeightsError) as err:
        corrected_weights([0.0, 1e6], [0.0], GaussianKernel(1.0))
    assert err.value.index == 1
    assert "particle 1" in str(err.value)


def test_empty_sources_rejected():
    with pytest.raises(InvalidInputError):
        corrected_weights([0.0], [], GaussianKernel(1.0))


@given(perturbed=particles, sources=particles, xi2=st.floats(0.5, 20), data=st.data())
def test_weights_positive_and_permutation_equivariant(perturbed, sources, xi2, data):
    k = GaussianKernel(xi2)
    try:
        w = corrected_weights(perturbed, sources, k)
    except DegenerateWeightsError:
        return
    assert np.all(np.isfinite(w)) and np.all(w > 0)
    perm_p = data.draw(st.permutations(range(len(perturbed))))
    perm_s = data.draw(st.permutations(range(len(sources))))
    wp = corrected_weights(np.asarray(perturbed)[perm_p], sources, k)
    assert np.allclose(wp, w[perm_p], rtol=1e-12, atol=0)
    ws = corrected_weights(perturbed, np.asarray(sources)[perm_s], k)
    assert np.allclose(ws, w, rtol=1e-12, atol=0)


@given(perturbed=particles, sources=particles)
def test_duplicating_sources_halves_weights(perturbed, sources):
    k = GaussianKernel(4.0)
    try:
        w = corrected_weights(perturbed, sources, k)
    except DegenerateWeightsError:
        return
    w2 = corrected_weights(perturbed, sources + sources, k)
    assert np.allclose(w2, w / 2, rtol=1e-12, atol=0)


def test_chunked_sum_matches_direct():
    rng = derive(4)
    p, s = rng.gaussian(0, 1, 2500), rng.gaussian(0, 1, 300)
    k = GaussianKernel(0.3)
    direct = 1.0 / np.array([sum(scalar_normal_pdf(x, c, 0.3) for c in s) for x in p[:50]])
    assert np.allclose(corrected_weights(p, s, k)[:50], direct, rtol=1e-12)


def test_subnormal_density_sum_is_degenerate():
    # density ~1e-309 is nonzero but its reciprocal overflows
    with pytest.raises(DegenerateWeightsError) as err:
        corrected_weights([0.0, 37.7], [0.0], GaussianKernel(1.0))
    assert err.value.index == 1
