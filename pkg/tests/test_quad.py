import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate as si

from hypoly.errors import QuadratureDivergence
from hypoly.quad import QuadratureSpec, Transform, integrate, integrate_weighted, moment
from hypoly.polynomial import Polynomial

from conftest import cls


def test_gaussian_line():
    assert integrate(lambda s: np.exp(-s * s), -math.inf, math.inf) == pytest.approx(math.sqrt(math.pi), rel=1e-12)


def test_half_line_and_finite():
    assert integrate(lambda s: np.exp(-s), 0.0, math.inf) == pytest.approx(1.0, rel=1e-12)
    assert integrate(np.cos, 0.0, math.pi / 2) == pytest.approx(1.0, rel=1e-12)
    assert integrate(np.cos, math.pi / 2, 0.0) == pytest.approx(-1.0, rel=1e-12)
    assert integrate(np.cos, 1.0, 1.0) == 0.0


def test_endpoint_singularity_with_distances():
    # int_0^1 (s(1-s))^{-1/2} ds = pi; distances avoid cancellation at the ends
    f = lambda s, da, db: 1.0 / np.sqrt(da * db)
    assert integrate(f, 0.0, 1.0, with_distances=True) == pytest.approx(math.pi, rel=1e-10)


def test_full_output():
    res = integrate(lambda s: np.exp(-s), 0.0, math.inf, full_output=True)
    assert res.value == pytest.approx(1.0, rel=1e-12)
    assert res.n_eval > 0 and res.depth >= 3 and res.error < 1e-10


def test_s2_moments_and_divergence():
    # sigma = s^2, tau = -7 s + 1: rho = s^-9 exp(-1/s), int s^k rho = Gamma(8 - k)
    c = cls("s2:-7:1")
    for k in range(8):
        assert moment(c, k) == pytest.approx(math.gamma(8 - k), rel=1e-9)
    with pytest.raises(QuadratureDivergence):
        moment(c, 8)


def test_divergent_integrands():
    with pytest.raises(QuadratureDivergence):
        integrate(lambda s: np.ones_like(s), 0.0, math.inf)
    with pytest.raises(QuadratureDivergence):
        integrate(lambda s: 1.0 / s, 0.0, 1.0)


@pytest.mark.parametrize("spec", ["one:-1:1", "s:-2:3", "1-s2:-3:1", "s2-1:-2:3", "s2+1:-4:1"])
def test_moments_match_scipy(spec):
    c = cls(spec)
    a, b = c.interval
    # moments beyond gamma_bound diverge
    for k in [k for k in range(4) if k < c.gamma_bound() - 0.5]:
        ref, _ = si.quad(lambda x: x**k * c.weight(x), a, b, epsabs=0, epsrel=1e-12, limit=200)
        assert moment(c, k) == pytest.approx(ref, rel=1e-8, abs=1e-12)


def test_weighted_product_matches_moment():
    c = cls("s:-1:1")
    p = Polynomial([1.0, -2.0, 1.0])
    # (1 - 2s + s^2) e^{-s}: 1 - 2 + 2 = 1
    assert integrate_weighted(c, [p]) == pytest.approx(1.0, rel=1e-12)


def test_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(rel_tol=0.0)
    forced = QuadratureSpec(transform=Transform.FINITE_AFFINE)
    assert integrate(np.cos, 0.0, math.pi / 2, forced) == pytest.approx(1.0, rel=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.3, 4.0), st.floats(-2.0, 2.0))
def test_shifted_gaussian(width, centre):
    f = lambda s: np.exp(-((s - centre) / width) ** 2)
    assert integrate(f, -math.inf, math.inf) == pytest.approx(width * math.sqrt(math.pi), rel=1e-9)


@settings(max_examples=30, deadline=None)
@given(st.floats(0.5, 6.0))
def test_gamma_integral(a):
    f = lambda s: s ** (a - 1.0) * np.exp(-s)
    assert integrate(f, 0.0, math.inf) == pytest.approx(math.gamma(a), rel=1e-9)
