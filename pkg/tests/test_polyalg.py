import math

import mpmath
import numpy as np
import numpy.polynomial.hermite as H
import numpy.polynomial.laguerre as L
import numpy.polynomial.legendre as Leg
import pytest
from scipy import special

from hypoly.errors import CutoffExceeded, DegenerateRecurrence
from hypoly.polyalg import (
    build_psi,
    classical_oracle,
    hermite,
    jacobi,
    laguerre,
    ode_relative_residual,
    oracle_disagreement,
    real_zeros,
    rodrigues_oracle,
    three_term,
    zeros_inside,
)
from hypoly.polynomial import Polynomial, relative_distance

from conftest import cls


def monic(c):
    c = np.asarray(c, dtype=float)
    return Polynomial(c / c[-1])


def test_spec_examples():
    assert build_psi(cls("one:-2:0"), 2).allclose(Polynomial([-0.5, 0, 1]))
    assert build_psi(cls("s:-1:1"), 1).allclose(Polynomial([-1, 1]))
    assert build_psi(cls("1-s2:-2:0"), 2).allclose(Polynomial([-1 / 3, 0, 1]))


def test_against_numpy_families():
    # independent references: numpy's Hermite, Laguerre and Legendre bases
    for l in range(9):
        e = np.zeros(l + 1)
        e[l] = 1
        assert relative_distance(build_psi(cls("one:-2:0"), l), monic(H.herm2poly(e))) < 1e-12
        assert relative_distance(build_psi(cls("s:-1:1"), l), monic(L.lag2poly(e))) < 1e-12
        assert relative_distance(build_psi(cls("1-s2:-2:0"), l), monic(Leg.leg2poly(e))) < 1e-12


def test_jacobi_against_scipy():
    for n, a, b in [(3, 0.5, -0.25), (5, 1.0, 2.0), (4, -0.5, 0.3)]:
        ref = special.jacobi(n, a, b).coeffs[::-1]
        assert relative_distance(jacobi(n, a, b), Polynomial(ref)) < 1e-12


def test_generalised_laguerre_against_scipy():
    for n, p in [(3, 0.0), (4, 2.5), (6, -0.3)]:
        ref = special.genlaguerre(n, p).coeffs[::-1]
        assert relative_distance(laguerre(n, p), Polynomial(ref)) < 1e-11
    assert hermite(2).allclose(Polynomial([-2, 0, 4]))


def test_rodrigues_examples():
    assert rodrigues_oracle(cls("one:-2:0"), 2).allclose(Polynomial([-0.5, 0, 1]))
    assert rodrigues_oracle(cls("s:-1:1"), 0) == Polynomial.one()
    assert rodrigues_oracle(cls("1-s2:-2:0"), 1).allclose(Polynomial([0, 1]))


def test_classical_examples():
    assert classical_oracle(cls("one:-2:0"), 2).allclose(Polynomial([-0.5, 0, 1]))
    assert classical_oracle(cls("s:-1:1"), 1).allclose(Polynomial([-1, 1]))
    # (s/beta) L_1^{-8}(beta/s) with L_1^p(x) = 1 + p - x: monic s + 1/(-7)
    assert classical_oracle(cls("s2:-7:1"), 1).allclose(Polynomial([-1 / 7, 1]))


@pytest.mark.parametrize("spec", ["s2+1:-4:1", "s2+1:-9:2.5"])
def test_complex_jacobi_oracle_against_mpmath(spec):
    # i^l P_l^{(a, b)}(i s) with conjugate complex indices, evaluated by mpmath
    c = cls(spec)
    a = (c.alpha + 1j * c.beta) / 2 - 1
    b = (c.alpha - 1j * c.beta) / 2 - 1
    for l in range(1, c.cutoff().count(6)):
        # leading coefficient of P_l^{(a,b)} is (l+a+b+1)_l / (2^l l!), times i^l i^l
        lead = complex(mpmath.rf(l + a + b + 1, l)) / (2**l * math.factorial(l)) * (-1) ** l
        for s in (-1.3, 0.2, 2.0):
            v = complex(mpmath.jacobi(l, a, b, 1j * s)) * 1j**l / lead
            assert abs(v.imag) < 1e-12 * max(1.0, abs(v.real))
            assert classical_oracle(c, l)(s) == pytest.approx(v.real, rel=1e-12, abs=1e-12)


def test_three_routes_agree(eq):
    for l in range(eq.cutoff().count(9)):
        for name, gap in oracle_disagreement(eq, l).items():
            assert gap < 1e-9, (name, l)


def test_ode_and_degree(eq):
    for l in range(eq.cutoff().count(12)):
        p = build_psi(eq, l)
        assert p.degree == l and p.leading == 1.0
        assert ode_relative_residual(eq, l) < 1e-12


def test_pointwise_ode_residual(eq):
    rng = np.random.default_rng(7)
    s = rng.uniform(-3, 3, 25)
    for l in range(eq.cutoff().count(10)):
        p = build_psi(eq, l)
        r = eq.sigma(s) * p.derivative(2)(s) + eq.tau(s) * p.derivative()(s) + eq.lambda_l(l) * p(s)
        scale = float(np.max(np.abs(p.coeffs)))
        assert np.all(np.abs(r) <= 1e-10 * (1 + np.abs(s)) ** l * scale * (1 + abs(eq.lambda_l(l))))


def test_zeros_inside(eq):
    for l in range(1, eq.cutoff().count(12)):
        roots, ok = zeros_inside(eq, l)
        assert ok, (l, roots)
        p = build_psi(eq, l)
        ref = np.sort(np.polynomial.polynomial.polyroots(p.coeffs).real)
        np.testing.assert_allclose(roots, ref, rtol=1e-7, atol=1e-9)


def test_real_zeros_known():
    roots = real_zeros(Polynomial.from_roots([-1.5, 0.1, 0.2, 7.0]))
    np.testing.assert_allclose(roots, [-1.5, 0.1, 0.2, 7.0], atol=1e-11)
    assert real_zeros(Polynomial([1, 0, 1])) == []


def test_cutoff_enforced():
    c = cls("s2:-7:1")
    build_psi(c, 3)
    with pytest.raises(CutoffExceeded):
        build_psi(c, 4)
    # forcing past the cutoff still gives an ODE solution while the pivots are nonzero
    p = build_psi(c, 4, force=True)
    assert p.degree == 4


def test_degenerate_recurrence():
    # lambda_l - lambda_k vanishes when l + k = 1 - alpha: l=5, k=3 for alpha=-7
    with pytest.raises(DegenerateRecurrence):
        build_psi(cls("s2:-7:1"), 5, force=True)


def test_three_term(eq):
    for l in range(1, eq.cutoff().count(11) - 1):
        _, _, res = three_term(eq, l)
        assert res < 1e-9


def test_three_term_hermite_values():
    # monic Hermite: s p_l = p_{l+1} + (l/2) p_{l-1}
    for l in range(1, 6):
        b, g, _ = three_term(cls("one:-2:0"), l)
        assert abs(b) < 1e-12
        assert g == pytest.approx(l / 2, rel=1e-10)
