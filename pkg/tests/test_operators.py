
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypoly.errors import RepMismatch, UnsupportedClass
from hypoly.operators import (
    MatrixKind,
    apply_A,
    apply_A_plus,
    apply_H,
    commutator_check,
    e_closed_form,
    e_levels,
    factorization_check,
    h_pointwise,
    h_pointwise_check,
    intertwining_check,
    isometry_check,
    ladder_chain,
    ladder_exactness,
    matrix_element_check,
    norm_ladder_check,
    shift_matrices,
)
from hypoly.polynomial import Polynomial
from hypoly.report import all_passed
from hypoly.specfun import LadderRep, build_psi_lm

from conftest import CLASSES, cls

LEG = cls("1-s2:-2:0")
SHIFT_GRID = ["one:-2:0", "one:-1:1", "s:-1:1", "s:-2:3", "1-s2:-2:0", "1-s2:-3:1"]


def test_A_plus_example():
    # sigma = 1 - s^2, tau = -2s, m = 1, q = 2: -(m sigma' + tau) q = 8 s
    out = apply_A_plus(LEG, 1, LadderRep(2, Polynomial([2.0])))
    assert out.m == 1 and out.p.allclose(Polynomial([0.0, 8.0]))


def test_A_example():
    out = apply_A(LEG, 0, build_psi_lm(LEG, 2, 0))
    assert out.m == 1 and out.p.allclose(Polynomial([0.0, 2.0]))


def test_rep_mismatch():
    with pytest.raises(RepMismatch):
        apply_A(LEG, 1, build_psi_lm(LEG, 2, 0))
    with pytest.raises(RepMismatch):
        apply_A_plus(LEG, 0, build_psi_lm(LEG, 2, 0))


def test_H_eigen(eq):
    for l in range(eq.cutoff().count(8)):
        for m in range(l + 1):
            rep = build_psi_lm(eq, l, m)
            assert apply_H(eq, m, rep).distance(rep * eq.lambda_l(l)) < 1e-10


def test_h_pointwise_agrees_with_factorised(eq):
    assert h_pointwise_check(eq).passed


def test_h_pointwise_direct():
    s = np.array([-0.7, 0.1, 0.6])
    rep = build_psi_lm(LEG, 3, 2)
    kap = np.sqrt(1 - s * s)
    want = LEG.lambda_l(3) * kap**2 * rep.p(s)
    np.testing.assert_allclose(h_pointwise(LEG, 2, rep, s), want, rtol=1e-10)


@pytest.mark.parametrize("c", CLASSES, ids=lambda c: c.spec)
def test_identity_checks(c):
    results = ladder_exactness(c) + factorization_check(c)
    for m in range(c.cutoff().count(13) - 1):
        results += intertwining_check(c, m)
    results.append(norm_ladder_check(c, 8))
    assert all_passed(results), [r.line() for r in results if not r.passed]


def test_intertwining_range():
    with pytest.raises(ValueError):
        intertwining_check(cls("s2:-7:1"), 3, 12)


def test_ladder_chain(eq):
    for l in range(eq.cutoff().count(8)):
        for m in range(l + 1):
            assert ladder_chain(eq, l, m).distance(build_psi_lm(eq, l, m)) < 1e-10


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from(CLASSES),
    st.integers(0, 5),
    st.lists(st.floats(-3, 3, allow_nan=False), min_size=1, max_size=6),
)
def test_factorisation_shift(c, m, coeffs):
    # A_m A_m^+ = A_{m+1}^+ A_{m+1} + lambda_{m+1} - lambda_m on any (m+1)-rep
    q = LadderRep(m + 1, Polynomial(coeffs))
    lhs = apply_A(c, m, apply_A_plus(c, m, q))
    rhs = apply_A_plus(c, m + 1, apply_A(c, m + 1, q)) + q * (c.lambda_l(m + 1) - c.lambda_l(m))
    scale = max(1.0, lhs.p.scale(), rhs.p.scale())
    assert (lhs - rhs).p.scale() <= 1e-10 * scale


def test_shift_matrix_entries():
    mats = shift_matrices(LEG, 0, 5)
    a = mats[MatrixKind.LOWER].entries
    np.testing.assert_allclose(np.diag(a, 1), np.sqrt([2.0, 6.0, 12.0, 20.0]), rtol=1e-15)
    np.testing.assert_array_equal(mats[MatrixKind.RAISE].entries, a.T)
    np.testing.assert_array_equal(mats[MatrixKind.SHIFT].entries, np.eye(5))
    # R_m = diag((-sigma''(m+n) - alpha)/2) = diag(n + 1)
    np.testing.assert_allclose(np.diag(mats[MatrixKind.NUMBER].entries), np.arange(1.0, 6.0))


@pytest.mark.parametrize("spec", SHIFT_GRID)
def test_e_levels_closed_form(spec):
    c = cls(spec)
    for m in range(3):
        assert np.array_equal(e_levels(c, m, 16), e_closed_form(c, m, 16))


@pytest.mark.parametrize("spec", SHIFT_GRID)
def test_commutators(spec):
    c = cls(spec)
    for m in range(3):
        results = commutator_check(c, m, 16)
        results += [matrix_element_check(c, m, 8), isometry_check(c, m, 8)]
        assert all_passed(results), [r.line() for r in results if not r.passed]


def test_heisenberg_diagonal():
    # sigma = 1: [a^+, a] = -2 R = alpha on the interior block
    c = cls("one:-2:0")
    mats = shift_matrices(c, 0, 10)
    a, ad = mats[MatrixKind.LOWER].entries, mats[MatrixKind.RAISE].entries
    comm = (ad @ a - a @ ad)[:9, :9]
    np.testing.assert_allclose(comm, c.alpha * np.eye(9), atol=1e-12)


def test_shift_rejects_other_kinds():
    with pytest.raises(UnsupportedClass):
        shift_matrices(cls("s2:-7:1"), 0, 8)
    with pytest.raises(ValueError):
        shift_matrices(LEG, 0, 1)
