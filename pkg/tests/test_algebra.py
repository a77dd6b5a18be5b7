import pytest

from hypoly.algebra import (
    AlgebraKind,
    SurfaceRep,
    algebra_kind,
    apply_L0,
    apply_L_minus,
    apply_L_plus,
    canonical,
    casimir_check,
    casimir_eigenvalue,
    commutator_case_check,
    commutator_coefficient,
    ground_lowering,
    jacobi_identity_check,
    k_form_check,
    k_normal_form,
    lowering_string,
    matrix_element_check,
    nilpotency_check,
    phi_value,
)
from hypoly.errors import CutoffExceeded, NotDivisible
from hypoly.polynomial import Polynomial
from hypoly.report import all_passed

from conftest import CLASSES, cls

LEG = cls("1-s2:-2:0")


def test_algebra_tags():
    assert algebra_kind(cls("one:-2:0")) is AlgebraKind.HEISENBERG_WEYL
    assert algebra_kind(cls("s:-1:1")) is AlgebraKind.HEISENBERG_WEYL
    assert algebra_kind(LEG) is AlgebraKind.SU2
    for spec in ("s2-1:-2:3", "s2:-7:1", "s2+1:-4:0"):
        assert algebra_kind(cls(spec)) is AlgebraKind.SU11


def test_commutator_coefficients():
    assert commutator_coefficient(cls("one:-2:0"), 3) == 2.0
    # su(2): 2(m - (alpha + 2)/2) = 2m for Legendre
    assert commutator_coefficient(LEG, 3) == 6.0
    # su(1,1): -2(m + (alpha - 2)/2) at alpha = -7, m = 1
    assert commutator_coefficient(cls("s2:-7:1"), 1) == pytest.approx(7.0)


def test_bracket_on_arbitrary_rep(eq):
    # [L+, L-] = ((1 - m) sigma'' - alpha) I holds on any (m, p)
    for m in (-2, 0, 1, 3):
        r = SurfaceRep(m, Polynomial([0.3, -1.0, 2.0, 0.5]))
        lhs = apply_L_plus(eq, apply_L_minus(eq, r)) - apply_L_minus(eq, apply_L_plus(eq, r))
        want = r * ((1 - m) * eq.sigma2 - eq.alpha)
        gap = (lhs.poly - want.poly).scale()
        assert gap <= 1e-12 * max(1.0, apply_L_plus(eq, apply_L_minus(eq, r)).poly.scale())


def test_L0():
    r = SurfaceRep(3, Polynomial([1.0, 2.0]))
    assert apply_L0(r).poly.allclose(Polynomial([3.0, 6.0]))


@pytest.mark.parametrize("c", CLASSES, ids=lambda c: c.spec)
def test_case_table_and_k_forms(c):
    results = commutator_case_check(c) + k_form_check(c) + [jacobi_identity_check(c)]
    results += matrix_element_check(c)
    assert all_passed(results), [r.line() for r in results if not r.passed]


def test_k_forms():
    kf = k_normal_form(cls("one:-4:0"))
    assert kf.c_plus == pytest.approx(0.5) and kf.c_minus == pytest.approx(-0.5)
    assert (kf.bracket_k0, kf.bracket_one) == (0.0, -1.0)
    assert k_normal_form(LEG).shift == 0.0
    assert k_normal_form(cls("s2:-7:1")).shift == pytest.approx(-4.5)


def test_casimir_values():
    assert phi_value(LEG, 1) == 1.0
    assert casimir_eigenvalue(LEG, 1) == 2.0
    assert phi_value(cls("s2:-7:1"), 2) == -2.5
    assert casimir_eigenvalue(cls("s2:-7:1"), 2) == pytest.approx(-3.75)
    with pytest.raises(ValueError):
        phi_value(cls("one:-2:0"), 1)


@pytest.mark.parametrize("spec", ["1-s2:-2:0", "1-s2:-3:1", "s2-1:-2:3", "s2-1:-1:2", "s2:-7:1", "s2:-9:2",
                                  "s2+1:-4:0", "s2+1:-4:1"])
def test_casimir_checks(spec):
    c = cls(spec)
    for l in range(c.cutoff().count(7)):
        results = casimir_check(c, l)
        assert all_passed(results), [r.line() for r in results if not r.passed]


def test_casimir_errors():
    with pytest.raises(ValueError):
        casimir_check(cls("s:-1:1"), 1)
    with pytest.raises(CutoffExceeded):
        casimir_check(cls("s2:-7:1"), 4)


def test_legendre_nilpotency():
    assert all_passed(nilpotency_check(LEG, 6))
    chain = lowering_string(LEG, 2, 5)
    assert chain[-1].is_zero(1e-12 * max(r.poly.scale() for r in chain))
    assert not chain[-2].is_zero()


def test_reflection():
    # (-1, sigma * 3) = kappa^{-1} sigma 3 = kappa * 3
    m, q = SurfaceRep(-1, LEG.sigma_poly * 3.0).reflected(LEG)
    assert m == 1 and q.allclose(Polynomial([3.0]))
    with pytest.raises(NotDivisible):
        SurfaceRep(-1, Polynomial([0.0, 1.0])).reflected(LEG)


def test_ground_lowering():
    r, vanishes = ground_lowering(LEG, 0)
    assert vanishes
    r, vanishes = ground_lowering(LEG, 2)
    assert not vanishes
    # an m = -1 rep: kappa^{-1} sigma q = kappa q with q = -dPsi_2/ds
    m, q = r.reflected(LEG)
    assert m == 1 and SurfaceRep(1, q).distance(canonical(LEG, 2, 1) * -1.0) < 1e-12
