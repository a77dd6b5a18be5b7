import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hypoly.eqclass import Cutoff, SigmaKind, parse_class_spec, validate
from hypoly.errors import DomainError, ParameterOutOfRange

from conftest import cls


def test_validate_accepts_table_rows():
    c = validate(SigmaKind.ONE, -2, 0)
    assert c.interval == (-math.inf, math.inf)
    assert validate("1-s2", -2, 0).interval == (-1.0, 1.0)
    assert validate("s2-1", -2, 3).interval == (1.0, math.inf)


@pytest.mark.parametrize("kind,alpha,beta,rule", [
    ("s", -1, 0, "beta > 0"),
    ("one", 0, 0, "alpha < 0"),
    ("1-s2", -2, 2, "alpha < beta < -alpha"),
    ("s2-1", -2, 2, "-beta < alpha < 0"),
    ("s2", -1, -1, "beta > 0"),
    ("s2+1", 1, 0, "alpha < 0"),
])
def test_validate_names_violated_rule(kind, alpha, beta, rule):
    with pytest.raises(ParameterOutOfRange, match=rule.replace("+", r"\+")):
        validate(kind, alpha, beta)


def test_s2_plus_one_accepts_any_beta():
    for beta in (-50.0, 0.0, 3.5):
        validate("s2+1", -1.5, beta)


def test_bad_specs():
    for text in ("one:-2", "cube:-1:0", "one:x:0", "one:nan:0"):
        with pytest.raises(ParameterOutOfRange):
            parse_class_spec(text)


def test_sigma_tau_kappa():
    c = cls("1-s2:-2:0")
    assert c.sigma(0.0) == 1.0 and c.kappa(0.0) == 1.0
    assert cls("s2+1:-4:0").sigma(1.0) == 2.0
    with pytest.raises(DomainError):
        cls("s2-1:-2:3").kappa(1.0)
    assert c.tau(0.5) == -1.0


def test_weights():
    assert cls("one:-2:0").weight(0.0) == pytest.approx(1.0, rel=1e-15)
    c = cls("1-s2:-2:0")
    np.testing.assert_allclose(c.weight(np.linspace(-0.9, 0.9, 7)), 1.0, rtol=1e-15)
    assert cls("s:-1:2").weight(3.0) == pytest.approx(3.0 * math.exp(-3.0), rel=1e-14)
    with pytest.raises(DomainError):
        cls("s:-1:2").weight(-1.0)


def test_weight_m():
    c = cls("s:-1:1")
    assert c.weight_m(0, 1.7) == pytest.approx(c.weight(1.7), rel=1e-15)
    assert cls("1-s2:-2:0").weight_m(1, 0.0) == pytest.approx(1.0)
    assert c.weight_m(2, 2.0) == pytest.approx(4.0 * math.exp(-2.0), rel=1e-14)


def test_eigenvalues():
    c = cls("one:-2:0")
    assert [c.lambda_l(l) for l in range(4)] == [0, 2, 4, 6]
    s2 = cls("s2:-7:1")
    assert s2.lambda_l(4) == 16
    assert all(parse_class_spec(x).lambda_l(0) == 0 for x in ("s:-1:1", "s2+1:-4:1"))


def test_cutoffs():
    assert not cls("one:-3:0").cutoff().is_finite
    assert cls("s2:-7:1").cutoff() == Cutoff(4.0)
    c = cls("s2+1:-1:0").cutoff()
    assert c.value == 1.0 and c.max_index == 0 and c.admits(0) and not c.admits(1)
    assert Cutoff(4.5).max_index == 4 and Cutoff(4.0).max_index == 3


def test_lambda_increasing(eq):
    ls = range(eq.cutoff().count(20))
    lam = [eq.lambda_l(l) for l in ls]
    assert all(b > a for a, b in zip(lam, lam[1:]))


def test_weight_positive_and_log_domain(eq):
    a, b = eq.interval
    lo = a + 1e-6 if math.isfinite(a) else -40.0
    hi = b - 1e-6 if math.isfinite(b) else 40.0
    s = np.linspace(lo, hi, 501)
    lw = eq.log_weight(s)
    assert np.all(np.isfinite(lw))


@given(st.floats(-10, -0.05), st.floats(-5, 5))
def test_one_minus_s2_constraint_is_exact(alpha, beta):
    ok = alpha < beta < -alpha
    if ok:
        validate("1-s2", alpha, beta)
    else:
        with pytest.raises(ParameterOutOfRange):
            validate("1-s2", alpha, beta)
