"""Coherent states of the shift operator ``a_m`` and the special functions they need.

Two families are covered, both expanded in ``|n> = Psi~_{m+n,m}``:

* sigma in {1, s}: ``c_n = exp(|z|^2/(2 alpha)) z^n / sqrt(n! (-alpha)^n)``,
  normalised, resolving the identity with the flat measure
  ``d^2 z / (pi (-alpha))``;
* sigma = 1 - s^2: ``c_n = sqrt(Gamma(c)) z^n / sqrt(n! Gamma(n + c))`` with
  ``c = 2m - alpha`` and ``<z|z> = 0F1(c; |z|^2)``, resolving the identity with
  ``2 r^c K_{c-1}(2r) / (pi Gamma(c)) dr dtheta``.

``K_nu`` is computed from the ascending series of ``I_{+-nu}`` through the
reflection formula.  The two series cancel catastrophically for large
arguments, so they are summed in multiprecision with the working precision
raised by the number of digits lost.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from typing import Callable

import mpmath
import numpy as np

from .eqclass import EquationClass, SigmaKind
from .errors import DomainError, PoleError, TruncationInsufficient, UnsupportedClass
from .operators import MatrixKind, shift_matrices
from .quad import DEFAULT_SPEC, QuadratureSpec, integrate
from .report import CheckResult, Tracker

# Lanczos approximation, g = 7, n = 9
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

TAIL_BOUND = 1e-14
INTEGER_GAP = 1e-8
INTEGER_EPS = 1e-6
R_CAP = 50.0
DENSITY_FLOOR = 1e-18


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def _lanczos_sum(x: float) -> tuple[float, float]:
    """``(t, A)`` with ``Gamma(x+1) = sqrt(2 pi) t^(x+1/2) e^-t A``."""
    acc = _LANCZOS[0]
    for i, c in enumerate(_LANCZOS[1:], start=1):
        acc += c / (x + i)
    return x + _LANCZOS_G + 0.5, acc


def lgamma(x: float) -> float:
    """``log|Gamma(x)|``; reflection below 1/2."""
    if _is_nonpositive_integer(x):
        raise PoleError(f"Gamma has a pole at {x}")
    if x < 0.5:
        return math.log(math.pi / abs(math.sin(math.pi * x))) - lgamma(1.0 - x)
    t, acc = _lanczos_sum(x - 1.0)
    return _HALF_LOG_2PI + (x - 0.5) * math.log(t) - t + math.log(acc)


def gamma(x: float) -> float:
    """``Gamma(x)``, infinite above about 171.6."""
    if _is_nonpositive_integer(x):
        raise PoleError(f"Gamma has a pole at {x}")
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    # the Lanczos form loses accuracy through t^(x-1/2) for large x, so it is
    # only used on [0.5, 8) and the rest comes from the recurrence
    k = max(0, math.ceil(x - 8.0))
    y = x - k
    t, acc = _lanczos_sum(y - 1.0)
    out = math.sqrt(2.0 * math.pi) * acc * t ** (y - 0.5) * math.exp(-t)
    for i in range(k):
        out *= y + i
    return out


def _check_c(c: float):
    if _is_nonpositive_integer(c):
        raise PoleError(f"0F1 is undefined for c = {c}")


def _hyp0f1_terms(c: float, z: float):
    term = 1.0
    k = 0
    yield term
    while True:
        term *= z / ((c + k) * (k + 1))
        k += 1
        yield term


def hyp0f1(c: float, z: float) -> float:
    """``sum_k z^k / ((c)_k k!)``, stopped once a term drops below ``1e-16`` of the sum."""
    _check_c(c)
    total = 0.0
    for k, t in enumerate(_hyp0f1_terms(c, z)):
        total += t
        if k > abs(z) and abs(t) < 1e-16 * abs(total):
            return total


def hyp0f1_compensated(c: float, z: float) -> float:
    """Same series, summed exactly with :func:`math.fsum`."""
    _check_c(c)
    terms = []
    for k, t in enumerate(_hyp0f1_terms(c, z)):
        terms.append(t)
        if k > abs(z) and abs(t) < 1e-18 * abs(terms[0]):
            return math.fsum(terms)


def _working_dps(z: float) -> int:
    # I_nu(z) is of size e^z while K_nu(z) is of size e^-z
    return 25 + math.ceil(0.87 * z) + 8


def _bessel_I_mp(nu, z, dps: int):
    """Ascending series for ``I_nu(z)`` at ``dps`` digits (an mpf)."""
    with mpmath.workdps(dps):
        nu = mpmath.mpf(nu)
        half = mpmath.mpf(z) / 2
        q = half * half
        n0 = 0
        if nu < 0 and nu == mpmath.floor(nu):
            n0 = int(-nu)  # 1/Gamma(nu+n+1) vanishes below
        term = half ** (nu + 2 * n0) / (mpmath.factorial(n0) * mpmath.gamma(nu + n0 + 1))
        total = term
        n = n0
        eps = mpmath.mpf(10) ** (-dps)
        while True:
            term = term * q / ((n + 1) * (nu + n + 1))
            n += 1
            total += term
            if n > z and abs(term) <= eps * abs(total):
                return total


def bessel_I(nu: float, z: float) -> float:
    if not z > 0:
        raise DomainError(f"bessel_I needs z > 0, got {z}")
    return float(_bessel_I_mp(nu, z, 30))


def _bessel_K_reflect(nu: float, z: float) -> float:
    dps = _working_dps(z) + 8  # room for the 1/sin(nu pi) blow-up near integers
    with mpmath.workdps(dps):
        num = _bessel_I_mp(-nu, z, dps) - _bessel_I_mp(nu, z, dps)
        return float(mpmath.pi / 2 * num / mpmath.sin(mpmath.mpf(nu) * mpmath.pi))


def bessel_K(nu: float, z: float) -> float:
    """``K_nu(z) = (pi/2)(I_{-nu}(z) - I_nu(z)) / sin(nu pi)``.

    Within ``1e-8`` of an integer the formula is replaced by the average of
    its values at ``nu +- 1e-6``.
    """
    if not z > 0:
        raise DomainError(f"bessel_K needs z > 0, got {z}")
    if abs(nu - round(nu)) < INTEGER_GAP:
        n = float(round(nu))
        return 0.5 * (_bessel_K_reflect(n + INTEGER_EPS, z) + _bessel_K_reflect(n - INTEGER_EPS, z))
    return _bessel_K_reflect(nu, z)


def mellin_moment(mu: float, nu: float) -> float:
    """``int_0^inf r^(mu-1) K_nu(2r) dr = Gamma((mu-nu)/2) Gamma((mu+nu)/2) / 4`` for ``mu > |nu|``."""
    return gamma((mu - nu) / 2.0) * gamma((mu + nu) / 2.0) / 4.0


# coherent states

class Branch(enum.Enum):
    FLAT = "a"  # sigma in {1, s}
    BESSEL = "b"  # sigma = 1 - s^2


def branch_of(cls: EquationClass) -> Branch:
    if cls.kind in (SigmaKind.ONE, SigmaKind.S):
        return Branch.FLAT
    if cls.kind is SigmaKind.ONE_MINUS_S2:
        return Branch.BESSEL
    raise UnsupportedClass(f"no coherent states for sigma kind {cls.kind.value}")


def _bessel_c(cls: EquationClass, m: int) -> float:
    return 2.0 * m - cls.alpha


def _log_abs_coeffs(cls: EquationClass, m: int, r: float, n_max: int) -> tuple[float, np.ndarray]:
    """``log prefactor`` and ``log|c_n| - log prefactor`` for ``n <= n_max``, at ``|z| = r``."""
    n = np.arange(n_max + 1)
    lfac = np.array([lgamma(k + 1.0) for k in n])
    logr = math.log(r) if r > 0 else -math.inf
    with np.errstate(invalid="ignore"):
        powers = np.where(n == 0, 0.0, n * logr)
    if branch_of(cls) is Branch.FLAT:
        pref = r * r / (2.0 * cls.alpha)
        return pref, powers - 0.5 * (lfac + n * math.log(-cls.alpha))
    c = _bessel_c(cls, m)
    lg = np.array([lgamma(k + c) for k in n])
    return 0.5 * lgamma(c), powers - 0.5 * (lfac + lg)


@dataclass(frozen=True)
class CoherentState:
    cls: EquationClass
    m: int
    z: complex
    n_trunc: int
    coeffs: np.ndarray = field(repr=False)
    prefactor: float = 1.0

    @property
    def branch(self) -> Branch:
        return branch_of(self.cls)


def make_coherent(cls: EquationClass, m: int, z: complex, n_trunc: int = 80) -> CoherentState:
    """Coefficients ``c_0 .. c_{N-1}`` of ``|z>``.

    Raises
    ------
    UnsupportedClass
        For the sigma kinds without a coherent-state family.
    TruncationInsufficient
        When ``|c_N|`` is not below ``1e-14 max_n |c_n|``.
    """
    branch_of(cls)
    if m < 0:
        raise ValueError("m must be a natural number")
    if n_trunc < 2:
        raise ValueError("truncation must keep at least two terms")
    z = complex(z)
    r = abs(z)
    log_pref, logs = _log_abs_coeffs(cls, m, r, n_trunc)
    mags = np.exp(log_pref + logs)
    if mags[n_trunc] >= TAIL_BOUND * mags.max():
        raise TruncationInsufficient(
            f"|c_N| / max|c_n| = {mags[n_trunc] / mags.max():.2e} at N={n_trunc}, |z|={r:g}; increase the truncation"
        )
    phase = z / r if r > 0 else 1.0
    n = np.arange(n_trunc)
    coeffs = mags[:n_trunc] * np.power(complex(phase), n)
    return CoherentState(cls, m, z, n_trunc, coeffs, math.exp(log_pref))


def eigen_residual(state: CoherentState) -> float:
    """``max_n |(a_m c)_n - z c_n|`` over ``n < N - 1``."""
    a = shift_matrices(state.cls, state.m, state.n_trunc)[MatrixKind.LOWER].entries
    lhs = a @ state.coeffs
    diff = np.abs(lhs - state.z * state.coeffs)[: state.n_trunc - 1]
    return float(diff.max())


def norm_check(state: CoherentState) -> tuple[float, float]:
    """``(sum |c_n|^2, expected)`` with expected ``1`` or ``0F1(2m - alpha; |z|^2)``."""
    computed = math.fsum(np.abs(state.coeffs) ** 2)
    if state.branch is Branch.FLAT:
        return computed, 1.0
    return computed, hyp0f1(_bessel_c(state.cls, state.m), abs(state.z) ** 2)


def eigen_check(cls: EquationClass, m: int, radii=(0.0, 0.5, 1.0, 1.5, 2.0), angles: int = 8,
                n_trunc: int = 80, tol: float = 1e-9) -> CheckResult:
    tr = Tracker(f"coherent.eigen[{branch_of(cls).value}]", "a_m |z> = z |z>", tol)
    for z in _z_grid(radii, angles):
        tr.add(eigen_residual(make_coherent(cls, m, z, n_trunc)), f"z={z:.3g}")
    return tr.result()


def norm_identity_check(cls: EquationClass, m: int, radii=(0.0, 0.5, 1.0, 1.5, 2.0), angles: int = 8,
                        n_trunc: int = 80, tol: float = 1e-10) -> CheckResult:
    rel = "<z|z> = 1" if branch_of(cls) is Branch.FLAT else "<z|z> = 0F1(2m - alpha; |z|^2)"
    tr = Tracker(f"coherent.norm[{branch_of(cls).value}]", rel, tol)
    for z in _z_grid(radii, angles):
        got, want = norm_check(make_coherent(cls, m, z, n_trunc))
        tr.add(abs(got - want) / max(1.0, abs(want)), f"z={z:.3g}")
    return tr.result()


def _z_grid(radii, angles: int) -> list[complex]:
    out = []
    for r in radii:
        if r == 0:
            out.append(0j)
            continue
        out.extend(cmath.rect(r, 2.0 * math.pi * k / angles) for k in range(angles))
    return out


# resolution of the identity

class MeasureVariant(enum.Enum):
    CORRECTED = "corrected"
    LITERAL = "literal"


@dataclass(frozen=True)
class RadialMeasure:
    """``d mu = density(r) dr dtheta`` with ``z = r e^{i theta}``."""

    cls: EquationClass
    m: int
    density: Callable[[float], float]
    variant: MeasureVariant = MeasureVariant.CORRECTED
    description: str = ""


def radial_measure(cls: EquationClass, m: int, variant: MeasureVariant = MeasureVariant.CORRECTED) -> RadialMeasure:
    """The measure resolving the identity for the family of ``cls``.

    ``LITERAL`` gives the historical forms ``r / (pi sqrt(-alpha))`` and
    ``4 r^c K_{(alpha+1)/2 - m}(2r) / (pi Gamma(c))``, which do not resolve
    the identity with the coefficients above (the flat one only at
    ``alpha = -1``).  They are kept for comparison.
    """
    variant = MeasureVariant(variant)
    al = cls.alpha
    if branch_of(cls) is Branch.FLAT:
        pref = 1.0 / (math.pi * (-al)) if variant is MeasureVariant.CORRECTED else 1.0 / (math.pi * math.sqrt(-al))
        return RadialMeasure(cls, m, lambda r: pref * r, variant, f"{pref:.6g} r dr dtheta")
    c = _bessel_c(cls, m)
    if variant is MeasureVariant.CORRECTED:
        nu, k = c - 1.0, 2.0
    else:
        nu, k = (al + 1.0) / 2.0 - m, 4.0
    lg = lgamma(c)
    cache: dict[float, float] = {}

    def density(r: float) -> float:
        if r <= 0.0:
            return 0.0
        key = float(r)
        if key not in cache:
            cache[key] = bessel_K(nu, 2.0 * r)
        return k / math.pi * math.exp(c * math.log(r) - lg) * cache[key]

    return RadialMeasure(cls, m, density, variant, f"{k:g} r^{c:g} K_{nu:g}(2r) / (pi Gamma({c:g})) dr dtheta")


def _coeff_sq(cls: EquationClass, m: int, n: int, r: float) -> float:
    """``|c_n(r)|^2``."""
    if r <= 0.0:
        return 1.0 if n == 0 else 0.0
    log_pref, logs = _log_abs_coeffs(cls, m, r, n)
    return math.exp(2.0 * (log_pref + logs[n]))


def _r_max(measure: RadialMeasure, n_max: int) -> float:
    """First ``r`` past the peak where every ``density |c_n|^2``, ``n <= n_max``, is below ``1e-18``."""
    cls, m = measure.cls, measure.m
    r, seen_peak = 1.0, False
    while r < R_CAP:
        vals = [measure.density(r) * _coeff_sq(cls, m, n, r) for n in range(n_max + 1)]
        if max(vals) > DENSITY_FLOOR:
            seen_peak = True
        elif seen_peak:
            return r
        r += 1.0
    return R_CAP


def identity_diagonals(cls: EquationClass, m: int, n_basis: int = 11,
                       variant: MeasureVariant = MeasureVariant.CORRECTED,
                       spec: QuadratureSpec = DEFAULT_SPEC) -> np.ndarray:
    """``M_nn = 2 pi int_0^rmax density(r) |c_n(r)|^2 dr`` for ``n < n_basis``.

    The angular integral is done analytically: off-diagonal entries carry
    ``e^{i(j-k) theta}`` and vanish.
    """
    measure = radial_measure(cls, m, variant)
    r_max = _r_max(measure, n_basis - 1)
    out = np.empty(n_basis)
    for n in range(n_basis):
        f = np.vectorize(lambda r, n=n: measure.density(r) * _coeff_sq(cls, m, n, r))
        out[n] = 2.0 * math.pi * integrate(f, 0.0, r_max, spec)
    return out


def identity_offdiagonal(cls: EquationClass, m: int, j: int, k: int, n_theta: int = 16,
                         variant: MeasureVariant = MeasureVariant.CORRECTED,
                         spec: QuadratureSpec = DEFAULT_SPEC) -> complex:
    """``M_jk`` by a genuinely two-dimensional rule: periodic trapezoid in theta, DE quadrature in r."""
    measure = radial_measure(cls, m, variant)
    r_max = _r_max(measure, max(j, k))
    thetas = 2.0 * math.pi * np.arange(n_theta) / n_theta

    def angular(r, part):
        if r <= 0.0:
            return 0.0
        vals = []
        for th in thetas:
            cj = math.sqrt(_coeff_sq(cls, m, j, r)) * cmath.exp(1j * j * th)
            ck = math.sqrt(_coeff_sq(cls, m, k, r)) * cmath.exp(1j * k * th)
            vals.append(cj * ck.conjugate())
        s = sum(vals) * (2.0 * math.pi / n_theta) * measure.density(r)
        return s.real if part == 0 else s.imag

    re = integrate(np.vectorize(lambda r: angular(r, 0)), 0.0, r_max, spec)
    im = integrate(np.vectorize(lambda r: angular(r, 1)), 0.0, r_max, spec)
    return complex(re, im)


def identity_resolution_check(cls: EquationClass, m: int = 0, n_basis: int = 11,
                              variant: MeasureVariant = MeasureVariant.CORRECTED,
                              spec: QuadratureSpec = DEFAULT_SPEC, tol: float = 1e-4) -> CheckResult:
    """``max_n |M_nn - 1|`` for ``n < n_basis``."""
    diag = identity_diagonals(cls, m, n_basis, variant, spec)
    dev = np.abs(diag - 1.0)
    worst = int(np.argmax(dev))
    return CheckResult(
        f"coherent.identity[{branch_of(cls).value},{MeasureVariant(variant).value}]",
        "int d mu(z) |z><z| = I (diagonal entries)",
        float(dev[worst]),
        tol,
        n_basis,
        f"n={worst}",
        {"diagonals": [float(x) for x in diag], "measure": radial_measure(cls, m, variant).description},
    )

