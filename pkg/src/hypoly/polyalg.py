"""Polynomial solutions Psi_l of the hypergeometric-type equation.

The primary route solves the coefficient recurrence of the ODE downward from
a monic leading term.  Two independent oracles rebuild the same polynomial:
the Rodrigues formula, by exact repeated differentiation of
``sigma**j * rho`` kept in the form ``P * sigma**j * rho``, and the reduction
to classical Hermite, Laguerre and Jacobi polynomials.  All three are compared
after rescaling to monic form, since Psi_l is only defined up to a constant.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .eqclass import EquationClass, SigmaKind
from .errors import CutoffExceeded, DegenerateRecurrence, OracleUnavailable
from .polynomial import Polynomial, relative_distance
from .quad import DEFAULT_SPEC, QuadratureSpec, integrate_weighted

MAX_DEGREE = 60


def _check_index(cls: EquationClass, l: int, force: bool = False):
    if l < 0:
        raise ValueError(f"polynomial index must be non-negative, got {l}")
    if l > MAX_DEGREE:
        raise ValueError(f"degree {l} exceeds the supported maximum {MAX_DEGREE}")
    if not force and not cls.cutoff().admits(l):
        raise CutoffExceeded(
            f"l={l} is not below the cutoff Lambda={cls.cutoff()} for class {cls.spec}"
        )


@lru_cache(maxsize=4096)
def build_psi(cls: EquationClass, l: int, force: bool = False) -> Polynomial:
    """Monic polynomial of degree ``l`` solving ``sigma y'' + tau y' + lambda_l y = 0``.

    Matching powers of ``s`` gives, for each ``k``::

        (lambda_l - lambda_k) c_k + (a1 k(k+1) + beta(k+1)) c_{k+1}
            + a0 (k+2)(k+1) c_{k+2} = 0

    which is solved downward from ``c_l = 1``.  ``force=True`` skips the
    cutoff check so that solutions beyond Lambda can be studied; the pivots
    must still be nonzero.
    """
    _check_index(cls, l, force)
    a0, a1, _ = cls.kind.sigma_coeffs
    beta = cls.beta
    lam = cls.lambda_l(l)
    c = np.zeros(l + 3)
    c[l] = 1.0
    for k in range(l - 1, -1, -1):
        pivot = lam - cls.lambda_l(k)
        if abs(pivot) <= 1e-12 * max(abs(lam), 1.0):
            raise DegenerateRecurrence(
                f"lambda_{l} - lambda_{k} vanishes for class {cls.spec}"
            )
        rhs = (a1 * k * (k + 1) + beta * (k + 1)) * c[k + 1] + a0 * (k + 2) * (k + 1) * c[k + 2]
        c[k] = -rhs / pivot
    return Polynomial(c[: l + 1])


def ode_residual(cls: EquationClass, p: Polynomial, lam: float) -> Polynomial:
    """``sigma p'' + tau p' + lam p`` as a polynomial."""
    return cls.sigma_poly * p.derivative(2) + cls.tau_poly * p.derivative() + lam * p


def ode_relative_residual(cls: EquationClass, l: int) -> float:
    """Coefficient residual of the ODE, relative to the largest term."""
    p = build_psi(cls, l)
    terms = [cls.sigma_poly * p.derivative(2), cls.tau_poly * p.derivative(), cls.lambda_l(l) * p]
    ref = max(t.scale() for t in terms) or 1.0
    return ode_residual(cls, p, cls.lambda_l(l)).scale() / ref


def rodrigues_oracle(cls: EquationClass, l: int) -> Polynomial:
    """Monic ``(1/rho) d^l/ds^l [sigma**l rho]``.

    Uses ``d/ds [P sigma**j rho] = sigma**(j-1) rho [P' sigma + P((j-1) sigma' + tau)]``,
    which follows from ``(sigma rho)' = tau rho``; after ``l`` steps the power
    of sigma is zero.
    """
    _check_index(cls, l)
    sig = cls.sigma_poly
    dsig = sig.derivative()
    tau = cls.tau_poly
    P = Polynomial.one()
    for j in range(l, 0, -1):
        P = P.derivative() * sig + P * ((j - 1) * dsig + tau)
    return P.monic()


# classical families by their explicit finite sums

def _rising(x: float, n: int) -> float:
    out = 1.0
    for i in range(n):
        out *= x + i
    return out


def hermite(n: int) -> Polynomial:
    """Physicists' Hermite ``H_n(x) = n! sum_k (-1)^k (2x)^(n-2k) / (k! (n-2k)!)``."""
    c = np.zeros(n + 1)
    for k in range(n // 2 + 1):
        c[n - 2 * k] = (-1) ** k * math.factorial(n) / (math.factorial(k) * math.factorial(n - 2 * k)) * 2.0 ** (n - 2 * k)
    return Polynomial(c)


def laguerre(n: int, p: float) -> Polynomial:
    """Generalised Laguerre ``L_n^p(x) = sum_k (-1)^k binom(n+p, n-k) x^k / k!``.

    The binomial is written as a rising factorial, so any real ``p`` works.
    """
    c = np.zeros(n + 1)
    for k in range(n + 1):
        c[k] = (-1) ** k * _rising(p + k + 1, n - k) / math.factorial(n - k) / math.factorial(k)
    return Polynomial(c)


def jacobi(n: int, a: float, b: float) -> Polynomial:
    """Jacobi ``P_n^(a,b)(x) = sum_k binom(n+a, n-k) binom(n+b, k) ((x-1)/2)^k ((x+1)/2)^(n-k)``."""
    xm = Polynomial((-0.5, 0.5))
    xp = Polynomial((0.5, 0.5))
    out = Polynomial.zero()
    for k in range(n + 1):
        w = _rising(a + k + 1, n - k) / math.factorial(n - k) * _rising(n + b - k + 1, k) / math.factorial(k)
        out = out + w * xm ** k * xp ** (n - k)
    return out


def jacobi_complex(n: int, a: complex, b: complex) -> np.ndarray:
    """Power-basis coefficients of ``P_n^(a,b)`` for complex ``a, b``, same sum as :func:`jacobi`."""
    pp = np.polynomial.polynomial
    xm = np.array([-0.5, 0.5], dtype=complex)
    xp = np.array([0.5, 0.5], dtype=complex)
    out = np.zeros(n + 1, dtype=complex)
    for k in range(n + 1):
        w = _rising(a + k + 1, n - k) / math.factorial(n - k) * _rising(n + b - k + 1, k) / math.factorial(k)
        term = w * pp.polymul(pp.polypow(xm, k), pp.polypow(xp, n - k))
        out[: term.size] += term
    return out


def _s2_plus_one_oracle(l: int, al: float, be: float) -> Polynomial:
    """``i^l P_l^((alpha + i beta)/2 - 1, (alpha - i beta)/2 - 1)(i s)``, which has real coefficients."""
    c = jacobi_complex(l, (al + 1j * be) / 2.0 - 1.0, (al - 1j * be) / 2.0 - 1.0)
    c = c * (1j ** l) * (1j ** np.arange(l + 1))
    if np.max(np.abs(c.imag)) > 1e-10 * max(np.max(np.abs(c.real)), 1e-300):
        raise OracleUnavailable("complex Jacobi reduction did not give a real polynomial")
    return Polynomial(c.real)


def classical_oracle(cls: EquationClass, l: int) -> Polynomial:
    """Monic Psi_l rebuilt from Hermite, Laguerre or Jacobi polynomials."""
    _check_index(cls, l)
    al, be = cls.alpha, cls.beta
    k = cls.kind
    if k is SigmaKind.ONE:
        p = hermite(l).compose_affine(math.sqrt(-al / 2.0), -be / math.sqrt(-2.0 * al))
    elif k is SigmaKind.S:
        p = laguerre(l, be - 1.0).compose_affine(-al, 0.0)
    elif k is SigmaKind.ONE_MINUS_S2:
        p = jacobi(l, -(al + be) / 2.0 - 1.0, (-al + be) / 2.0 - 1.0)
    elif k is SigmaKind.S2_MINUS_ONE:
        p = jacobi(l, (al - be) / 2.0 - 1.0, (al + be) / 2.0 - 1.0).compose_affine(-1.0, 0.0)
    elif k is SigmaKind.S2:
        # (s/beta)^l L_l^{1-alpha-2l}(beta/s): the k-th Laguerre term lands on s^(l-k)
        lag = laguerre(l, 1.0 - al - 2.0 * l).coeffs
        c = np.zeros(l + 1)
        for j, cj in enumerate(lag):
            c[l - j] = cj * be ** (j - l)
        p = Polynomial(c)
    else:
        p = _s2_plus_one_oracle(l, al, be)
    return p.monic()


def oracle_disagreement(cls: EquationClass, l: int) -> dict[str, float]:
    """Coefficient-relative distances of each oracle from :func:`build_psi`."""
    ref = build_psi(cls, l)
    out = {"rodrigues": relative_distance(ref, rodrigues_oracle(cls, l))}
    try:
        out["classical"] = relative_distance(ref, classical_oracle(cls, l))
    except OracleUnavailable:
        pass
    return out


# zeros

def _root_bound(p: Polynomial) -> float:
    """Fujiwara's bound ``2 max_k |c_{n-k}/c_n|^(1/k)`` (last term halved) on ``|root|``."""
    c = p.coeffs
    n = c.size - 1
    if n < 1:
        return 1.0
    ratios = np.abs(c[:-1][::-1] / c[-1])  # c_{n-1}/c_n, ..., c_0/c_n
    ratios[-1] /= 2.0
    k = np.arange(1, n + 1)
    return 2.0 * float(np.max(ratios ** (1.0 / k))) * (1.0 + 1e-12) + 1e-300


def _sign_change_brackets(p: Polynomial, lo: float, hi: float, n: int):
    x = np.linspace(lo, hi, n)
    y = p(x)
    idx = np.flatnonzero(np.sign(y[:-1]) * np.sign(y[1:]) < 0)
    exact = x[y == 0.0]
    return [(x[i], x[i + 1]) for i in idx], list(exact)


def _bisect(p: Polynomial, lo: float, hi: float, tol: float) -> float:
    flo = p(lo)
    while hi - lo > tol * max(1.0, abs(lo), abs(hi)):
        mid = 0.5 * (lo + hi)
        fm = p(mid)
        if fm == 0.0:
            return mid
        if np.sign(fm) == np.sign(flo):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def real_zeros(p: Polynomial, tol: float = 1e-12, max_grid: int = 2 ** 21) -> list[float]:
    """Simple real zeros of ``p`` located by sign changes, refined by bisection.

    The search covers Fujiwara's root bound; the grid is doubled until it
    brackets ``deg p`` roots or reaches ``max_grid`` points.
    """
    d = p.degree
    if d == 0:
        return []
    B = _root_bound(p)
    n = 4096
    while True:
        brackets, exact = _sign_change_brackets(p, -B, B, n)
        if len(brackets) + len(exact) >= d or n >= max_grid:
            break
        n *= 2
    roots = [_bisect(p, lo, hi, tol) for lo, hi in brackets] + exact
    return sorted(roots)


def zeros_inside(cls: EquationClass, l: int) -> tuple[list[float], bool]:
    """Zeros of Psi_l and whether all ``l`` of them are simple and inside ``(a, b)``."""
    roots = real_zeros(build_psi(cls, l))
    a, b = cls.interval
    ok = len(roots) == l and all(a < r < b for r in roots)
    if ok and len(roots) > 1:
        ok = bool(np.all(np.diff(roots) > 0))
    return roots, ok


# three-term recurrence

def three_term(cls: EquationClass, l: int, spec: QuadratureSpec = DEFAULT_SPEC):
    """Return ``(b_l, g_l, residual)`` for ``s Psi_l = Psi_{l+1} + b_l Psi_l + g_l Psi_{l-1}``.

    ``b_l`` and ``g_l`` come from weighted inner products; the residual is the
    coefficient-relative size of what is left over.  Valid for
    ``1 <= l`` and ``l + 1 < Lambda``.
    """
    if l < 1:
        raise ValueError("three-term recurrence needs l >= 1")
    nxt = build_psi(cls, l + 1)
    p = build_psi(cls, l)
    prev = build_psi(cls, l - 1)
    s = Polynomial((0.0, 1.0))
    sp = s * p
    bl = integrate_weighted(cls, [sp, p], 0.0, spec) / integrate_weighted(cls, [p, p], 0.0, spec)
    gl = integrate_weighted(cls, [sp, prev], 0.0, spec) / integrate_weighted(cls, [prev, prev], 0.0, spec)
    rest = sp - nxt - bl * p - gl * prev
    return bl, gl, rest.scale() / sp.scale()
