"""Double-exponential quadrature over the interval shapes of the six classes.

Each interval is mapped to the real line in a variable ``t``:

* finite ``(a, b)``: ``s = mid + half * tanh(pi/2 sinh t)`` (tanh-sinh),
* half-line ``(a, inf)``: ``s = a + exp(pi/2 sinh t)`` (exp-sinh),
* real line: ``s = sinh(pi/2 sinh t)`` (sinh-sinh).

The trapezoid rule in ``t`` is then refined by halving the step, reusing all
previous nodes.  The ``t`` range is fixed once on the coarsest grid by walking
outwards until the integrand is negligible; if it never becomes negligible
before ``T_CAP`` the integral is declared divergent.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import QuadratureDivergence
from .polynomial import Polynomial

HALF_PI = math.pi / 2.0
T_CAP = 5.5
T_MIN = 2.0
H0 = 0.5
NEGLIGIBLE = 1e-18
GROWTH_LIMIT = 1e12
NOISE = 1e-12


class Transform(enum.Enum):
    NONE = "none"  # pick from the interval shape
    SEMI_INFINITE_EXP = "exp-sinh"
    DOUBLY_INFINITE_TANH = "sinh-sinh"
    FINITE_AFFINE = "tanh-sinh"


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_depth: int = 10
    min_depth: int = 3
    transform: Transform = Transform.NONE

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("quadrature tolerances must be positive")


DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class QuadResult:
    value: float
    error: float
    n_eval: int
    depth: int


def _pick_transform(a: float, b: float, requested: Transform) -> Transform:
    fin_a, fin_b = math.isfinite(a), math.isfinite(b)
    natural = (
        Transform.FINITE_AFFINE
        if fin_a and fin_b
        else Transform.DOUBLY_INFINITE_TANH
        if not (fin_a or fin_b)
        else Transform.SEMI_INFINITE_EXP
    )
    if requested is Transform.NONE:
        return natural
    if requested is not natural:
        raise ValueError(f"transform {requested.value} does not match interval ({a}, {b})")
    return requested


def _map(tr: Transform, a: float, b: float, t: np.ndarray):
    """Return ``(s, s - a, b - s, ds/dt)`` at the nodes ``t``."""
    u = HALF_PI * np.sinh(t)
    dudt = HALF_PI * np.cosh(t)
    if tr is Transform.FINITE_AFFINE:
        half = 0.5 * (b - a)
        with np.errstate(over="ignore"):
            da = 2.0 * half / (1.0 + np.exp(-2.0 * u))
            db = 2.0 * half / (1.0 + np.exp(2.0 * u))
            jac = half * dudt / np.cosh(u) ** 2
        s = np.where(t < 0, a + da, b - db)
        return s, da, db, jac
    if tr is Transform.SEMI_INFINITE_EXP:
        x = np.exp(u)
        jac = x * dudt
        if math.isfinite(a):
            return a + x, x, np.full_like(x, np.inf), jac
        return b - x, np.full_like(x, np.inf), x, jac
    s = np.sinh(u)
    inf = np.full_like(s, np.inf)
    return s, inf, inf, np.cosh(u) * dudt


def _terms(f, tr, a, b, t, with_distances):
    s, da, db, jac = _map(tr, a, b, t)
    with np.errstate(all="ignore"):
        vals = f(s, da, db) if with_distances else f(s)
        out = np.asarray(vals, dtype=float) * jac
    if not np.all(np.isfinite(out)):
        bad = s[~np.isfinite(out)]
        raise QuadratureDivergence(f"non-finite integrand near s={bad[0]!r}")
    return out


def _walk(f, tr, a, b, with_distances):
    """Coarse-grid sums and the ``t`` window outside which terms are negligible."""
    centre = _terms(f, tr, a, b, np.array([0.0]), with_distances)[0]
    total = centre
    total_abs = abs(centre)
    peak = abs(centre)
    window = []
    for direction in (1.0, -1.0):
        quiet = 0
        k = 0
        last = centre
        while True:
            k += 1
            t = direction * k * H0
            if abs(t) > T_CAP + 1e-12:
                tail = abs(last) * H0
                if tail > 1e-8 * max(abs(total) * H0, 1e-300) or not math.isfinite(tail):
                    raise QuadratureDivergence(
                        f"integrand does not decay towards the {'upper' if direction > 0 else 'lower'} end "
                        f"(last trapezoid term {tail:.3g}, partial integral {total * H0:.3g})"
                    )
                window.append(direction * (k - 1) * H0)
                break
            last = _terms(f, tr, a, b, np.array([t]), with_distances)[0]
            total += last
            total_abs += abs(last)
            peak = max(peak, abs(last))
            quiet = quiet + 1 if abs(last) <= NEGLIGIBLE * peak else 0
            if quiet >= 2 and abs(t) >= T_MIN:
                window.append(t)
                break
    return total, total_abs, window[1], window[0]


def integrate(
    f: Callable,
    a: float,
    b: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    *,
    with_distances: bool = False,
    full_output: bool = False,
):
    """Integrate a vectorised ``f`` over ``(a, b)``.

    With ``with_distances=True`` the integrand is called as ``f(s, s-a, b-s)``,
    the distances being computed from the transform rather than by
    subtraction, which keeps endpoint singularities accurate.

    Raises
    ------
    QuadratureDivergence
        If the integrand does not decay at an end of the interval, if the
        refinement does not settle within ``spec.max_depth`` halvings, or if
        successive estimates grow monotonically beyond ``1e12``.
    """
    if a == b:
        return QuadResult(0.0, 0.0, 0, 0) if full_output else 0.0
    if a > b:
        res = integrate(f, b, a, spec, with_distances=with_distances, full_output=True)
        res = QuadResult(-res.value, res.error, res.n_eval, res.depth)
        return res if full_output else res.value
    tr = _pick_transform(a, b, spec.transform)
    raw, raw_abs, t_lo, t_hi = _walk(f, tr, a, b, with_distances)
    n_eval = int(round((t_hi - t_lo) / H0)) + 1
    h = H0
    estimates = [raw * h]
    err = math.inf
    for depth in range(1, spec.max_depth + 1):
        h /= 2.0
        j_lo = math.ceil((t_lo / h - 1.0) / 2.0)
        j_hi = math.floor((t_hi / h - 1.0) / 2.0)
        t = (2.0 * np.arange(j_lo, j_hi + 1) + 1.0) * h
        terms = _terms(f, tr, a, b, t, with_distances)
        raw += float(np.sum(terms))
        raw_abs += float(np.sum(np.abs(terms)))
        n_eval += t.size
        estimates.append(raw * h)
        value = estimates[-1]
        err = abs(value - estimates[-2])
        # cancelling integrands cannot beat evaluation noise on int |f|
        floor = NOISE * raw_abs * h
        if depth >= spec.min_depth and err <= max(spec.rel_tol * abs(value), spec.abs_tol, floor):
            res = QuadResult(value, err, n_eval, depth)
            return res if full_output else value
        if len(estimates) >= 4 and abs(value) > GROWTH_LIMIT * abs(estimates[0]):
            mags = [abs(e) for e in estimates[-4:]]
            steps = [y - x for x, y in zip(mags, mags[1:])]
            if all(d > 0 for d in steps) and steps[-1] >= steps[-2]:
                raise QuadratureDivergence(f"estimates grow monotonically past {GROWTH_LIMIT:g}")
    raise QuadratureDivergence(
        f"no convergence after {spec.max_depth} refinements (last change {err:.3g})"
    )


def integrate_weighted(
    cls,
    factors: Sequence[Polynomial],
    sigma_power: float = 0.0,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> float:
    """``int_a^b prod(factors)(s) * sigma(s)**sigma_power * rho(s) ds``.

    The integrand is assembled in the log domain (sign and ``log|.|`` per
    factor), so polynomial growth against weight decay on unbounded intervals
    never overflows.
    """
    a, b = cls.interval

    def integrand(s, da, db):
        logv = cls.log_weight(s, da, db, sigma_power)
        sign = np.ones_like(s)
        for p in factors:
            sg, la = p.sign_log_abs(s)
            sign = sign * sg
            logv = logv + la
        return sign * np.exp(logv)

    return integrate(integrand, a, b, spec, with_distances=True)


def moment(cls, k: int, sigma_power: float = 0.0, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """``int s**k sigma**sigma_power rho ds``."""
    return integrate_weighted(cls, [Polynomial.monomial(k)], sigma_power, spec)


def inner_product(cls, f, g, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Weighted inner product of two ``kappa**m * p`` representations.

    ``f`` and ``g`` only need ``.m`` and ``.p`` attributes.  The kappa powers
    combine into ``sigma**((f.m + g.m)/2)`` which is folded into the weight.
    """
    return integrate_weighted(cls, [f.p, g.p], 0.5 * (f.m + g.m), spec)
