"""The six canonical equations of hypergeometric type.

Every equation ``sigma y'' + tau y' + lambda y = 0`` with ``deg sigma <= 2`` and
``deg tau <= 1`` reduces by an affine change of variable to one of six shapes
of ``sigma``.  For each shape the slope ``alpha`` and intercept ``beta`` of
``tau(s) = alpha*s + beta`` must satisfy a strict inequality for the interval
``(a, b)`` and the weight ``rho`` to exist.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParameterOutOfRange
from .polynomial import Polynomial

INF = math.inf


class SigmaKind(enum.Enum):
    ONE = "one"
    S = "s"
    ONE_MINUS_S2 = "1-s2"
    S2_MINUS_ONE = "s2-1"
    S2 = "s2"
    S2_PLUS_ONE = "s2+1"

    @property
    def sigma_coeffs(self) -> tuple[float, float, float]:
        """``(a0, a1, a2)`` with ``sigma(s) = a2*s**2 + a1*s + a0``."""
        return _SIGMA[self]

    @property
    def interval(self) -> tuple[float, float]:
        return _INTERVAL[self]

    @property
    def finite_system(self) -> bool:
        """True when only finitely many polynomials are square integrable."""
        return self in (SigmaKind.S2_MINUS_ONE, SigmaKind.S2, SigmaKind.S2_PLUS_ONE)


_SIGMA = {
    SigmaKind.ONE: (1.0, 0.0, 0.0),
    SigmaKind.S: (0.0, 1.0, 0.0),
    SigmaKind.ONE_MINUS_S2: (1.0, 0.0, -1.0),
    SigmaKind.S2_MINUS_ONE: (-1.0, 0.0, 1.0),
    SigmaKind.S2: (0.0, 0.0, 1.0),
    SigmaKind.S2_PLUS_ONE: (1.0, 0.0, 1.0),
}

_INTERVAL = {
    SigmaKind.ONE: (-INF, INF),
    SigmaKind.S: (0.0, INF),
    SigmaKind.ONE_MINUS_S2: (-1.0, 1.0),
    SigmaKind.S2_MINUS_ONE: (1.0, INF),
    SigmaKind.S2: (0.0, INF),
    SigmaKind.S2_PLUS_ONE: (-INF, INF),
}


@dataclass(frozen=True)
class Cutoff:
    """Upper bound Lambda on admissible polynomial indices (``l < value``).

    ``value`` is an IEEE float, so ``math.inf`` stands for the infinite case
    and comparisons with integers are exact.
    """

    value: float

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.value)

    def admits(self, l: int) -> bool:
        return 0 <= l < self.value

    @property
    def max_index(self) -> int | None:
        """Largest admissible ``l``, or ``None`` when unbounded."""
        if not self.is_finite:
            return None
        return math.ceil(self.value) - 1

    def count(self, cap: int) -> int:
        """Number of admissible indices below ``cap``."""
        top = self.max_index
        return cap if top is None else min(cap, top + 1)

    def __str__(self):
        return "inf" if not self.is_finite else repr(self.value)


@dataclass(frozen=True)
class EquationClass:
    """A validated ``(kind, alpha, beta)`` triple.

    Build instances with :func:`validate`; the constructor itself does not
    check the parameter constraints.
    """

    kind: SigmaKind
    alpha: float
    beta: float

    # shape data
    @property
    def interval(self) -> tuple[float, float]:
        return self.kind.interval

    @property
    def sigma_poly(self) -> Polynomial:
        return Polynomial(self.kind.sigma_coeffs)

    @property
    def tau_poly(self) -> Polynomial:
        return Polynomial((self.beta, self.alpha))

    @property
    def sigma2(self) -> float:
        """Constant second derivative ``sigma''``."""
        return 2.0 * self.kind.sigma_coeffs[2]

    @property
    def spec(self) -> str:
        return f"{self.kind.value}:{self.alpha:g}:{self.beta:g}"

    def __str__(self):
        return self.spec

    # pointwise functions
    def sigma(self, s):
        a0, a1, a2 = self.kind.sigma_coeffs
        return a0 + s * (a1 + a2 * s)

    def sigma_prime(self, s):
        _, a1, a2 = self.kind.sigma_coeffs
        return a1 + 2.0 * a2 * s

    def tau(self, s):
        return self.alpha * s + self.beta

    def kappa(self, s):
        sig = np.asarray(self.sigma(s), dtype=float)
        if np.any(sig <= 0):
            raise DomainError(f"kappa undefined where sigma <= 0 (class {self.spec}, s={s!r})")
        out = np.sqrt(sig)
        return out if out.ndim else float(out)

    def kappa_prime(self, s):
        """``kappa' = sigma' / (2 kappa)``."""
        return self.sigma_prime(s) / (2.0 * self.kappa(s))

    def contains(self, s) -> bool:
        a, b = self.interval
        s = np.asarray(s, dtype=float)
        return bool(np.all((s > a) & (s < b)))

    def _check_domain(self, s):
        if not self.contains(s):
            raise DomainError(f"s={s!r} outside {self.interval} for class {self.spec}")

    def log_sigma(self, s, dist_a=None, dist_b=None):
        """``log sigma(s)`` using endpoint distances when provided.

        ``dist_a = s - a`` and ``dist_b = b - s`` may be passed by callers that
        know them more precisely than ``s`` itself (quadrature nodes crowding
        an endpoint).
        """
        s = np.asarray(s, dtype=float)
        a, b = self.interval
        da = s - a if dist_a is None else np.asarray(dist_a, dtype=float)
        db = b - s if dist_b is None else np.asarray(dist_b, dtype=float)
        k = self.kind
        with np.errstate(divide="ignore"):
            if k is SigmaKind.ONE:
                return np.zeros_like(s)
            if k is SigmaKind.S:
                return np.log(da)
            if k is SigmaKind.ONE_MINUS_S2:
                return np.log(da) + np.log(db)
            if k is SigmaKind.S2_MINUS_ONE:
                return np.log(da) + np.log(s + 1.0)
            if k is SigmaKind.S2:
                return 2.0 * np.log(da)
            # S2_PLUS_ONE: log(1 + s^2) without overflow
            ab = np.abs(s)
            return np.where(ab > 1.0, 2.0 * np.log(np.maximum(ab, 1.0)) + np.log1p(1.0 / np.maximum(ab, 1.0) ** 2), np.log1p(s * s))

    def log_weight(self, s, dist_a=None, dist_b=None, sigma_power: float = 0.0):
        """``log(sigma(s)**sigma_power * rho(s))`` evaluated in the log domain."""
        s = np.asarray(s, dtype=float)
        a, b = self.interval
        da = s - a if dist_a is None else np.asarray(dist_a, dtype=float)
        db = b - s if dist_b is None else np.asarray(dist_b, dtype=float)
        al, be = self.alpha, self.beta
        k = self.kind
        with np.errstate(divide="ignore", invalid="ignore"):
            if k is SigmaKind.ONE:
                lw = al * s * s / 2.0 + be * s
            elif k is SigmaKind.S:
                lw = (be - 1.0) * np.log(da) + al * s
            elif k is SigmaKind.ONE_MINUS_S2:
                lw = (-(al - be) / 2.0 - 1.0) * np.log(da) + (-(al + be) / 2.0 - 1.0) * np.log(db)
            elif k is SigmaKind.S2_MINUS_ONE:
                lw = ((al - be) / 2.0 - 1.0) * np.log(s + 1.0) + ((al + be) / 2.0 - 1.0) * np.log(da)
            elif k is SigmaKind.S2:
                lw = (al - 2.0) * np.log(da) - be / da
            else:
                lw = (al / 2.0 - 1.0) * self.log_sigma(s) + be * np.arctan(s)
            if sigma_power:
                lw = lw + sigma_power * self.log_sigma(s, da, db)
        return lw

    def weight(self, s):
        """Weight function ``rho(s)``; strictly positive on ``(a, b)``."""
        self._check_domain(s)
        out = np.exp(self.log_weight(s))
        return out if np.ndim(out) else float(out)

    def weight_m(self, m: int, s):
        """``rho_m(s) = sigma(s)**m * rho(s)``."""
        self._check_domain(s)
        out = np.exp(self.log_weight(s, sigma_power=m))
        return out if np.ndim(out) else float(out)

    # spectrum
    def lambda_l(self, l: int) -> float:
        """Eigenvalue ``-sigma''/2 * l(l-1) - tau' * l``."""
        return -0.5 * self.sigma2 * l * (l - 1) - self.alpha * l

    def cutoff(self) -> Cutoff:
        if self.kind.finite_system:
            return Cutoff((1.0 - self.alpha) / 2.0)
        return Cutoff(INF)

    def gamma_bound(self) -> float:
        """Supremum of exponents gamma with ``sigma rho s**gamma -> 0`` at both ends."""
        return -self.alpha if self.kind.finite_system else INF


_ALIASES = {
    "one": SigmaKind.ONE,
    "1": SigmaKind.ONE,
    "s": SigmaKind.S,
    "1-s2": SigmaKind.ONE_MINUS_S2,
    "1-s^2": SigmaKind.ONE_MINUS_S2,
    "s2-1": SigmaKind.S2_MINUS_ONE,
    "s^2-1": SigmaKind.S2_MINUS_ONE,
    "s2": SigmaKind.S2,
    "s^2": SigmaKind.S2,
    "s2+1": SigmaKind.S2_PLUS_ONE,
    "s^2+1": SigmaKind.S2_PLUS_ONE,
}


def parse_kind(text: str | SigmaKind) -> SigmaKind:
    if isinstance(text, SigmaKind):
        return text
    try:
        return _ALIASES[text.strip().lower()]
    except KeyError:
        raise ParameterOutOfRange(
            f"unknown sigma kind {text!r}; expected one of one, s, 1-s2, s2-1, s2, s2+1"
        ) from None


def validate(kind: SigmaKind | str, alpha: float, beta: float) -> EquationClass:
    """Return a checked :class:`EquationClass` or raise :class:`ParameterOutOfRange`.

    All constraints are strict; boundary values are rejected.
    """
    kind = parse_kind(kind)
    alpha = float(alpha)
    beta = float(beta)
    if not (math.isfinite(alpha) and math.isfinite(beta)):
        raise ParameterOutOfRange("alpha and beta must be finite")

    def need(ok: bool, rule: str):
        if not ok:
            raise ParameterOutOfRange(
                f"{rule} violated for sigma kind {kind.value!r} (alpha={alpha:g}, beta={beta:g})"
            )

    if kind in (SigmaKind.ONE, SigmaKind.S2_PLUS_ONE):
        need(alpha < 0, "alpha < 0")
    elif kind in (SigmaKind.S, SigmaKind.S2):
        need(alpha < 0, "alpha < 0")
        need(beta > 0, "beta > 0")
    elif kind is SigmaKind.ONE_MINUS_S2:
        need(alpha < beta < -alpha, "alpha < beta < -alpha")
    else:
        need(-beta < alpha < 0, "-beta < alpha < 0")
    return EquationClass(kind, alpha, beta)


def parse_class_spec(text: str) -> EquationClass:
    """Parse ``"<kind>:<alpha>:<beta>"`` (e.g. ``"1-s2:-2:0"``)."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ParameterOutOfRange(f"class spec {text!r} must look like <kind>:<alpha>:<beta>")
    kind, a, b = parts
    try:
        alpha, beta = float(a), float(b)
    except ValueError:
        raise ParameterOutOfRange(f"non-numeric parameters in class spec {text!r}") from None
    return validate(kind, alpha, beta)
