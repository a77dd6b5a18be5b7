"""Associated special functions ``Psi_{l,m} = kappa**m * d^m Psi_l / ds^m``.

A function of the form ``kappa(s)**m * p(s)`` is stored exactly as the pair
``(m, p)`` (:class:`LadderRep`).  Every first-order operator of the theory maps
such pairs to such pairs, so operator identities become polynomial identities.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .eqclass import EquationClass
from .polynomial import Polynomial, relative_distance
from .polyalg import build_psi, _check_index
from .quad import DEFAULT_SPEC, QuadratureSpec, inner_product, integrate_weighted


@dataclass(frozen=True)
class LadderRep:
    """The function ``kappa(s)**m * p(s)``."""

    m: int
    p: Polynomial

    def __add__(self, other: "LadderRep") -> "LadderRep":
        if other.m != self.m:
            raise ValueError(f"cannot add reps with kappa powers {self.m} and {other.m}")
        return LadderRep(self.m, self.p + other.p)

    def __sub__(self, other: "LadderRep") -> "LadderRep":
        return self + (-1.0) * other

    def __mul__(self, c: float) -> "LadderRep":
        return LadderRep(self.m, self.p * float(c))

    __rmul__ = __mul__

    def is_zero(self, tol: float = 0.0) -> bool:
        return self.p.is_zero(tol)

    def distance(self, other: "LadderRep") -> float:
        """Coefficient-relative distance; infinite when the kappa powers differ."""
        if self.m != other.m:
            return 0.0 if (self.is_zero() and other.is_zero()) else math.inf
        return relative_distance(self.p, other.p)


def eval_rep(cls: EquationClass, rep: LadderRep, s):
    """``kappa(s)**m * p(s)`` on the open interval (raises ``DomainError`` outside)."""
    if rep.m == 0:
        cls._check_domain(s)
        return rep.p(s)
    return cls.kappa(s) ** rep.m * rep.p(s)


@lru_cache(maxsize=8192)
def build_psi_lm(cls: EquationClass, l: int, m: int) -> LadderRep:
    """``Psi_{l,m}`` as ``(m, d^m Psi_l/ds^m)``, for ``0 <= m <= l < Lambda``."""
    _check_index(cls, l)
    if not 0 <= m <= l:
        raise IndexError(f"m={m} outside 0..{l}")
    return LadderRep(m, build_psi(cls, l).derivative(m))


def norm_quadrature(cls: EquationClass, l: int, m: int, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """``||Psi_{l,m}||`` by direct weighted quadrature."""
    rep = build_psi_lm(cls, l, m)
    return math.sqrt(inner_product(cls, rep, rep, spec))


def norm_ladder(cls: EquationClass, l: int, m: int, base: float | None = None) -> float:
    """``||Psi_{l,m}||`` from ``||Psi_{l,0}||`` and the factors ``sqrt(lambda_l - lambda_j)``."""
    if base is None:
        base = norm_quadrature(cls, l, 0)
    lam = cls.lambda_l(l)
    return base * math.sqrt(math.prod(lam - cls.lambda_l(j) for j in range(m)))


@lru_cache(maxsize=8192)
def norm(cls: EquationClass, l: int, m: int) -> float:
    """Norm of ``Psi_{l,m}`` in ``L^2((a, b), rho)``; quadrature route, cached."""
    return norm_quadrature(cls, l, m)


def forced_norm(cls: EquationClass, l: int, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Norm of the degree-``l`` ODE solution even when ``l >= Lambda``.

    Beyond the cutoff the integral diverges and :class:`QuadratureDivergence`
    propagates.
    """
    p = build_psi(cls, l, force=True)
    return math.sqrt(integrate_weighted(cls, [p, p], 0.0, spec))


@dataclass(frozen=True)
class NormTable:
    """Norms ``||Psi_{l,m}||`` for one ``m`` and ``l = m .. l_max``."""

    cls: EquationClass
    m: int
    entries: dict[int, float] = field(default_factory=dict)

    @classmethod
    def build(cls_, eq: EquationClass, m: int, l_max: int) -> "NormTable":
        top = eq.cutoff().count(l_max + 1) - 1
        return cls_(eq, m, {l: norm(eq, l, m) for l in range(m, top + 1)})

    def __getitem__(self, l: int) -> float:
        return self.entries[l]

    def ladder_deviation(self, lower: "NormTable") -> float:
        """Max relative gap in ``||Psi_{l,m+1}|| = sqrt(lambda_l - lambda_m) ||Psi_{l,m}||``."""
        if lower.m + 1 != self.m:
            raise ValueError("tables must be for consecutive m")
        eq = self.cls
        worst = 0.0
        for l, v in self.entries.items():
            if l in lower.entries:
                pred = math.sqrt(eq.lambda_l(l) - eq.lambda_l(lower.m)) * lower[l]
                worst = max(worst, abs(v - pred) / pred)
        return worst


def normalize_rep(cls: EquationClass, rep: LadderRep, spec: QuadratureSpec = DEFAULT_SPEC):
    """Scale ``rep`` to unit weighted norm; returns ``(rep, scale)``."""
    nrm = math.sqrt(inner_product(cls, rep, rep, spec))
    scale = 1.0 / nrm
    return rep * scale, scale


def normalized(cls: EquationClass, l: int, m: int) -> tuple[LadderRep, float]:
    """``tilde Psi_{l,m}`` and the scale factor ``1 / ||Psi_{l,m}||``."""
    scale = 1.0 / norm(cls, l, m)
    return build_psi_lm(cls, l, m) * scale, scale


def m_recurrence_residual(cls: EquationClass, l: int, m: int) -> float:
    """Residual of the three-term relation linking ``Psi_{l,m+1}, Psi_{l,m}, Psi_{l,m-1}``.

    After dividing by ``kappa**(m-1)`` the relation reads
    ``sigma p_{m+1} + (tau + (m-1) sigma') p_m + (lambda_l - lambda_{m-1}) p_{m-1} = 0``
    with ``p_j = Psi_l^{(j)}``.  For ``m = l`` the first term is absent, which
    is the terminal relation.
    """
    if not 1 <= m <= l:
        raise ValueError("need 1 <= m <= l")
    p = build_psi(cls, l)
    terms = [
        cls.sigma_poly * p.derivative(m + 1),
        (cls.tau_poly + (m - 1) * cls.sigma_poly.derivative()) * p.derivative(m),
        (cls.lambda_l(l) - cls.lambda_l(m - 1)) * p.derivative(m - 1),
    ]
    total = terms[0] + terms[1] + terms[2]
    ref = max(t.scale() for t in terms) or 1.0
    return total.scale() / ref


def orthogonality_matrix(cls: EquationClass, m: int, l_max: int, spec: QuadratureSpec = DEFAULT_SPEC) -> np.ndarray:
    """Gram matrix of the normalised ``tilde Psi_{l,m}``, ``l = m .. min(l_max, Lambda)``."""
    top = cls.cutoff().count(l_max + 1) - 1
    ls = list(range(m, top + 1))
    reps = [normalized(cls, l, m)[0] for l in ls]
    G = np.empty((len(ls), len(ls)))
    for i, f in enumerate(reps):
        for j in range(i, len(ls)):
            G[i, j] = G[j, i] = inner_product(cls, f, reps[j], spec)
    return G


__all__ = [
    "LadderRep",
    "NormTable",
    "build_psi_lm",
    "eval_rep",
    "forced_norm",
    "m_recurrence_residual",
    "norm",
    "norm_ladder",
    "norm_quadrature",
    "normalize_rep",
    "normalized",
    "orthogonality_matrix",
]
