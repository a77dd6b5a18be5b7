"""Dense real-coefficient polynomials in one variable.

Coefficients are stored in increasing order of power, ``coeffs[k]`` being the
coefficient of ``s**k``.  The heavy lifting is delegated to
:mod:`numpy.polynomial.polynomial`; this module only fixes the value semantics
(immutable, trimmed, comparable up to a tolerance) and adds a log-domain
evaluator used by the quadrature on unbounded intervals.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np
from numpy.polynomial import polynomial as npp

from .errors import NotDivisible


def _trim(c: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(c)
    if nz.size == 0:
        return np.zeros(1)
    return c[: nz[-1] + 1]


class Polynomial:
    """Immutable polynomial ``sum_k coeffs[k] * s**k``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[float] | float = (0.0,)):
        c = np.atleast_1d(np.asarray(coeffs, dtype=float)).copy()
        if c.ndim != 1:
            raise ValueError("coefficients must be one-dimensional")
        if c.size == 0:
            c = np.zeros(1)
        c = _trim(c)
        c.setflags(write=False)
        self._c = c

    # construction helpers
    @classmethod
    def zero(cls) -> "Polynomial":
        return cls((0.0,))

    @classmethod
    def one(cls) -> "Polynomial":
        return cls((1.0,))

    @classmethod
    def monomial(cls, k: int, coeff: float = 1.0) -> "Polynomial":
        c = np.zeros(k + 1)
        c[k] = coeff
        return cls(c)

    @classmethod
    def from_roots(cls, roots: Sequence[float]) -> "Polynomial":
        return cls(npp.polyfromroots(roots))

    # basic properties
    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial reports 0."""
        return self._c.size - 1

    @property
    def leading(self) -> float:
        return float(self._c[-1])

    def is_zero(self, tol: float = 0.0) -> bool:
        return bool(np.max(np.abs(self._c)) <= tol)

    def scale(self) -> float:
        """Largest absolute coefficient (0 for the zero polynomial)."""
        return float(np.max(np.abs(self._c)))

    # arithmetic
    def __add__(self, other):
        other = _coerce(other)
        return Polynomial(npp.polyadd(self._c, other._c))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return Polynomial(npp.polysub(self._c, other._c))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __neg__(self):
        return Polynomial(-self._c)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return Polynomial(npp.polymul(self._c, other._c))
        return Polynomial(self._c * float(other))

    __rmul__ = __mul__

    def __truediv__(self, scalar: float):
        return Polynomial(self._c / float(scalar))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        return Polynomial(npp.polypow(self._c, n)) if n else Polynomial.one()

    def derivative(self, order: int = 1) -> "Polynomial":
        if order == 0:
            return self
        return Polynomial(npp.polyder(self._c, order))

    def compose_affine(self, a: float, b: float) -> "Polynomial":
        """Return ``p(a*s + b)`` as a polynomial in ``s``."""
        out = Polynomial.zero()
        lin = Polynomial((b, a))
        for c in self._c[::-1]:
            out = out * lin + c
        return out

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        q, r = npp.polydiv(self._c, other._c)
        return Polynomial(q), Polynomial(r)

    def exact_div(self, other: "Polynomial", tol: float = 1e-10) -> "Polynomial":
        """Divide, insisting the remainder vanishes relative to ``tol``."""
        q, r = self.divmod(other)
        if r.scale() > tol * max(self.scale(), 1e-300):
            raise NotDivisible(f"remainder {r.coeffs!r} when dividing")
        return q

    def monic(self) -> "Polynomial":
        if self.is_zero():
            raise ZeroDivisionError("zero polynomial has no monic form")
        return Polynomial(self._c / self._c[-1])

    # evaluation
    def __call__(self, s):
        return npp.polyval(s, self._c)

    def sign_log_abs(self, s) -> tuple[np.ndarray, np.ndarray]:
        """Return ``(sign, log|p(s)|)`` without overflow for large ``|s|``.

        For ``|s| > 1`` the polynomial is rewritten as ``s**d * q(1/s)`` with
        the reversed coefficient list, so the Horner loop only sees bounded
        values.
        """
        s = np.asarray(s, dtype=float)
        shape = s.shape
        s = s.reshape(-1)
        c = self._c
        d = c.size - 1
        big = np.abs(s) > 1.0
        val = np.empty_like(s)
        small = ~big
        if np.any(small):
            val[small] = npp.polyval(s[small], c)
        if np.any(big):
            inv = 1.0 / s[big]
            val[big] = npp.polyval(inv, c[::-1])
        with np.errstate(divide="ignore"):
            logabs = np.log(np.abs(val))
        if d and np.any(big):
            logabs[big] += d * np.log(np.abs(s[big]))
        sign = np.sign(val)
        if d % 2 and np.any(big):
            sign[big] *= np.sign(s[big])
        return sign.reshape(shape), logabs.reshape(shape)

    # comparison
    def allclose(self, other: "Polynomial", rtol: float = 1e-10, atol: float = 0.0) -> bool:
        return coeff_distance(self, other) <= rtol * max(self.scale(), other.scale()) + atol

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._c.size == other._c.size and bool(np.all(self._c == other._c))

    def __hash__(self):
        return hash(self._c.tobytes())

    def __repr__(self):
        return f"Polynomial({self._c.tolist()!r})"

    def __str__(self):
        terms = []
        for k, c in enumerate(self._c):
            if c == 0 and self._c.size > 1:
                continue
            if k == 0:
                terms.append(f"{c:g}")
            elif k == 1:
                terms.append(f"{c:g}*s")
            else:
                terms.append(f"{c:g}*s^{k}")
        return " + ".join(terms)


def _coerce(x) -> Polynomial:
    return x if isinstance(x, Polynomial) else Polynomial((float(x),))


def coeff_distance(p: Polynomial, q: Polynomial) -> float:
    """Max-norm distance between coefficient vectors."""
    n = max(p.coeffs.size, q.coeffs.size)
    a = np.zeros(n)
    b = np.zeros(n)
    a[: p.coeffs.size] = p.coeffs
    b[: q.coeffs.size] = q.coeffs
    return float(np.max(np.abs(a - b)))


def relative_distance(p: Polynomial, q: Polynomial) -> float:
    """Coefficient distance scaled by the larger coefficient magnitude."""
    ref = max(p.scale(), q.scale())
    if ref == 0.0:
        return 0.0
    return coeff_distance(p, q) / ref


# thin functional aliases
def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def poly_derivative(p: Polynomial) -> Polynomial:
    return p.derivative()


def poly_eval(p: Polynomial, s):
    return p(s)
