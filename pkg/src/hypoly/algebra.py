"""The operators L_+, L_-, L_0 on the functions ``e^{i m phi} Psi~_{l,m}(s)``.

A surface function ``scale * e^{i m phi} kappa(s)**m p(s)`` is stored as
``(m, p, scale)`` with ``m`` any integer.  Acting with

    L_+ = e^{i phi} (kappa d/ds + i kappa' d/dphi)
    L_- = e^{-i phi} (-kappa d/ds + i kappa' d/dphi - tau/kappa + 2 kappa')
    L_0 = -i d/dphi

and collecting powers of kappa (``kappa kappa' = sigma'/2``) gives closed
polynomial actions valid for every integer ``m``::

    L_+ (m, p) = (m+1, p')
    L_- (m, p) = (m-1, -sigma p' + (1-m) sigma' p - tau p)
    L_0 (m, p) = m (m, p)

For ``m < 0`` the function ``kappa**m p`` is finite on the interval only when
``sigma**|m|`` divides ``p``; :meth:`SurfaceRep.reflected` performs that
division exactly.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

from .eqclass import EquationClass, SigmaKind
from .errors import NotDivisible
from .polyalg import build_psi
from .polynomial import Polynomial, relative_distance
from .report import CheckResult, Tracker
from .specfun import build_psi_lm, norm

DIVISIBILITY_TOL = 1e-10


@dataclass(frozen=True)
class SurfaceRep:
    """``scale * e^{i m phi} kappa**m p``."""

    m: int
    p: Polynomial
    scale: float = 1.0

    @property
    def poly(self) -> Polynomial:
        """``scale * p``."""
        return self.p * self.scale

    def __add__(self, other: "SurfaceRep") -> "SurfaceRep":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if other.m != self.m:
            raise ValueError(f"cannot add surface reps with m={self.m} and m={other.m}")
        return SurfaceRep(self.m, self.poly + other.poly)

    def __sub__(self, other: "SurfaceRep") -> "SurfaceRep":
        return self + other * (-1.0)

    def __mul__(self, c: float) -> "SurfaceRep":
        return SurfaceRep(self.m, self.p, self.scale * float(c))

    __rmul__ = __mul__

    def is_zero(self, tol: float = 0.0) -> bool:
        return self.scale == 0.0 or self.p.is_zero(tol)

    def distance(self, other: "SurfaceRep") -> float:
        if self.is_zero() and other.is_zero():
            return 0.0
        if self.m != other.m:
            return math.inf
        return relative_distance(self.poly, other.poly)

    def reflected(self, cls: EquationClass) -> tuple[int, Polynomial]:
        """``(|m|, q)`` with ``kappa**m p = kappa**|m| q``.

        For ``m < 0`` this needs ``p = sigma**|m| q``; raises
        :class:`NotDivisible` otherwise.
        """
        if self.m >= 0:
            return self.m, self.poly
        q = self.poly
        for _ in range(-self.m):
            q = q.exact_div(cls.sigma_poly, DIVISIBILITY_TOL)
        return -self.m, q


def canonical(cls: EquationClass, l: int, m: int) -> SurfaceRep:
    """``e^{i m phi} Psi_{l,m}``, unnormalised, for ``0 <= m <= l``."""
    rep = build_psi_lm(cls, l, m)
    return SurfaceRep(m, rep.p)


def apply_L_plus(cls: EquationClass, rep: SurfaceRep) -> SurfaceRep:
    return SurfaceRep(rep.m + 1, rep.p.derivative(), rep.scale)


def apply_L_minus(cls: EquationClass, rep: SurfaceRep) -> SurfaceRep:
    p, m = rep.p, rep.m
    sig = cls.sigma_poly
    q = -(sig * p.derivative()) + (1 - m) * (sig.derivative() * p) - cls.tau_poly * p
    return SurfaceRep(m - 1, q, rep.scale)


def apply_L0(rep: SurfaceRep) -> SurfaceRep:
    return rep * rep.m


Op = Callable[[SurfaceRep], SurfaceRep]


def _comm(X: Op, Y: Op) -> Op:
    return lambda r: X(Y(r)) - Y(X(r))


def _size(r: SurfaceRep) -> float:
    return 0.0 if r.is_zero() else r.poly.scale()


def _bracket_residual(X: Op, Y: Op, r: SurfaceRep, want: SurfaceRep) -> float:
    """``|[X, Y] r - want|`` relative to the size of ``XY r`` and ``YX r``.

    Brackets are differences of two large terms, so a purely relative
    comparison against a vanishing target would be meaningless.
    """
    xy, yx = X(Y(r)), Y(X(r))
    diff = xy - yx - want
    ref = max(_size(xy), _size(yx), _size(want), _size(r))
    if diff.is_zero():
        return 0.0
    return _size(diff) / ref if ref > 0 else math.inf


def _affine(c: float, op: Op | None, shift: float) -> Op:
    """``c * op + shift * I`` (``op=None`` means the identity)."""
    def f(r):
        base = r * (c + shift) if op is None else op(r) * c + r * shift
        return base
    return f


class AlgebraKind(enum.Enum):
    HEISENBERG_WEYL = "heisenberg-weyl"
    SU2 = "su(2)"
    SU11 = "su(1,1)"


def algebra_kind(cls: EquationClass) -> AlgebraKind:
    if cls.kind in (SigmaKind.ONE, SigmaKind.S):
        return AlgebraKind.HEISENBERG_WEYL
    if cls.kind is SigmaKind.ONE_MINUS_S2:
        return AlgebraKind.SU2
    return AlgebraKind.SU11


@dataclass(frozen=True)
class KForm:
    """``K_+ = c_plus L_+``, ``K_- = c_minus L_-``, ``K_0 = L_0 + shift``.

    ``bracket`` is the expected value of ``[K_+, K_-]`` written as
    ``bracket_k0 * K_0 + bracket_one * I``.
    """

    kind: AlgebraKind
    c_plus: float
    c_minus: float
    shift: float
    bracket_k0: float
    bracket_one: float

    def operators(self, cls: EquationClass) -> tuple[Op, Op, Op]:
        Kp = _affine(self.c_plus, lambda r: apply_L_plus(cls, r), 0.0)
        Km = _affine(self.c_minus, lambda r: apply_L_minus(cls, r), 0.0)
        K0 = _affine(1.0, apply_L0, self.shift)
        return Kp, Km, K0


def k_normal_form(cls: EquationClass) -> KForm:
    """Affine recombination of ``L_+, L_-, L_0`` into the standard basis of the algebra."""
    kind = algebra_kind(cls)
    al = cls.alpha
    if kind is AlgebraKind.HEISENBERG_WEYL:
        c = math.sqrt(-1.0 / al)
        return KForm(kind, c, -c, 0.0, 0.0, -1.0)
    if kind is AlgebraKind.SU2:
        return KForm(kind, 1.0, 1.0, -(al + 2.0) / 2.0, 2.0, 0.0)
    return KForm(kind, 1.0, 1.0, (al - 2.0) / 2.0, -2.0, 0.0)


def commutator_coefficient(cls: EquationClass, m: int) -> float:
    """Eigenvalue of ``[L_+, L_-]`` on an ``m``-rep, case by case."""
    al = cls.alpha
    kind = algebra_kind(cls)
    if kind is AlgebraKind.HEISENBERG_WEYL:
        return -al
    if kind is AlgebraKind.SU2:
        return 2.0 * (m - (al + 2.0) / 2.0)
    return -2.0 * (m + (al - 2.0) / 2.0)


def _sample_reps(cls: EquationClass, l_max: int) -> list[tuple[str, SurfaceRep]]:
    """Canonical reps plus a few of negative ``m`` reached through ``L_-``."""
    top = cls.cutoff().count(l_max + 1)
    out = []
    for l in range(top):
        for m in range(l + 1):
            out.append((f"l={l},m={m}", canonical(cls, l, m)))
        r = SurfaceRep(0, build_psi(cls, l))
        for k in range(1, 3):
            r = apply_L_minus(cls, r)
            out.append((f"L_-^{k}|{l},0)", r))
    return out


def commutator_case_check(cls: EquationClass, l_max: int = 6, tol: float = 1e-10) -> list[CheckResult]:
    """``[L_+, L_-]`` against the case table and ``[L_0, L_+-] = +-L_+-``."""
    Lp = lambda r: apply_L_plus(cls, r)  # noqa: E731
    Lm = lambda r: apply_L_minus(cls, r)  # noqa: E731
    case = Tracker("algebra.case_table", _case_relation(cls), tol)
    up = Tracker("algebra.L0_Lplus", "[L_0, L_+] = L_+", tol)
    down = Tracker("algebra.L0_Lminus", "[L_0, L_-] = -L_-", tol)
    for name, r in _sample_reps(cls, l_max):
        case.add(_bracket_residual(Lp, Lm, r, r * commutator_coefficient(cls, r.m)), name)
        up.add(_bracket_residual(apply_L0, Lp, r, Lp(r)), name)
        down.add(_bracket_residual(apply_L0, Lm, r, Lm(r) * -1.0), name)
    return [case.result(), up.result(), down.result()]


def _case_relation(cls: EquationClass) -> str:
    return {
        AlgebraKind.HEISENBERG_WEYL: "[L_+, L_-] = -alpha I",
        AlgebraKind.SU2: "[L_+, L_-] = 2(L_0 - ((alpha+2)/2) I)",
        AlgebraKind.SU11: "[L_+, L_-] = -2(L_0 + ((alpha-2)/2) I)",
    }[algebra_kind(cls)]


def k_form_check(cls: EquationClass, l_max: int = 6, tol: float = 1e-10) -> list[CheckResult]:
    """Brackets of ``K_+, K_-, K_0`` on sample reps."""
    form = k_normal_form(cls)
    Kp, Km, K0 = form.operators(cls)
    rel = {
        AlgebraKind.HEISENBERG_WEYL: "[K_+, K_-] = -I",
        AlgebraKind.SU2: "[K_+, K_-] = 2 K_0",
        AlgebraKind.SU11: "[K_+, K_-] = -2 K_0",
    }[form.kind]
    br = Tracker(f"algebra.k_bracket[{form.kind.value}]", rel, tol)
    up = Tracker("algebra.K0_Kplus", "[K_0, K_+] = K_+", tol)
    down = Tracker("algebra.K0_Kminus", "[K_0, K_-] = -K_-", tol)
    for name, r in _sample_reps(cls, l_max):
        want = K0(r) * form.bracket_k0 + r * form.bracket_one
        br.add(_bracket_residual(Kp, Km, r, want), name)
        up.add(_bracket_residual(K0, Kp, r, Kp(r)), name)
        down.add(_bracket_residual(K0, Km, r, Km(r) * -1.0), name)
    return [br.result(), up.result(), down.result()]


def jacobi_identity_check(cls: EquationClass, l_max: int = 4, tol: float = 1e-10) -> CheckResult:
    """``[X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]] = 0`` for the triple ``(L_+, L_-, L_0)``."""
    X = lambda r: apply_L_plus(cls, r)  # noqa: E731
    Y = lambda r: apply_L_minus(cls, r)  # noqa: E731
    Z = apply_L0
    tr = Tracker("algebra.jacobi", "[L_+,[L_-,L_0]] + [L_-,[L_0,L_+]] + [L_0,[L_+,L_-]] = 0", tol)
    for name, r in _sample_reps(cls, l_max):
        terms = [_comm(X, _comm(Y, Z))(r), _comm(Y, _comm(Z, X))(r), _comm(Z, _comm(X, Y))(r)]
        total = terms[0] + terms[1] + terms[2]
        ref = max(_size(t) for t in terms) or 1.0
        tr.add(_size(total) / ref, name)
    return tr.result()


def phi_value(cls: EquationClass, l: int) -> float:
    """``Phi = l - alpha/2 - 1`` for su(2), ``l + alpha/2 - 1`` for su(1,1)."""
    kind = algebra_kind(cls)
    if kind is AlgebraKind.SU2:
        return l - cls.alpha / 2.0 - 1.0
    if kind is AlgebraKind.SU11:
        return l + cls.alpha / 2.0 - 1.0
    raise ValueError("Phi is defined for the su(2) and su(1,1) classes only")


def casimir_eigenvalue(cls: EquationClass, l: int) -> float:
    phi = phi_value(cls, l)
    return phi * (phi + 1.0) if algebra_kind(cls) is AlgebraKind.SU2 else -phi * (phi + 1.0)


def casimir_check(cls: EquationClass, l: int, tol: float = 1e-9) -> list[CheckResult]:
    """Casimir eigenvalue, ``K_0`` eigenvalues and normalised ``K_+-`` matrix elements on ``|l,m)``.

    ``C = K_- K_+ + K_0(K_0 + 1)`` for su(2) and ``K_- K_+ - K_0(K_0 + 1)`` for
    su(1,1).  The Casimir eigenvalue is read off exactly from the polynomial
    actions; matrix elements use quadrature norms.
    """
    kind = algebra_kind(cls)
    if kind is AlgebraKind.HEISENBERG_WEYL:
        raise ValueError("no Casimir check for the Heisenberg-Weyl classes")
    if not cls.cutoff().admits(l):
        from .errors import CutoffExceeded

        raise CutoffExceeded(f"l={l} is not below Lambda={cls.cutoff()}")
    form = k_normal_form(cls)
    Kp, Km, K0 = form.operators(cls)
    sign = 1.0 if kind is AlgebraKind.SU2 else -1.0
    phi = phi_value(cls, l)
    C_want = casimir_eigenvalue(cls, l)
    cas = Tracker(f"casimir[{kind.value}]", "C |l,m) = " + ("Phi(Phi+1)" if sign > 0 else "-Phi(Phi+1)") + " |l,m)", tol)
    k0 = Tracker("casimir.K0", "K_0 |l,m) = (Phi + m - l) |l,m)", tol)
    plus = Tracker("casimir.K_plus", "||K_+ |l,m)|| = sqrt(lambda_l - lambda_m)", tol)
    minus = Tracker("casimir.K_minus", "||K_- |l,m)|| = sqrt(lambda_l - lambda_{m-1})", tol)
    lam = cls.lambda_l
    for m in range(l + 1):
        r = canonical(cls, l, m)
        k0r = K0(r)
        C = Km(Kp(r)) + (K0(k0r) + k0r) * sign
        cas.add(abs(_ratio(C, r) - C_want) / max(1.0, abs(C_want)), f"m={m}")
        k0.add(abs(_ratio(k0r, r) - (phi + m - l)), f"m={m}")
        up = Kp(r)
        if m == l:
            plus.add(0.0 if up.is_zero() else math.inf, f"m={m} (top)")
        else:
            el = _ratio(up, canonical(cls, l, m + 1)) * norm(cls, l, m + 1) / norm(cls, l, m)
            want = math.sqrt(lam(l) - lam(m))
            plus.add(abs(el - want) / want, f"m={m}")
        if m >= 1:
            el = _ratio(Km(r), canonical(cls, l, m - 1)) * norm(cls, l, m - 1) / norm(cls, l, m)
            want = math.sqrt(lam(l) - lam(m - 1))
            minus.add(abs(el - want) / want, f"m={m}")
    return [cas.result(), k0.result(), plus.result(), minus.result()]


def _ratio(rep: SurfaceRep, basis: SurfaceRep) -> float:
    """``c`` with ``rep = c * basis``; requires equal ``m``."""
    if rep.is_zero():
        return 0.0
    if rep.m != basis.m:
        raise ValueError("reps are not proportional")
    b = basis.poly.coeffs
    r = rep.poly.coeffs
    n = min(b.size, r.size)
    return float(r[:n] @ b[:n] / (b @ b))


def matrix_element_check(cls: EquationClass, l_max: int = 8, tol: float = 1e-7) -> list[CheckResult]:
    """``L_+ |l,m) = sqrt(lambda_l - lambda_m) |l,m+1)`` and ``L_- |l,m) = sqrt(lambda_l - lambda_{m-1}) |l,m-1)``; top states are annihilated by ``L_+``."""
    plus = Tracker("algebra.L_plus_elements", "L_+ |l,m) = sqrt(lambda_l - lambda_m) |l,m+1)", tol)
    minus = Tracker("algebra.L_minus_elements", "L_- |l,m) = sqrt(lambda_l - lambda_{m-1}) |l,m-1)", tol)
    top = Tracker("algebra.top_state", "L_+ |l,l) = 0", 0.0)
    lam = cls.lambda_l
    for l in range(cls.cutoff().count(l_max + 1)):
        for m in range(l + 1):
            r = canonical(cls, l, m)
            if m < l:
                el = _ratio(apply_L_plus(cls, r), canonical(cls, l, m + 1)) * norm(cls, l, m + 1) / norm(cls, l, m)
                want = math.sqrt(lam(l) - lam(m))
                plus.add(abs(el - want) / want, f"l={l},m={m}")
            else:
                top.add(0.0 if apply_L_plus(cls, r).is_zero() else math.inf, f"l={l}")
            if m >= 1:
                el = _ratio(apply_L_minus(cls, r), canonical(cls, l, m - 1)) * norm(cls, l, m - 1) / norm(cls, l, m)
                want = math.sqrt(lam(l) - lam(m - 1))
                minus.add(abs(el - want) / want, f"l={l},m={m}")
    return [plus.result(), minus.result(), top.result()]


# Legendre string

def lowering_string(cls: EquationClass, l: int, steps: int) -> list[SurfaceRep]:
    """Successive ``L_-`` images of the top rep ``(l, const)``; element ``k`` is ``L_-^k``."""
    r = SurfaceRep(l, Polynomial.one())
    out = [r]
    for _ in range(steps):
        r = apply_L_minus(cls, r)
        out.append(r)
    return out


def nilpotency_check(cls: EquationClass, l_max: int = 6, tol: float = 1e-12) -> list[CheckResult]:
    """From ``(l, const)``: ``L_-^{2l}`` is nonzero with ``p`` divisible by ``sigma**l``, ``L_-^{2l+1} = 0``.

    Meaningful for the Legendre class ``alpha = -2, beta = 0`` of ``1 - s^2``,
    where ``(l, const)`` is proportional to ``Psi_{l,l}``.  Zero is judged
    with respect to the largest intermediate coefficient.
    """
    vanish = Tracker("legendre.vanish", "(L_-)^{2l+1} (l, const) = 0", tol)
    alive = Tracker("legendre.alive", "(L_-)^{2l} (l, const) != 0 and finite", 0.5)
    for l in range(l_max + 1):
        chain = lowering_string(cls, l, 2 * l + 1)
        ref = max(r.poly.scale() for r in chain)
        last, before = chain[-1], chain[-2]
        vanish.add(last.poly.scale() / ref, f"l={l}")
        try:
            _, q = before.reflected(cls)
            ok = not q.is_zero(1e-10 * ref)
        except NotDivisible:
            ok = False
        alive.add(0.0 if ok else 1.0, f"l={l}")
    return [vanish.result(), alive.result()]


def ground_lowering(cls: EquationClass, l: int) -> tuple[SurfaceRep, bool]:
    """``L_- |l,0)`` and whether it vanishes; an exploratory query.

    For Legendre it equals ``-e^{-i phi} Psi_{l,1}`` and is nonzero for
    ``l >= 1``; in general nothing forces either outcome.
    """
    r = apply_L_minus(cls, canonical(cls, l, 0))
    return r, r.is_zero(1e-12 * max(1.0, build_psi(cls, l).scale()))
