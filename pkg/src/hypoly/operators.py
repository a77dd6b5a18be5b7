"""Ladder operators A_m, A_m^+, the operators H_m and the shift operators a_m, a_m^+.

On ``f = kappa**k p`` the first-order operators act in closed form::

    A_m   (m, p)   -> (m+1, p')
    A_m^+ (m+1, q) -> (m, -sigma q' - m sigma' q - tau q)

so that every identity among them is an identity between polynomials.  The
explicit second-order form of ``H_m``, with its ``1/sigma`` terms, is only used
pointwise as an independent cross-check.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .eqclass import EquationClass, SigmaKind
from .errors import RepMismatch, UnsupportedClass
from .polyalg import _check_index
from .report import CheckResult, Tracker
from .quad import inner_product
from .specfun import LadderRep, build_psi_lm, norm, normalized

SHIFT_KINDS = (SigmaKind.ONE, SigmaKind.S, SigmaKind.ONE_MINUS_S2)


def _expect(rep: LadderRep, m: int, op: str):
    if rep.m != m:
        raise RepMismatch(f"{op} expects kappa power {m}, got {rep.m}")


def apply_A(cls: EquationClass, m: int, rep: LadderRep) -> LadderRep:
    """``A_m = kappa d/ds - m kappa'`` on ``(m, p)``."""
    _expect(rep, m, f"A_{m}")
    return LadderRep(m + 1, rep.p.derivative())


def apply_A_plus(cls: EquationClass, m: int, rep: LadderRep) -> LadderRep:
    """``A_m^+ = -kappa d/ds - tau/kappa - (m-1) kappa'`` on ``(m+1, q)``."""
    _expect(rep, m + 1, f"A_{m}^+")
    q = rep.p
    sig = cls.sigma_poly
    out = -(sig * q.derivative()) - m * (sig.derivative() * q) - cls.tau_poly * q
    return LadderRep(m, out)


def apply_H(cls: EquationClass, m: int, rep: LadderRep) -> LadderRep:
    """``H_m`` via its factorisation ``A_m^+ A_m + lambda_m``."""
    _expect(rep, m, f"H_{m}")
    return apply_A_plus(cls, m, apply_A(cls, m, rep)) + cls.lambda_l(m) * rep


def h_pointwise(cls: EquationClass, m: int, rep: LadderRep, s) -> np.ndarray:
    """``H_m f`` at ``s`` from the explicit second-order expression.

    ``f = kappa**k p`` with ``k = rep.m``; derivatives of ``f`` are formed
    analytically.  Requires ``sigma(s) != 0``.
    """
    s = np.asarray(s, dtype=float)
    k = rep.m
    p, dp, ddp = rep.p(s), rep.p.derivative()(s), rep.p.derivative(2)(s)
    sig, dsig, ddsig = cls.sigma(s), cls.sigma_prime(s), cls.sigma2
    tau, dtau = cls.tau(s), cls.alpha
    h = k / 2.0
    base = np.abs(sig) ** h
    f = base * p
    f1 = base * (h * dsig / sig * p + dp)
    f2 = base * (h * (h - 1.0) * dsig ** 2 / sig ** 2 * p + h * ddsig / sig * p + k * dsig / sig * dp + ddp)
    return (
        -sig * f2
        - tau * f1
        + m * (m - 2) / 4.0 * dsig ** 2 / sig * f
        + m * tau / 2.0 * dsig / sig * f
        - 0.5 * m * (m - 2) * ddsig * f
        - m * dtau * f
    )


def ladder_chain(cls: EquationClass, l: int, m: int) -> LadderRep:
    """``Psi_{l,m}`` rebuilt from ``Psi_{l,l}`` by ``A_j^+/(lambda_l - lambda_j)``, ``j = l-1 .. m``."""
    _check_index(cls, l)
    if not 0 <= m <= l:
        raise IndexError(f"m={m} outside 0..{l}")
    rep = build_psi_lm(cls, l, l)
    lam = cls.lambda_l(l)
    for j in range(l - 1, m - 1, -1):
        rep = apply_A_plus(cls, j, rep) * (1.0 / (lam - cls.lambda_l(j)))
    return rep


# exact identity checks on the Psi_{l,m}

def _admissible(cls: EquationClass, l_max: int) -> range:
    return range(cls.cutoff().count(l_max + 1))


def ladder_exactness(cls: EquationClass, l_max: int = 12, tol: float = 1e-10) -> list[CheckResult]:
    """``A_m Psi_{l,m} = Psi_{l,m+1}`` and ``A_m^+ Psi_{l,m+1} = (lambda_l - lambda_m) Psi_{l,m}``."""
    up = Tracker("ladder.A", "A_m Psi_{l,m} = Psi_{l,m+1}", tol)
    down = Tracker("ladder.A_plus", "A_m^+ Psi_{l,m+1} = (lambda_l - lambda_m) Psi_{l,m}", tol)
    chain = Tracker("ladder.chain", "Psi_{l,m} = prod_j A_j^+/(lambda_l - lambda_j) Psi_{l,l}", tol)
    for l in _admissible(cls, l_max):
        for m in range(l):
            lo, hi = build_psi_lm(cls, l, m), build_psi_lm(cls, l, m + 1)
            up.add(apply_A(cls, m, lo).distance(hi), f"l={l},m={m}")
            want = (cls.lambda_l(l) - cls.lambda_l(m)) * lo
            down.add(apply_A_plus(cls, m, hi).distance(want), f"l={l},m={m}")
            chain.add(ladder_chain(cls, l, m).distance(lo), f"l={l},m={m}")
    return [up.result(), down.result(), chain.result()]


def factorization_check(cls: EquationClass, l_max: int = 12, tol: float = 1e-10) -> list[CheckResult]:
    """``H_m - lambda_m = A_m^+ A_m`` and ``H_{m+1} - lambda_m = A_m A_m^+``.

    The first is checked against the eigenvalue relation ``H_m Psi_{l,m} =
    lambda_l Psi_{l,m}``; the second compares ``A_m A_m^+`` with
    ``A_{m+1}^+ A_{m+1} + lambda_{m+1} - lambda_m`` on every ``Psi_{l,m+1}``.
    """
    eig = Tracker("factorization.H_m", "H_m Psi_{l,m} = lambda_l Psi_{l,m} with H_m = A_m^+ A_m + lambda_m", tol)
    swap = Tracker("factorization.swap", "A_m A_m^+ = H_{m+1} - lambda_m", tol)
    for l in _admissible(cls, l_max):
        for m in range(l + 1):
            rep = build_psi_lm(cls, l, m)
            eig.add(apply_H(cls, m, rep).distance(cls.lambda_l(l) * rep), f"l={l},m={m}")
        for m in range(l):
            rep = build_psi_lm(cls, l, m + 1)
            lhs = apply_A(cls, m, apply_A_plus(cls, m, rep))
            rhs = apply_H(cls, m + 1, rep) - cls.lambda_l(m) * rep
            swap.add(lhs.distance(rhs), f"l={l},m={m}")
    return [eig.result(), swap.result()]


def intertwining_check(cls: EquationClass, m: int, l_max: int = 12, tol: float = 1e-10) -> list[CheckResult]:
    """``H_m A_m^+ = A_m^+ H_{m+1}`` on ``Psi_{l,m+1}`` and ``A_m H_m = H_{m+1} A_m`` on ``Psi_{l,m}``."""
    if not cls.cutoff().admits(m + 1):
        raise ValueError(f"need m+1 < Lambda, got m={m}")
    left = Tracker(f"intertwining.H{m}A{m}+", "H_m A_m^+ = A_m^+ H_{m+1}", tol)
    right = Tracker(f"intertwining.A{m}H{m}", "A_m H_m = H_{m+1} A_m", tol)
    for l in _admissible(cls, l_max):
        if l >= m + 1:
            rep = build_psi_lm(cls, l, m + 1)
            a = apply_H(cls, m, apply_A_plus(cls, m, rep))
            b = apply_A_plus(cls, m, apply_H(cls, m + 1, rep))
            left.add(a.distance(b), f"l={l}")
        if l >= m:
            rep = build_psi_lm(cls, l, m)
            a = apply_A(cls, m, apply_H(cls, m, rep))
            b = apply_H(cls, m + 1, apply_A(cls, m, rep))
            right.add(a.distance(b), f"l={l}")
    return [left.result(), right.result()]


def h_pointwise_check(cls: EquationClass, l_max: int = 8, tol: float = 1e-9, n_points: int = 9) -> CheckResult:
    """Explicit ``H_m`` agrees with ``lambda_l`` on ``Psi_{l,m}`` at sample points where ``|sigma| > 1e-3``."""
    tr = Tracker("hamiltonian.explicit", "H_m Psi_{l,m} = lambda_l Psi_{l,m} (explicit form)", tol)
    s = _sample_points(cls, n_points)
    for l in _admissible(cls, l_max):
        for m in range(l + 1):
            rep = build_psi_lm(cls, l, m)
            lhs = h_pointwise(cls, m, rep, s)
            f = np.abs(cls.sigma(s)) ** (m / 2.0) * rep.p(s)
            rhs = cls.lambda_l(l) * f
            # scale by the size of the individual terms H is built from
            ref = max(np.max(np.abs(rhs)), np.max(np.abs(f)) * (1 + abs(cls.lambda_l(l))), 1e-300)
            tr.add(float(np.max(np.abs(lhs - rhs)) / ref), f"l={l},m={m}")
    return tr.result()


def _sample_points(cls: EquationClass, n: int) -> np.ndarray:
    a, b = cls.interval
    lo = a if math.isfinite(a) else -3.0
    hi = b if math.isfinite(b) else (lo + 6.0 if math.isfinite(a) else 3.0)
    s = np.linspace(lo, hi, n + 2)[1:-1]
    return s[np.abs(cls.sigma(s)) > 1e-3]


# shift operators a_m, a_m^+ on the basis |n> = tilde Psi_{m+n,m}

class MatrixKind(enum.Enum):
    LOWER = "a_m"
    RAISE = "a_m^+"
    SHIFT = "U_m"
    NUMBER = "R_m"
    HAMILTONIAN = "H_m - lambda_m"


@dataclass(frozen=True)
class OperatorMatrix:
    cls: EquationClass
    m: int
    size: int
    entries: np.ndarray
    kind: MatrixKind

    def __matmul__(self, other: "OperatorMatrix") -> np.ndarray:
        return self.entries @ other.entries


def _require_shift_class(cls: EquationClass):
    if cls.kind not in SHIFT_KINDS:
        raise UnsupportedClass(
            f"shift operators are defined for sigma in {{1, s, 1-s^2}} only, not {cls.kind.value}"
        )


def e_levels(cls: EquationClass, m: int, N: int) -> np.ndarray:
    """``e_n = lambda_{m+n} - lambda_m`` for ``n < N``."""
    lam_m = cls.lambda_l(m)
    return np.array([cls.lambda_l(m + n) - lam_m for n in range(N)])


def e_closed_form(cls: EquationClass, m: int, N: int) -> np.ndarray:
    """``-alpha n`` for sigma in {1, s}; ``n (n + 2m - alpha - 1)`` for 1 - s^2."""
    n = np.arange(N, dtype=float)
    if cls.kind is SigmaKind.ONE_MINUS_S2:
        return n * (n + 2 * m - cls.alpha - 1.0)
    return -cls.alpha * n


def shift_matrices(cls: EquationClass, m: int, N: int) -> dict[MatrixKind, OperatorMatrix]:
    """Truncated matrices of ``a_m, a_m^+, U_m, R_m, H_m - lambda_m``.

    ``U_m`` maps ``tilde Psi_{l,m} -> tilde Psi_{l+1,m+1}``, so between the two
    truncated bases it is the identity; ``a_m = U_m^+ A_m`` with ``A_m`` the
    matrix of ``A_m`` from the ``m`` basis to the ``m+1`` basis.  Only the
    leading ``(N-1) x (N-1)`` block of products is meaningful.
    """
    _require_shift_class(cls)
    if N < 2:
        raise ValueError("truncation size must be at least 2")
    e = e_levels(cls, m, N)
    A = np.zeros((N, N))
    for n in range(1, N):
        A[n - 1, n] = math.sqrt(e[n])
    U = np.eye(N)
    a = U.T @ A
    R = np.diag([(-cls.sigma2 * (m + n) - cls.alpha) / 2.0 for n in range(N)])
    H = np.diag(e)
    mk = lambda kind, M: OperatorMatrix(cls, m, N, M, kind)  # noqa: E731
    return {
        MatrixKind.LOWER: mk(MatrixKind.LOWER, a),
        MatrixKind.RAISE: mk(MatrixKind.RAISE, a.T.copy()),
        MatrixKind.SHIFT: mk(MatrixKind.SHIFT, U),
        MatrixKind.NUMBER: mk(MatrixKind.NUMBER, R),
        MatrixKind.HAMILTONIAN: mk(MatrixKind.HAMILTONIAN, H),
    }


def _comm(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    return X @ Y - Y @ X


def _block_residual(M: np.ndarray, target: np.ndarray) -> tuple[float, str]:
    k = M.shape[0] - 1
    D = np.abs(M[:k, :k] - target[:k, :k])
    i, j = np.unravel_index(int(np.argmax(D)), D.shape)
    return float(D[i, j]), f"entry ({i},{j})"


def commutator_check(cls: EquationClass, m: int, N: int = 16, tol: float = 1e-10) -> list[CheckResult]:
    """Lie brackets of the shift operators on the interior block."""
    mats = shift_matrices(cls, m, N)
    a = mats[MatrixKind.LOWER].entries
    ad = mats[MatrixKind.RAISE].entries
    R = mats[MatrixKind.NUMBER].entries
    H = mats[MatrixKind.HAMILTONIAN].entries
    half = cls.sigma2 / 2.0
    lam = [cls.lambda_l(m + n) for n in range(N + 1)]
    gaps = np.diag([lam[n + 1] - lam[n] for n in range(N)])
    out = []

    def record(name, relation, M, target):
        r, where = _block_residual(M, target)
        out.append(CheckResult(name, relation, r, tol, 1, where))

    record("shift.a_ad", "[a_m, a_m^+] = lambda_{l+1} - lambda_l", _comm(a, ad), gaps)
    inner = np.diag(_comm(a, ad))[: N - 1]
    out[-1] = replace(out[-1], details={"diagonal": [float(x) for x in inner]})
    record("shift.number", "[a_m^+, a_m] = -2 R_m", _comm(ad, a), -2.0 * R)
    record("shift.R_raise", "[R_m, a_m^+] = -(sigma''/2) a_m^+", _comm(R, ad), -half * ad)
    record("shift.R_lower", "[R_m, a_m] = (sigma''/2) a_m", _comm(R, a), half * a)
    record("shift.factorization", "H_m - lambda_m = a_m^+ a_m", ad @ a, H)
    record("shift.adjoint", "a_m^+ = transpose(a_m)", ad, a.T)
    e_gap = float(np.max(np.abs(e_levels(cls, m, N) - e_closed_form(cls, m, N))))
    out.append(CheckResult("shift.e_n", "e_n closed form", e_gap, tol, N, ""))
    if cls.kind in (SigmaKind.ONE, SigmaKind.S):
        c = math.sqrt(-1.0 / cls.alpha)
        Pp, Pm = c * ad, c * a
        record("shift.heisenberg", "[P_+, P_-] = -I with P = sqrt(-1/alpha) a", _comm(Pp, Pm), -np.eye(N))
    else:
        Kp, Km, K0 = ad, a, R
        record("shift.su11_bracket", "[K_+, K_-] = -2 K_0", _comm(Kp, Km), -2.0 * K0)
        record("shift.su11_raise", "[K_0, K_+] = K_+", _comm(K0, Kp), Kp)
        record("shift.su11_lower", "[K_0, K_-] = -K_-", _comm(K0, Km), -Km)
        C = Km @ Kp - K0 @ (K0 + np.eye(N))
        x = cls.alpha / 2.0 - m
        record("shift.casimir", "K_- K_+ - K_0(K_0 + 1) = -(alpha/2 - m)(alpha/2 - m + 1)", C, -x * (x + 1.0) * np.eye(N))
    return out


def matrix_element_check(cls: EquationClass, m: int, N: int = 8, tol: float = 1e-7) -> CheckResult:
    """Matrix of ``A_m`` extracted with quadrature norms equals ``sqrt(e_n)``.

    ``A_m tilde Psi_{l,m} = (||Psi_{l,m+1}|| / ||Psi_{l,m}||) tilde Psi_{l,m+1}``,
    the ratio coming from independent quadratures.
    """
    _require_shift_class(cls)
    tr = Tracker("shift.elements", "A_m tilde Psi_{l,m} = sqrt(lambda_l - lambda_m) tilde Psi_{l,m+1}", tol)
    e = e_levels(cls, m, N)
    for n in range(1, N):
        l = m + n
        rep = build_psi_lm(cls, l, m)
        image = apply_A(cls, m, rep)
        target = build_psi_lm(cls, l, m + 1)
        coef = _proportionality(image, target)
        element = coef * norm(cls, l, m + 1) / norm(cls, l, m)
        tr.add(abs(element - math.sqrt(e[n])) / math.sqrt(e[n]), f"n={n}")
    return tr.result()


def _proportionality(rep: LadderRep, target: LadderRep) -> float:
    """Scalar ``c`` with ``rep = c * target`` (least squares on coefficients)."""
    if rep.m != target.m:
        raise RepMismatch("reps with different kappa powers are not proportional")
    t = target.p.coeffs
    r = np.zeros_like(t)
    r[: min(t.size, rep.p.coeffs.size)] = rep.p.coeffs[: t.size]
    return float(np.dot(r, t) / np.dot(t, t))


def norm_ladder_check(cls: EquationClass, l_max: int = 12, tol: float = 1e-7) -> CheckResult:
    """``||A_m Psi_{l,m}|| = sqrt(lambda_l - lambda_m) ||Psi_{l,m}||`` with both norms by quadrature."""
    tr = Tracker("ladder.norm", "||A_m Psi_{l,m}|| = sqrt(lambda_l - lambda_m) ||Psi_{l,m}||", tol)
    for l in _admissible(cls, l_max):
        for m in range(l):
            image = apply_A(cls, m, build_psi_lm(cls, l, m))
            lhs = math.sqrt(inner_product(cls, image, image))
            rhs = math.sqrt(cls.lambda_l(l) - cls.lambda_l(m)) * norm(cls, l, m)
            tr.add(abs(lhs - rhs) / rhs, f"l={l},m={m}")
    return tr.result()


def isometry_check(cls: EquationClass, m: int, N: int = 8, tol: float = 1e-8) -> CheckResult:
    """Gram matrix of ``U_m tilde Psi_{l,m} = tilde Psi_{l+1,m+1}`` is the identity (quadrature side)."""
    _require_shift_class(cls)
    top = cls.cutoff().count(m + N + 1) - 1
    images = [normalized(cls, l + 1, m + 1)[0] for l in range(m, top)]
    tr = Tracker("shift.isometry", "<U_m tilde Psi_{l,m}, U_m tilde Psi_{k,m}> = delta_lk", tol)
    for i, f in enumerate(images):
        for j in range(i, len(images)):
            g = inner_product(cls, f, images[j])
            tr.add(abs(g - (1.0 if i == j else 0.0)), f"l={m + i},k={m + j}")
    return tr.result()
