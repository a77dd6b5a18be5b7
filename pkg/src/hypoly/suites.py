"""Named verification suites; each returns a list of :class:`CheckResult`.

``SUITES`` maps the names used on the command line to the functions.  A suite
that does not apply to a class raises :class:`UnsupportedClass`; ``all``
records such suites as skipped.
"""
from __future__ import annotations

import math
from dataclasses import replace
from typing import Callable

import numpy as np

from . import algebra, coherent, operators
from .eqclass import EquationClass, SigmaKind
from .errors import OracleUnavailable, UnsupportedClass
from .polyalg import build_psi, classical_oracle, ode_relative_residual, rodrigues_oracle, three_term, zeros_inside
from .polynomial import relative_distance
from .report import CheckResult, Tracker, skipped
from .specfun import m_recurrence_residual, norm_ladder, norm_quadrature, orthogonality_matrix

Suite = Callable[..., list[CheckResult]]


def _top(cls: EquationClass, l_max: int) -> int:
    """Number of admissible indices ``l <= l_max``."""
    return cls.cutoff().count(l_max + 1)


def is_legendre(cls: EquationClass) -> bool:
    return cls.kind is SigmaKind.ONE_MINUS_S2 and cls.alpha == -2.0 and cls.beta == 0.0


def ode_suite(cls: EquationClass, l_max: int = 11) -> list[CheckResult]:
    """ODE residual, exact degree, zero location, weight positivity and the Pearson relation."""
    res = Tracker("ode.residual", "sigma Psi_l'' + tau Psi_l' + lambda_l Psi_l = 0", 1e-12)
    deg = Tracker("ode.degree", "deg Psi_l = l", 0.0)
    zer = Tracker("ode.zeros", "Psi_l has l simple zeros inside (a, b)", 0.0)
    for l in range(_top(cls, l_max)):
        res.add(ode_relative_residual(cls, l), f"l={l}")
        deg.add(abs(build_psi(cls, l).degree - l), f"l={l}")
        zer.add(0.0 if zeros_inside(cls, l)[1] else 1.0, f"l={l}")
    return [res.result(), deg.result(), zer.result(), *weight_checks(cls)]


def _interior_samples(cls: EquationClass, n: int = 41) -> np.ndarray:
    a, b = cls.interval
    if math.isfinite(a) and math.isfinite(b):
        return np.linspace(a, b, n + 2)[1:-1]
    if math.isfinite(a):
        return a + np.geomspace(1e-3, 30.0, n)
    return np.linspace(-8.0, 8.0, n)


def weight_checks(cls: EquationClass) -> list[CheckResult]:
    """``rho > 0`` and ``(sigma rho)' = tau rho`` on a sample of the interval.

    Both are checked through ``log rho``, which stays finite where ``rho``
    itself underflows; the second becomes ``d/ds log(sigma rho) = tau/sigma``,
    tested with central differences whose step shrinks towards finite ends.
    """
    s = _interior_samples(cls)
    a, b = cls.interval
    logw = cls.log_weight(s)
    pos = Tracker("weight.positive", "rho(s) > 0 on (a, b)", 0.0)
    pos.add(float(np.sum(~np.isfinite(logw))), f"{s.size} samples")
    pearson = Tracker("weight.pearson", "(sigma rho)' = tau rho", 1e-6)
    for x in s:
        d = min(x - a, b - x)
        h = 1e-4 * min(max(1.0, abs(x)), d)
        g = cls.log_weight(np.array([x - h, x + h]), sigma_power=1.0)
        fd = (g[1] - g[0]) / (2.0 * h)
        want = cls.tau(x) / cls.sigma(x)
        pearson.add(abs(fd - want) / max(abs(want), 1.0 / d if d < 1.0 else 1.0), f"s={x:.4g}")
    return [pos.result(), pearson.result(), endpoint_decay(cls)]


def endpoint_decay(cls: EquationClass, n_gamma: int = 6) -> CheckResult:
    """``sigma rho |s|^gamma -> 0`` at both ends for ``gamma`` in ``[0, min(bound - 1/2, 20)]``.

    Probes approach each end geometrically; the log of the product must be
    decreasing over the last probes and end below ``-5``.  The residual is
    the number of failing ``(end, gamma)`` pairs.
    """
    bound = cls.gamma_bound()
    top = 20.0 if math.isinf(bound) else bound - 0.5
    gammas = np.linspace(0.0, max(top, 0.0), n_gamma)
    a, b = cls.interval
    k = np.arange(1, 13)
    probes = []
    for end, inward in ((a, 1.0), (b, -1.0)):
        if math.isinf(end):
            pts = -inward * 10.0 ** k.astype(float)
        else:
            pts = end + inward * 10.0 ** (-k.astype(float))
        probes.append((end, pts))
    tr = Tracker("weight.endpoint_decay", "sigma rho s^gamma -> 0 at a and b", 0.0)
    for end, pts in probes:
        base = cls.log_weight(pts, sigma_power=1.0)
        for g in gammas:
            v = base + g * np.log(np.abs(pts))
            ok = bool(np.all(np.diff(v[-4:]) < 0) and v[-1] < -5.0)
            tr.add(0.0 if ok else 1.0, f"end={end},gamma={g:g}")
    return tr.result()


def orthogonality_suite(cls: EquationClass, l_max: int = 11, m_values=(0, 1, 2)) -> list[CheckResult]:
    """Gram matrices of the normalised ``Psi~_{l,m}`` and the norm ladder against quadrature."""
    out = []
    for m in m_values:
        if _top(cls, l_max) <= m:
            continue
        G = orthogonality_matrix(cls, m, l_max)
        dev = np.abs(G - np.eye(G.shape[0]))
        i, j = np.unravel_index(int(np.argmax(dev)), dev.shape)
        out.append(CheckResult(
            f"orthogonality.m{m}", "<Psi~_{l,m}, Psi~_{k,m}> = delta_lk", float(dev[i, j]), 1e-8,
            G.size, f"l={m + i},k={m + j}",
        ))
    out.append(norm_ladder_suite_check(cls, min(l_max, 8)))
    return out


def norm_ladder_suite_check(cls: EquationClass, l_max: int = 8) -> CheckResult:
    tr = Tracker("norms.ladder", "||Psi_{l,m}|| = sqrt(prod_j (lambda_l - lambda_j)) ||Psi_{l,0}|| (vs quadrature)", 1e-7)
    for l in range(_top(cls, l_max)):
        base = norm_quadrature(cls, l, 0)
        for m in range(1, l + 1):
            direct = norm_quadrature(cls, l, m)
            tr.add(abs(norm_ladder(cls, l, m, base) - direct) / direct, f"l={l},m={m}")
    return tr.result()


def oracle_suite(cls: EquationClass, l_max: int = 8) -> list[CheckResult]:
    rod = Tracker("oracle.rodrigues", "build_psi = Rodrigues formula (monic)", 1e-9)
    cla = Tracker("oracle.classical", "build_psi = Hermite/Laguerre/Jacobi form (monic)", 1e-9)
    have_classical = True
    for l in range(_top(cls, l_max)):
        ref = build_psi(cls, l)
        rod.add(relative_distance(ref, rodrigues_oracle(cls, l)), f"l={l}")
        try:
            cla.add(relative_distance(ref, classical_oracle(cls, l)), f"l={l}")
        except OracleUnavailable:
            have_classical = False
    out = [rod.result()]
    out.append(cla.result() if have_classical else skipped(cla.name, cla.relation, "no real classical form"))
    return out


def recurrence_suite(cls: EquationClass, l_max: int = 11) -> list[CheckResult]:
    """Three-term relation in ``l`` and the relation linking three consecutive ``m``."""
    tt = Tracker("recurrence.three_term", "s Psi_l = Psi_{l+1} + b_l Psi_l + g_l Psi_{l-1}", 1e-9)
    for l in range(1, _top(cls, l_max) - 1):
        tt.add(three_term(cls, l)[2], f"l={l}")
    mr = Tracker("recurrence.m", "Psi_{l,m+1} + (tau/kappa + 2(m-1) kappa') Psi_{l,m} + (lambda_l - lambda_{m-1}) Psi_{l,m-1} = 0", 1e-10)
    for l in range(1, _top(cls, l_max)):
        for m in range(1, l + 1):
            mr.add(m_recurrence_residual(cls, l, m), f"l={l},m={m}")
    return [tt.result(), mr.result()]


def ladder_suite(cls: EquationClass, l_max: int = 12) -> list[CheckResult]:
    out = operators.ladder_exactness(cls, l_max) + operators.factorization_check(cls, l_max)
    for m in range(min(l_max, _top(cls, l_max) - 1)):
        out += operators.intertwining_check(cls, m, l_max)
    out.append(operators.h_pointwise_check(cls, min(l_max, 8)))
    out.append(operators.norm_ladder_check(cls, min(l_max, 8)))
    return out


def algebra_suite(cls: EquationClass, l_max: int = 8) -> list[CheckResult]:
    out = algebra.commutator_case_check(cls, min(l_max, 6))
    out += algebra.k_form_check(cls, min(l_max, 6))
    out.append(algebra.jacobi_identity_check(cls, min(l_max, 4)))
    out += algebra.matrix_element_check(cls, l_max)
    if is_legendre(cls):
        out += algebra.nilpotency_check(cls, min(l_max, 6))
    return out


def casimir_suite(cls: EquationClass, l_max: int = 6) -> list[CheckResult]:
    if algebra.algebra_kind(cls) is algebra.AlgebraKind.HEISENBERG_WEYL:
        raise UnsupportedClass("the Heisenberg-Weyl classes have no Casimir suite")
    merged: dict[str, list[CheckResult]] = {}
    for l in range(_top(cls, min(l_max, 6))):
        for r in algebra.casimir_check(cls, l):
            merged.setdefault(r.name, []).append(r)
    return [_merge(rs) for rs in merged.values()]


def _merge(results: list[CheckResult]) -> CheckResult:
    worst = max(results, key=lambda r: r.max_residual)
    idx = results.index(worst)
    return CheckResult(worst.name, worst.relation, worst.max_residual, worst.tolerance,
                       sum(r.cases for r in results), f"l={idx},{worst.worst}")


def shift_suite(cls: EquationClass, l_max: int = 8, N: int = 16) -> list[CheckResult]:
    if cls.kind not in operators.SHIFT_KINDS:
        raise UnsupportedClass(f"shift operators are not defined for sigma kind {cls.kind.value}")
    out = []
    for m in range(3):
        for r in operators.commutator_check(cls, m, N):
            out.append(_renamed(r, f"{r.name}[m={m}]"))
        out.append(_renamed(operators.matrix_element_check(cls, m, min(N, l_max)), f"shift.elements[m={m}]"))
        out.append(_renamed(operators.isometry_check(cls, m, min(N, l_max)), f"shift.isometry[m={m}]"))
    return out


def _renamed(r: CheckResult, name: str) -> CheckResult:
    return replace(r, name=name)


def coherent_suite(cls: EquationClass, l_max: int = 10) -> list[CheckResult]:
    coherent.branch_of(cls)
    out = []
    for m in range(3):
        out.append(_renamed(coherent.eigen_check(cls, m), f"coherent.eigen[m={m}]"))
        out.append(_renamed(coherent.norm_identity_check(cls, m), f"coherent.norm[m={m}]"))
    out.append(coherent.identity_resolution_check(cls, 0, n_basis=11))
    return out


SUITES: dict[str, Suite] = {
    "ode": ode_suite,
    "oracle": oracle_suite,
    "orthogonality": orthogonality_suite,
    "ladder": ladder_suite,
    "recurrence": recurrence_suite,
    "algebra": algebra_suite,
    "shift": shift_suite,
    "casimir": casimir_suite,
    "coherent": coherent_suite,
}


def run_suite(name: str, cls: EquationClass, l_max: int | None = None) -> list[CheckResult]:
    """Run one suite (or ``all``); ``l_max=None`` keeps each suite's default range."""
    names = list(SUITES) if name == "all" else [name]
    if name != "all" and name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    out = []
    for n in names:
        fn = SUITES[n]
        try:
            out += fn(cls) if l_max is None else fn(cls, l_max)
        except UnsupportedClass as exc:
            if name != "all":
                raise
            out.append(skipped(f"{n}", "suite not applicable", str(exc)))
    return out
