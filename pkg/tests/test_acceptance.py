"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line."""
import time

import numpy as np
import pytest

from hypoly import algebra, coherent, operators
from hypoly.algebra import AlgebraKind, algebra_kind
from hypoly.errors import CutoffExceeded, QuadratureDivergence
from hypoly.polyalg import build_psi
from hypoly.report import CheckResult
from hypoly.specfun import forced_norm
from hypoly.suites import norm_ladder_suite_check, ode_suite, oracle_suite, orthogonality_suite, run_suite

from conftest import CLASSES, cls

SHIFT_CLASSES = [c for c in CLASSES if c.kind in operators.SHIFT_KINDS]
CASIMIR_CLASSES = [c for c in CLASSES if algebra_kind(c) is not AlgebraKind.HEISENBERG_WEYL]


@pytest.fixture
def verdict(capsys):
    def emit(number: int, ok: bool, summary: str):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {summary}")
        assert ok, summary

    return emit


def worst(results: list[CheckResult]) -> tuple[float, str]:
    r = max(results, key=lambda r: r.max_residual)
    return r.max_residual, f"{r.name} ({r.worst})"


def failures(results: list[CheckResult]) -> list[str]:
    return [f"{r.name}: {r.max_residual:.3g} > {r.tolerance:.1g} at {r.worst}" for r in results if not r.passed]


def test_class_coverage(verdict):
    t0 = time.perf_counter()
    results = []
    wanted = ("ode.residual", "ode.degree", "ode.zeros", "orthogonality.")
    for c in CLASSES:
        for r in ode_suite(c, 11) + orthogonality_suite(c, 11):
            if r.name.startswith(wanted):
                results.append(r)
    elapsed = time.perf_counter() - t0
    res, where = worst(results)
    ok = res <= 1e-8 and not failures(results) and elapsed < 30.0
    verdict(1, ok, f"12 classes, max residual {res:.2e} at {where}, {elapsed:.1f} s")


def test_oracle_agreement(verdict):
    results = [r for c in CLASSES for r in oracle_suite(c, 8) if not r.skipped]
    res, where = worst(results)
    ok = res <= 1e-9
    verdict(2, ok, f"{len(results)} oracle comparisons, max coefficient gap {res:.2e} at {where}")


def test_ladder_exactness(verdict):
    results = []
    for c in CLASSES:
        results += operators.ladder_exactness(c, 12) + operators.factorization_check(c, 12)
        for m in range(c.cutoff().count(13) - 1):
            results += operators.intertwining_check(c, m, 12)
    res, where = worst(results)
    ok = res <= 1e-10 and not failures(results)
    verdict(3, ok, f"{sum(r.cases for r in results)} ladder cases, max residual {res:.2e} at {where}")


def test_norm_ladder(verdict):
    results = [norm_ladder_suite_check(c, 8) for c in CLASSES]
    res, where = worst(results)
    verdict(4, res <= 1e-7, f"max relative gap {res:.2e} at {where}")


def test_commutator_realization(verdict):
    results = []
    for c in CLASSES:
        results += algebra.commutator_case_check(c) + algebra.k_form_check(c)
    res, where = worst(results)
    ok = res <= 1e-10
    verdict(5, ok, f"case table and K-forms on 12 classes, max residual {res:.2e} at {where}")


def test_casimir(verdict):
    results = []
    for c in CASIMIR_CLASSES:
        for l in range(c.cutoff().count(7)):
            results += algebra.casimir_check(c, l, tol=1e-9)
    res, where = worst(results)
    ok = res <= 1e-9 and not failures(results)
    verdict(6, ok, f"{len(CASIMIR_CLASSES)} classes, l <= 6, max residual {res:.2e} at {where}")


def test_shift_matrix_algebra(verdict):
    results, exact = [], True
    for c in SHIFT_CLASSES:
        for m in range(3):
            results += operators.commutator_check(c, m, 16, tol=1e-10)
            exact &= bool(np.array_equal(operators.e_levels(c, m, 16), operators.e_closed_form(c, m, 16)))
    res, where = worst(results)
    ok = not failures(results) and exact
    verdict(7, ok, f"N=16, m=0..2, max residual {res:.2e} at {where}, e_n exact: {exact}")


def test_coherent_states(verdict):
    t0 = time.perf_counter()
    family = [c for c in CLASSES if c.kind in operators.SHIFT_KINDS]
    eig, nrm, ident = [], [], []
    for c in family:
        for m in range(3):
            eig.append(coherent.eigen_check(c, m, n_trunc=80, tol=1e-9))
            nrm.append(coherent.norm_identity_check(c, m, n_trunc=80, tol=1e-10))
        ident.append(coherent.identity_resolution_check(c, 0, n_basis=11, tol=1e-4))
    elapsed = time.perf_counter() - t0
    branches = {coherent.branch_of(c) for c in family}
    ok = not failures(eig + nrm + ident) and elapsed < 60.0 and len(branches) == 2
    verdict(8, ok, f"eigen {worst(eig)[0]:.2e}, norm {worst(nrm)[0]:.2e}, identity {worst(ident)[0]:.2e}, "
                   f"{elapsed:.1f} s")


def test_finite_system(verdict):
    c = cls("s2:-7:1")
    cut_ok = c.cutoff().max_index == 3 and (1 - c.alpha) / 2 == 4.0
    results = run_suite("all", c)
    suites_ok = not failures(results) and all(c.cutoff().admits(l) for l in range(4))
    try:
        build_psi(c, 4)
        raised = False
    except CutoffExceeded:
        raised = True
    try:
        forced_norm(c, 4)
        diverged = False
    except QuadratureDivergence:
        diverged = True
    ok = cut_ok and suites_ok and raised and diverged
    ran = sum(1 for r in results if not r.skipped)
    verdict(9, ok, f"Lambda=4: {ran} checks pass for l<=3, l=4 CutoffExceeded={raised}, "
                   f"forced norm QuadratureDivergence={diverged}")


def test_legendre_nilpotency(verdict):
    results = algebra.nilpotency_check(cls("1-s2:-2:0"), 6)
    ok = not failures(results)
    verdict(10, ok, f"l <= 6, max (L_-)^(2l+1) residual {results[0].max_residual:.2e}")
