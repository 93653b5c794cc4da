"""Acceptance criteria, each at its stated tolerance.

Every test records a one-line verdict (shown in the terminal summary) before
asserting, so a failing criterion is still reported alongside the others.
"""

import json
import re
import subprocess
import sys

import numpy as np
import pytest

from dbrspace import debranges, dirichlet, series_core, weights
from dbrspace.quadrature import make_disk_rule
from dbrspace.verify import TEST_ZETAS, norm_w_grid, phieqn_profile, random_polys

RADII = [round(0.1 * k, 1) for k in range(1, 10)]
SEED = 7


def rel(x, exact):
    return abs(x - exact) / abs(exact) if exact != 0 else abs(x - exact)


@pytest.fixture(scope="module")
def rule():
    return make_disk_rule(400, 2048)


@pytest.fixture(scope="module")
def pairs():
    return {z: debranges.pair_from_phi(debranges.kernel_symbol(z), 4096, 128) for z in TEST_ZETAS}


def test_criterion_01_norm_equality(criterion, rule, pairs):
    worst = {"closed": 0.0, "solve": 0.0, "douglas": 0.0, "area": 0.0}
    grid = norm_w_grid()
    assert len(grid) == 25 and max(abs(w) for w in grid) <= 0.9
    for zeta in TEST_ZETAS:
        for w in grid:
            exact = dirichlet.local_dirichlet_closed_form_kernel(w, zeta)
            phi_w = debranges.kernel_symbol(zeta)(w)
            worst["closed"] = max(worst["closed"], rel(abs(phi_w) ** 2 / (1 - abs(w) ** 2), exact))
            k = series_core.cauchy_kernel(w, series_core.kernel_degree(w))
            fp = debranges.f_plus(k, pairs[zeta], 128)
            worst["solve"] = max(worst["solve"], rel(float(np.sum(np.abs(fp.coeffs) ** 2)), exact))
            kf = series_core.cauchy_kernel_fn(w)
            worst["douglas"] = max(worst["douglas"], rel(dirichlet.local_dirichlet(kf, zeta, 2048).value, exact))
            if abs(zeta) < 1:
                area = dirichlet.dirichlet_area(kf, weights.omega(zeta), rule).value
                worst["area"] = max(worst["area"], rel(area, exact))
    tol = {"closed": 1e-8, "solve": 1e-6, "douglas": 1e-6, "area": 1e-3}
    ok = all(worst[k] <= tol[k] for k in tol)
    criterion(1, ok, " ".join(f"{k}={worst[k]:.2e}/{tol[k]:.0e}" for k in tol))
    assert ok


def test_criterion_02_douglas(criterion, rule):
    worst = 0.0
    for f in random_polys(SEED, 20, 8, stream=2):
        assert f.degree <= 8
        for zeta in (0, 0.5, 0.3j):
            bdry = dirichlet.local_dirichlet(f, zeta, 2048).value
            area = dirichlet.dirichlet_area(f, weights.omega(zeta), rule).value
            worst = max(worst, abs(area - bdry) / (1 + bdry))
    ok = worst <= 1e-4
    criterion(2, ok, f"max |area-boundary|/(1+value) = {worst:.2e} (tol 1e-4)")
    assert ok


def test_criterion_03_dilation(criterion):
    measures = [
        weights.AtomicMeasure.dirac(0),
        weights.AtomicMeasure.dirac(1),
        weights.AtomicMeasure.dirac(0.5),
        weights.AtomicMeasure(((0, 0.5), (1, 0.5))),
    ]
    linear = squared = 0
    for f in random_polys(SEED, 100, 10, stream=3):
        for mu in measures:
            base = dirichlet.dirichlet_measure(f, mu, 2048).value
            for r in RADII:
                top = dirichlet.dirichlet_measure(series_core.dilate(f, r), mu, 2048).value
                linear += top > (2 * r / (1 + r)) * base + 1e-10
                if len(mu.atoms) == 1:
                    rho = abs(mu.atoms[0][0])
                    squared += top > (r * (1 + rho) / (1 + r * rho)) ** 2 * base + 1e-10
    ok = linear == 0 and squared == 0
    criterion(3, ok, f"violations: 2r/(1+r) bound {linear}, squared atom bound {squared} (3600 + 2700 cases)")
    assert ok


def test_criterion_04_pair_closed_form(criterion, pairs):
    sup = alg = ident = 0.0
    lam = series_core.circle_grid(512)
    for zeta in TEST_ZETAS:
        p, q = pairs[zeta], debranges.pair_closed_form(zeta, 4096, 128)
        sup = max(sup, np.max(np.abs(p.a_fn(lam) - q.a(lam))), np.max(np.abs(p.b_fn(lam) - q.b(lam))))
        A, B = debranges.pair_constants(zeta)
        alg = max(alg, abs(A * B - np.conj(zeta)), abs(A**2 + abs(B) ** 2 - 2 - abs(zeta) ** 2))
        ident = max(ident, p.invariants()["pair_identity"], q.invariants()["pair_identity"])
    ok = sup <= 1e-6 and alg <= 1e-12 and ident <= 1e-8
    criterion(4, ok, f"sup diff {sup:.2e}/1e-6, A,B algebra {alg:.2e}/1e-12, |a|^2+|b|^2-1 {ident:.2e}/1e-8")
    assert ok


def test_criterion_05_phi_ratio(criterion):
    worst = 0.0
    for zeta in (0, 1, 0.5):
        phi = debranges.kernel_symbol(zeta)
        for r in RADII:
            sup = series_core.sup_on_circle(series_core.ratio_dilate(phi, r), 4096)
            worst = max(worst, abs(sup - r * (1 + abs(zeta)) / (1 + r * abs(zeta))))
    ok = worst <= 1e-8
    criterion(5, ok, f"max |sup - r(1+|z|)/(1+r|z|)| = {worst:.2e} (tol 1e-8)")
    assert ok


def test_criterion_06_bergman_berezin(criterion, rule):
    grid = np.concatenate([[0j], weights.default_qb_grid()])
    q0 = np.max(np.abs(weights.bergman_projection(weights.omega(0), grid, rule) - 1))
    b0 = np.max(np.abs(weights.berezin(weights.omega(0), grid, rule) - (1 - np.abs(grid) ** 2)))
    q1 = np.max(np.abs(weights.bergman_projection(weights.omega(1), grid, rule) - 1 / (1 - grid)))
    qb = max(weights.qb_residual(weights.omega(z), rule=rule) for z in TEST_ZETAS)
    ok = q0 <= 1e-4 and b0 <= 1e-4 and q1 <= 1e-4 and qb <= 1e-3
    criterion(6, ok, f"Q0 {q0:.2e}, B0 {b0:.2e}, Q1 {q1:.2e} (tol 1e-4); max QB residual {qb:.2e} (tol 1e-3)")
    assert ok


def test_criterion_07_converse(criterion, rule):
    diracs = [((0.5 + 0.1j, 3.0),), ((1, 1.0),), ((0, 2.0),), ((-0.4j, 0.1),)]
    dirac = max(weights.moment_residual(weights.SignedAtomicMeasure(a), 6, 6) for a in diracs)
    two = weights.AtomicMeasure(((0, 0.5), (0.5, 0.5)))
    gap = weights.moment_matrix_residual(two, 1, 1)[1, 1]
    qb = weights.qb_residual(weights.AtomicWeight(two), rule=rule)
    grid = np.concatenate([[0j], weights.default_qb_grid()])
    ph = float(np.max(np.abs(phieqn_profile(two, grid, rule))))
    ok = dirac <= 1e-14 and gap >= 1 / 16 - 1e-12 and qb > 1e-6 and ph > 1e-6
    criterion(7, ok, f"Dirac {dirac:.1e}<=1e-14, (1,1) gap {gap:.6f}>=1/16, QB {qb:.4f}>1e-6, phieqn {ph:.4f}>1e-6")
    assert ok


def test_criterion_08_kernel_positivity(criterion, pairs):
    rng = np.random.default_rng([SEED, 8])
    worst = np.inf
    for _ in range(50):
        pts = 0.95 * np.sqrt(rng.uniform(0, 1, 6)) * np.exp(2j * np.pi * rng.uniform(0, 1, 6))
        for p in pairs.values():
            G = debranges.gram_matrix(p, pts)
            worst = min(worst, np.linalg.eigvalsh((G + G.conj().T) / 2).min())
    ok = worst >= -1e-10
    criterion(8, ok, f"min Gram eigenvalue {worst:.2e} (>= -1e-10), 50 sets x 6 pairs")
    assert ok


def test_criterion_09_fplus_stability(criterion, pairs):
    tests = random_polys(SEED, 10, 10, stream=4)
    tests += [series_core.cauchy_kernel(w, series_core.kernel_degree(w)) for w in (0.5, 0.7j, -0.9, 0.6 + 0.6j)]
    worst = 0.0
    for p in pairs.values():
        for f in tests:
            g1, g2 = debranges.f_plus(f, p, 128), debranges.f_plus(f, p, 160)
            worst = max(worst, float(np.max(np.abs(g1.coeffs - g2.coeffs[:129]))))
    ok = worst <= 1e-8
    criterion(9, ok, f"max coefficient change N=128 vs 160: {worst:.2e} (tol 1e-8)")
    assert ok


def _run_verify_all(path):
    cmd = [sys.executable, "-m", "dbrspace", "verify", "all", "--seed", "7", "--out", str(path)]
    return subprocess.run(cmd, capture_output=True, text=True)


def test_criterion_10_determinism(criterion, tmp_path):
    runs = [_run_verify_all(tmp_path / f"r{i}.json") for i in (1, 2)]
    texts = [re.sub(r'\n\s*"seconds": [^\n]*', "", (tmp_path / f"r{i}.json").read_text()) for i in (1, 2)]
    # removing the last key leaves a trailing comma on the previous line
    texts = [re.sub(r",(\n\s*})", r"\1", t) for t in texts]
    report = json.loads(texts[0])
    ok = all(r.returncode == 0 for r in runs) and texts[0] == texts[1] and len(report["checks"]) > 0
    criterion(10, ok, f"exit codes {[r.returncode for r in runs]}, {len(report['checks'])} checks, "
                      f"byte-identical modulo timing: {texts[0] == texts[1]}")
    assert ok
