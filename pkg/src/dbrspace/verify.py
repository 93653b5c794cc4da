"""Verification suites: every identity is checked against an independent route.

Each suite returns a list of :class:`CheckResult`.  A check passes exactly
when ``max_residual <= tolerance``.  Where the expected outcome is a
*violation* (the converse direction: non-Dirac measures must break the
moment relation), the recorded residual is the shortfall below the required
gap, so the same pass rule applies.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import debranges, dirichlet, quadrature, series_core, weights

TOL_ALGEBRAIC = 1e-8
TOL_QUADRATURE = 1e-4
TOL_BOUNDARY = 1e-3

TEST_ZETAS = (0j, 0.3 + 0.4j, 0.7 + 0j, 0.8j, 1 + 0j, complex(np.exp(1j * np.pi / 3)))
DILATION_RADII = tuple(round(0.1 * k, 1) for k in range(1, 10))


@dataclass
class CheckResult:
    name: str
    max_residual: float
    tolerance: float
    grid_meta: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return bool(self.max_residual <= self.tolerance)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "max_residual": float(self.max_residual),
            "tolerance": float(self.tolerance),
            "pass": self.passed,
            "grid_meta": self.grid_meta,
            "seconds": round(self.seconds, 6),
        }


@dataclass
class VerifyConfig:
    n_r: int = quadrature.DEFAULT_NR
    n_theta: int = quadrature.DEFAULT_NTHETA
    M: int = 2048
    pair_M: int = series_core.DEFAULT_M
    N: int = series_core.DEFAULT_N
    seed: int = 7
    qb_grid: tuple[int, int] = (15, 16)
    tol: float | None = None

    def rule(self) -> quadrature.DiskRule:
        return quadrature.make_disk_rule(self.n_r, self.n_theta)

    def to_json(self) -> dict:
        return asdict(self)


def _rel(x: float, exact: float) -> float:
    return abs(x - exact) / abs(exact) if exact != 0 else abs(x - exact)


def _fmt(z: complex) -> list[float]:
    return [round(float(np.real(z)), 12), round(float(np.imag(z)), 12)]


def random_polys(seed: int, count: int, max_degree: int, stream: int = 0) -> list[series_core.ComplexPoly]:
    """Seeded family: degree uniform in 1..max_degree, coefficients uniform on [0,1] + i[0,1]."""
    rng = np.random.default_rng([seed, stream])
    out = []
    for _ in range(count):
        deg = int(rng.integers(1, max_degree + 1))
        c = rng.uniform(0, 1, deg + 1) + 1j * rng.uniform(0, 1, deg + 1)
        out.append(series_core.ComplexPoly(c))
    return out


def norm_w_grid() -> list[complex]:
    """25 points: the origin and radii 0.3, 0.5, 0.7, 0.9 at six angles."""
    pts = [0j]
    for rho in (0.3, 0.5, 0.7, 0.9):
        pts.extend(rho * np.exp(2j * np.pi * np.arange(6) / 6))
    return [complex(p) for p in pts]


def phieqn_grid(cfg: VerifyConfig) -> np.ndarray:
    return weights.default_qb_grid(*cfg.qb_grid)


# suites ------------------------------------------------------------------

def suite_norm_equality(cfg: VerifyConfig, zetas=TEST_ZETAS, w_grid=None) -> list[CheckResult]:
    """D_zeta(k_w) four ways against ||k_w^+||^2 two ways."""
    w_grid = norm_w_grid() if w_grid is None else list(w_grid)
    rule = cfg.rule()
    res = {"closed": 0.0, "solve": 0.0, "douglas": 0.0, "area": 0.0, "norm": 0.0}
    for zeta in zetas:
        pair = debranges.pair_from_phi(debranges.kernel_symbol(zeta), cfg.pair_M, cfg.N)
        interior = abs(zeta) < 1
        for w in w_grid:
            exact = dirichlet.local_dirichlet_closed_form_kernel(w, zeta)
            phi_w = pair.phi(w)
            closed_fplus = abs(phi_w) ** 2 / (1 - abs(w) ** 2)
            res["closed"] = max(res["closed"], _rel(closed_fplus, exact))

            # kernel truncated where its geometric tail drops below 1e-16
            k_poly = series_core.cauchy_kernel(w, series_core.kernel_degree(w))
            fp = debranges.f_plus(k_poly, pair, cfg.N)
            res["solve"] = max(res["solve"], _rel(series_core.h2_norm_sq(fp), exact))

            k_fn = series_core.cauchy_kernel_fn(w)
            douglas = dirichlet.local_dirichlet(k_fn, zeta, cfg.M).value
            res["douglas"] = max(res["douglas"], _rel(douglas, exact))
            if interior:
                area = dirichlet.dirichlet_area(k_fn, weights.omega(zeta), rule).value
                res["area"] = max(res["area"], _rel(area, exact))
        if interior:
            # full norms: ||f||_{D_zeta}^2 against ||f||_{H(b)}^2 on a few kernels
            for w in (0.3, 0.5j, -0.7):
                k_fn = series_core.cauchy_kernel_fn(w)
                dn = dirichlet.dnorm_sq(k_fn, weights.omega(zeta), rule, cfg.M)
                hb = debranges.hb_norm_sq(series_core.cauchy_kernel(w, series_core.kernel_degree(w)), pair)
                res["norm"] = max(res["norm"], _rel(dn, hb))
    meta = {"zetas": [_fmt(z) for z in zetas], "n_w": len(w_grid), "N": cfg.N, "M": cfg.M,
            "pair_M": cfg.pair_M, "n_r": cfg.n_r, "n_theta": cfg.n_theta}
    return [
        CheckResult("norm-equality/fplus-closed-form", res["closed"], TOL_ALGEBRAIC, meta),
        CheckResult("norm-equality/fplus-solve", res["solve"], 1e-6, meta),
        CheckResult("norm-equality/douglas", res["douglas"], 1e-6, meta),
        CheckResult("norm-equality/area-interior", res["area"], TOL_BOUNDARY, meta),
        CheckResult("norm-equality/full-norm-interior", res["norm"], TOL_BOUNDARY, meta),
    ]


def suite_douglas(cfg: VerifyConfig, count: int = 20) -> list[CheckResult]:
    rule = cfg.rule()
    zetas = (0j, 0.5 + 0j, 0.3j)
    worst = 0.0
    for f in random_polys(cfg.seed, count, 8, stream=2):
        for zeta in zetas:
            area = dirichlet.dirichlet_area(f, weights.omega(zeta), rule).value
            bdry = dirichlet.local_dirichlet(f, zeta, cfg.M).value
            worst = max(worst, abs(area - bdry) / (1 + bdry))
    meta = {"polys": count, "max_degree": 8, "zetas": [_fmt(z) for z in zetas], "seed": cfg.seed}
    return [CheckResult("douglas/area-vs-boundary", worst, TOL_QUADRATURE, meta)]


def suite_dilation(cfg: VerifyConfig, count: int = 100) -> list[CheckResult]:
    measures = {
        "delta_0": weights.AtomicMeasure.dirac(0),
        "delta_1": weights.AtomicMeasure.dirac(1),
        "delta_0.5": weights.AtomicMeasure.dirac(0.5),
        "half_0_half_1": weights.AtomicMeasure(((0, 0.5), (1, 0.5))),
    }
    polys = random_polys(cfg.seed, count, 10, stream=3)
    bound_excess = squared_excess = 0.0
    violations = squared_violations = 0
    tightest = np.inf
    for label, mu in measures.items():
        single = len(mu.atoms) == 1
        rho = abs(mu.atoms[0][0])
        for f in polys:
            base = dirichlet.dirichlet_measure(f, mu, cfg.M).value
            for r in DILATION_RADII:
                top = dirichlet.dirichlet_measure(series_core.dilate(f, r), mu, cfg.M).value
                excess = top - (2 * r / (1 + r)) * base
                bound_excess = max(bound_excess, excess)
                violations += excess > 1e-10
                if single:
                    bound = (r * (1 + rho) / (1 + r * rho)) ** 2
                    ex2 = top - bound * base
                    squared_excess = max(squared_excess, ex2)
                    squared_violations += ex2 > 1e-10
                    tightest = min(tightest, bound * base - top)
    # the monomial z attains the ratio r^2 exactly for every measure
    mono = max(
        abs(dirichlet.dilation_ratio(series_core.ComplexPoly([0, 1]), mu, r, cfg.M) - r * r)
        for mu in measures.values()
        for r in DILATION_RADII
    )
    meta = {"polys": count, "max_degree": 10, "radii": list(DILATION_RADII), "measures": list(measures),
            "seed": cfg.seed, "M": cfg.M}
    return [
        CheckResult("dilation/2r-over-1+r", max(0.0, bound_excess), 1e-10,
                    {**meta, "violations": int(violations)}),
        CheckResult("dilation/squared-atom-bound", max(0.0, squared_excess), 1e-10,
                    {**meta, "violations": int(squared_violations), "min_margin": float(tightest)}),
        CheckResult("dilation/monomial-ratio", mono, 1e-12, meta),
    ]


def suite_phi_ratio(cfg: VerifyConfig) -> list[CheckResult]:
    zetas = (0j, 1 + 0j, 0.5 + 0j)
    worst = worst_bound = 0.0
    for zeta in zetas:
        phi = debranges.kernel_symbol(zeta)
        for r in DILATION_RADII:
            sup = series_core.sup_on_circle(series_core.ratio_dilate(phi, r), 4096)
            formula = r * (1 + abs(zeta)) / (1 + r * abs(zeta))
            worst = max(worst, abs(sup - formula))
            worst_bound = max(worst_bound, sup - 2 * r / (1 + r))
    meta = {"zetas": [_fmt(z) for z in zetas], "radii": list(DILATION_RADII), "M": 4096}
    return [
        CheckResult("phi-ratio/sup-formula", worst, TOL_ALGEBRAIC, meta),
        CheckResult("phi-ratio/below-2r-over-1+r", max(0.0, worst_bound), 1e-12, meta),
    ]


def suite_pair(cfg: VerifyConfig, zetas=TEST_ZETAS) -> list[CheckResult]:
    sup_diff = alg = ident = 0.0
    bad_inner = bad_extreme = 0
    stride = cfg.pair_M // 512
    for zeta in zetas:
        p = debranges.pair_from_phi(debranges.kernel_symbol(zeta), cfg.pair_M, cfg.N)
        q = debranges.pair_closed_form(zeta, cfg.pair_M, cfg.N)
        for s1, s2 in ((p.a_samples, q.a_samples), (p.b_samples, q.b_samples)):
            sup_diff = max(sup_diff, float(np.max(np.abs(s1.values[::stride] - s2.values[::stride]))))
        A, B = debranges.pair_constants(zeta)
        alg = max(alg, abs(A * B - np.conj(zeta)), abs(A * A + abs(B) ** 2 - 2 - abs(zeta) ** 2))
        for pair in (p, q):
            ident = max(ident, pair.invariants()["pair_identity"], pair.invariants()["symbol"])
        bad_inner += debranges.inner_factor_is_z_check(p) != "pass"
        bad_extreme += not debranges.is_nonextreme(p).nonextreme
    # negative controls: an inner symbol is extreme, z^2 has inner factor z^2
    inner_b = series_core.ComplexPoly([0, 1])
    controls = int(debranges.is_nonextreme(inner_b).nonextreme)
    z2 = debranges.pair_from_phi(series_core.ComplexPoly([0, 0, 1]), cfg.pair_M, cfg.N)
    controls += debranges.inner_factor_is_z_check(z2) != "fail"
    meta = {"zetas": [_fmt(z) for z in zetas], "samples": 512, "M": cfg.pair_M, "N": cfg.N}
    return [
        CheckResult("pair/closed-form-agreement", sup_diff, 1e-6, meta),
        CheckResult("pair/constants-algebra", alg, 1e-12, meta),
        CheckResult("pair/boundary-identity", ident, TOL_ALGEBRAIC, meta),
        CheckResult("pair/inner-factor-and-nonextreme", float(bad_inner + bad_extreme), 0.0, meta),
        CheckResult("pair/negative-controls", float(controls), 0.0,
                    {"inner_symbol": "b=z", "double_zero": "phi=z^2"}),
    ]


def suite_kernel(cfg: VerifyConfig, sets: int = 50, zetas=TEST_ZETAS) -> list[CheckResult]:
    rng = np.random.default_rng([cfg.seed, 8])
    pairs = [debranges.pair_from_phi(debranges.kernel_symbol(z), cfg.pair_M, cfg.N) for z in zetas]
    neg = 0.0
    herm = 0.0
    for _ in range(sets):
        rad = 0.95 * np.sqrt(rng.uniform(0, 1, 6))
        pts = rad * np.exp(2j * np.pi * rng.uniform(0, 1, 6))
        for pair in pairs:
            G = debranges.gram_matrix(pair, pts)
            herm = max(herm, float(np.max(np.abs(G - G.conj().T))))
            neg = max(neg, -float(np.min(np.linalg.eigvalsh((G + G.conj().T) / 2))))
            herm = max(herm, abs(debranges.hb_kernel(pair, pts[0], pts[1])
                                 - np.conj(debranges.hb_kernel(pair, pts[1], pts[0]))))
    # reproducing property in the f+ inner product
    repro = 0.0
    for f in random_polys(cfg.seed, 5, 6, stream=9):
        for pair in pairs:
            for w in (0.0, 0.4, -0.3j, 0.2 + 0.3j):
                k = debranges.hb_kernel_poly(pair, w, series_core.kernel_degree(w))
                val = debranges.hb_inner(f, k, pair)
                repro = max(repro, abs(val - f(w)) / (1 + abs(f(w))))
    meta = {"sets": sets, "points_per_set": 6, "pairs": [_fmt(z) for z in zetas], "seed": cfg.seed}
    return [
        CheckResult("kernel/gram-positivity", max(0.0, neg), 1e-10, meta),
        CheckResult("kernel/hermitian", herm, 1e-12, meta),
        CheckResult("kernel/reproducing", repro, 1e-6, meta),
    ]


def suite_fplus(cfg: VerifyConfig, zetas=TEST_ZETAS) -> list[CheckResult]:
    N = cfg.N
    tests = list(random_polys(cfg.seed, 10, 10, stream=4))
    tests += [series_core.cauchy_kernel(w, series_core.kernel_degree(w)) for w in (0.5, 0.7j, -0.9)]
    change = resid = 0.0
    for zeta in zetas:
        pair = debranges.pair_from_phi(debranges.kernel_symbol(zeta), cfg.pair_M, N)
        for f in tests:
            g1 = debranges.f_plus(f, pair, N)
            g2 = debranges.f_plus(f, pair, N + 32)
            keep = N - 32
            change = max(change, float(np.max(np.abs(g1.coeffs[: keep + 1] - g2.coeffs[: keep + 1]))))
            norm = np.sqrt(series_core.h2_norm_sq(f))
            gfull = debranges.f_plus(f, pair, f.degree)
            resid = max(resid, debranges.fplus_residual(f, gfull, pair, f.degree) / norm)
    meta = {"N": N, "N_alt": N + 32, "functions": len(tests), "zetas": [_fmt(z) for z in zetas]}
    return [
        CheckResult("fplus/truncation-stability", change, TOL_ALGEBRAIC, meta),
        CheckResult("fplus/toeplitz-residual", resid, TOL_ALGEBRAIC, meta),
    ]


def suite_qb(cfg: VerifyConfig, zetas=TEST_ZETAS) -> list[CheckResult]:
    rule = cfg.rule()
    grid = weights.default_qb_grid(*cfg.qb_grid)
    qb = l1 = center = 0.0
    for zeta in zetas:
        w = weights.omega(zeta)
        qb = max(qb, weights.qb_residual(w, grid, rule))
        norm = weights.l1_norm(w, rule)
        l1 = max(l1, abs(norm - 1))
        center = max(center, abs(weights.berezin(w, 0.0, rule) - norm))
    w0, w1 = weights.omega(0), weights.omega(1)
    closed = max(
        float(np.max(np.abs(weights.bergman_projection(w0, grid, rule) - 1))),
        float(np.max(np.abs(weights.berezin(w0, grid, rule) - (1 - np.abs(grid) ** 2)))),
        float(np.max(np.abs(weights.bergman_projection(w1, grid, rule) - 1 / (1 - grid)))),
    )
    qb0 = weights.qb_residual(w0, grid, rule)
    # 2-D cross-check of one moment against the radial route (boundary atom, refined rule)
    fine = rule.refined()
    direct = quadrature.integrate_disk(lambda z: weights.eval_weight(w1, z) * np.conj(z) ** 2, fine, pole=1)
    cross = abs(direct - weights.weight_moments(w1, 2, rule)[2, 0])
    meta = {"zetas": [_fmt(z) for z in zetas], "grid": list(cfg.qb_grid), "r_max": 0.9,
            "series": weights.DEFAULT_SERIES, "n_r": cfg.n_r}
    mix = weights.AtomicWeight(weights.AtomicMeasure(((0, 0.5), (0.5, 0.5))))
    mix_res = weights.qb_residual(mix, grid, rule)
    return [
        CheckResult("qb/unit-atoms", qb, TOL_BOUNDARY, meta),
        CheckResult("qb/omega_0", qb0, 1e-6, meta),
        CheckResult("qb/closed-forms", closed, TOL_QUADRATURE, meta),
        CheckResult("qb/l1-normalization", l1, TOL_QUADRATURE, meta),
        CheckResult("qb/berezin-at-center", center, 1e-10, meta),
        CheckResult("qb/moment-2d-cross-check", cross, TOL_QUADRATURE, {"n_r": cfg.n_r, "refined": True}),
        CheckResult("qb/converse-two-atom-gap", max(0.0, 1e-6 - mix_res), 0.0,
                    {**meta, "observed": mix_res, "required_above": 1e-6, "measure": "0.5*delta_0+0.5*delta_0.5"}),
    ]


def suite_moments(cfg: VerifyConfig, m_max: int = 6, n_max: int = 6) -> list[CheckResult]:
    diracs = [
        weights.SignedAtomicMeasure(((0.5 + 0.1j, 3.0),)),
        weights.SignedAtomicMeasure(((1j, 0.25),)),
        weights.SignedAtomicMeasure(((0.0, 2.0),)),
        weights.SignedAtomicMeasure(((complex(np.exp(1j * np.pi / 3)), 1.0),)),
    ]
    dirac_res = max(weights.moment_residual(mu, m_max, n_max) for mu in diracs)
    two = weights.AtomicMeasure(((0, 0.5), (0.5, 0.5)))
    gap = float(weights.moment_matrix_residual(two, 1, 1)[1, 1])
    others = [
        weights.AtomicMeasure(((0, 1.0), (1, 1.0))),
        weights.AtomicMeasure(((0.3j, 0.2), (-0.5, 0.7), (1, 0.1))),
    ]
    others_min = min(weights.moment_residual(mu, m_max, n_max) for mu in others)
    meta = {"m_max": m_max, "n_max": n_max}
    return [
        CheckResult("moments/dirac-multiples", dirac_res, 1e-14, meta),
        CheckResult("moments/converse-two-atom-gap", max(0.0, (1 / 16 - 1e-12) - gap), 0.0,
                    {**meta, "observed": gap, "required_above": 1 / 16 - 1e-12, "index": [1, 1]}),
        CheckResult("moments/converse-other-atom-lists", max(0.0, 1e-6 - others_min), 0.0,
                    {**meta, "observed_min": others_min, "required_above": 1e-6}),
    ]


def phieqn_profile(mu: weights.AtomicMeasure, grid, rule=None, phi=None) -> np.ndarray:
    """``|phi(w)|^2 - |w|^2 sum mass / |1 - zeta conj(w)|^2`` with ``phi = w Q omega(w)`` by default."""
    grid = np.asarray(grid, dtype=complex)
    if phi is None:
        q = weights.bergman_projection(weights.AtomicWeight(mu), grid, rule)
        phi_vals = grid * q
    else:
        phi_vals = phi(grid)
    rhs = np.abs(grid) ** 2 * sum(m / np.abs(1 - z * np.conj(grid)) ** 2 for z, m in mu.atoms)
    return np.abs(phi_vals) ** 2 - rhs


def suite_phieqn(cfg: VerifyConfig, zetas=TEST_ZETAS) -> list[CheckResult]:
    rule = cfg.rule()
    grid = np.concatenate([[0j], phieqn_grid(cfg)])
    closed = numeric = 0.0
    for zeta in zetas:
        mu = weights.AtomicMeasure.dirac(zeta)
        closed = max(closed, float(np.max(np.abs(phieqn_profile(mu, grid, phi=debranges.kernel_symbol(zeta))))))
        numeric = max(numeric, float(np.max(np.abs(phieqn_profile(mu, grid, rule)))))
    two = weights.AtomicMeasure(((0, 0.5), (0.5, 0.5)))
    mix = float(np.max(np.abs(phieqn_profile(two, grid, rule))))
    meta = {"zetas": [_fmt(z) for z in zetas], "grid": list(cfg.qb_grid), "r_max": 0.9}
    return [
        CheckResult("phieqn/dirac-closed-symbol", closed, TOL_ALGEBRAIC, meta),
        CheckResult("phieqn/dirac-bergman-symbol", numeric, 1e-6, meta),
        CheckResult("phieqn/converse-two-atom-gap", max(0.0, 1e-6 - mix), 0.0,
                    {**meta, "observed": mix, "required_above": 1e-6}),
    ]


SUITES: dict[str, Callable[[VerifyConfig], list[CheckResult]]] = {
    "norm-equality": suite_norm_equality,
    "douglas": suite_douglas,
    "dilation": suite_dilation,
    "phi-ratio": suite_phi_ratio,
    "pair": suite_pair,
    "kernel": suite_kernel,
    "fplus": suite_fplus,
    "qb": suite_qb,
    "moments": suite_moments,
    "phieqn": suite_phieqn,
}

GAP_CHECKS = ("converse",)


def run_suites(names, cfg: VerifyConfig) -> list[CheckResult]:
    """Run suites in the fixed declaration order, timing each check group."""
    names = list(SUITES) if "all" in names else [n for n in SUITES if n in names]
    out: list[CheckResult] = []
    for name in names:
        t0 = time.perf_counter()
        checks = SUITES[name](cfg)
        elapsed = (time.perf_counter() - t0) / max(1, len(checks))
        for c in checks:
            c.seconds = elapsed
            if cfg.tol is not None and not any(g in c.name for g in GAP_CHECKS):
                c.tolerance = cfg.tol
        out.extend(checks)
    return out


def build_report(checks: list[CheckResult], cfg: VerifyConfig, scans: dict | None = None) -> dict:
    if not checks:
        raise ValueError("a report needs at least one check")
    report = {
        "checks": [c.to_json() for c in checks],
        "config": cfg.to_json(),
        "summary": {"passed": sum(c.passed for c in checks), "failed": sum(not c.passed for c in checks)},
    }
    if scans:
        report["scans"] = scans
    return report


def strip_timing(report: dict) -> dict:
    return {**report, "checks": [{k: v for k, v in c.items() if k != "seconds"} for c in report["checks"]]}


# scanners ----------------------------------------------------------------

SCAN_POINTS = (0j, 0.5 + 0j, 0.5j, -0.7 + 0j, 1 + 0j, complex(np.exp(1j * np.pi / 3)))


def scan_qb(cfg: VerifyConfig, points=SCAN_POINTS, splits=None) -> list[dict]:
    """Two-atom mixtures ``t delta_p + (1-t) delta_q``, normalized to unit L1 norm.

    Evidence for which weights satisfy the QB relation; no characterization
    is claimed.
    """
    rule = cfg.rule()
    grid = weights.default_qb_grid(*cfg.qb_grid)
    splits = np.linspace(0, 1, 11) if splits is None else splits
    rows = []
    for i, p in enumerate(points):
        for q in points[i + 1 :]:
            for t in splits:
                atoms = tuple((z, float(m)) for z, m in ((p, t), (q, 1 - t)) if m > 0)
                w = weights.AtomicWeight(weights.AtomicMeasure(atoms))
                norm = weights.l1_norm(w, rule)
                w = weights.AtomicWeight(w.measure.scaled(1 / norm))
                rows.append({
                    "zeta1": _fmt(p), "zeta2": _fmt(q), "t": round(float(t), 6),
                    "l1_before": norm, "qb_residual": weights.qb_residual(w, grid, rule),
                })
    return rows


def scan_moments(cfg: VerifyConfig, m_max: int = 4, n_max: int = 4) -> list[dict]:
    """Moment-relation residuals of signed two-atom measures ``delta_p + c delta_q``."""
    rows = []
    for p in SCAN_POINTS[:4]:
        for q in SCAN_POINTS:
            if p == q:
                continue
            for c in (-1.0, -0.5, 0.5, 1.0):
                mu = weights.SignedAtomicMeasure(((p, 1.0), (q, c)))
                rows.append({
                    "zeta1": _fmt(p), "zeta2": _fmt(q), "mass2": c,
                    "residual": weights.moment_residual(mu, m_max, n_max),
                })
    return rows


def signed_datum() -> dict:
    """The signed measure ``delta_0 - delta_{1/2}``; reported without a pass/fail claim."""
    mu = weights.SignedAtomicMeasure(((0, 1.0), (0.5, -1.0)))
    return {"measure": weights.measure_to_json(mu), "m_max": 4, "n_max": 4,
            "residual": weights.moment_residual(mu, 4, 4)}
