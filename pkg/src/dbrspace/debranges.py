"""Pairs ``(b, a)``, Toeplitz actions and the de Branges-Rovnyak norm.

For a rational symbol ``phi = N/D`` the pair is

    a = c D / O,    b = c N / O,

where ``O`` is the outer function with ``|O|^2 = |N|^2 + |D|^2`` on the circle
and ``c = conj(D(0)) / |D(0)|`` makes ``a(0) > 0``.  ``D`` is zero-free in the
open disk, hence outer, so ``a`` is outer with ``|a|^2 + |b|^2 = 1``.  ``O`` is
built from its log-modulus by the conjugate-series construction on the
``M``-point grid; its log-modulus is smooth even when ``phi`` has a pole on
the circle, so the construction stays spectrally accurate in that case.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.linalg import solve_triangular, toeplitz

from .series_core import (
    DEFAULT_M,
    DEFAULT_N,
    BoundarySamples,
    ComplexPoly,
    DomainError,
    Holo,
    RationalFn,
    as_poly,
    boundary_samples,
    check_grid_size,
    circle_grid,
    encode_coeffs,
    h2_norm_sq,
    rational_to_poly,
    samples_to_coeffs,
    to_json,
)

PAIR_TOL = 1e-8
A0_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class PairBA:
    phi: RationalFn
    a_fn: RationalFn
    b_fn: RationalFn
    a_coeffs: ComplexPoly
    b_coeffs: ComplexPoly
    a_samples: BoundarySamples
    b_samples: BoundarySamples

    @property
    def M(self) -> int:
        return self.a_samples.M

    @property
    def N(self) -> int:
        return self.a_coeffs.degree

    def a_series(self, n: int) -> np.ndarray:
        return _series(self.a_coeffs, self.a_fn, n)

    def b_series(self, n: int) -> np.ndarray:
        return _series(self.b_coeffs, self.b_fn, n)

    def a(self, z):
        return self.a_fn(z)

    def b(self, z):
        return self.b_fn(z)

    def invariants(self) -> dict[str, float]:
        """Residuals of the defining properties on the boundary grid."""
        a, b = self.a_samples.values, self.b_samples.values
        lam = circle_grid(self.M)
        return {
            "pair_identity": float(np.max(np.abs(np.abs(a) ** 2 + np.abs(b) ** 2 - 1))),
            "a0_imag": float(abs(self.a_coeffs.coeffs[0].imag)),
            "a0": float(self.a_coeffs.coeffs[0].real),
            "sup_b": float(np.max(np.abs(b))),
            # b D - a N, i.e. b/a = phi without dividing by a
            "symbol": float(np.max(np.abs(b * self.phi.den(lam) - a * self.phi.num(lam)))),
        }

    def check(self, tol: float = PAIR_TOL) -> None:
        inv = self.invariants()
        if inv["pair_identity"] > tol or inv["symbol"] > tol:
            raise ArithmeticError(f"pair invariants violated: {inv}")
        if inv["a0"] <= 0 or inv["a0_imag"] > tol or inv["sup_b"] > 1 + 1e-10:
            raise ArithmeticError(f"pair invariants violated: {inv}")


def _series(stored: ComplexPoly, fn: RationalFn, n: int) -> np.ndarray:
    if n <= stored.degree:
        return stored.coeffs[: n + 1]
    return rational_to_poly(fn, n).coeffs


def _as_symbol(phi: Holo) -> RationalFn:
    if isinstance(phi, RationalFn):
        if not phi.boundary_poles:
            return RationalFn(phi.num, phi.den, boundary_poles=True)
        return phi
    return RationalFn(as_poly(phi), ComplexPoly([1.0]), boundary_poles=True)


def outer_from_log_modulus(log_mod: np.ndarray) -> np.ndarray:
    """Boundary values of the outer function with ``log|O| = log_mod`` and ``O(0) > 0``.

    Fourier coefficients of the real log-modulus; the analytic completion keeps
    the zero mode and doubles positive frequencies (so its real part is the
    given data); then exponentiate.
    """
    M = log_mod.size
    check_grid_size(M)
    u = np.fft.fft(np.asarray(log_mod, dtype=float)) / M
    h = np.zeros(M, dtype=complex)
    h[0] = u[0].real
    h[1 : M // 2] = 2 * u[1 : M // 2]
    h[M // 2] = u[M // 2].real
    return np.exp(np.fft.ifft(h) * M)


def pair_from_phi(phi: Holo, M: int = DEFAULT_M, N: int = DEFAULT_N) -> PairBA:
    """The pair ``(b, a)`` with ``b / a = phi``."""
    phi = _as_symbol(phi)
    check_grid_size(M)
    if N >= M // 2:
        raise DomainError("need N < M/2 for alias-free coefficients")
    lam = circle_grid(M)
    num, den = phi.num(lam), phi.den(lam)
    modulus_sq = np.abs(num) ** 2 + np.abs(den) ** 2
    if np.min(modulus_sq) <= 0:
        raise DomainError("numerator and denominator of phi share a zero on the circle")
    outer = outer_from_log_modulus(0.5 * np.log(modulus_sq))
    d0 = complex(phi.den.coeffs[0])
    c = np.conj(d0) / abs(d0)
    a_vals = c * den / outer
    b_vals = c * num / outer
    # O is a polynomial of degree deg(phi); its FFT tail is round-off
    deg = phi.degree
    o_poly = ComplexPoly(np.fft.fft(outer)[: deg + 1] / M)
    a_fn = RationalFn(phi.den * c, o_poly)
    b_fn = RationalFn(phi.num * c, o_poly)
    a_s, b_s = BoundarySamples(a_vals), BoundarySamples(b_vals)
    a_c = samples_to_coeffs(a_s, N)
    # a(0) is real by construction; drop the round-off imaginary part
    a_c = ComplexPoly(np.concatenate([[a_c.coeffs[0].real], a_c.coeffs[1:]]))
    return PairBA(phi, a_fn, b_fn, a_c, samples_to_coeffs(b_s, N), a_s, b_s)


def pair_constants(zeta: complex) -> tuple[float, complex]:
    """``A`` and ``B`` of the closed-form pair for ``phi = z / (1 - conj(zeta) z)``."""
    rho = abs(zeta)
    root = np.sqrt(4 + rho**4)
    A = float(np.sqrt((2 + rho**2 + root) / 2))
    # |B| = rho sqrt(2 / (2 + rho^2 + root)) (conjugate form, no cancellation);
    # the phase conj(zeta)/rho times rho needs no division, and B = 0 at zeta = 0
    return A, complex(np.conj(zeta) * np.sqrt(2 / (2 + rho**2 + root)))


def kernel_symbol(zeta: complex) -> RationalFn:
    """``phi(z) = z / (1 - conj(zeta) z)``."""
    if abs(zeta) > 1 + 1e-12:
        raise DomainError(f"zeta must lie in the closed disk, got {zeta}")
    return RationalFn(ComplexPoly([0.0, 1.0]), ComplexPoly([1.0, -np.conj(zeta)]), boundary_poles=True)


def pair_closed_form(zeta: complex, M: int = DEFAULT_M, N: int = DEFAULT_N) -> PairBA:
    """``b = z / (A - B z)``, ``a = (1 - conj(zeta) z) / (A - B z)``."""
    A, B = pair_constants(zeta)
    den = ComplexPoly([A, -B])
    b_fn = RationalFn(ComplexPoly([0.0, 1.0]), den)
    a_fn = RationalFn(ComplexPoly([1.0, -np.conj(zeta)]), den)
    a_s, b_s = boundary_samples(a_fn, M), boundary_samples(b_fn, M)
    return PairBA(
        kernel_symbol(zeta), a_fn, b_fn, rational_to_poly(a_fn, N), rational_to_poly(b_fn, N), a_s, b_s
    )


def toeplitz_conj_apply(h, f, N: int) -> ComplexPoly:
    """``T_{conj(h)} f``: coefficient ``n`` is ``sum_j conj(h_j) f_{n+j}``, for ``n <= N``."""
    hc = as_poly(h).coeffs
    fc = as_poly(f).coeffs
    # numpy.correlate conjugates its second argument
    full = np.correlate(fc, hc, mode="full")[hc.size - 1 :]
    out = np.zeros(N + 1, dtype=complex)
    k = min(N + 1, full.size)
    out[:k] = full[:k]
    return ComplexPoly(out)


def f_plus(f: ComplexPoly, pair: PairBA, N: int | None = None) -> ComplexPoly:
    """Solve ``T_{conj b} f = T_{conj a} f+``; coefficients ``0..N`` of ``f+``.

    ``T_{conj a}`` is upper triangular Toeplitz with diagonal ``a(0) > 0``.
    The system is solved by back substitution on ``0..max(N, deg f)``; for a
    polynomial ``f`` the right-hand side vanishes beyond ``deg f`` and so does
    the solution, so the result is the exact ``f+`` of ``f``.
    """
    f = as_poly(f)
    N = pair.N if N is None else N
    d = max(N, f.degree)
    a = pair.a_series(d)
    if not a[0].real > A0_TOL:
        raise ArithmeticError(f"a(0) = {a[0]} is not positive; pair rejected")
    rhs = toeplitz_conj_apply(pair.b_series(d), f, d).coeffs
    first_col = np.zeros(d + 1, dtype=complex)
    first_col[0] = np.conj(a[0])
    T = toeplitz(first_col, np.conj(a))
    g = solve_triangular(T, rhs, lower=False, check_finite=True)
    return ComplexPoly(g[: N + 1])


def fplus_residual(f: ComplexPoly, fp: ComplexPoly, pair: PairBA, N: int) -> float:
    """``max |T_{conj b} f - T_{conj a} f+|`` on coefficients ``0..N``."""
    d = max(N, f.degree, fp.degree)
    lhs = toeplitz_conj_apply(pair.b_series(d), f, N).coeffs
    rhs = toeplitz_conj_apply(pair.a_series(d), fp, N).coeffs
    return float(np.max(np.abs(lhs - rhs)))


def hb_norm_sq(f: ComplexPoly, pair: PairBA) -> float:
    """``||f||_{H^2}^2 + ||f+||_{H^2}^2``."""
    f = as_poly(f)
    fp = f_plus(f, pair, f.degree)
    return h2_norm_sq(f) + h2_norm_sq(fp)


def hb_inner(f: ComplexPoly, g: ComplexPoly, pair: PairBA) -> complex:
    """Inner product polarized from :func:`hb_norm_sq`."""
    f, g = as_poly(f), as_poly(g)
    d = max(f.degree, g.degree)
    fp, gp = f_plus(f, pair, d), f_plus(g, pair, d)
    n = min(len(f), len(g))
    return complex(
        np.dot(f.coeffs[:n], np.conj(g.coeffs[:n])) + np.dot(fp.coeffs, np.conj(gp.coeffs))
    )


def hb_kernel(pair: PairBA, w: complex, z):
    """``k_w^b(z) = (1 - conj(b(w)) b(z)) / (1 - conj(w) z)``."""
    if abs(w) >= 1 or np.any(np.abs(np.asarray(z)) >= 1):
        raise DomainError("kernel points must lie in the open disk")
    z = np.asarray(z, dtype=complex)
    out = (1 - np.conj(pair.b(w)) * pair.b(z)) / (1 - np.conj(w) * z)
    return out if np.ndim(out) else complex(out)


def hb_kernel_poly(pair: PairBA, w: complex, N: int) -> ComplexPoly:
    """Taylor coefficients ``0..N`` of ``k_w^b``."""
    k = np.conj(w) ** np.arange(N + 1)
    bk = np.convolve(pair.b_series(N), k)[: N + 1]
    return ComplexPoly(k - np.conj(pair.b(w)) * bk)


def gram_matrix(pair: PairBA, points) -> np.ndarray:
    """``G[i, j] = k_{z_j}^b(z_i)``; Hermitian positive semidefinite."""
    pts = np.asarray(points, dtype=complex)
    bz = pair.b(pts)
    return (1 - np.conj(bz)[None, :] * bz[:, None]) / (1 - np.conj(pts)[None, :] * pts[:, None])


class NonExtremeResult(NamedTuple):
    nonextreme: bool
    log_integral: float
    excluded: int
    M: int


def _b_callable(pair_or_b):
    if isinstance(pair_or_b, PairBA):
        return pair_or_b.b_fn
    return pair_or_b


def _trimmed_log_mean(b, M: int) -> tuple[float, int]:
    lam = circle_grid(M)
    if isinstance(b, (ComplexPoly, RationalFn)):
        vals = b(lam)
    else:
        vals = np.asarray(b(lam), dtype=complex)
    gap = 1 - np.abs(vals) ** 2
    keep = gap >= 1e-14
    if not keep.any():
        return float("-inf"), int(M)
    # mean over the full grid with excluded samples contributing nothing
    return float(np.sum(np.log(gap[keep])) / M), int((~keep).sum())


def is_nonextreme(pair_or_b, M: int = DEFAULT_M, stability: float = 1e-2) -> NonExtremeResult:
    """Numerical test for ``log(1 - |b|^2)`` being integrable on the circle.

    The trimmed mean is computed at ``M`` and ``2M``; ``b`` is declared
    non-extreme when it is finite and moves by less than ``stability``.  This
    is a heuristic, not a proof.
    """
    b = _b_callable(pair_or_b)
    m1, ex1 = _trimmed_log_mean(b, M)
    m2, _ = _trimmed_log_mean(b, 2 * M)
    ok = bool(np.isfinite(m1) and np.isfinite(m2) and abs(m1 - m2) <= stability * max(1.0, abs(m1)))
    # a grid on which every sample was excluded (or nearly so) means |b| = 1 a.e.
    if ex1 > M // 2:
        ok = False
    return NonExtremeResult(ok, m1, ex1, M)


def default_inner_grid(n_radii: int = 40, n_angles: int = 64, r_max: float = 0.99) -> np.ndarray:
    radii = r_max * np.arange(1, n_radii + 1) / n_radii
    angles = 2 * np.pi * np.arange(n_angles) / n_angles
    return (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()


def _first_coeff(pair_or_b) -> complex:
    if isinstance(pair_or_b, PairBA):
        return complex(pair_or_b.b_series(1)[1])
    if isinstance(pair_or_b, ComplexPoly):
        return complex(pair_or_b.truncate(1).coeffs[1])
    if isinstance(pair_or_b, RationalFn):
        return complex(rational_to_poly(pair_or_b, 1).coeffs[1])
    eps = 1e-4
    pts = eps * np.exp(2j * np.pi * np.arange(16) / 16)
    return complex(np.mean(pair_or_b(pts) / pts))


def inner_factor_is_z_check(pair_or_b, grid=None, tol: float = 1e-8) -> str:
    """``"pass"``, ``"fail"`` or ``"indeterminate"`` for "the inner factor of b is z".

    Checks ``b(0) = 0``, ``(b/z)(0) != 0`` and that ``|b(z)/z|`` stays above
    ``tol`` on the grid.  A finite grid cannot certify that ``b/z`` is
    outer, so a small minimum yields ``"indeterminate"``.
    """
    b = _b_callable(pair_or_b)
    grid = default_inner_grid() if grid is None else np.asarray(grid, dtype=complex)
    grid = grid[grid != 0]
    if abs(b(0.0)) > 1e-10:
        return "fail"
    vals = np.abs(b(grid))
    if np.max(vals) <= tol:
        return "indeterminate"
    if abs(_first_coeff(pair_or_b)) <= 1e-10:
        # b/z vanishes at 0: z^2 divides b
        return "fail"
    if np.min(vals / np.abs(grid)) > tol:
        return "pass"
    return "indeterminate"


def pair_to_json(pair: PairBA) -> dict:
    return {
        "phi": to_json(pair.phi),
        "M": pair.M,
        "N": pair.N,
        "a": encode_coeffs(pair.a_coeffs.coeffs),
        "b": encode_coeffs(pair.b_coeffs.coeffs),
    }
