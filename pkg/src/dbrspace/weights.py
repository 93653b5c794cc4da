"""Superharmonic weights, their Bergman projection and Berezin transform.

A superharmonic weight is carried through its representing measure: an
atom ``zeta`` inside the disk contributes the scaled Green potential

    mass * log|(1 - conj(zeta) z) / (zeta - z)| * 2 / (1 - |zeta|**2)

and an atom on the circle contributes the Poisson kernel
``mass * (1 - |z|**2) / |zeta - z|**2``.  Power weights ``(1 - |z|**2)**alpha``
and arbitrary pointwise ("sampled") weights are also supported.

All area integrals go through the moment matrix

    M[n, k] = int omega(v) conj(v)**n v**k dA(v),

computed ring by ring: the angular Fourier coefficients of each atom are
known in closed form, leaving a 1-D radial integral that is split at
``|zeta|`` and done by Gauss-Legendre.  This keeps the Bergman projection
and Berezin transform of atomic weights accurate up to the circle, where a
2-D rule would have to resolve the pole of the Poisson kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable

import numpy as np
from scipy.special import roots_jacobi

from .quadrature import DiskRule, gauss_legendre_01, make_disk_rule

DEFAULT_SERIES = 256
UNIT_TOL = 1e-12


@dataclass(frozen=True)
class AtomicMeasure:
    """Finite positive measure ``sum mass_k delta_{zeta_k}`` on the closed disk."""

    atoms: tuple[tuple[complex, float], ...]

    def __post_init__(self):
        atoms = tuple(_clean_atom(z, m) for z, m in self.atoms)
        for z, m in atoms:
            if not m > 0 or not np.isfinite(m):
                raise ValueError(f"atom masses must be positive and finite, got {m}")
        object.__setattr__(self, "atoms", atoms)

    @classmethod
    def dirac(cls, zeta: complex, mass: float = 1.0) -> "AtomicMeasure":
        return cls(((complex(zeta), float(mass)),))

    @property
    def total_mass(self) -> float:
        return float(sum(m for _, m in self.atoms))

    def scaled(self, c: float) -> "AtomicMeasure":
        return AtomicMeasure(tuple((z, m * c) for z, m in self.atoms))


@dataclass(frozen=True)
class SignedAtomicMeasure:
    """Finite signed atomic measure; only the moment relation accepts it."""

    atoms: tuple[tuple[complex, float], ...]

    def __post_init__(self):
        atoms = tuple(_clean_atom(z, m) for z, m in self.atoms)
        for _, m in atoms:
            if m == 0 or not np.isfinite(m):
                raise ValueError("signed atom masses must be finite and nonzero")
        object.__setattr__(self, "atoms", atoms)

    @property
    def total_mass(self) -> float:
        return float(sum(m for _, m in self.atoms))


def _clean_atom(z, m) -> tuple[complex, float]:
    z = complex(z)
    rho = abs(z)
    if rho > 1 + UNIT_TOL:
        raise ValueError(f"atom {z} lies outside the closed disk")
    if abs(rho - 1) <= UNIT_TOL:
        z = z / rho
    return z, float(m)


def merge_atoms(atoms: Iterable[tuple[complex, float]], tol: float = 1e-14):
    """Combine atoms at coincident points; zero net masses are dropped."""
    merged: list[list] = []
    for z, m in atoms:
        for entry in merged:
            if abs(entry[0] - z) <= tol:
                entry[1] += m
                break
        else:
            merged.append([complex(z), float(m)])
    return [(z, m) for z, m in merged if m != 0]


class Weight:
    """Base class; concrete weights are :class:`AtomicWeight`,
    :class:`PowerWeight` and :class:`SampledWeight`."""

    kind = "abstract"


@dataclass(frozen=True)
class AtomicWeight(Weight):
    measure: AtomicMeasure
    kind = "atomic"

    @classmethod
    def unit_atom(cls, zeta: complex) -> "AtomicWeight":
        return cls(AtomicMeasure.dirac(zeta))

    @property
    def has_boundary_atoms(self) -> bool:
        return any(abs(z) == 1 for z, _ in self.measure.atoms)


@dataclass(frozen=True)
class PowerWeight(Weight):
    alpha: float
    kind = "power"

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"power weight exponent must lie in [0, 1], got {self.alpha}")


@dataclass(frozen=True, eq=False)
class SampledWeight(Weight):
    """Weight given by a vectorized pointwise evaluator on the open disk."""

    evaluator: Callable[[np.ndarray], np.ndarray]
    label: str = "sampled"
    kind = "sampled"


def omega(zeta: complex) -> AtomicWeight:
    """The unit-atom weight ``omega_zeta``."""
    return AtomicWeight.unit_atom(zeta)


def eval_weight(w: Weight, z):
    """Pointwise value; ``+inf`` at an interior atom."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1):
        raise ValueError("weights are evaluated on the open disk only")
    if isinstance(w, AtomicWeight):
        out = np.zeros(z.shape)
        with np.errstate(divide="ignore"):
            for zeta, mass in w.measure.atoms:
                if abs(zeta) == 1:
                    out = out + mass * (1 - np.abs(z) ** 2) / np.abs(zeta - z) ** 2
                else:
                    g = np.log(np.abs(1 - np.conj(zeta) * z) / np.abs(zeta - z))
                    out = out + mass * g * 2.0 / (1 - abs(zeta) ** 2)
    elif isinstance(w, PowerWeight):
        out = (1 - np.abs(z) ** 2) ** w.alpha
    elif isinstance(w, SampledWeight):
        out = np.asarray(w.evaluator(z), dtype=float) * np.ones(z.shape)
    else:
        raise TypeError(f"unsupported weight {w!r}")
    return out if out.ndim else float(out)


# ring Fourier coefficients c_j(r) = mean_theta omega(r e^{i theta}) e^{-i j theta}

def _atom_ring_coeffs(zeta: complex, r: np.ndarray, j: int) -> np.ndarray:
    rho = abs(zeta)
    zb = np.conj(zeta)
    if rho == 1:
        if j == 0:
            return np.ones_like(r, dtype=complex)
        return (zb * r) ** j
    scale = 2.0 / (1 - rho * rho)
    if j == 0:
        return scale * np.log(1.0 / np.maximum(r, rho)) + 0j
    if rho == 0:
        return np.zeros_like(r, dtype=complex)
    outer = (zb / np.maximum(r, rho)) ** j - (zb * r) ** j
    inner = (r / zeta) ** j - (zb * r) ** j
    return scale * np.where(r > rho, outer, inner) / (2 * j)


def _radial_nodes(breaks: list[float], n: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre on [0, 1] with breakpoints; weights for ``2 r dr``."""
    x, w = gauss_legendre_01(n)
    edges = sorted({0.0, 1.0, *[b for b in breaks if 0 < b < 1]})
    rs, ws = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        rs.append(a + (b - a) * x)
        ws.append((b - a) * w)
    r = np.concatenate(rs)
    return r, 2.0 * r * np.concatenate(ws)


_MOMENT_CACHE: dict = {}


def weight_moments(w: Weight, n_max: int = DEFAULT_SERIES, rule: DiskRule | None = None) -> np.ndarray:
    """Matrix ``M[n, k] = int omega conj(v)**n v**k dA`` for ``0 <= n, k <= n_max``."""
    rule = rule or make_disk_rule()
    key = (w, n_max, rule.key())
    hit = _MOMENT_CACHE.get(key)
    if hit is not None:
        return hit
    if isinstance(w, AtomicWeight):
        M = np.zeros((n_max + 1, n_max + 1), dtype=complex)
        for zeta, mass in w.measure.atoms:
            M += mass * _atom_moments(zeta, n_max, rule.n_r)
    elif isinstance(w, PowerWeight):
        M = _power_moments(w.alpha, n_max, rule.n_r)
    elif isinstance(w, SampledWeight):
        M = _sampled_moments(w, n_max, rule)
    else:
        raise TypeError(f"unsupported weight {w!r}")
    M.setflags(write=False)
    if len(_MOMENT_CACHE) > 64:
        _MOMENT_CACHE.clear()
    _MOMENT_CACHE[key] = M
    return M


def _fill_from_diagonals(n_max: int, r: np.ndarray, W: np.ndarray, coeff) -> np.ndarray:
    """Assemble ``M[k + j, k] = sum_i W_i r_i**(2k + j) c_j(r_i)`` and its conjugate transpose."""
    k = np.arange(n_max + 1)
    with np.errstate(under="ignore"):
        R2 = r[:, None] ** (2 * k[None, :])
        M = np.zeros((n_max + 1, n_max + 1), dtype=complex)
        for j in range(n_max + 1):
            c = coeff(j)
            if c is None:
                continue
            v = (W * r**j * c) @ R2[:, : n_max + 1 - j]
            idx = np.arange(n_max + 1 - j)
            M[idx + j, idx] = v
            if j:
                M[idx, idx + j] = np.conj(v)
    return M


@lru_cache(maxsize=128)
def _atom_moments(zeta: complex, n_max: int, n_r: int) -> np.ndarray:
    rho = abs(zeta)
    r, W = _radial_nodes([rho], n_r)
    M = _fill_from_diagonals(n_max, r, W, lambda j: _atom_ring_coeffs(zeta, r, j))
    M.setflags(write=False)
    return M


def _power_moments(alpha: float, n_max: int, n_r: int) -> np.ndarray:
    # int 2 r^{2n+1} (1 - r^2)^alpha dr = int_0^1 t^n (1 - t)^alpha dt (Gauss-Jacobi in t)
    x, wj = roots_jacobi(n_r, alpha, 0.0)
    t = (x + 1) / 2
    wj = wj / 2 ** (alpha + 1)
    n = np.arange(n_max + 1)
    diag = (wj[:, None] * t[:, None] ** n[None, :]).sum(axis=0)
    return np.diag(diag.astype(complex))


def _sampled_moments(w: SampledWeight, n_max: int, rule: DiskRule) -> np.ndarray:
    if not rule.uniform or rule.n_theta <= 2 * n_max:
        raise ValueError("sampled weights need a uniform rule with n_theta > 2 * n_max")
    nt = rule.n_theta
    theta = 2.0 * np.pi * (np.arange(nt) + 0.5) / nt
    z = rule.radial_nodes[:, None] * np.exp(1j * theta)[None, :]
    vals = np.asarray(w.evaluator(z), dtype=float) * np.ones(z.shape)
    if not np.all(np.isfinite(vals)):
        raise FloatingPointError(f"sampled weight {w.label!r} is not finite at every node")
    # c_j(r) = mean vals * e^{-i j theta}; fft uses e^{-2 pi i j k / nt}
    C = np.fft.fft(vals, axis=1) / nt * np.exp(-1j * np.pi * np.arange(nt) / nt)[None, :]
    r = rule.radial_nodes
    return _fill_from_diagonals(n_max, r, rule.radial_weights, lambda j: C[:, j])


def l1_norm(w: Weight, rule: DiskRule | None = None) -> float:
    """``int omega dA`` (the ``M[0, 0]`` moment)."""
    val = weight_moments(w, 0, rule)[0, 0]
    if not np.isfinite(val):
        raise FloatingPointError("weight integral diverged")
    return float(val.real)


def bergman_projection(w: Weight, z, rule: DiskRule | None = None, n_max: int = DEFAULT_SERIES):
    """``Q omega(z) = int omega(v) / (1 - conj(v) z)**2 dA(v) = sum (m+1) M[m,0] z**m``."""
    z = np.asarray(z, dtype=complex)
    col = weight_moments(w, n_max, rule)[:, 0] * np.arange(1, n_max + 2)
    out = np.polynomial.polynomial.polyval(z, col)
    return out if out.ndim else complex(out)


def bergman_coeffs(w: Weight, rule: DiskRule | None = None, n_max: int = DEFAULT_SERIES) -> np.ndarray:
    """Taylor coefficients of ``Q omega``."""
    return weight_moments(w, n_max, rule)[:, 0] * np.arange(1, n_max + 2)


def berezin(w: Weight, z, rule: DiskRule | None = None, n_max: int = DEFAULT_SERIES):
    """``B omega(z) = (1 - |z|^2)^2 int omega(v) / |1 - conj(v) z|^4 dA(v)``."""
    z = np.asarray(z, dtype=complex)
    M = weight_moments(w, n_max, rule)
    n = np.arange(n_max + 1)
    flat = z.ravel()
    with np.errstate(under="ignore"):
        A = (n + 1)[None, :] * flat[:, None] ** n[None, :]
    quad = np.einsum("pn,nk,pk->p", A, M, np.conj(A))
    out = ((1 - np.abs(flat) ** 2) ** 2 * quad.real).reshape(z.shape)
    return out if out.ndim else float(out)


def default_qb_grid(n_radii: int = 15, n_angles: int = 16, r_max: float = 0.9) -> np.ndarray:
    radii = r_max * np.arange(1, n_radii + 1) / n_radii
    angles = 2 * np.pi * np.arange(n_angles) / n_angles
    return (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()


def qb_profile(w: Weight, grid=None, rule: DiskRule | None = None, n_max: int = DEFAULT_SERIES):
    """Pointwise ``(1 - |z|^2)|Q omega|^2 - B omega`` on the grid."""
    grid = default_qb_grid() if grid is None else np.asarray(grid, dtype=complex)
    q = bergman_projection(w, grid, rule, n_max)
    b = berezin(w, grid, rule, n_max)
    return (1 - np.abs(grid) ** 2) * np.abs(q) ** 2 - b


def qb_residual(w: Weight, grid=None, rule: DiskRule | None = None, n_max: int = DEFAULT_SERIES) -> float:
    return float(np.max(np.abs(qb_profile(w, grid, rule, n_max))))


def moment_matrix_residual(mu, m_max: int, n_max: int) -> np.ndarray:
    """``|mu(D) int z^n conj(z)^m dmu - int z^n dmu int conj(z)^m dmu|`` indexed ``[n, m]``."""
    if not mu.atoms:
        return np.zeros((n_max + 1, m_max + 1))
    pts = np.array([z for z, _ in mu.atoms], dtype=complex)
    mass = np.array([m for _, m in mu.atoms], dtype=float)
    P = pts[None, :] ** np.arange(n_max + 1)[:, None]
    Q = np.conj(pts)[None, :] ** np.arange(m_max + 1)[:, None]
    mixed = (P * mass) @ Q.T
    a = P @ mass
    b = Q @ mass
    return np.abs(mass.sum() * mixed - np.outer(a, b))


def moment_residual(mu, m_max: int, n_max: int) -> float:
    if m_max < 0 or n_max < 0:
        raise ValueError("moment orders must be non-negative")
    return float(np.max(moment_matrix_residual(mu, m_max, n_max)))


# JSON: {"atoms": [{"point": [re, im], "mass": m}, ...]}
#       {"kind": "atomic", "atoms": [...]} | {"kind": "power", "alpha": a}
#       | {"kind": "sampled", "expr": "<numpy expression in z>"}

def _decode_atoms(data) -> list[tuple[complex, float]]:
    if not isinstance(data, dict) or not isinstance(data.get("atoms"), list):
        raise ValueError('measure must be an object with an "atoms" list')
    out = []
    for a in data["atoms"]:
        try:
            p = a["point"]
            z = complex(p[0], p[1]) if isinstance(p, list) else complex(p)
            out.append((z, float(a["mass"])))
        except (KeyError, TypeError, IndexError) as exc:
            raise ValueError(f"bad atom entry {a!r}") from exc
    return out


def measure_from_json(data, signed: bool = False):
    atoms = tuple(_decode_atoms(data))
    return SignedAtomicMeasure(atoms) if signed else AtomicMeasure(atoms)


def measure_to_json(mu) -> dict:
    return {"atoms": [{"point": [z.real, z.imag], "mass": m} for z, m in mu.atoms]}


_EXPR_NAMESPACE = {
    name: getattr(np, name)
    for name in ("abs", "log", "exp", "sqrt", "real", "imag", "conj", "pi", "cos", "sin", "angle", "ones_like")
}


def weight_from_json(data) -> Weight:
    if not isinstance(data, dict):
        raise ValueError("weight must be a JSON object")
    kind = data.get("kind", "atomic")
    if kind == "atomic":
        return AtomicWeight(measure_from_json(data))
    if kind == "power":
        return PowerWeight(float(data["alpha"]))
    if kind == "sampled":
        expr = data.get("expr")
        if not isinstance(expr, str):
            raise ValueError('sampled weight needs an "expr" string in z')
        code = compile(expr, "<weight>", "eval")
        bad = [n for n in code.co_names if n not in _EXPR_NAMESPACE and n != "z"]
        if bad:
            raise ValueError(f"names not allowed in weight expression: {bad}")

        def evaluator(z, _code=code):
            return eval(_code, {"__builtins__": {}}, {**_EXPR_NAMESPACE, "z": z})

        return SampledWeight(evaluator, label=expr)
    raise ValueError(f"unknown weight kind {kind!r}")


def weight_to_json(w: Weight) -> dict:
    if isinstance(w, AtomicWeight):
        return {"kind": "atomic", **measure_to_json(w.measure)}
    if isinstance(w, PowerWeight):
        return {"kind": "power", "alpha": w.alpha}
    return {"kind": "sampled", "expr": w.label}
