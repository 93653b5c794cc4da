"""Tensor quadrature on the unit disk (normalized area) and on the unit circle.

Radial nodes are Gauss-Legendre on (0, 1) for the density ``2 r dr``; the
angular grid on each ring is uniform and offset by half a step, so no node
ever sits at ``r = 0``, ``r = 1`` or on the positive real axis.  Integrands
with a Poisson-type pole at ``zeta`` on the circle are handled by rotating the
grid onto ``arg(zeta)`` (``pole=`` argument) and, when the rule was built with
``boundary_resolution``, by refining the angular count on rings close to the
circle where the uniform grid would alias.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .series_core import check_grid_size, circle_grid

DEFAULT_NR = 400
DEFAULT_NTHETA = 2048
BOUNDARY_RESOLUTION = 20.0


class QuadratureError(FloatingPointError):
    """Integrand produced a non-finite value at a node."""


@lru_cache(maxsize=32)
def gauss_legendre_01(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the ``n``-point Gauss-Legendre rule on (0, 1)."""
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1.0) / 2.0, w / 2.0


@dataclass(frozen=True, eq=False)
class DiskRule:
    radial_nodes: np.ndarray
    radial_weights: np.ndarray
    n_theta: int
    ring_counts: tuple[int, ...]
    n_r: int
    boundary_resolution: float | None = None

    @property
    def size(self) -> int:
        return int(sum(self.ring_counts))

    @property
    def uniform(self) -> bool:
        return all(n == self.n_theta for n in self.ring_counts)

    def refined(self, resolution: float = BOUNDARY_RESOLUTION) -> "DiskRule":
        """Same radial rule with angular counts raised near the circle."""
        return make_disk_rule(self.n_r, self.n_theta, boundary_resolution=resolution)

    def key(self) -> tuple:
        return (self.n_r, self.n_theta, self.boundary_resolution)

    def total_weight(self) -> float:
        return float(math.fsum(self.radial_weights))


def make_disk_rule(
    n_r: int = DEFAULT_NR,
    n_theta: int = DEFAULT_NTHETA,
    boundary_resolution: float | None = None,
) -> DiskRule:
    """Build the tensor rule; exact for ``z**n conj(z)**m`` with
    ``n + m <= 2 n_r - 2`` and ``|n - m| < n_theta``.

    With ``boundary_resolution=c`` ring ``i`` gets at least ``c / (1 - r_i)``
    angular points (rounded up to a power of two).
    """
    if n_r < 2 or n_theta < 4:
        raise ValueError("need n_r >= 2 and n_theta >= 4")
    r, w = gauss_legendre_01(n_r)
    wr = 2.0 * r * w
    counts = np.full(n_r, n_theta, dtype=np.int64)
    if boundary_resolution is not None:
        need = np.ceil(boundary_resolution / (1.0 - r))
        need = 2 ** np.ceil(np.log2(np.maximum(need, 1))).astype(np.int64)
        counts = np.maximum(counts, need)
    for arr in (r, wr):
        arr.setflags(write=False)
    return DiskRule(r, wr, n_theta, tuple(int(c) for c in counts), n_r, boundary_resolution)


def _ring_angles(n: int, offset: float) -> np.ndarray:
    return offset + 2.0 * np.pi * (np.arange(n) + 0.5) / n


def disk_nodes(rule: DiskRule, pole: complex | None = None):
    """Yield ``(ring_index, points, angular_weight)`` for every ring."""
    offset = 0.0 if pole is None else float(np.angle(pole))
    for i, (r, n) in enumerate(zip(rule.radial_nodes, rule.ring_counts)):
        yield i, r * np.exp(1j * _ring_angles(n, offset)), 1.0 / n


def ring_means(
    g: Callable[[np.ndarray], np.ndarray],
    rule: DiskRule,
    pole: complex | None = None,
    drop_infinite: bool = False,
) -> tuple[np.ndarray, int]:
    """Angular mean of ``g`` on every ring, plus the number of dropped nodes."""
    means = np.empty(rule.n_r, dtype=complex)
    dropped = 0
    if rule.uniform:
        # one vectorized evaluation over the whole tensor grid
        offset = 0.0 if pole is None else float(np.angle(pole))
        z = rule.radial_nodes[:, None] * np.exp(1j * _ring_angles(rule.n_theta, offset))[None, :]
        vals = np.asarray(g(z), dtype=complex)
        vals, dropped = _screen(vals, z, drop_infinite)
        means[:] = vals.mean(axis=1)
        return means, dropped
    for i, z, _ in disk_nodes(rule, pole):
        vals = np.asarray(g(z), dtype=complex)
        vals, d = _screen(vals, z, drop_infinite)
        dropped += d
        means[i] = vals.mean()
    return means, dropped


def _screen(vals: np.ndarray, z: np.ndarray, drop_infinite: bool):
    bad = ~np.isfinite(vals)
    if not bad.any():
        return vals, 0
    if drop_infinite and not np.isnan(vals[bad]).any():
        vals = np.where(bad, 0.0, vals)
        return vals, int(bad.sum())
    where = z[bad].ravel()[0]
    raise QuadratureError(f"non-finite integrand value at node z={where:.6g}")


def integrate_disk(
    g: Callable[[np.ndarray], np.ndarray],
    rule: DiskRule,
    pole: complex | None = None,
) -> complex:
    """``int_D g dA`` with normalized area measure.

    ``g`` must accept a complex ndarray.  The ring means are combined with the
    radial weights by ``numpy``'s pairwise summation, in a fixed order.
    """
    means, _ = ring_means(g, rule, pole)
    return complex(np.sum(means * rule.radial_weights))


def integrate_circle(g: Callable[[np.ndarray], np.ndarray], M: int) -> complex:
    """Mean of ``g`` over the ``M`` roots of unity (trapezoid rule on the circle)."""
    check_grid_size(M)
    lam = circle_grid(M)
    vals = np.asarray(g(lam), dtype=complex)
    if vals.shape != lam.shape:
        vals = np.broadcast_to(vals, lam.shape)
    bad = ~np.isfinite(vals)
    if bad.any():
        raise QuadratureError(f"non-finite boundary sample at lambda={lam[bad][0]:.6g}")
    return complex(np.mean(vals))
