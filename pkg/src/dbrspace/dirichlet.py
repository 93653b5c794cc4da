"""Weighted Dirichlet integrals, local Dirichlet integrals and dilation ratios."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .quadrature import DiskRule, integrate_circle, make_disk_rule, ring_means
from .series_core import (
    DEFAULT_M,
    Holo,
    RationalFn,
    difference_quotient,
    dilate,
    h2_norm_sq,
)
from .weights import AtomicMeasure, AtomicWeight, Weight, eval_weight

MAX_DILATION = 1 - 1e-6


@dataclass(frozen=True)
class DirichletValue:
    value: float
    method: str  # "area-quadrature" | "douglas-boundary" | "measure-average"
    flags: tuple[str, ...] = ()

    def __float__(self):
        return self.value


def _check_holo(f: Holo) -> None:
    if isinstance(f, RationalFn) and f.boundary_poles and f.has_boundary_pole():
        raise ValueError("f must be holomorphic on a neighbourhood of the closed disk")


def dirichlet_area(f: Holo, w: Weight, rule: DiskRule | None = None) -> DirichletValue:
    """``int_D |f'|^2 omega dA`` by the tensor disk rule.

    Weights with atoms on the circle are integrated on a boundary-refined rule
    rotated onto each atom.  Nodes where the weight is ``+inf`` are dropped
    (the integrand is integrable there) and reported in ``flags``.
    """
    _check_holo(f)
    rule = rule or make_disk_rule()
    df = f.deriv()
    flags: list[str] = []

    def integrand_for(weight):
        return lambda z: np.abs(df(z)) ** 2 * eval_weight(weight, z)

    parts = []
    if isinstance(w, AtomicWeight):
        # one rotated pass per boundary atom, one pass for all interior atoms together
        interior = tuple(a for a in w.measure.atoms if abs(a[0]) < 1)
        boundary = tuple(a for a in w.measure.atoms if abs(a[0]) == 1)
        fine = rule if rule.boundary_resolution else rule.refined()
        for zeta, mass in boundary:
            sub = AtomicWeight(AtomicMeasure(((zeta, mass),)))
            parts.append((integrand_for(sub), fine, zeta))
        if interior:
            parts.append((integrand_for(AtomicWeight(AtomicMeasure(interior))), rule, None))
    else:
        parts.append((integrand_for(w), rule, None))

    total = 0.0
    for g, rl, pole in parts:
        means, dropped = ring_means(g, rl, pole=pole, drop_infinite=True)
        if dropped:
            flags.append(f"dropped {dropped} node(s) where the weight is infinite")
        total += float(np.sum(means.real * rl.radial_weights))
    if flags:
        warnings.warn("; ".join(flags), RuntimeWarning, stacklevel=2)
    return DirichletValue(total, "area-quadrature", tuple(flags))


def local_dirichlet(f: Holo, zeta: complex, M: int = DEFAULT_M) -> DirichletValue:
    """Douglas boundary formula ``mean_T |(f(lam) - f(zeta)) / (lam - zeta)|^2``.

    The difference quotient is formed exactly (deflation), then sampled.
    """
    _check_holo(f)
    zeta = complex(zeta)
    if abs(zeta) > 1 + 1e-12:
        raise ValueError(f"zeta must lie in the closed disk, got {zeta}")
    q = difference_quotient(f, zeta)
    value = integrate_circle(lambda lam: np.abs(q(lam)) ** 2, M).real
    return DirichletValue(float(value), "douglas-boundary")


def local_dirichlet_closed_form_kernel(w: complex, zeta: complex) -> float:
    """``D_zeta(k_w) = |w|^2 / (|1 - conj(w) zeta|^2 (1 - |w|^2))``."""
    return abs(w) ** 2 / (abs(1 - np.conj(w) * zeta) ** 2 * (1 - abs(w) ** 2))


def dirichlet_measure(f: Holo, mu: AtomicMeasure, M: int = DEFAULT_M) -> DirichletValue:
    """``sum_k mass_k D_{zeta_k}(f)``."""
    total = sum(m * local_dirichlet(f, z, M).value for z, m in mu.atoms)
    return DirichletValue(float(total), "measure-average")


def dnorm_sq(f: Holo, w: Weight, rule: DiskRule | None = None, M: int = DEFAULT_M) -> float:
    """``||f||_{H^2}^2 + D_omega(f)``."""
    return h2_norm_sq(f, M) + dirichlet_area(f, w, rule).value


def dilation_ratio(f: Holo, target, r: float, resolution=None) -> float:
    """``D(f_r) / D(f)`` for a weight (area rule) or a measure (Douglas formula).

    ``resolution`` is a :class:`DiskRule` for weights and a grid size ``M``
    for measures.
    """
    if not 0.0 <= r <= MAX_DILATION:
        raise ValueError(f"r must lie in [0, {MAX_DILATION}], got {r}")
    fr = dilate(f, r)
    if isinstance(target, AtomicMeasure):
        M = resolution or DEFAULT_M
        top, bottom = dirichlet_measure(fr, target, M).value, dirichlet_measure(f, target, M).value
    else:
        top, bottom = dirichlet_area(fr, target, resolution).value, dirichlet_area(f, target, resolution).value
    if bottom <= 0:
        raise ZeroDivisionError("D(f) = 0: the dilation ratio is undefined")
    return top / bottom

