"""Truncated Taylor polynomials, rational functions and boundary sampling.

Every holomorphic object in the package (test functions, Cauchy kernels,
symbols, the pair ``(b, a)``) is carried either as a :class:`ComplexPoly`
(Taylor coefficients at the origin) or as a :class:`RationalFn` whose
denominator does not vanish on the closed disk.  Boundary values live on the
uniform grid ``lambda_j = exp(2 pi i j / M)`` with ``M`` a power of two, so
that coefficients and samples are related by a plain FFT.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

DEFAULT_N = 128
DEFAULT_M = 4096
ROOT_MARGIN = 1e-9


class DomainError(ValueError):
    """Raised when an argument lies outside the domain an operation accepts."""


def _as_coeffs(c) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(c, dtype=complex)).copy()
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("coefficients must be a non-empty 1-D sequence")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class ComplexPoly:
    """Polynomial ``sum c_n z**n`` with complex coefficients ``c_0 .. c_N``."""

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _as_coeffs(self.coeffs))

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, z):
        # Horner; works on scalars and arrays
        z = np.asarray(z, dtype=complex)
        out = np.zeros_like(z) + self.coeffs[-1]
        for c in self.coeffs[-2::-1]:
            out = out * z + c
        return out if out.ndim else complex(out)

    def __len__(self):
        return self.coeffs.size

    def __eq__(self, other):
        if not isinstance(other, ComplexPoly):
            return NotImplemented
        return np.array_equal(self.trim().coeffs, other.trim().coeffs)

    def __repr__(self):
        return f"ComplexPoly({np.array2string(self.coeffs, precision=6)})"

    def __add__(self, other):
        other = as_poly(other)
        n = max(len(self), len(other))
        return ComplexPoly(_pad(self.coeffs, n) + _pad(other.coeffs, n))

    __radd__ = __add__

    def __neg__(self):
        return ComplexPoly(-self.coeffs)

    def __sub__(self, other):
        return self + (-as_poly(other))

    def __rsub__(self, other):
        return as_poly(other) - self

    def __mul__(self, other):
        if np.isscalar(other):
            return ComplexPoly(self.coeffs * other)
        other = as_poly(other)
        return ComplexPoly(np.convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def truncate(self, n: int) -> "ComplexPoly":
        """Coefficients 0..n, zero padded if the polynomial is shorter."""
        return ComplexPoly(_pad(self.coeffs, n + 1)[: n + 1])

    def trim(self, tol: float = 0.0) -> "ComplexPoly":
        """Drop trailing coefficients with modulus ``<= tol``."""
        nz = np.nonzero(np.abs(self.coeffs) > tol)[0]
        return ComplexPoly(self.coeffs[: nz[-1] + 1] if nz.size else [0.0])

    def deriv(self) -> "ComplexPoly":
        if self.degree == 0:
            return ComplexPoly([0.0])
        return ComplexPoly(self.coeffs[1:] * np.arange(1, len(self)))

    def roots(self) -> np.ndarray:
        """Zeros via companion-matrix eigenvalues (``numpy.roots``).

        Top coefficients below ``1e-150`` times the largest are dropped first,
        which discards only zeros of enormous modulus and keeps the companion
        matrix finite (e.g. ``1 - c z`` with subnormal ``c``).
        """
        p = self.trim(1e-150 * float(np.max(np.abs(self.coeffs), initial=0.0)))
        if p.degree == 0:
            return np.empty(0, dtype=complex)
        return np.roots(p.coeffs[::-1])


@dataclass(frozen=True, eq=False)
class RationalFn:
    """Quotient ``num/den`` holomorphic on a neighbourhood of the closed disk.

    ``boundary_poles=True`` relaxes the root check to the open disk, so that
    symbols such as ``z/(1 - z)`` (pole on the unit circle) can be carried.
    Such objects are accepted by the pair construction but not by the
    sampling and quadrature routines.
    """

    num: ComplexPoly
    den: ComplexPoly
    boundary_poles: bool = False
    poles: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        num, den = as_poly(self.num), as_poly(self.den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        if den.coeffs[0] == 0:
            raise DomainError("denominator vanishes at 0")
        poles = den.roots()
        object.__setattr__(self, "poles", poles)
        if poles.size:
            bound = 1.0 - ROOT_MARGIN if self.boundary_poles else 1.0 + ROOT_MARGIN
            bad = poles[np.abs(poles) <= bound]
            if bad.size:
                raise DomainError(f"denominator has zeros in the closed disk: {bad}")

    def __call__(self, z):
        return self.num(z) / self.den(z)

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    def has_boundary_pole(self, tol: float = 1e-9) -> bool:
        return bool(self.poles.size) and bool(np.any(np.abs(np.abs(self.poles) - 1) <= tol))

    def deriv(self) -> "RationalFn":
        n, d = self.num, self.den
        return RationalFn(n.deriv() * d - n * d.deriv(), d * d, self.boundary_poles)


Holo = Union[ComplexPoly, RationalFn]


def as_poly(x) -> ComplexPoly:
    if isinstance(x, ComplexPoly):
        return x
    return ComplexPoly(x)


def _pad(c: np.ndarray, n: int) -> np.ndarray:
    if c.size >= n:
        return np.asarray(c)
    return np.concatenate([c, np.zeros(n - c.size, dtype=complex)])


def monomial(n: int, c: complex = 1.0) -> ComplexPoly:
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[n] = c
    return ComplexPoly(coeffs)


def kernel_degree(w: complex, tail: float = 1e-16, cap: int = 4096) -> int:
    """Smallest N with ``|w|**(N+1) <= tail`` (capped)."""
    rho = abs(w)
    if rho == 0:
        return 0
    return min(cap, max(0, int(np.ceil(np.log(tail) / np.log(rho))) - 1))


def cauchy_kernel(w: complex, N: int = DEFAULT_N) -> ComplexPoly:
    """Truncated Szego/Cauchy kernel ``1/(1 - conj(w) z)``, coefficients ``conj(w)**n``."""
    if abs(w) >= 1:
        raise DomainError(f"|w| must be < 1, got {abs(w)}")
    if N < 0:
        raise DomainError("N must be non-negative")
    return ComplexPoly(np.conj(w) ** np.arange(N + 1))


def cauchy_kernel_fn(w: complex) -> RationalFn:
    if abs(w) >= 1:
        raise DomainError(f"|w| must be < 1, got {abs(w)}")
    return RationalFn(ComplexPoly([1.0]), ComplexPoly([1.0, -np.conj(w)]))


def h2_inner(f: ComplexPoly, g: ComplexPoly) -> complex:
    """``sum f_n conj(g_n)``."""
    n = min(len(f), len(g))
    return complex(np.dot(f.coeffs[:n], np.conj(g.coeffs[:n])))


def h2_norm_sq(f: Holo, M: int = DEFAULT_M) -> float:
    """Squared Hardy norm; exact for polynomials, circle mean for rational input."""
    if isinstance(f, ComplexPoly):
        return float(np.sum(np.abs(f.coeffs) ** 2))
    return float(np.mean(np.abs(boundary_samples(f, M).values) ** 2))


def dilate(f: Holo, r: float) -> Holo:
    """``z -> f(r z)``; for a rational function both numerator and denominator are dilated."""
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"dilation radius must lie in [0, 1], got {r}")
    if isinstance(f, RationalFn):
        return RationalFn(dilate(f.num, r), dilate(f.den, r), f.boundary_poles)
    return ComplexPoly(f.coeffs * float(r) ** np.arange(len(f)))


def rational_to_poly(R: RationalFn, N: int = DEFAULT_N) -> ComplexPoly:
    """Taylor coefficients 0..N of ``R`` by power-series long division."""
    if R.den.coeffs[0] == 0:
        raise DomainError("denominator vanishes at 0")
    num = _pad(R.num.coeffs, N + 1)[: N + 1]
    den = _pad(R.den.coeffs, N + 1)[: N + 1]
    d0 = den[0]
    out = np.zeros(N + 1, dtype=complex)
    for n in range(N + 1):
        # c_n = (num_n - sum_{k=1..n} den_k c_{n-k}) / den_0
        k = min(n, R.den.degree)
        acc = num[n] - np.dot(den[1 : k + 1], out[n - 1 :: -1][:k]) if k else num[n]
        out[n] = acc / d0
    return ComplexPoly(out)


def deflate(p: ComplexPoly, zeta: complex) -> tuple[ComplexPoly, complex]:
    """Synthetic division ``p(z) = (z - zeta) q(z) + p(zeta)``; returns ``(q, p(zeta))``."""
    c = p.coeffs
    if c.size == 1:
        return ComplexPoly([0.0]), complex(c[0])
    q = np.zeros(c.size - 1, dtype=complex)
    acc = c[-1]
    for k in range(c.size - 2, -1, -1):
        q[k] = acc
        acc = c[k] + zeta * acc
    return ComplexPoly(q), complex(acc)


def difference_quotient(f: Holo, zeta: complex) -> Holo:
    """``(f(z) - f(zeta)) / (z - zeta)`` as an exact polynomial or rational function.

    For ``f = N/D`` this is ``S(z) / (D(z) D(zeta))`` where
    ``(z - zeta) S(z) = N(z) D(zeta) - N(zeta) D(z)``, so no cancellation of
    nearly-equal values ever takes place.
    """
    if isinstance(f, ComplexPoly):
        q, _ = deflate(f, zeta)
        return q
    d_zeta = complex(f.den(zeta))
    top = f.num * d_zeta - f.den * complex(f.num(zeta))
    s, _ = deflate(top, zeta)
    return RationalFn(s, f.den * d_zeta, f.boundary_poles)


@dataclass(frozen=True, eq=False)
class BoundarySamples:
    """Values at ``lambda_j = exp(2 pi i j / M)``, ``j = 0..M-1``."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex).copy()
        check_grid_size(v.size)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def M(self) -> int:
        return self.values.size


def check_grid_size(M: int) -> None:
    if M < 2 or M & (M - 1):
        raise DomainError(f"boundary grid size must be a power of two >= 2, got {M}")


def circle_grid(M: int) -> np.ndarray:
    check_grid_size(M)
    return np.exp(2j * np.pi * np.arange(M) / M)


def boundary_samples(f: Holo, M: int = DEFAULT_M) -> BoundarySamples:
    check_grid_size(M)
    if isinstance(f, ComplexPoly):
        if f.degree < M:
            return BoundarySamples(np.fft.ifft(_pad(f.coeffs, M)) * M)
        return BoundarySamples(f(circle_grid(M)))
    lam = circle_grid(M)
    den = f.den(lam)
    if np.any(den == 0):
        raise DomainError("rational function has a pole on the sample grid")
    return BoundarySamples(f.num(lam) / den)


def samples_to_coeffs(s: BoundarySamples, N: int) -> ComplexPoly:
    """Coefficients 0..N from boundary samples (exact when the source has degree < M)."""
    if N >= s.M:
        raise DomainError(f"cannot recover {N + 1} coefficients from {s.M} samples")
    return ComplexPoly(np.fft.fft(s.values)[: N + 1] / s.M)


def sup_on_circle(R: Holo, M: int = DEFAULT_M) -> float:
    """Max of ``|R|`` over the ``M`` roots of unity."""
    return float(np.max(np.abs(boundary_samples(R, M).values)))


def ratio_dilate(phi: RationalFn, r: float) -> RationalFn:
    """``phi(r z) / phi(z)`` with the common ``z**k`` factor cancelled.

    The quotient is only holomorphic on the closed disk when the zeros of
    ``phi`` there are all at the origin; otherwise construction fails.
    """
    if not 0.0 <= r < 1.0:
        raise DomainError(f"r must lie in [0, 1), got {r}")
    num = phi.num.trim()
    nz = np.nonzero(num.coeffs)[0]
    if nz.size == 0:
        raise DomainError("phi is identically zero")
    k = int(nz[0])
    reduced = ComplexPoly(num.coeffs[k:])
    top = dilate(reduced, r) * phi.den * (float(r) ** k)
    bottom = dilate(phi.den, r) * reduced
    return RationalFn(top, bottom)


# JSON encoding: {"num": [[re, im], ...], "den": [[re, im], ...]}

def encode_coeffs(c) -> list[list[float]]:
    return [[float(np.real(x)), float(np.imag(x))] for x in np.asarray(c, dtype=complex)]


def decode_coeffs(data) -> np.ndarray:
    if not isinstance(data, list) or not data:
        raise ValueError("coefficient list must be a non-empty list of [re, im] pairs")
    out = []
    for item in data:
        if isinstance(item, (int, float)):
            out.append(complex(item))
        elif isinstance(item, list) and len(item) == 2 and all(
            isinstance(v, (int, float)) for v in item
        ):
            out.append(complex(item[0], item[1]))
        else:
            raise ValueError(f"bad coefficient entry {item!r}")
    return np.array(out, dtype=complex)


def to_json(f: Holo) -> dict:
    if isinstance(f, ComplexPoly):
        return {"num": encode_coeffs(f.coeffs), "den": [[1.0, 0.0]]}
    return {"num": encode_coeffs(f.num.coeffs), "den": encode_coeffs(f.den.coeffs)}


def from_json(data: dict, boundary_poles: bool = False) -> Holo:
    """Decode; a unit denominator yields a :class:`ComplexPoly`."""
    if not isinstance(data, dict) or "num" not in data:
        raise ValueError('expected an object with a "num" field')
    num = ComplexPoly(decode_coeffs(data["num"]))
    den = ComplexPoly(decode_coeffs(data.get("den", [[1, 0]])))
    if den.trim().degree == 0 and den.coeffs[0] == 1:
        return num
    return RationalFn(num, den, boundary_poles)
