"""Independent oracle computations for frozen expected values.

Run as a script (``python3 tests/oracles.py``); it uses mpmath only and none of
the package's numerics, apart from the plain grid layout of the QB check.
The printed numbers are frozen in the test modules.
"""

import mpmath as mp

mp.mp.dps = 30


def atom_weight(zeta, z):
    zeta, z = mp.mpc(zeta), mp.mpc(z)
    if abs(zeta) == 1:
        return (1 - abs(z) ** 2) / abs(zeta - z) ** 2
    return mp.log(abs((1 - mp.conj(zeta) * z) / (zeta - z))) * 2 / (1 - abs(zeta) ** 2)


def l1_interior_atom(zeta):
    # polar integral with the radial range split at |zeta| where the log kink sits
    rho, th0 = abs(mp.mpc(zeta)), mp.arg(mp.mpc(zeta))

    def ring(r):
        return mp.quad(lambda t: atom_weight(zeta, r * mp.e ** (1j * t)), [th0 - mp.pi, th0, th0 + mp.pi]) / (2 * mp.pi)

    return mp.quad(lambda r: 2 * r * ring(r), [0, rho, 1])


def qb_grid(n_radii=15, n_angles=16, r_max=0.9):
    import numpy as np

    r = np.linspace(r_max / n_radii, r_max, n_radii)
    t = 2 * np.pi * np.arange(n_angles) / n_angles
    return [complex(x) for x in (r[:, None] * np.exp(1j * t)[None, :]).ravel()]


def mixture_residuals():
    # 1/2 omega_0 + 1/2 omega_{1/2}: Q omega_zeta = 1/(1 - conj(zeta) z),
    # B omega_zeta = (1-|z|^2)/|1 - conj(zeta) z|^2
    qb = phi = mp.mpf(0)
    for z in qb_grid():
        z = mp.mpc(z)
        q = mp.mpf(1) / 2 + 1 / (2 * (1 - z / 2))
        b = (1 - abs(z) ** 2) / 2 + (1 - abs(z) ** 2) / (2 * abs(1 - z / 2) ** 2)
        qb = max(qb, abs((1 - abs(z) ** 2) * abs(q) ** 2 - b))
        rhs = abs(z) ** 2 * (mp.mpf(1) / 2 + 1 / (2 * abs(1 - z / 2) ** 2))
        phi = max(phi, abs(abs(z * q) ** 2 - rhs))
    return qb, phi


def local_kernel(w, zeta):
    w, zeta = mp.mpc(w), mp.mpc(zeta)
    return abs(w) ** 2 / (abs(1 - mp.conj(w) * zeta) ** 2 * (1 - abs(w) ** 2))


def area_dirichlet(coeffs, zeta):
    """int |f'|^2 omega_zeta dA by direct 2-D quadrature."""
    rho, th0 = abs(mp.mpc(zeta)), mp.arg(mp.mpc(zeta))

    def df(z):
        return sum(n * c * z ** (n - 1) for n, c in enumerate(coeffs) if n)

    def ring(r):
        g = lambda t: abs(df(r * mp.e ** (1j * t))) ** 2 * atom_weight(zeta, r * mp.e ** (1j * t))
        return mp.quad(g, [th0 - mp.pi, th0, th0 + mp.pi]) / (2 * mp.pi)

    pts = [0, rho, 1] if rho > 0 else [0, 1]
    return mp.quad(lambda r: 2 * r * ring(r), pts)


def douglas(coeffs, zeta):
    """Parseval on the synthetic-division quotient."""
    zeta = mp.mpc(zeta)
    q, acc = [], mp.mpc(0)
    for c in reversed(coeffs):
        acc = acc * zeta + c
        q.append(acc)
    quotient = q[:-1]
    return sum(abs(c) ** 2 for c in quotient)


def pair_constants(zeta):
    rho = abs(mp.mpc(zeta))
    s = mp.sqrt(4 + rho ** 4)
    A = mp.sqrt((2 + rho ** 2 + s) / 2)
    B = mp.sqrt(2 * rho ** 2 / (2 + rho ** 2 + s))
    return A, B


if __name__ == "__main__":
    print("l1 interior atom 0.3+0.4i:", mp.nstr(l1_interior_atom(0.3 + 0.4j), 12))
    print("l1 interior atom 0.7:", mp.nstr(l1_interior_atom(0.7), 12))
    qb, ph = mixture_residuals()
    print("mixture qb residual:", mp.nstr(qb, 15))
    print("mixture phieqn residual:", mp.nstr(ph, 15))
    k = local_kernel(1 / 3, 0) / 2 + local_kernel(1 / 3, 0.5) / 2
    print("measure average k_1/3:", mp.nstr(k, 17))
    print("D_1(k_0.6):", mp.nstr(local_kernel(0.6, 1), 17))
    f = [1, 2 - 1j, 0.5j, 0.25]
    print("area  D_0.5(f):", mp.nstr(area_dirichlet(f, 0.5), 15))
    print("douglas D_0.5(f):", mp.nstr(douglas(f, 0.5), 15))
    print("area  D_0.3i(f):", mp.nstr(area_dirichlet(f, 0.3j), 15))
    print("douglas D_0.3i(f):", mp.nstr(douglas(f, 0.3j), 15))
    A, B = pair_constants(1)
    print("A, B at zeta=1:", mp.nstr(A, 17), mp.nstr(B, 17), mp.nstr(A - B, 17))
