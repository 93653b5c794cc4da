import numpy as np
import pytest

from dbrspace.quadrature import integrate_disk, make_disk_rule
from dbrspace.weights import (
    AtomicMeasure,
    AtomicWeight,
    PowerWeight,
    SampledWeight,
    SignedAtomicMeasure,
    berezin,
    bergman_projection,
    default_qb_grid,
    eval_weight,
    l1_norm,
    measure_from_json,
    measure_to_json,
    merge_atoms,
    moment_matrix_residual,
    moment_residual,
    omega,
    qb_residual,
    weight_from_json,
    weight_to_json,
)

QB_ZETAS = [0, 0.3 + 0.4j, 0.7, 0.5j, 1, np.exp(1j * np.pi / 3), 0.5, 1j, 0.8j]
DISK = 0.9 * np.sqrt(np.linspace(0.01, 1, 9))[:, None] * np.exp(1j * np.linspace(0, 6, 9))[None, :]

# frozen from tests/oracles.py (mpmath, closed-form Q and B of single atoms)
MIXTURE_QB_RESIDUAL = 0.040017710292932


@pytest.fixture(scope="module")
def rule():
    return make_disk_rule(400, 2048)


class TestEval:
    def test_origin_atom(self):
        z = np.array([0.1, 0.5j, -0.7 + 0.1j])
        assert np.allclose(eval_weight(omega(0), z), 2 * np.log(1 / np.abs(z)))

    def test_boundary_atom_at_center(self):
        assert eval_weight(omega(1), 0) == pytest.approx(1.0, abs=1e-15)

    def test_half_mass(self):
        w = AtomicWeight(AtomicMeasure.dirac(0, 0.5))
        assert eval_weight(w, 0.3) == pytest.approx(np.log(1 / 0.3), rel=1e-14)

    def test_atom_is_infinite(self):
        assert eval_weight(omega(0.5), 0.5) == np.inf

    def test_power(self):
        assert eval_weight(PowerWeight(0.5), 0.6) == pytest.approx(0.8, rel=1e-14)

    def test_open_disk_only(self):
        with pytest.raises(ValueError):
            eval_weight(omega(0), 1.0)

    def test_linear_in_atoms(self):
        a, b = (0.2 + 0.1j, 0.7), (1j, 0.4)
        both = AtomicWeight(AtomicMeasure((a, b)))
        parts = AtomicWeight(AtomicMeasure((a,))), AtomicWeight(AtomicMeasure((b,)))
        z = DISK.ravel()
        assert np.allclose(eval_weight(both, z), eval_weight(parts[0], z) + eval_weight(parts[1], z))


class TestMeasures:
    def test_rejects_bad_atoms(self):
        with pytest.raises(ValueError):
            AtomicMeasure(((0, -1.0),))
        with pytest.raises(ValueError):
            AtomicMeasure(((1.5, 1.0),))
        with pytest.raises(ValueError):
            SignedAtomicMeasure(((0, 0.0),))

    def test_unit_modulus_snapped(self):
        mu = AtomicMeasure(((np.exp(0.3j) * (1 + 1e-14), 1.0),))
        assert abs(mu.atoms[0][0]) == 1

    def test_merge(self):
        assert merge_atoms([(0.5, 1.0), (0.5, 2.0), (0j, 1.0)]) == [(0.5, 3.0), (0j, 1.0)]

    def test_json_round_trip(self):
        mu = AtomicMeasure(((0.5j, 0.25), (1, 2.0)))
        assert measure_from_json(measure_to_json(mu)) == mu
        for w in (AtomicWeight(mu), PowerWeight(0.3)):
            assert weight_from_json(weight_to_json(w)) == w

    def test_sampled_expression(self):
        w = weight_from_json({"kind": "sampled", "expr": "1 - abs(z)**2"})
        assert isinstance(w, SampledWeight) and eval_weight(w, 0.5) == pytest.approx(0.75)
        with pytest.raises(ValueError):
            weight_from_json({"kind": "sampled", "expr": "__import__('os')"})

    def test_malformed(self):
        with pytest.raises(ValueError):
            measure_from_json({"atoms": [{"point": [0, 0]}]})
        with pytest.raises(ValueError):
            weight_from_json({"kind": "nope"})


class TestL1:
    @pytest.mark.parametrize("zeta", QB_ZETAS)
    def test_unit_atoms(self, zeta, rule):
        assert abs(l1_norm(omega(zeta), rule) - 1) < 1e-4

    @pytest.mark.parametrize("alpha", [0.0, 0.25, 0.5, 1.0])
    def test_power(self, alpha, rule):
        assert abs(l1_norm(PowerWeight(alpha), rule) - 1 / (alpha + 1)) < 1e-8

    def test_direct_2d_agrees(self, rule):
        # the moment route against plain tensor quadrature of the pointwise weight
        w = omega(0.3 + 0.4j)
        direct = integrate_disk(lambda z: eval_weight(w, z), rule).real
        assert abs(direct - l1_norm(w, rule)) < 1e-4

    def test_sampled(self, rule):
        w = SampledWeight(lambda z: 1 - np.abs(z) ** 2)
        assert abs(l1_norm(w, rule) - 0.5) < 1e-8

    def test_homogeneous(self, rule):
        mu = AtomicMeasure(((0.2, 1.0), (1j, 0.5)))
        assert abs(l1_norm(AtomicWeight(mu.scaled(3)), rule) - 3 * l1_norm(AtomicWeight(mu), rule)) < 1e-12


class TestBergman:
    def test_constant_weight(self, rule):
        assert np.allclose(bergman_projection(PowerWeight(0), DISK, rule), 1, atol=1e-10)

    def test_origin_atom(self, rule):
        assert np.allclose(bergman_projection(omega(0), DISK, rule), 1, atol=1e-6)

    @pytest.mark.parametrize("zeta", QB_ZETAS)
    def test_unit_atom_closed_form(self, zeta, rule):
        # every unit atom has Bergman moments conj(zeta)^m / (m + 1)
        err = np.abs(bergman_projection(omega(zeta), DISK, rule) - 1 / (1 - np.conj(zeta) * DISK))
        assert err.max() < 1e-4

    def test_matches_2d_quadrature(self, rule):
        w, z = omega(0.3 + 0.4j), 0.5 - 0.2j
        direct = integrate_disk(lambda v: eval_weight(w, v) / (1 - np.conj(v) * z) ** 2, rule)
        assert abs(direct - bergman_projection(w, z, rule)) < 1e-4


class TestBerezin:
    @pytest.mark.parametrize("w", [omega(0), omega(0.7), omega(1), PowerWeight(0.5)])
    def test_center_is_l1(self, w, rule):
        assert abs(berezin(w, 0, rule) - l1_norm(w, rule)) < 1e-10

    def test_origin_atom(self, rule):
        assert np.allclose(berezin(omega(0), DISK, rule), 1 - np.abs(DISK) ** 2, atol=1e-4)

    def test_constant_weight(self, rule):
        assert np.allclose(berezin(PowerWeight(0), DISK, rule), 1, atol=1e-8)

    @pytest.mark.parametrize("zeta", [0.3 + 0.4j, 1j, 0.7])
    def test_unit_atom_closed_form(self, zeta, rule):
        exact = (1 - np.abs(DISK) ** 2) / np.abs(1 - np.conj(zeta) * DISK) ** 2
        assert np.abs(berezin(omega(zeta), DISK, rule) - exact).max() < 1e-4


class TestQB:
    @pytest.mark.parametrize("zeta", QB_ZETAS)
    def test_unit_atoms(self, zeta, rule):
        assert qb_residual(omega(zeta), rule=rule) <= 1e-3

    def test_origin_atom_tight(self, rule):
        assert qb_residual(omega(0), rule=rule) <= 1e-6

    def test_mixture_breaks_relation(self, rule):
        w = AtomicWeight(AtomicMeasure(((0, 0.5), (0.5, 0.5))))
        res = qb_residual(w, default_qb_grid(), rule)
        assert res > 1e-6
        assert res == pytest.approx(MIXTURE_QB_RESIDUAL, rel=1e-6)


class TestMoments:
    @pytest.mark.parametrize("atom", [(0.5 + 0.1j, 3.0), (1j, 0.25), (0, 2.0), (-0.3, -1.5)])
    def test_dirac_multiples(self, atom):
        assert moment_residual(SignedAtomicMeasure((atom,)), 8, 8) <= 1e-14

    def test_two_atom_gap(self):
        mu = AtomicMeasure(((0, 0.5), (0.5, 0.5)))
        assert moment_matrix_residual(mu, 1, 1)[1, 1] == pytest.approx(1 / 16, abs=1e-15)

    def test_empty(self):
        assert moment_residual(SignedAtomicMeasure(()), 3, 3) == 0

    def test_coincident_atoms_merge_to_dirac(self):
        mu = SignedAtomicMeasure(((0.4j, 1.0), (0.4j, 2.0)))
        assert moment_residual(mu, 5, 5) <= 1e-14

    def test_non_dirac_lists_fail(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            k = int(rng.integers(2, 5))
            pts = rng.uniform(-0.7, 0.7, k) + 1j * rng.uniform(-0.7, 0.7, k)
            mu = AtomicMeasure(tuple(zip(pts, rng.uniform(0.1, 1, k))))
            assert moment_residual(mu, 2, 2) > 1e-8

    def test_rejects_negative_orders(self):
        with pytest.raises(ValueError):
            moment_residual(SignedAtomicMeasure(((0, 1.0),)), -1, 2)
