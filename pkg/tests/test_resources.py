import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from condtele import InvalidParameter, ResourceKind
from condtele.resources import (
    build_resource,
    herald_probability,
    joint_phase_density,
    photon_number_distribution,
    von_neumann_entropy,
)

S, P, A = ResourceKind.STANDARD, ResourceKind.SUBTRACTED, ResourceKind.ADDED
GRID = np.round(np.arange(0.05, 0.951, 0.05), 2)


def entropy_geometric(lam):
    x = lam * lam
    return -math.log(1 - x) - x / (1 - x) * math.log(x)


class TestBuild:
    def test_standard_vacuum_coefficient(self):
        res = build_resource(S, 0.8)
        np.testing.assert_allclose(res.coeffs[0], 0.6, rtol=1e-15)
        assert res.offset == 0

    def test_subtracted_ratio(self):
        res = build_resource(P, 0.8)
        np.testing.assert_allclose(res.coeffs[1] / res.coeffs[0], 1.6, rtol=1e-14)

    def test_added_at_zero_lambda(self):
        res = build_resource(A, 0.0)
        assert res.offset == 1
        np.testing.assert_allclose(res.coeffs, [1.0])
        assert list(res.levels) == [1]

    @pytest.mark.parametrize("kind", list(ResourceKind))
    @pytest.mark.parametrize("lam", [0.0, 0.3, 0.8, 0.9])
    def test_normalization_within_epsilon(self, kind, lam):
        res = build_resource(kind, lam)
        total = float(np.sum(res.coeffs**2))
        assert 1 - 1e-12 <= total <= 1 + 1e-14
        np.testing.assert_allclose(total, 1 - res.tail_mass, atol=1e-14)
        assert res.tail_mass < 1e-12
        assert np.all(res.coeffs >= 0)

    def test_series_identity(self):
        # (1-x)^3/(1+x) * sum (n+1)^2 x^n = 1
        for lam in (0.2, 0.6, 0.85):
            x = lam * lam
            res = build_resource(P, lam)
            n = np.arange(res.cutoff + 1)
            head = (1 - x) ** 3 / (1 + x) * np.sum((n + 1) ** 2 * x**n)
            assert abs(head - 1) < 1e-12
            np.testing.assert_allclose(res.coeffs**2, (1 - x) ** 3 / (1 + x) * (n + 1) ** 2 * x**n, rtol=1e-13)

    def test_eventual_decay(self):
        lam = 0.8
        c = build_resource(P, lam).coeffs
        start = math.ceil(1 / (1 - lam))
        assert np.all(c[start + 1 :] / c[start:-1] < 1)

    @pytest.mark.parametrize("lam", [-0.1, 1.0, float("nan")])
    def test_invalid_lambda(self, lam):
        with pytest.raises(InvalidParameter):
            build_resource(S, lam)

    def test_kind_aliases(self):
        assert build_resource("ps", 0.5).kind is P
        assert build_resource("photon-added", 0.5).kind is A
        with pytest.raises(ValueError):
            build_resource("squeezed", 0.5)


class TestHerald:
    def test_no_reflection(self):
        assert herald_probability(0.0, 0.7).probability == 0.0

    def test_value(self):
        hp = herald_probability(0.1, 0.8)
        np.testing.assert_allclose(hp.probability, 1e-4 * 1.64 / 0.046656, rtol=1e-12)
        np.testing.assert_allclose(hp.probability, 3.515e-3, rtol=1e-3)
        assert hp.perturbative

    def test_flag(self):
        hp = herald_probability(0.5, 0.9)
        assert hp.probability > 0.1
        assert not hp.perturbative


class TestPhotonNumbers:
    def test_standard_vacuum(self):
        dist = dict(photon_number_distribution(build_resource(S, 0.8)))
        np.testing.assert_allclose(dist[0], 0.36, rtol=1e-14)

    def test_subtracted_ratio(self):
        dist = dict(photon_number_distribution(build_resource(P, 0.8)))
        np.testing.assert_allclose(dist[1] / dist[0], 4 * 0.64, rtol=1e-13)

    def test_added_has_no_vacuum(self):
        dist = dict(photon_number_distribution(build_resource(A, 0.8)))
        assert dist[0] == 0.0
        np.testing.assert_allclose(sum(dist.values()), 1.0, atol=1e-12)


class TestEntropy:
    @pytest.mark.parametrize("kind", list(ResourceKind))
    def test_product_state(self, kind):
        assert von_neumann_entropy(build_resource(kind, 0.0)) == 0.0

    def test_standard_closed_form(self):
        val = von_neumann_entropy(build_resource(S, 0.5))
        # truncating at tail mass 1e-12 moves the entropy by ~3e-11
        np.testing.assert_allclose(val, -math.log(0.75) + (2 / 3) * math.log(2), rtol=1e-9)
        np.testing.assert_allclose(val, 0.7498, atol=1e-4)

    @pytest.mark.parametrize("lam", [0.1, 0.5, 0.9])
    def test_bits(self, lam):
        res = build_resource(S, lam)
        np.testing.assert_allclose(von_neumann_entropy(res, base=2) * math.log(2), entropy_geometric(lam), rtol=1e-9)

    def test_bad_base(self):
        with pytest.raises(InvalidParameter):
            von_neumann_entropy(build_resource(S, 0.5), base=10)

    @pytest.mark.filterwarnings("ignore::condtele.numerics.TruncationWarning")
    @pytest.mark.parametrize("lam", GRID)
    def test_subtracted_exceeds_standard(self, lam):
        assert von_neumann_entropy(build_resource(P, lam)) > von_neumann_entropy(build_resource(S, lam))

    @pytest.mark.filterwarnings("ignore::condtele.numerics.TruncationWarning")
    @pytest.mark.parametrize("kind", list(ResourceKind))
    def test_monotone_in_lambda(self, kind):
        vals = [von_neumann_entropy(build_resource(kind, l)) for l in GRID]
        assert np.all(np.diff(vals) > 0)

    @pytest.mark.parametrize("lam", [0.2, 0.6, 0.9])
    def test_added_matches_subtracted(self, lam):
        np.testing.assert_allclose(
            von_neumann_entropy(build_resource(A, lam)), von_neumann_entropy(build_resource(P, lam)), rtol=1e-14
        )


class TestPhaseDensity:
    def test_uniform_at_zero_lambda(self):
        phi = np.linspace(-math.pi, math.pi, 17)
        np.testing.assert_allclose(joint_phase_density(build_resource(P, 0.0), phi), 1 / (2 * math.pi), rtol=1e-15)

    @pytest.mark.parametrize("kind", list(ResourceKind))
    @pytest.mark.parametrize("lam", [0.5, 0.8])
    def test_unit_integral(self, kind, lam):
        res = build_resource(kind, lam)
        val, _ = quad(lambda p: joint_phase_density(res, p), -math.pi, math.pi, limit=400, epsabs=1e-14, epsrel=1e-13, points=[0.0])
        assert abs(val - 1) < 1e-9

    def test_sharper_with_lambda(self):
        assert joint_phase_density(build_resource(P, 0.9), 0.0) > joint_phase_density(build_resource(P, 0.5), 0.0)

    @settings(max_examples=40, deadline=None)
    @given(lam=st.floats(0.01, 0.9), phi=st.floats(0.0, math.pi), kind=st.sampled_from(list(ResourceKind)))
    def test_even_and_peaked_at_zero(self, lam, phi, kind):
        res = build_resource(kind, lam)
        np.testing.assert_allclose(joint_phase_density(res, phi), joint_phase_density(res, -phi), rtol=1e-12)
        assert joint_phase_density(res, phi) <= joint_phase_density(res, 0.0) * (1 + 1e-12)

    def test_array_shape(self):
        res = build_resource(S, 0.5)
        assert joint_phase_density(res, np.zeros((3, 4))).shape == (3, 4)
        assert isinstance(joint_phase_density(res, 0.1), float)
