import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import poisson

from condtele import Cat, Coherent, InvalidParameter, ResourceKind, build_resource
from condtele.ndps import input_coeffs, ndps_distribution, ndps_fidelity_curve, ndps_point
from condtele.oracle import nd_lattice_probabilities

S, P, A = ResourceKind.STANDARD, ResourceKind.SUBTRACTED, ResourceKind.ADDED
MID = [round(x, 2) for x in np.arange(0.2, 0.701, 0.05)]


class TestInputCoeffs:
    def test_vacuum(self):
        np.testing.assert_allclose(input_coeffs(Coherent(0), 5), [1, 0, 0, 0, 0, 0])

    def test_poisson_mass(self):
        # the mass beyond n = 30 is the Poisson(9) survival function, ~7.9e-9
        mass = np.sum(np.abs(input_coeffs(Coherent(3.0), 30)) ** 2)
        np.testing.assert_allclose(1 - mass, poisson.sf(30, 9), rtol=1e-6)
        assert np.sum(np.abs(input_coeffs(Coherent(3.0), 32)) ** 2) > 1 - 1e-9

    def test_normalized_form(self):
        c = input_coeffs(Coherent(3.0), 120)
        n = np.arange(121)
        expected = np.exp(-4.5 + n * math.log(3.0) - 0.5 * np.array([math.lgamma(k + 1) for k in n]))
        np.testing.assert_allclose(c, expected, rtol=1e-12)
        np.testing.assert_allclose(np.sum(np.abs(c) ** 2), 1.0, atol=1e-14)

    def test_even_cat(self):
        c = input_coeffs(Cat(1.5, "even"), 20)
        np.testing.assert_array_equal(c[1::2], 0)

    def test_negative_cutoff(self):
        with pytest.raises(InvalidParameter):
            input_coeffs(Coherent(1.0), -1)


class TestPoint:
    def test_lambda_zero_standard(self):
        c = input_coeffs(Coherent(3.0), 60)
        pt = ndps_point(build_resource(S, 0.0), c, 0)
        np.testing.assert_allclose(pt.fidelity, math.exp(-9), rtol=1e-12)
        np.testing.assert_allclose(pt.prob, math.exp(-9), rtol=1e-12)

    def test_lambda_zero_reductions(self):
        # only the lowest Schmidt term survives; Bob holds the Fock state at that level
        c = input_coeffs(Coherent(3.0), 60)
        for kind, level in ((S, 0), (P, 0), (A, 1)):
            pt = ndps_point(build_resource(kind, 0.0), c, 0)
            np.testing.assert_allclose(pt.fidelity, abs(c[level]) ** 2, rtol=1e-12)

    def test_standard_near_ideal(self):
        (lam, fid), = ndps_fidelity_curve(S, Coherent(3.0), 0, [0.999])
        assert fid > 1 - 1e-4

    def test_conditioned_limits(self):
        # as lam -> 1 the weights (n+1) and n survive, leaving <w>^2 / <w^2> under the Poisson law
        curve = {k: dict(ndps_fidelity_curve(k, Coherent(3.0), 0, [0.9999])) for k in ResourceKind}
        np.testing.assert_allclose(curve[S][0.9999], 1.0, atol=1e-6)
        np.testing.assert_allclose(curve[P][0.9999], 100 / 109, atol=1e-3)
        np.testing.assert_allclose(curve[A][0.9999], 81 / 90, atol=1e-3)

    def test_undefined_when_impossible(self):
        # vacuum input cannot give k = 0 with the added resource
        pt = ndps_point(build_resource(A, 0.5), input_coeffs(Coherent(0.0), 10), 0)
        assert pt.prob == 0
        assert pt.fidelity is None

    @settings(max_examples=40, deadline=None)
    @given(
        kind=st.sampled_from(list(ResourceKind)),
        lam=st.floats(0.0, 0.9),
        alpha=st.floats(0.1, 3.0),
        k=st.integers(0, 8),
    )
    def test_normalized_output_and_bounds(self, kind, lam, alpha, k):
        c = input_coeffs(Coherent(alpha), 80)
        pt = ndps_point(build_resource(kind, lam), c, k)
        if pt.prob > 0:
            np.testing.assert_allclose(np.linalg.norm(pt.out_coeffs), 1.0, atol=1e-12)
            assert -1e-15 <= pt.fidelity <= 1 + 1e-12
        assert not pt.out_coeffs.flags.writeable


class TestDistribution:
    def test_poisson_at_lambda_zero(self):
        c = input_coeffs(Coherent(2.0), 50)
        dist = ndps_distribution(build_resource(S, 0.0), c, 20).probabilities()
        for k in range(21):
            np.testing.assert_allclose(dist[k], abs(c[k]) ** 2, rtol=1e-12, atol=1e-300)

    @pytest.mark.parametrize("kind", list(ResourceKind))
    @pytest.mark.parametrize("lam", [0.3, 0.8, 0.9])
    def test_completeness_matches_lattice(self, kind, lam):
        res = build_resource(kind, lam)
        c = input_coeffs(Coherent(3.0), 80)
        dist = ndps_distribution(res, c, 90)
        assert abs(dist.total_probability - 1) < 1e-9
        lattice = nd_lattice_probabilities(res, c)
        mine = dist.probabilities()
        assert set(lattice) <= set(mine)
        for k, p in lattice.items():
            assert abs(mine[k] - p) < 1e-15
        assert all(p.extended == (p.k < 0) for p in dist.points)
        assert dist.nonnegative_probability <= dist.total_probability

    def test_added_and_subtracted_differ(self):
        c = input_coeffs(Coherent(3.0), 80)
        pa = ndps_distribution(build_resource(A, 0.8), c, 90)
        ps = ndps_distribution(build_resource(P, 0.8), c, 90)
        assert abs(pa.probabilities()[0] - ps.probabilities()[0]) > 1e-3
        assert abs(pa.total_probability - 1) < 1e-9 and abs(ps.total_probability - 1) < 1e-9

    def test_bad_kmax(self):
        with pytest.raises(InvalidParameter):
            ndps_distribution(build_resource(S, 0.5), [1.0], -1)


class TestCurves:
    def test_k0_ordering(self):
        curves = {k: dict(ndps_fidelity_curve(k, Coherent(3.0), 0, MID)) for k in ResourceKind}
        for lam in MID:
            assert curves[A][lam] > curves[P][lam] > curves[S][lam]

    def test_k5_standard_wins_at_high_lambda(self):
        high = [0.9, 0.95]
        curves = {k: dict(ndps_fidelity_curve(k, Coherent(3.0), 5, high)) for k in ResourceKind}
        for lam in high:
            assert curves[S][lam] > max(curves[P][lam], curves[A][lam])

    def test_standard_monotone(self):
        grid = np.round(np.arange(0.05, 0.99, 0.02), 2)
        fids = [f for _, f in ndps_fidelity_curve(S, Coherent(3.0), 0, grid)]
        assert np.all(np.diff(fids) > 0)

    def test_empty_grid(self):
        with pytest.raises(InvalidParameter):
            ndps_fidelity_curve(S, Coherent(3.0), 0, [])
