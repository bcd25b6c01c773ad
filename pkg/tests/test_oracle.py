import math

import numpy as np
import pytest

from condtele import (
    Cat,
    Coherent,
    QuadratureSpec,
    ResourceKind,
    TruncationError,
    build_resource,
    integrate_plane,
)
from condtele.cli import ORACLE_TOL, run_oracle_check
from condtele.oracle import TruncatedKet, apply_transfer, ket, oracle_dim, oracle_point

S, P, A = ResourceKind.STANDARD, ResourceKind.SUBTRACTED, ResourceKind.ADDED


def test_seeded_equivalence_suite():
    rows, worst = run_oracle_check(200)
    assert len(rows) == 200
    kinds = {r[1] for r in rows}
    inputs = {r[2] for r in rows}
    lams = {r[3] for r in rows}
    gains = {r[4] for r in rows}
    assert kinds == {"standard", "subtracted"}
    assert inputs == {"coherent", "cat-even", "cat-odd"}
    assert lams == {0.3, 0.5, 0.8} and gains == {0.5, 1.0}
    assert worst < ORACLE_TOL


def test_lambda_zero_output_is_displaced_vacuum():
    res = build_resource(S, 0.0)
    alpha, beta, g = 1.2 - 0.3j, 0.4 + 0.9j, 0.7
    dim = 40
    out = apply_transfer(res, beta, g, ket(Coherent(alpha), dim))
    np.testing.assert_allclose(out.norm**2, math.exp(-abs(alpha - beta) ** 2) / math.pi, rtol=1e-12)
    # proportional to |g beta>
    target = ket(Coherent(g * beta), dim)
    np.testing.assert_allclose(abs(target.overlap(out)) ** 2, out.norm**2, rtol=1e-12)


def test_zero_outcome_unit_gain():
    lam = 0.6
    res = build_resource(S, lam)
    psi = ket(Coherent(0.8 + 0.2j), 80)
    out = apply_transfer(res, 0.0, 1.0, psi)
    n = np.arange(80)
    expected = math.sqrt((1 - lam**2) / math.pi) * lam**n * psi.coeffs
    np.testing.assert_allclose(out.coeffs, expected, atol=1e-15)


def test_ket_is_not_renormalized():
    k = TruncatedKet(np.array([0.3, 0.4]))
    assert k.norm == pytest.approx(0.5)
    assert k.dim == 2


def test_dim_too_small():
    with pytest.raises(TruncationError) as info:
        apply_transfer(build_resource(S, 0.8), 0.1, 1.0, ket(Coherent(0.1), 10))
    assert info.value.required_dim > 10


def test_default_dim_rule():
    res = build_resource(S, 0.5)
    assert oracle_dim(res, 2.25, 1.0) == 4 * (3 + 1) + res.cutoff + 1
    assert oracle_dim(build_resource(P, 0.8), 16.0, 16.0) == 4 * 32 + 75 + 1
    assert oracle_dim(build_resource(P, 0.8), 25.0, 25.0) == 256


def test_default_dim_covers_input():
    # small lambda, sizeable amplitude: the input support sets the dimension
    res = build_resource(S, 0.0)
    pt = oracle_point(res, Coherent(2.8), 0.0, 1.0)
    np.testing.assert_allclose(pt.prob_density, math.exp(-2.8**2) / math.pi, rtol=1e-12)


def test_undefined_fidelity_far_outcome():
    pt = oracle_point(build_resource(S, 0.0), Coherent(0.0), 40.0, 1.0, dim=64)
    assert pt.prob_density < 1e-300
    assert pt.fidelity is None


def test_fidelity_bounded_random_draws():
    rng = np.random.default_rng(1234)
    kinds = list(ResourceKind)
    resources = {}
    worst = 0.0
    for i in range(1000):
        kind = kinds[i % 3]
        lam = float(rng.choice([0.0, 0.2, 0.5, 0.7, 0.85]))
        res = resources.setdefault((kind, lam), build_resource(kind, lam))
        g = float(rng.uniform(0, 1.3))
        a, c, b = (complex(*rng.uniform(-2, 2, 2)) for _ in range(3))
        if i % 2:
            state, comp = Cat(a if abs(a) > 0.1 else 0.5, "odd"), Cat(c if abs(c) > 0.1 else 0.5, "odd")
        else:
            state, comp = Coherent(a), Coherent(c)
        pt = oracle_point(res, state, b, g, comp)
        assert pt.prob_density >= 0
        if pt.fidelity is not None:
            worst = max(worst, pt.fidelity)
    assert worst <= 1 + 1e-10


@pytest.mark.parametrize("kind", list(ResourceKind))
@pytest.mark.parametrize("alpha, beta", [(4.0, 4.0j), (-3 + 2j, 1.0), (0.5j, -2.5 - 2.5j)])
def test_dimension_stability(kind, alpha, beta):
    res = build_resource(kind, 0.85)
    state, comp = Coherent(alpha), Coherent(0.9 * alpha)
    base = oracle_point(res, state, beta, 0.9, comp)
    dim = oracle_dim(res, abs(alpha) ** 2, abs(beta) ** 2)
    big = oracle_point(res, state, beta, 0.9, comp, dim=2 * dim)
    assert abs(base.prob_density - big.prob_density) < 1e-9
    assert abs(base.fidelity - big.fidelity) < 1e-9


@pytest.mark.parametrize("kind", list(ResourceKind))
def test_povm_completeness(kind):
    res = build_resource(kind, 0.5)
    state = Coherent(1.0)
    spec = QuadratureSpec(order=24, centers=(1.0,), width=1 / math.sqrt(0.75), refine=False)

    def dens(beta):
        return oracle_point(res, state, beta, 1.0, dim=48).prob_density

    total, _ = integrate_plane(dens, spec, vectorized=False)
    assert abs(total - 1) < 1e-6
