"""Base-chart geometry: metric, connection, curvature, space forms."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sasakigeo.errors import DegeneratePlane, OutOfDomain
from sasakigeo.manifold import (
    ChartedMetric,
    SpaceFormSpec,
    TangentVec,
    christoffel_at,
    lower_riemann,
    metric_at,
    metric_deriv1_at,
    nabla_riemann_at,
    nabla_riemann_full,
    riemann_at,
    sectional_curvature,
    signature_at,
    space_form_chart,
    validate_space_form,
)
from sasakigeo.oracle import fd_christoffel, fd_riemann
from sasakigeo.sampling import sample_domain_point, sample_tangent_plane

from conftest import bumpy_chart, flat_chart


class TestMetricAt:
    def test_flat_metric_constant(self, flat2):
        assert np.allclose(metric_at(flat2, np.array([0.3, 0.7])), np.eye(2))

    def test_space_form_conformal_factor_one_at_origin(self):
        m = space_form_chart(SpaceFormSpec(2, 1, 1.0))
        assert np.allclose(metric_at(m, np.zeros(2)), np.diag([-1.0, 1.0]))

    def test_space_form_value_by_hand(self):
        # F = 1 + (1/4)(0.2^2) = 1.01, entry = 1/F^2
        m = space_form_chart(SpaceFormSpec(2, 0, 1.0))
        g = metric_at(m, np.array([0.2, 0.0]))
        assert g[0, 0] == pytest.approx(1.0 / 1.01**2, abs=1e-15)
        assert g[0, 0] == pytest.approx(0.9802960494069208, abs=1e-15)

    def test_out_of_domain_raises(self):
        m = space_form_chart(SpaceFormSpec(2, 0, -4.0))  # F = 1 - |x|^2
        with pytest.raises(OutOfDomain):
            metric_at(m, np.array([1.5, 0.0]))

    def test_degenerate_metric_raises(self):
        from sasakigeo.errors import DegenerateMetric

        m = ChartedMetric(dim=2, index=0, metric_fn=lambda x: np.diag([1.0, x[0]]))
        with pytest.raises(DegenerateMetric):
            signature_at(m, np.array([0.0, 0.3]))
        with pytest.raises(DegenerateMetric):
            christoffel_at(m, np.array([0.0, 0.3]))

    def test_asymmetric_metric_rejected(self):
        from sasakigeo.errors import DegenerateMetric

        bad = ChartedMetric(dim=2, index=0, metric_fn=lambda x: np.array([[1.0, 0.5], [0.2, 1.0]]))
        with pytest.raises(DegenerateMetric):
            metric_at(bad, np.zeros(2))

    @settings(max_examples=25, deadline=None)
    @given(st.lists(st.floats(-0.5, 0.5), min_size=2, max_size=2))
    def test_metric_symmetric_and_signature(self, coords):
        m = space_form_chart(SpaceFormSpec(2, 1, 1.0))
        x = np.asarray(coords)
        if not m.domain_fn(x):
            return
        g = metric_at(m, x)
        assert np.allclose(g, g.T, atol=1e-14)
        assert signature_at(m, x) == (1, 1)


class TestChristoffel:
    def test_flat_zero(self, flat2):
        assert np.allclose(christoffel_at(flat2, np.array([0.1, -0.2])).gamma, 0.0)

    def test_space_form_zero_at_origin(self):
        m = space_form_chart(SpaceFormSpec(3, 1, 2.0))
        assert np.abs(christoffel_at(m, np.zeros(3)).gamma).max() < 1e-15

    def test_against_fd_oracle_space_form(self):
        m = space_form_chart(SpaceFormSpec(2, 0, 1.0))
        x = np.array([0.2, 0.1])
        diff = christoffel_at(m, x).gamma - fd_christoffel(m.metric_fn, x).gamma
        assert np.abs(diff).max() < 1e-6

    def test_against_fd_oracle_generic_chart(self, rng):
        m = bumpy_chart(3, 1, seed=5)
        for _ in range(5):
            x = sample_domain_point(m, rng, box=0.4)
            diff = christoffel_at(m, x).gamma - fd_christoffel(m.metric_fn, x).gamma
            assert np.abs(diff).max() < 1e-6

    def test_lower_index_symmetry_exact(self, rng):
        m = bumpy_chart(2, 0, seed=1)
        x = sample_domain_point(m, rng, box=0.4)
        gamma = christoffel_at(m, x).gamma
        assert np.array_equal(gamma, np.swapaxes(gamma, 1, 2))

    def test_metric_compatibility(self, rng):
        # d_k g_ij - Gamma^m_ki g_mj - Gamma^m_kj g_im = 0
        for m, tol in [(space_form_chart(SpaceFormSpec(3, 1, -1.0)), 1e-9), (bumpy_chart(2, 0, 3), 1e-9)]:
            x = sample_domain_point(m, rng, box=0.4)
            g = metric_at(m, x)
            dg = metric_deriv1_at(m, x)
            gamma = christoffel_at(m, x).gamma
            nabla_g = (
                dg
                - np.einsum("mki,mj->kij", gamma, g)
                - np.einsum("mkj,im->kij", gamma, g)
            )
            assert np.abs(nabla_g).max() < tol

    def test_fd_fallback_matches_analytic(self, rng):
        spec = SpaceFormSpec(2, 0, 1.0)
        m = space_form_chart(spec)
        m_fd = ChartedMetric(dim=2, index=0, metric_fn=m.metric_fn, domain_fn=m.domain_fn)
        assert m_fd.uses_fd_derivatives
        x = sample_domain_point(m, rng)
        diff = christoffel_at(m, x).gamma - christoffel_at(m_fd, x).gamma
        assert np.abs(diff).max() < 1e-6


class TestRiemann:
    def test_flat_zero(self, flat2):
        assert np.allclose(riemann_at(flat2, np.array([0.4, 0.4])).r, 0.0)

    def test_space_form_pattern(self, rng):
        # R(X, u)u = eps c X for g(u, u) = eps and X g-orthogonal to u
        from sasakigeo.sampling import sample_fiber_vector

        for nu, eps, c in [(0, 1, 1.0), (1, -1, -1.0), (1, 1, 2.0)]:
            m = space_form_chart(SpaceFormSpec(3, nu, c))
            x = sample_domain_point(m, rng)
            u = sample_fiber_vector(m, x, eps, rng)
            g = metric_at(m, x)
            w = rng.normal(size=3)
            w = w - eps * float(w @ g @ u) * u
            got = riemann_at(m, x).apply(w, u, u)
            assert np.abs(got - eps * c * w).max() < 1e-8

    def test_symmetries_analytic(self, rng):
        m = space_form_chart(SpaceFormSpec(3, 1, -1.0))
        x = sample_domain_point(m, rng)
        rl = lower_riemann(m, x, riemann_at(m, x))
        assert np.abs(rl + np.einsum("ijkl->ijlk", rl)).max() < 1e-10
        assert np.abs(rl + np.einsum("ijkl->jikl", rl)).max() < 1e-10
        assert np.abs(rl - np.einsum("ijkl->klij", rl)).max() < 1e-10
        r = riemann_at(m, x).r
        assert np.abs(r + np.einsum("ijkl->iklj", r) + np.einsum("ijkl->iljk", r)).max() < 1e-10

    def test_against_fd_oracle_generic_chart(self, rng):
        m = bumpy_chart(2, 0, seed=7)
        x = sample_domain_point(m, rng, box=0.4)
        fd = fd_riemann(lambda y: christoffel_at(m, y).gamma, x)
        assert np.abs(riemann_at(m, x).r - fd.r).max() < 1e-5


class TestNablaRiemann:
    def test_flat_exactly_zero(self, flat2):
        x = np.array([0.2, -0.1])
        d = TangentVec(x, np.array([1.0, 2.0]))
        assert np.array_equal(nabla_riemann_at(flat2, x, d).r, np.zeros((2, 2, 2, 2)))

    def test_space_form_locally_symmetric(self, rng):
        m = space_form_chart(SpaceFormSpec(2, 0, 1.0))
        x = sample_domain_point(m, rng)
        d = TangentVec(x, rng.normal(size=2))
        assert np.allclose(nabla_riemann_at(m, x, d).r, 0.0)
        # without the short-circuit flag the FD path must still see ~0
        m_general = ChartedMetric(
            dim=2, index=0, metric_fn=m.metric_fn, deriv1_fn=m.deriv1_fn,
            deriv2_fn=m.deriv2_fn, domain_fn=m.domain_fn,
        )
        assert np.abs(nabla_riemann_at(m_general, x, d).r).max() < 1e-6

    def test_second_bianchi_generic_chart(self, rng):
        m = bumpy_chart(2, 0, seed=11)
        x = sample_domain_point(m, rng, box=0.35)
        full = nabla_riemann_full(m, x)  # [m, i, j, k, l]
        cyc = full + np.einsum("mijkl->kijlm", full) + np.einsum("mijkl->lijmk", full)
        assert np.abs(full).max() > 1e-3  # genuinely non-symmetric chart
        assert np.abs(cyc).max() < 1e-5


class TestSectionalCurvature:
    def test_flat_zero(self, flat2, rng):
        x = np.zeros(2)
        xv, yv = sample_tangent_plane(flat2, x, rng)
        assert sectional_curvature(flat2, x, xv, yv) == pytest.approx(0.0, abs=1e-12)

    def test_space_form_value(self, rng):
        m = space_form_chart(SpaceFormSpec(3, 0, 2.5))
        x = sample_domain_point(m, rng)
        xv, yv = sample_tangent_plane(m, x, rng)
        assert sectional_curvature(m, x, xv, yv) == pytest.approx(2.5, abs=1e-8)

    def test_indefinite_plane(self, rng):
        m = space_form_chart(SpaceFormSpec(3, 1, -1.0))
        x = sample_domain_point(m, rng)
        g = metric_at(m, x)
        for _ in range(100):
            xv = rng.normal(size=3)
            if float(xv @ g @ xv) < -0.1:
                break
        yv = rng.normal(size=3)
        K = sectional_curvature(m, x, TangentVec(x, xv), TangentVec(x, yv))
        assert K == pytest.approx(-1.0, abs=1e-8)

    def test_basis_change_invariance(self, rng):
        m = space_form_chart(SpaceFormSpec(3, 1, 2.0))
        mb = bumpy_chart(3, 0, seed=2)
        for chart in (m, mb):
            x = sample_domain_point(chart, rng, box=0.35)
            xv, yv = sample_tangent_plane(chart, x, rng)
            k0 = sectional_curvature(chart, x, xv, yv)
            a = rng.normal(size=(2, 2)) + 2 * np.eye(2)
            xv2 = TangentVec(x, a[0, 0] * xv.comps + a[0, 1] * yv.comps)
            yv2 = TangentVec(x, a[1, 0] * xv.comps + a[1, 1] * yv.comps)
            assert sectional_curvature(chart, x, xv2, yv2) == pytest.approx(k0, abs=1e-8)

    def test_degenerate_plane_raises(self, flat2):
        x = np.zeros(2)
        v = TangentVec(x, np.array([1.0, 0.0]))
        with pytest.raises(DegeneratePlane):
            sectional_curvature(flat2, x, v, v)


class TestSignature:
    def test_euclidean(self):
        m = flat_chart(3, 0)
        assert signature_at(m, np.zeros(3)) == (3, 0)

    def test_lorentzian_space_form(self, rng):
        m = space_form_chart(SpaceFormSpec(3, 1, 0.5))
        assert signature_at(m, sample_domain_point(m, rng)) == (2, 1)


class TestSpaceFormChart:
    @pytest.mark.parametrize("n,nu,c", [(2, 0, 0.0), (2, 0, 1.0), (3, 1, -1.0), (3, 0, 2.5), (2, 1, 1.0)])
    def test_validation(self, n, nu, c):
        spec = SpaceFormSpec(n, nu, c)
        m = space_form_chart(spec)
        dev = validate_space_form(m, spec, np.random.default_rng(1), num_points=10, planes_per_point=2)
        assert dev < 1e-8

    def test_flat_spec_is_euclidean(self):
        m = space_form_chart(SpaceFormSpec(2, 0, 0.0))
        assert np.allclose(metric_at(m, np.array([0.3, -0.4])), np.eye(2))

    def test_analytic_derivatives_match_fd(self, rng):
        m = space_form_chart(SpaceFormSpec(3, 1, -1.0))
        x = sample_domain_point(m, rng)
        h = 1e-5
        for k in range(3):
            e = np.zeros(3)
            e[k] = h
            fd = (m.metric_fn(x + e) - m.metric_fn(x - e)) / (2 * h)
            assert np.abs(m.deriv1_fn(x)[k] - fd).max() < 1e-9
