import numpy as np
import pytest

from latticeheat import (
    BoxDomain,
    Field,
    SpectralCoeffs,
    analyze,
    apply_M,
    eigenvalue,
    mode_table,
    step_linear_direct,
    synthesize,
)

from conftest import random_domain, random_field


class TestApplyM:
    def test_zero_field(self):
        d = BoxDomain((4,))
        assert np.all(apply_M(Field.zeros(d)).values == 0)

    def test_hand_stencil(self):
        d = BoxDomain((4,))
        out = apply_M(Field(d, [0, 1, 0, 0, 0]))
        np.testing.assert_allclose(out.values, [0, 0, 0.5, 0, 0])

    def test_sine_mode_is_eigenvector(self):
        d = BoxDomain((4,))
        h = Field(d, np.sin(np.pi * np.arange(5) / 4))
        h.values[[0, 4]] = 0.0
        out = apply_M(h)
        np.testing.assert_allclose(
            out.values, np.cos(np.pi / 4) * h.values, atol=1e-15
        )

    def test_rejects_nonzero_boundary(self):
        d = BoxDomain((4,))
        with pytest.raises(ValueError):
            apply_M(Field(d, [1, 0, 0, 0, 0]))

    def test_max_norm_nonexpansive(self, rng):
        for _ in range(20):
            d = random_domain(rng)
            h = random_field(rng, d)
            assert np.abs(apply_M(h).values).max() <= np.abs(h.values).max() + 1e-15


class TestEigenvalue:
    def test_minimal_domains(self):
        assert eigenvalue(BoxDomain((2,)), (1,)) == pytest.approx(0.0)
        assert eigenvalue(BoxDomain((2, 2)), (1, 1)) == pytest.approx(0.0)

    def test_1d_value(self):
        assert eigenvalue(BoxDomain((4,)), (1,)) == pytest.approx(
            0.7071067812, abs=1e-10
        )

    def test_rejects_non_interior_mode(self):
        with pytest.raises(ValueError):
            eigenvalue(BoxDomain((4,)), (0,))
        with pytest.raises(ValueError):
            eigenvalue(BoxDomain((4,)), (4,))

    def test_strictly_inside_unit_interval(self, rng):
        for _ in range(20):
            d = random_domain(rng, max_extent=8)
            for mode in d.interior_sites():
                assert abs(eigenvalue(d, mode)) < 1

    def test_eigen_relation_all_modes(self, rng):
        for _ in range(10):
            d = random_domain(rng, max_extent=8)
            table = mode_table(d)
            for mode in d.interior_sites():
                h = table.mode_field(mode)
                out = apply_M(h)
                np.testing.assert_allclose(
                    out.values,
                    eigenvalue(d, mode) * h.values,
                    rtol=0,
                    atol=1e-12,
                )


class TestAnalyzeSynthesize:
    def test_single_site_is_identity(self):
        d = BoxDomain((2,))
        B = analyze(Field(d, [0, 0.7, 0]))
        np.testing.assert_allclose(B.coeffs, [0.7], atol=1e-15)

    def test_pure_mode(self):
        d = BoxDomain((4,))
        a = mode_table(d).mode_field((1,))
        B = analyze(a)
        np.testing.assert_allclose(B.coeffs, [1, 0, 0], atol=1e-14)

    def test_matches_dense_solve(self, rng):
        # independent oracle: solve the full sine interpolation system
        d = BoxDomain((4,))
        a = random_field(rng, d)
        n = np.arange(1, 4)
        S = np.sin(np.outer(n, n) * np.pi / 4)
        expected = np.linalg.solve(S, a.interior())
        np.testing.assert_allclose(analyze(a).coeffs, expected, atol=1e-12)

    def test_dense_solve_oracle_random_domains(self, rng):
        for _ in range(10):
            d = random_domain(rng, max_extent=8)
            a = random_field(rng, d)
            # dense system over all (site, mode) pairs, lexicographic
            sites = list(d.interior_sites())
            modes = sites
            M = np.empty((len(sites), len(modes)))
            for i, n in enumerate(sites):
                for j, m in enumerate(modes):
                    M[i, j] = np.prod(
                        [
                            np.sin(mk * np.pi * nk / Nk)
                            for mk, nk, Nk in zip(m, n, d.extents)
                        ]
                    )
            expected = np.linalg.solve(M, a.interior().ravel())
            np.testing.assert_allclose(
                analyze(a).flat(), expected, atol=1e-10
            )

    def test_round_trip_field(self, rng):
        for _ in range(20):
            d = random_domain(rng, max_extent=8)
            a = random_field(rng, d)
            back = synthesize(analyze(a), 0)
            np.testing.assert_allclose(
                back.interior(), a.interior(), rtol=0, atol=1e-10
            )

    def test_round_trip_coeffs(self, rng):
        for _ in range(20):
            d = random_domain(rng, max_extent=8)
            B = SpectralCoeffs(d, rng.uniform(-1, 1, size=d.interior_shape))
            back = analyze(synthesize(B, 0))
            np.testing.assert_allclose(back.coeffs, B.coeffs, rtol=0, atol=1e-10)

    def test_single_eigenvalue_power(self):
        d = BoxDomain((4,))
        B = SpectralCoeffs(d, np.array([1.0, 0.0, 0.0]))
        h3 = synthesize(B, 3)
        expected = np.cos(np.pi / 4) ** 3 * np.sin(np.pi * np.arange(5) / 4)
        expected[[0, 4]] = 0.0
        np.testing.assert_allclose(h3.values, expected, atol=1e-14)

    def test_synthesize_one_step_matches_apply_M(self, rng):
        for _ in range(10):
            d = random_domain(rng, max_extent=8)
            B = SpectralCoeffs(d, rng.uniform(-1, 1, size=d.interior_shape))
            np.testing.assert_allclose(
                synthesize(B, 1).values,
                apply_M(synthesize(B, 0)).values,
                rtol=0,
                atol=1e-12,
            )


class TestStepLinearDirect:
    def test_zero_steps_is_identity(self, rng):
        d = random_domain(rng)
        a = random_field(rng, d)
        np.testing.assert_array_equal(step_linear_direct(a, 0).values, a.values)

    def test_zero_field(self):
        d = BoxDomain((3, 3))
        assert np.all(step_linear_direct(Field.zeros(d), 40).values == 0)

    def test_spectral_vs_direct(self, rng):
        for _ in range(15):
            d = random_domain(rng, max_extent=8)
            a = random_field(rng, d)
            B = analyze(a)
            for s in (1, 5, 25, 50):
                np.testing.assert_allclose(
                    synthesize(B, s).values,
                    step_linear_direct(a, s).values,
                    rtol=0,
                    atol=1e-9,
                )

    def test_decay(self, rng):
        d = random_domain(rng, max_extent=8)
        a = random_field(rng, d)
        table = mode_table(d)
        cmax = np.abs(table.eigenvalues).max()
        h200 = step_linear_direct(a, 200)
        limit = np.abs(a.values).max() * cmax**200 + 1e-12 * d.n_interior
        assert np.abs(h200.values).max() <= limit
