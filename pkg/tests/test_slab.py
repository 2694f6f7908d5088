import cmath

import numpy as np
import pytest

from filmplasmon import (
    ConvergenceError,
    DomainError,
    SingularityError,
    SlabMode,
    closed_form_omega,
    decay_constant,
    drude_epsilon,
    tmm_residual,
    tmm_solve,
)


class TestResidual:
    def test_real_below_light_line_lossless(self):
        for w in (0.05, 0.1, 0.15, 0.19):
            assert abs(tmm_residual(w, 0.2, 0.05).imag) <= 1e-14

    def test_sign_change_brackets_the_mode(self):
        lo = tmm_residual(0.19, 0.2, 0.05).real
        hi = tmm_residual(0.2, 0.2, 0.05).real
        assert lo > 0.0 > hi

    def test_vanishing_film_leaves_outside_decay(self):
        w, k = 0.2, 0.3
        thin = tmm_residual(w, k, 1e-9)
        assert abs(thin - decay_constant(k, w)) <= 1e-6

    def test_light_line_keeps_only_interior_term(self):
        w = k = 0.2
        d = 0.05
        eps = drude_epsilon(w)
        kappa1 = cmath.sqrt(k * k - eps * w * w)
        expected = kappa1 / eps * cmath.tanh(kappa1 * d / 2.0)
        assert tmm_residual(w, k, d) == pytest.approx(expected, rel=1e-14)

    def test_validation(self):
        with pytest.raises(DomainError):
            tmm_residual(0.1, -1.0, 0.05)
        with pytest.raises(DomainError):
            tmm_residual(0.1, 0.2, 0.0)
        with pytest.raises(SingularityError):
            tmm_residual(1.0, 0.5, 0.1)


class TestSolve:
    def test_reference_mode(self):
        mode = tmm_solve(0.2, 0.05)
        assert isinstance(mode, SlabMode)
        assert mode.omega.imag == 0.0
        assert abs(mode.omega.real - 0.1999972885851765) <= 1e-9

    def test_mode_needs_negative_epsilon(self):
        # The bound even mode lives where the slab is metallic, so the
        # root stays below the plasma frequency whatever k is.
        for k in (0.5, 2.0, 5.0):
            mode = tmm_solve(k, 0.5)
            assert 0.0 < mode.omega.real < 1.0
            assert mode.omega.real < k

    def test_vanishing_film_hugs_the_light_line(self):
        mode = tmm_solve(0.3, 1e-6)
        assert abs(mode.omega.real - 0.3) <= 1e-6

    def test_kappa_identities(self):
        mode = tmm_solve(0.4, 0.1)
        w, k = mode.omega, mode.k
        eps = drude_epsilon(w)
        scale = k * k + abs(w) ** 2
        assert abs(mode.kappa_outside**2 - (k * k - w * w)) <= 1e-13 * scale
        scale_in = max(scale, abs(eps) * abs(w) ** 2)
        assert abs(mode.kappa_inside**2 - (k * k - eps * w * w)) <= 1e-13 * scale_in
        assert mode.kappa_outside.real > 0.0

    def test_thin_film_tracks_screened_closed_form(self):
        for k, d in ((0.1, 0.05), (0.2, 0.1), (0.3, 0.025)):
            mode = tmm_solve(k, d)
            rel = abs(mode.omega.real - closed_form_omega(k, d)) / mode.omega.real
            assert rel <= 2e-2

    def test_lossy_slab_is_damped(self):
        base = tmm_solve(0.2, 0.05)
        mode = tmm_solve(0.2, 0.05, nu=0.01, seed=base.omega)
        assert mode.omega.imag < 0.0
        assert abs(mode.omega.real - base.omega.real) < 1e-3

    def test_bad_seed_raises_convergence_error(self):
        from filmplasmon import RootConfig

        with pytest.raises(ConvergenceError):
            tmm_solve(0.2, 0.05, nu=0.01, seed=50.0, config=RootConfig(max_iter=2))

    def test_agreement_improves_as_film_thins(self):
        from filmplasmon import DrudeG, FilmParams, solve_point

        gaps = []
        for d in (0.1, 0.05, 0.025):
            film = FilmParams(thickness=d, g_model=DrudeG())
            worst = 0.0
            for k in np.linspace(0.05, 0.5, 10):
                k = float(k)
                pt = solve_point(k, film)
                mode = tmm_solve(k, d)
                worst = max(worst, abs(pt.omega - mode.omega) / abs(mode.omega))
            gaps.append(worst)
        assert gaps[2] < gaps[1] < gaps[0]
        assert gaps[0] <= 1e-2
