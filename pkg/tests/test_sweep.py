import math

import numpy as np
import pytest

from filmplasmon import (
    ConvergenceError,
    DispersionPoint,
    DomainError,
    DrudeG,
    FilmParams,
    SlabMode,
    StateError,
    SweepRequest,
    SweepResult,
    TabulatedG,
    ZeroG,
    closed_form_omega,
    compare_tmm,
    sweep_dispersion,
)


def zero_request(**overrides):
    base = dict(
        k_min=0.1,
        k_max=2.0,
        n_points=20,
        film=FilmParams(thickness=1.0, g_model=ZeroG()),
    )
    base.update(overrides)
    return SweepRequest(**base)


class TestRequest:
    def test_validation(self):
        with pytest.raises(DomainError):
            zero_request(k_min=0.0)
        with pytest.raises(DomainError):
            zero_request(k_max=0.05)
        with pytest.raises(DomainError):
            zero_request(n_points=1)
        with pytest.raises(DomainError):
            zero_request(grid="cubic")

    def test_grid_endpoints_are_exact(self):
        lin = zero_request().k_values()
        assert lin[0] == 0.1 and lin[-1] == 2.0
        log = zero_request(grid="log").k_values()
        assert log[0] == 0.1 and log[-1] == 2.0
        assert np.all(np.diff(log) > 0.0)


class TestSweep:
    def test_matches_closed_form(self):
        res = sweep_dispersion(zero_request())
        assert len(res.points) == 20
        assert not res.failures
        for pt in res.points:
            assert pt.converged
            ref = closed_form_omega(pt.k, 1.0)
            assert abs(pt.omega.real - ref) / ref <= 1e-10

    def test_branch_is_continuous_and_monotone(self):
        res = sweep_dispersion(zero_request())
        omegas = [pt.omega.real for pt in res.points]
        ks = [pt.k for pt in res.points]
        for (w0, w1, k0, k1) in zip(omegas, omegas[1:], ks, ks[1:]):
            assert abs(w1 - w0) <= 5.0 * (k1 - k0)
            assert w1 >= w0

    def test_failures_partition_the_grid(self):
        # A table valid only on part of the branch fails cleanly outside it.
        film = FilmParams(
            thickness=1.0,
            g_model=TabulatedG(omega_knots=(0.3, 0.9), g_knots=(0.0, 0.0)),
        )
        req = zero_request(film=film)
        res = sweep_dispersion(req)
        assert res.points and res.failures
        assert len(res.points) + len(res.failures) == req.n_points
        grid = {float(k) for k in req.k_values()}
        covered = {pt.k for pt in res.points} | {f.k for f in res.failures}
        assert covered == grid
        for failure in res.failures:
            assert "TableRangeError" in failure.reason

    def test_nonconverged_points_are_reported_as_failures(self):
        from filmplasmon import ConstantG, RootConfig

        # One iteration is never enough here, so every point fails and the
        # sweep refuses to hand back an empty branch; the message carries
        # the per-point diagnosis.
        film = FilmParams(thickness=0.5, g_model=ConstantG(0.05))
        req = zero_request(film=film, n_points=5, config=RootConfig(max_iter=1))
        with pytest.raises(ConvergenceError, match="did not converge"):
            sweep_dispersion(req)

    def test_every_point_failing_raises(self):
        film = FilmParams(
            thickness=1.0,
            g_model=TabulatedG(omega_knots=(5.0, 6.0), g_knots=(0.0, 0.0)),
        )
        with pytest.raises(ConvergenceError):
            sweep_dispersion(zero_request(film=film))

    def test_lossy_drude_sweep(self):
        film = FilmParams(thickness=0.05, g_model=DrudeG(), nu=0.01)
        res = sweep_dispersion(
            zero_request(k_min=0.05, k_max=0.5, n_points=10, film=film)
        )
        assert not res.failures
        for pt in res.points:
            assert pt.omega.imag < 0.0

    def test_metadata_describes_the_run(self):
        res = sweep_dispersion(zero_request())
        md = res.metadata
        assert md["k_min"] == 0.1 and md["k_max"] == 2.0
        assert md["n_points"] == 20
        assert md["grid"] == "linear"
        assert md["thickness"] == 1.0
        assert md["g_model"] == "zero"
        assert md["tol_residual"] == 1e-12
        assert isinstance(md["version"], str)

    def test_metadata_records_table_shape(self):
        film = FilmParams(
            thickness=1.0,
            g_model=TabulatedG(omega_knots=(0.05, 2.0), g_knots=(0.0, 0.0)),
        )
        res = sweep_dispersion(zero_request(film=film, n_points=4, k_max=0.5))
        assert res.metadata["g_model"] == "tabulated"
        assert res.metadata["table_knots"] == 2


class TestCompareTmm:
    def test_rows_follow_points(self):
        film = FilmParams(thickness=0.05, g_model=DrudeG())
        req = zero_request(
            k_min=0.1, k_max=0.3, n_points=5, film=film, compare_tmm=True
        )
        res = sweep_dispersion(req)
        assert res.tmm is not None
        assert len(res.tmm) == len(res.points)
        rows = compare_tmm(res)
        assert [r.k for r in rows] == [pt.k for pt in res.points]
        for row in rows:
            assert row.rel_diff <= 1e-2

    def test_requires_slab_data(self):
        res = sweep_dispersion(zero_request())
        with pytest.raises(StateError):
            compare_tmm(res)

    def test_relative_difference_definition(self):
        pt = DispersionPoint(
            k=0.5,
            omega=1.0 + 0.0j,
            alpha=0j,
            g=0j,
            residual_abs=0.0,
            iterations=1,
            converged=True,
        )
        mode = SlabMode(
            k=0.5,
            omega=0.99 + 0.0j,
            kappa_outside=0j,
            kappa_inside=0j,
            residual_abs=0.0,
            iterations=1,
        )
        res = SweepResult(request=zero_request(), points=(pt,), failures=(), tmm=(mode,))
        rows = compare_tmm(res)
        assert rows[0].rel_diff == pytest.approx(0.01 / 0.99, rel=1e-12)
        assert rows[0].rel_diff == pytest.approx(0.010101, abs=1e-6)

    def test_skips_points_without_slab_solution(self):
        pt = DispersionPoint(
            k=0.5,
            omega=1.0 + 0.0j,
            alpha=0j,
            g=0j,
            residual_abs=0.0,
            iterations=1,
            converged=True,
        )
        res = SweepResult(
            request=zero_request(), points=(pt, pt), failures=(), tmm=(None, None)
        )
        assert compare_tmm(res) == ()
