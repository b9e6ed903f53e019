import math

import numpy as np
import pytest

from torus_euler import (
    Diagnostics,
    EigenstateCoeffs,
    Grid,
    NonZeroMean,
    NumericalBlowup,
    RealField,
    SolverConfig,
    SolverState,
    SpectralField,
    admissibility_check,
    analyze,
    enstrophy,
    rhs,
    run,
    stability_experiment,
    step,
    synthesize_eigenstate,
)
from torus_euler.euler import band_limited_perturbation
from torus_euler.spectral import lp_norm


def _two_mode_state(grid, info, a1=0.2, a2=0.1):
    c = np.zeros((grid.n1, grid.n2), dtype=complex)
    m, n = info.k_coords[0]
    c[m % grid.n1, n % grid.n2] = a1 / 2
    c[-m % grid.n1, -n % grid.n2] = a1 / 2
    c[1, -1 % grid.n2] = a2 / 2
    c[-1 % grid.n1, 1] = a2 / 2
    return SpectralField(grid, c)


def test_rhs_zero_and_mean_guard(hex_grid):
    z = SpectralField(hex_grid, np.zeros((hex_grid.n1, hex_grid.n2), dtype=complex))
    assert np.max(np.abs(rhs(z).coeffs)) == 0.0
    bad = SpectralField(hex_grid, np.zeros((hex_grid.n1, hex_grid.n2), dtype=complex))
    bad.coeffs[0, 0] = 1.0
    with pytest.raises(NonZeroMean):
        rhs(bad)


def test_rhs_eigenstate_steady(hex_info, hex_grid, rng):
    c = EigenstateCoeffs(hex_info, tuple(rng.uniform(0.3, 1.5, 3)),
                         tuple(rng.uniform(0, 2 * math.pi, 3)))
    W = analyze(synthesize_eigenstate(c, hex_grid))
    r = rhs(W)
    assert math.sqrt(enstrophy(r)) <= 1e-10 * hex_info.lambda1 * enstrophy(W)


def test_rhs_plane_wave_steady(hex_grid):
    c = np.zeros((hex_grid.n1, hex_grid.n2), dtype=complex)
    c[5, -7 % hex_grid.n2] = 0.3
    c[-5 % hex_grid.n1, 7] = 0.3
    r = rhs(SpectralField(hex_grid, c))
    assert np.max(np.abs(r.coeffs)) < 1e-15


def test_step_preserves_structure(hex_info, hex_grid):
    state = SolverState(0.0, _two_mode_state(hex_grid, hex_info))
    cfg = SolverConfig(hex_grid, dt=1e-2, t_end=1.0)
    out = step(state, cfg)
    assert out.t == pytest.approx(1e-2)
    out.omega.validate()
    assert out.omega.coeffs[0, 0] == 0.0


def test_short_conservation(hex_info, hex_grid):
    cfg = SolverConfig(hex_grid, dt=1e-2, t_end=1.0, diag_stride=10)
    _, diag = run(cfg, _two_mode_state(hex_grid, hex_info))
    assert np.max(np.abs(diag.energy - diag.energy[0])) <= 1e-10 * diag.energy[0]
    assert np.max(np.abs(diag.enstrophy - diag.enstrophy[0])) <= 1e-10 * diag.enstrophy[0]
    assert np.max(np.abs(diag.mean_velocity)) <= 1e-12
    report = admissibility_check(diag)
    assert report.ok
    assert report.drifts["energy"] <= 1e-10


def test_diag_alignment_and_snapshots(hex_info, hex_grid):
    cfg = SolverConfig(hex_grid, dt=0.05, t_end=0.5, diag_stride=2,
                       snapshot_times=(0.0, 0.25, 0.5))
    snaps, diag = run(cfg, _two_mode_state(hex_grid, hex_info))
    assert [round(t / 0.05) % 2 for t in diag.t] == [0] * len(diag)
    assert [t for t, _ in snaps] == [0.0, 0.25, 0.5]
    assert snaps[0][1].samples.shape == (hex_grid.n1, hex_grid.n2)


def test_admissibility_negative_control(hex_info, hex_grid):
    cfg = SolverConfig(hex_grid, dt=1e-2, t_end=0.5, diag_stride=10)
    _, diag = run(cfg, _two_mode_state(hex_grid, hex_info))
    doctored = Diagnostics(
        t=diag.t, energy=diag.energy.copy(), enstrophy=diag.enstrophy,
        casimirs=diag.casimirs, mean_velocity=diag.mean_velocity,
        orbit_dist=diag.orbit_dist, pstar=diag.pstar, theta=diag.theta,
        e1_residual=diag.e1_residual, meta=diag.meta,
    )
    doctored.energy[-1] *= 1.0 + 1e-3
    report = admissibility_check(doctored)
    assert not report.ok
    assert "energy" in report.failed


def test_blowup_guard(hex_info, hex_grid):
    big = _two_mode_state(hex_grid, hex_info, a1=40.0, a2=30.0)
    cfg = SolverConfig(hex_grid, dt=2.0, t_end=40.0, diag_stride=1)
    with pytest.warns(UserWarning, match="advective"):
        with pytest.raises(NumericalBlowup) as err:
            run(cfg, big)
    assert err.value.diagnostics is not None
    assert len(err.value.diagnostics) >= 1


def test_cfl_warning(hex_info, hex_grid):
    state = _two_mode_state(hex_grid, hex_info, a1=5.0, a2=0.0)
    cfg = SolverConfig(hex_grid, dt=0.5, t_end=0.5, diag_stride=1)
    with pytest.warns(UserWarning, match="advective"):
        run(cfg, state)


def test_reversibility(hex_info, hex_basis):
    grid = Grid(hex_basis, 128, 128)
    c0 = _two_mode_state(grid, hex_info, a1=0.4, a2=0.2).coeffs
    cfg = SolverConfig(grid, dt=1e-2, t_end=2.0)
    state = SolverState(0.0, SpectralField(grid, c0.copy()))
    for _ in range(200):
        state = step(state, cfg)
    # integrating the sign-flipped tendency backwards equals forward
    # integration of the negated state, negated again at the end
    back = SolverState(0.0, SpectralField(grid, -state.omega.coeffs))
    for _ in range(200):
        back = step(back, cfg)
    err = np.linalg.norm(-back.omega.coeffs - c0) / np.linalg.norm(c0)
    assert err < 1e-6


def test_perturbation_properties(hex_info, hex_grid, rng):
    g = band_limited_perturbation(hex_grid, rng, 3 * hex_info.rho, 2.0)
    assert abs(lp_norm(g, 2.0) - 1.0) < 1e-12
    F = analyze(g)
    assert abs(F.coeffs[0, 0]) < 1e-15
    from torus_euler import modes

    t = modes(hex_grid)
    assert np.max(np.abs(F.coeffs[t.ksq > (3 * hex_info.rho) ** 2])) < 1e-15


def test_stability_experiment_zero_epsilon(hex_info, hex_basis):
    grid = Grid(hex_basis, 64, 64)
    ref = EigenstateCoeffs(hex_info, (1.0, 1.0, 1.0), (0.0, 0.0, 0.0))
    cfg = SolverConfig(grid, dt=1e-2, t_end=1.0, diag_stride=20)
    diag = stability_experiment(hex_basis, ref, 0.0, 1, 2.0, cfg)
    assert np.max(diag.orbit_dist) <= 1e-6
    assert diag.meta["seed"] == 1


def test_stability_experiment_tracks_theta(hex_info, hex_basis):
    grid = Grid(hex_basis, 64, 64)
    ref = EigenstateCoeffs(hex_info, (1.0, 1.0, 1.0), (0.0, 0.0, 0.0))
    cfg = SolverConfig(grid, dt=1e-2, t_end=0.5, diag_stride=10)
    diag = stability_experiment(hex_basis, ref, 1e-2, 3, 2.0, cfg)
    assert np.all(np.isfinite(diag.theta))
    drift = np.abs((diag.theta - diag.theta[0] + math.pi) % (2 * math.pi) - math.pi)
    assert np.max(drift) < 0.05
    assert np.max(diag.orbit_dist) < 0.1


def test_run_rejects_nonzero_mean(hex_grid):
    bad = RealField(hex_grid, np.ones((hex_grid.n1, hex_grid.n2)))
    cfg = SolverConfig(hex_grid, dt=1e-2, t_end=0.1)
    with pytest.raises(NonZeroMean):
        run(cfg, bad)


def test_config_validation(hex_grid):
    with pytest.raises(ValueError):
        SolverConfig(hex_grid, dt=-1.0, t_end=1.0)
    with pytest.raises(ValueError):
        SolverConfig(hex_grid, dt=1e-2, t_end=1.0, integrator="euler")
    with pytest.raises(ValueError):
        SolverConfig(hex_grid, dt=1e-2, t_end=1.0, dealias="half")
