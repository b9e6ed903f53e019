"""First-eigenspace states as amplitude/phase tuples and their translation orbits.

A state is w(x) = sum_i A_i cos(2 pi k_i . x + alpha_i) over one wavevector
per antipodal pair of shortest dual vectors.  Translating the torus only
shifts the phases, so orbit membership reduces to amplitude equality plus,
in the six-dimensional case, one scalar phase invariant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import BadExponent, GridTooCoarse, MixedEigenspace, NonZeroMean
from .lattice import EigenspaceInfo, classify_eigenspace
from .spectral import Grid, RealField, SpectralField, analyze, synthesize

__all__ = [
    "EigenstateCoeffs",
    "OrbitInvariant",
    "circ_dist",
    "synthesize_eigenstate",
    "translate_coeffs",
    "orbit_invariant",
    "same_orbit",
    "solve_translation",
    "orbit_distance",
    "project_to_e1",
]

DEFAULT_ORBIT_TOL = 1e-8

_TWO_PI = 2.0 * math.pi


def _wrap_phase(a: float) -> float:
    return float(a) % _TWO_PI


def circ_dist(a: float, b: float) -> float:
    """Distance between two angles on the circle, in [0, pi]."""
    return abs((a - b + math.pi) % _TWO_PI - math.pi)


@dataclass(frozen=True)
class EigenstateCoeffs:
    """Amplitudes A_i >= 0 and phases alpha_i in [0, 2 pi), one pair per mode."""

    info: EigenspaceInfo
    amps: tuple[float, ...]
    phases: tuple[float, ...]

    def __post_init__(self):
        if len(self.amps) != self.info.npairs or len(self.phases) != self.info.npairs:
            raise ValueError(
                f"expected {self.info.npairs} amplitude/phase pairs, "
                f"got {len(self.amps)}/{len(self.phases)}"
            )
        amps = tuple(float(a) for a in self.amps)
        if any(a < 0 or not math.isfinite(a) for a in amps):
            raise ValueError(f"amplitudes must be finite and nonnegative: {amps}")
        phases = tuple(_wrap_phase(p) if a > 0 else 0.0 for a, p in zip(amps, self.phases))
        object.__setattr__(self, "amps", amps)
        object.__setattr__(self, "phases", phases)


@dataclass(frozen=True)
class OrbitInvariant:
    """Complete translation-orbit label: amplitudes, plus for the 6D case the
    complex invariant A1 A2 A3 exp(i (alpha1 + alpha2 - alpha3))."""

    amps: tuple[float, ...]
    phase: complex | None


def _check_same_space(c: EigenstateCoeffs, other: EigenstateCoeffs):
    if not c.info.compatible(other.info):
        raise MixedEigenspace("coefficient tuples live on different eigenspaces")


def _mode_indices(info: EigenspaceInfo, grid: Grid) -> list[tuple[int, int]]:
    if grid.basis != info.basis:
        raise MixedEigenspace("grid belongs to a different torus than the eigenspace")
    out = []
    for m, n in info.k_coords:
        if abs(m) > grid.n1 // 2 - 1 or abs(n) > grid.n2 // 2 - 1:
            raise GridTooCoarse(
                f"mode ({m}, {n}) not resolvable on a {grid.n1}x{grid.n2} grid"
            )
        out.append((m % grid.n1, n % grid.n2))
    return out


def synthesize_eigenstate(c: EigenstateCoeffs, grid: Grid) -> RealField:
    """Sample sum_i A_i cos(2 pi k_i . x + alpha_i) by placing its modes."""
    idx = _mode_indices(c.info, grid)
    coeffs = np.zeros((grid.n1, grid.n2), dtype=complex)
    for (i1, i2), a, al in zip(idx, c.amps, c.phases):
        half = 0.5 * a * complex(math.cos(al), math.sin(al))
        coeffs[i1, i2] += half
        coeffs[-i1 % grid.n1, -i2 % grid.n2] += half.conjugate()
    return synthesize(SpectralField(grid, coeffs))


def translate_coeffs(c: EigenstateCoeffs, p) -> EigenstateCoeffs:
    """Coefficients of w(. - p): each phase drops by 2 pi k_i . p."""
    p = np.asarray(p, dtype=float)
    phases = tuple(
        al - _TWO_PI * (k[0] * p[0] + k[1] * p[1])
        for k, al in zip(c.info.k, c.phases)
    )
    return EigenstateCoeffs(c.info, c.amps, phases)


def orbit_invariant(c: EigenstateCoeffs) -> OrbitInvariant:
    if c.info.dim != 6:
        return OrbitInvariant(c.amps, None)
    prod = c.amps[0] * c.amps[1] * c.amps[2]
    theta = c.phases[0] + c.phases[1] - c.phases[2]
    return OrbitInvariant(c.amps, prod * complex(math.cos(theta), math.sin(theta)))


def _theta(c: EigenstateCoeffs) -> float:
    return _wrap_phase(c.phases[0] + c.phases[1] - c.phases[2])


def same_orbit(c: EigenstateCoeffs, other: EigenstateCoeffs,
               tol: float = DEFAULT_ORBIT_TOL) -> bool:
    """Whether two states are translates of each other.

    Ordered amplitudes must agree; for dim 6 the phase combination
    alpha1 + alpha2 - alpha3 must also agree (circularly) whenever all
    three amplitudes are active.
    """
    _check_same_space(c, other)
    if any(abs(a - b) > tol for a, b in zip(c.amps, other.amps)):
        return False
    if c.info.dim == 6:
        prod_a = c.amps[0] * c.amps[1] * c.amps[2]
        prod_b = other.amps[0] * other.amps[1] * other.amps[2]
        if prod_a > tol and prod_b > tol:
            return circ_dist(_theta(c), _theta(other)) <= tol
    return True


def solve_translation(c: EigenstateCoeffs, other: EigenstateCoeffs,
                      tol: float = DEFAULT_ORBIT_TOL):
    """Find p with translate_coeffs(c, p) matching ``other``, or None.

    This is the constructive counterpart of same_orbit: phases of the
    active modes define a linear system for p via k_i . p, and for dim 6
    the third mode's phase must be consistent with the solution of the
    first two (the wavevectors satisfy k3 = k1 + k2).
    """
    _check_same_space(c, other)
    if any(abs(a - b) > tol for a, b in zip(c.amps, other.amps)):
        return None
    active = [i for i in range(c.info.npairs)
              if min(c.amps[i], other.amps[i]) > tol]
    # target: 2 pi k_i . p == alpha_i - alpha_i' (mod 2 pi) for active i
    delta = {i: _wrap_phase(c.phases[i] - other.phases[i]) for i in active}
    if not active:
        return np.zeros(2)
    if len(active) == 1:
        i = active[0]
        k = np.asarray(c.info.k[i])
        p = (delta[i] / _TWO_PI) * k / (k @ k)
    else:
        i, j = active[0], active[1]
        kmat = np.array([c.info.k[i], c.info.k[j]], dtype=float)
        p = np.linalg.solve(kmat, [delta[i] / _TWO_PI, delta[j] / _TWO_PI])
    shifted = translate_coeffs(c, p)
    for i in active:
        if circ_dist(shifted.phases[i], other.phases[i]) > tol:
            return None
    return p


def _cell_coords(p: np.ndarray, info: EigenspaceInfo) -> tuple[float, float]:
    """Fractional coordinates of p in the fundamental cell."""
    from .lattice import dual_basis

    db = dual_basis(info.basis)
    return (
        float(np.dot(db.xi_star, p)) % 1.0,
        float(np.dot(db.eta_star, p)) % 1.0,
    )


def _wrap_to_cell(p: np.ndarray, info: EigenspaceInfo) -> np.ndarray:
    s, t = _cell_coords(p, info)
    return s * np.asarray(info.basis.xi) + t * np.asarray(info.basis.eta)


def _orbit_distance_l2(f: RealField, c: EigenstateCoeffs) -> tuple[float, np.ndarray]:
    """Exact translation-minimized L2 distance.

    In mode space a translation is a per-mode phase, so the squared
    distance splits into a translation-independent residual plus one
    cosine per active mode; only the 6D case (where the third phase is
    tied to the first two) needs a search, and then only over a 2-torus
    of phase angles.
    """
    grid = f.grid
    idx = _mode_indices(c.info, grid)
    F = analyze(f)
    power = np.abs(F.coeffs) ** 2
    # power off the eigenspace modes, summed without cancellation
    for i1, i2 in idx:
        power[i1, i2] = 0.0
        power[-i1 % grid.n1, -i2 % grid.n2] = 0.0
    residual_power = float(np.sum(power))

    amps = np.array(c.amps)
    raw = np.array([F.coeffs[i1, i2] for i1, i2 in idx])
    z = raw * np.exp(-1j * np.array(c.phases))
    r = np.abs(z)
    beta = np.angle(z)

    w = amps * r  # cosine weights
    if c.info.dim < 6:
        t_opt = -beta
    elif np.min(w) == 0.0:
        # a silent mode decouples the phases: align the active ones exactly
        t12 = np.array([-beta[0], -beta[1]])
        if w[2] > 0.0:
            if w[0] == 0.0:
                t12[0] = -beta[2] - t12[1]
            elif w[1] == 0.0:
                t12[1] = -beta[2] - t12[0]
        t_opt = np.array([t12[0], t12[1], t12[0] + t12[1]])
    else:
        def gain(t1, t2):
            return (w[0] * np.cos(beta[0] + t1) + w[1] * np.cos(beta[1] + t2)
                    + w[2] * np.cos(beta[2] + t1 + t2))

        nc = 64
        tt = np.arange(nc) * _TWO_PI / nc
        t1g, t2g = np.meshgrid(tt, tt, indexing="ij")
        coarse = gain(t1g, t2g)
        best = np.argmax(coarse)
        t0 = np.array([t1g.ravel()[best], t2g.ravel()[best]])
        res = minimize(lambda t: -gain(t[0], t[1]), t0, method="Nelder-Mead",
                       options={"maxiter": 200, "xatol": 1e-12, "fatol": 1e-14})
        tbest = np.array(res.x) if -res.fun >= coarse.ravel()[best] else t0
        # Newton-polish the stationary point; the simplex alone leaves an
        # argmin error that enters the distance linearly
        gbest = gain(tbest[0], tbest[1])
        for _ in range(6):
            s0 = w[0] * math.sin(beta[0] + tbest[0])
            s1 = w[1] * math.sin(beta[1] + tbest[1])
            s2 = w[2] * math.sin(beta[2] + tbest[0] + tbest[1])
            c0 = w[0] * math.cos(beta[0] + tbest[0])
            c1 = w[1] * math.cos(beta[1] + tbest[1])
            c2 = w[2] * math.cos(beta[2] + tbest[0] + tbest[1])
            grad = np.array([-s0 - s2, -s1 - s2])
            hess = np.array([[-c0 - c2, -c2], [-c2, -c1 - c2]])
            det = hess[0, 0] * hess[1, 1] - hess[0, 1] * hess[1, 0]
            if abs(det) < 1e-12 * (np.sum(w) ** 2 + 1e-300):
                break
            trial = tbest - np.linalg.solve(hess, grad)
            gtrial = gain(trial[0], trial[1])
            if not (gtrial >= gbest - 1e-12 * (np.sum(w) + 1.0)):
                break
            if np.max(np.abs(trial - tbest)) < 1e-15:
                tbest, gbest = trial, gtrial
                break
            tbest, gbest = trial, gtrial
        t_opt = np.array([tbest[0], tbest[1], tbest[0] + tbest[1]])

    # per-mode differences stay nonnegative, so a near-perfect match is not
    # lost to cancellation against the total power
    target = 0.5 * amps * np.exp(1j * (np.array(c.phases) - t_opt))
    dist_sq = grid.area * (residual_power + 2.0 * float(np.sum(np.abs(raw - target) ** 2)))

    # recover a translation realizing the optimal phases
    act = amps > 0
    nact = int(np.count_nonzero(act))
    if nact == 0:
        p = np.zeros(2)
    elif nact == 1:
        i = int(np.nonzero(act)[0][0])
        k = np.asarray(c.info.k[i])
        p = (-beta[i] / _TWO_PI) * k / (k @ k)
    else:
        ii = np.nonzero(act)[0][:2]
        kmat = np.array([c.info.k[ii[0]], c.info.k[ii[1]]], dtype=float)
        p = np.linalg.solve(kmat, t_opt[ii] / _TWO_PI)
    return math.sqrt(dist_sq), _wrap_to_cell(p, c.info)


def orbit_distance(f: RealField, c: EigenstateCoeffs,
                   p_norm: float = 2.0) -> tuple[float, np.ndarray]:
    """Minimum L^p distance from f to the translation orbit of the state c,
    together with a minimizing translation in the fundamental cell.

    p_norm = 2 uses the exact spectral form; other exponents use a 32x32
    coarse scan of the cell followed by Nelder-Mead refinement.
    """
    if p_norm < 1:
        raise BadExponent(f"p_norm must be >= 1, got {p_norm}")
    if p_norm == 2:
        return _orbit_distance_l2(f, c)

    grid = f.grid
    _mode_indices(c.info, grid)  # resolvability check
    mcoords = np.array(c.info.k_coords, dtype=float)
    y1 = np.arange(grid.n1)[:, None] / grid.n1
    y2 = np.arange(grid.n2)[None, :] / grid.n2
    cos_parts, sin_parts = [], []
    for (m, n), a, al in zip(mcoords, c.amps, c.phases):
        theta = _TWO_PI * (m * y1 + n * y2) + al
        cos_parts.append(a * np.cos(theta))
        sin_parts.append(a * np.sin(theta))

    cell = grid.cell

    def objective(st):
        # w(. - p) for p = s xi + t eta; k_i . p = m_i s + n_i t
        w = np.zeros((grid.n1, grid.n2))
        for (m, n), cp, sp in zip(mcoords, cos_parts, sin_parts):
            d = _TWO_PI * (m * st[0] + n * st[1])
            w += cp * math.cos(d) + sp * math.sin(d)
        return float(np.sum(np.abs(f.samples - w) ** p_norm)) * cell

    nc = 32
    grid_pts = [(i / nc, j / nc) for i in range(nc) for j in range(nc)]
    vals = [objective(st) for st in grid_pts]
    best = int(np.argmin(vals))
    res = minimize(objective, np.array(grid_pts[best]), method="Nelder-Mead",
                   options={"maxiter": 200, "xatol": 1e-10, "fatol": 1e-30})
    if res.fun <= vals[best]:
        st, val = res.x, float(res.fun)
    else:
        st, val = np.array(grid_pts[best]), vals[best]
    p = (st[0] % 1.0) * np.asarray(c.info.basis.xi) + (st[1] % 1.0) * np.asarray(c.info.basis.eta)
    return val ** (1.0 / p_norm), p


def project_to_e1(f: RealField) -> tuple[EigenstateCoeffs, float]:
    """Amplitude/phase content of f on the first eigenspace, plus the L2 residual."""
    info = classify_eigenspace(f.grid.basis)
    idx = _mode_indices(info, f.grid)
    F = analyze(f)
    peak = float(np.max(np.abs(F.coeffs)))
    if abs(F.coeffs[0, 0]) > 1e-12 * max(1.0, peak):
        raise NonZeroMean(f"zero mode is {F.coeffs[0, 0]:.3e}")
    raw = [F.coeffs[i1, i2] for i1, i2 in idx]
    amps = [2.0 * abs(z) for z in raw]
    floor = 1e-12 * max(amps, default=0.0)
    pairs = [(a, _wrap_phase(float(np.angle(z)))) if a > floor else (0.0, 0.0)
             for a, z in zip(amps, raw)]
    total_power = float(np.sum(np.abs(F.coeffs) ** 2))
    mode_power = sum(2.0 * abs(z) ** 2 for z in raw)
    residual = math.sqrt(f.grid.area * max(total_power - mode_power, 0.0))
    coeffs = EigenstateCoeffs(info, tuple(a for a, _ in pairs), tuple(p for _, p in pairs))
    return coeffs, residual
