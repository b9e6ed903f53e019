"""Fourier representation of mean-zero fields on a lattice torus.

Sampling and indexing live in lattice coordinates: the unit cell [0,1)^2 is
sampled on an n1 x n2 grid and transformed with an ordinary 2D FFT, so one
rectangular transform serves every torus shape.  Geometry enters only
through the per-mode wavevector k = m xi* + n eta*, which carries the
Laplacian eigenvalue 4 pi^2 |k|^2, the Green multiplier, and the Cartesian
derivative factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BadExponent, NonZeroMean, ShapeMismatch
from .lattice import LatticeBasis, classify_eigenspace, dual_basis

__all__ = [
    "Grid",
    "RealField",
    "SpectralField",
    "ModeTable",
    "modes",
    "sample_points",
    "analyze",
    "synthesize",
    "project_mean_zero",
    "random_mean_zero_field",
    "green_apply",
    "laplacian_apply",
    "velocity_from_vorticity",
    "energy",
    "enstrophy",
    "lp_norm",
    "casimir",
    "energy_enstrophy_gap",
]

MEAN_TOL = 1e-12


@dataclass(frozen=True)
class Grid:
    """Uniform n1 x n2 sampling of the unit cell of a lattice torus."""

    basis: LatticeBasis
    n1: int
    n2: int

    def __post_init__(self):
        for n in (self.n1, self.n2):
            if n < 16 or n % 2 != 0:
                raise ValueError(f"grid sides must be even and >= 16, got {n}")

    @property
    def area(self) -> float:
        return self.basis.area

    @property
    def cell(self) -> float:
        """Quadrature weight of one sample point."""
        return self.basis.area / (self.n1 * self.n2)


@dataclass
class RealField:
    """Scalar samples on a grid, row-major over (j1, j2)."""

    grid: Grid
    samples: np.ndarray

    def copy(self) -> "RealField":
        return RealField(self.grid, self.samples.copy())

    def validate(self):
        if self.samples.shape != (self.grid.n1, self.grid.n2):
            raise ShapeMismatch(
                f"samples {self.samples.shape} vs grid ({self.grid.n1}, {self.grid.n2})"
            )
        if not np.all(np.isfinite(self.samples)):
            raise ValueError("field contains non-finite samples")


@dataclass
class SpectralField:
    """Complex mode coefficients in FFT layout; coeff (0,0) is the mean."""

    grid: Grid
    coeffs: np.ndarray

    def copy(self) -> "SpectralField":
        return SpectralField(self.grid, self.coeffs.copy())

    def validate(self, hermitian_tol: float = 1e-12):
        if self.coeffs.shape != (self.grid.n1, self.grid.n2):
            raise ShapeMismatch(
                f"coeffs {self.coeffs.shape} vs grid ({self.grid.n1}, {self.grid.n2})"
            )
        flipped = np.conj(self.coeffs[_flip_index(self.grid.n1)][:, _flip_index(self.grid.n2)])
        err = np.max(np.abs(self.coeffs - flipped))
        scale = np.max(np.abs(self.coeffs)) + 1e-300
        if err > hermitian_tol * scale:
            raise ValueError(f"coefficients are not Hermitian (err {err:.2e})")
        if abs(self.coeffs[0, 0]) > hermitian_tol * scale:
            raise ValueError(f"zero mode is {self.coeffs[0, 0]:.2e}, field is not mean-zero")


def _flip_index(n: int) -> np.ndarray:
    """Index permutation taking mode m to mode -m in FFT layout."""
    return (-np.arange(n)) % n


@dataclass(frozen=True)
class ModeTable:
    """Per-mode arrays shared by all fields on one grid."""

    m: np.ndarray        # integer mode index along xi*
    n: np.ndarray        # integer mode index along eta*
    kx: np.ndarray       # Cartesian wavevector components
    ky: np.ndarray
    ksq: np.ndarray      # |k|^2
    inv_lap: np.ndarray  # 1/(4 pi^2 |k|^2), zero at the origin
    dx: np.ndarray       # 2 pi i k_x with the unpaired Nyquist lines zeroed
    dy: np.ndarray
    dealias: np.ndarray  # boolean two-thirds mask


@lru_cache(maxsize=64)
def modes(grid: Grid) -> ModeTable:
    n1, n2 = grid.n1, grid.n2
    m = np.fft.fftfreq(n1, 1.0 / n1).astype(np.int64)
    n = np.fft.fftfreq(n2, 1.0 / n2).astype(np.int64)
    mm, nn = np.meshgrid(m, n, indexing="ij")
    db = dual_basis(grid.basis)
    kx = mm * db.xi_star[0] + nn * db.eta_star[0]
    ky = mm * db.xi_star[1] + nn * db.eta_star[1]
    ksq = kx * kx + ky * ky
    inv_lap = np.zeros_like(ksq)
    nonzero = ksq > 0
    inv_lap[nonzero] = 1.0 / (4.0 * math.pi**2 * ksq[nonzero])
    # The Nyquist line has no conjugate partner, so odd derivatives of a
    # real field are not representable there; drop it from the multipliers.
    ny = (mm != -n1 // 2) & (nn != -n2 // 2)
    dx = 2.0j * math.pi * kx * ny
    dy = 2.0j * math.pi * ky * ny
    dealias = (np.abs(mm) <= (n1 - 1) // 3) & (np.abs(nn) <= (n2 - 1) // 3)
    for a in (mm, nn, kx, ky, ksq, inv_lap, dx, dy, dealias):
        a.setflags(write=False)
    return ModeTable(mm, nn, kx, ky, ksq, inv_lap, dx, dy, dealias)


def sample_points(grid: Grid) -> tuple[np.ndarray, np.ndarray]:
    """Cartesian coordinates of the sample points x = (j1/n1) xi + (j2/n2) eta."""
    y1 = np.arange(grid.n1) / grid.n1
    y2 = np.arange(grid.n2) / grid.n2
    yy1, yy2 = np.meshgrid(y1, y2, indexing="ij")
    xi, eta = grid.basis.xi, grid.basis.eta
    return yy1 * xi[0] + yy2 * eta[0], yy1 * xi[1] + yy2 * eta[1]


def analyze(f: RealField) -> SpectralField:
    """Forward transform; coeff (m,n) multiplies exp(2 pi i k . x)."""
    if f.samples.shape != (f.grid.n1, f.grid.n2):
        raise ShapeMismatch(f"samples {f.samples.shape} on {f.grid.n1}x{f.grid.n2} grid")
    c = np.fft.fft2(f.samples) / (f.grid.n1 * f.grid.n2)
    return SpectralField(f.grid, c)


def synthesize(F: SpectralField) -> RealField:
    """Inverse transform to real samples (imaginary part is discarded)."""
    if F.coeffs.shape != (F.grid.n1, F.grid.n2):
        raise ShapeMismatch(f"coeffs {F.coeffs.shape} on {F.grid.n1}x{F.grid.n2} grid")
    s = np.fft.ifft2(F.coeffs) * (F.grid.n1 * F.grid.n2)
    return RealField(F.grid, np.ascontiguousarray(s.real))


def project_mean_zero(f: RealField) -> RealField:
    """Subtract the sample mean."""
    return RealField(f.grid, f.samples - f.samples.mean())


def random_mean_zero_field(grid: Grid, rng: np.random.Generator,
                           kmax: float | None = None) -> RealField:
    """Gaussian random field with zero mean, optionally band-limited to |k| <= kmax."""
    f = RealField(grid, rng.standard_normal((grid.n1, grid.n2)))
    F = analyze(f)
    F.coeffs[0, 0] = 0.0
    if kmax is not None:
        F.coeffs[modes(grid).ksq > kmax * kmax] = 0.0
    return synthesize(F)


def _require_mean_zero(F: SpectralField):
    if abs(F.coeffs[0, 0]) > MEAN_TOL:
        raise NonZeroMean(f"zero mode is {F.coeffs[0, 0]:.3e}")


def _as_spectral(field) -> SpectralField:
    return field if isinstance(field, SpectralField) else analyze(field)


def _as_real(field) -> RealField:
    return field if isinstance(field, RealField) else synthesize(field)


def green_apply(F: SpectralField) -> SpectralField:
    """Inverse of minus the Laplacian on mean-zero fields (diagonal in modes)."""
    _require_mean_zero(F)
    return SpectralField(F.grid, F.coeffs * modes(F.grid).inv_lap)


def laplacian_apply(F: SpectralField) -> SpectralField:
    """Minus the Laplacian: multiply each mode by 4 pi^2 |k|^2."""
    t = modes(F.grid)
    return SpectralField(F.grid, F.coeffs * (4.0 * math.pi**2 * t.ksq))


def velocity_from_vorticity(omega) -> tuple[RealField, RealField]:
    """Divergence-free velocity (d2 psi, -d1 psi) with psi the stream function."""
    F = _as_spectral(omega)
    _require_mean_zero(F)
    t = modes(F.grid)
    psi = F.coeffs * t.inv_lap
    v1 = synthesize(SpectralField(F.grid, psi * t.dy))
    v2 = synthesize(SpectralField(F.grid, -(psi * t.dx)))
    return v1, v2


def energy(omega) -> float:
    """Kinetic energy: half the pairing of vorticity with its stream function."""
    F = _as_spectral(omega)
    _require_mean_zero(F)
    t = modes(F.grid)
    return 0.5 * F.grid.area * float(np.sum(np.abs(F.coeffs) ** 2 * t.inv_lap))


def enstrophy(omega) -> float:
    """Integral of the squared vorticity."""
    F = _as_spectral(omega)
    return F.grid.area * float(np.sum(np.abs(F.coeffs) ** 2))


def lp_norm(field, p: float) -> float:
    """L^p norm by cell quadrature; exact only below the Nyquist limit for even p."""
    if p < 1:
        raise BadExponent(f"p must be >= 1, got {p}")
    f = _as_real(field)
    if math.isinf(p):
        return float(np.max(np.abs(f.samples)))
    return float((np.abs(f.samples) ** p).mean() * f.grid.area) ** (1.0 / p)


def casimir(omega, m: int) -> float:
    """Integral of omega^m (the m-th Casimir of the transport dynamics)."""
    if m < 1:
        raise BadExponent(f"moment order must be >= 1, got {m}")
    f = _as_real(omega)
    return float((f.samples**m).mean() * f.grid.area)


def energy_enstrophy_gap(omega) -> float:
    """Enstrophy over lambda1 minus twice the energy; zero exactly on the
    first eigenspace, strictly positive otherwise."""
    F = _as_spectral(omega)
    _require_mean_zero(F)
    t = modes(F.grid)
    lam1 = classify_eigenspace(F.grid.basis).lambda1
    weight = 1.0 / lam1 - t.inv_lap
    return F.grid.area * float(np.sum(np.abs(F.coeffs) ** 2 * weight))
