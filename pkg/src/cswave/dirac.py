"""Planar Dirac algebra, spinor fields, and half-wave eigenprojections."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UsageError
from .grid import PHYSICAL, SPECTRAL, Grid2D, _fft2, _ifft2

SIGMA1 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
SIGMA2 = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128)
SIGMA3 = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128)
ID2 = np.eye(2, dtype=np.complex128)


class DiracAlgebra:
    """Gamma matrices for signature (+,-,-) in two space dimensions.

    gamma0 = sigma3, gamma1 = i sigma2, gamma2 = -i sigma1. The derived
    alpha^j = gamma0 gamma^j are Hermitian and anticommute; beta = gamma0.
    """

    metric = np.diag([1.0, -1.0, -1.0])

    def __init__(self):
        self.gamma = (SIGMA3, 1j * SIGMA2, -1j * SIGMA1)
        self.beta = self.gamma[0]
        self.alpha = (ID2, self.beta @ self.gamma[1], self.beta @ self.gamma[2])

    def anticommutator_residual(self) -> float:
        """Max deviation from {gamma^mu, gamma^nu} = 2 eta^{mu nu} I."""
        worst = 0.0
        for mu in range(3):
            for nu in range(3):
                lhs = self.gamma[mu] @ self.gamma[nu] + self.gamma[nu] @ self.gamma[mu]
                rhs = 2.0 * self.metric[mu, nu] * ID2
                worst = max(worst, float(np.abs(lhs - rhs).max()))
        return worst


ALGEBRA = DiracAlgebra()


def epsilon_symbol(mu: int, nu: int, lam: int) -> int:
    """Levi-Civita symbol on {0,1,2} with epsilon_{012} = +1."""
    perm = (mu, nu, lam)
    if sorted(perm) != [0, 1, 2]:
        return 0
    return 1 if perm in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1


@dataclass
class SpinorField:
    """Two-component spinor on a Grid2D, values shaped (2, n, n)."""

    grid: Grid2D
    values: np.ndarray
    rep: str = PHYSICAL

    def __post_init__(self):
        if self.rep not in (PHYSICAL, SPECTRAL):
            raise UsageError(f"unknown representation {self.rep!r}")
        v = np.asarray(self.values, dtype=np.complex128)
        if v.shape != (2, self.grid.n, self.grid.n):
            raise UsageError(
                f"spinor shape {v.shape} does not match (2, {self.grid.n}, {self.grid.n})"
            )
        self.values = v

    @classmethod
    def zeros(cls, grid: Grid2D, rep: str = SPECTRAL) -> "SpinorField":
        return cls(grid, np.zeros((2, grid.n, grid.n), dtype=np.complex128), rep)

    def copy(self) -> "SpinorField":
        return SpinorField(self.grid, self.values.copy(), self.rep)

    def as_spectral(self) -> "SpinorField":
        if self.rep == SPECTRAL:
            return self
        vals = _fft2(self.values) * self.grid.fwd_scale
        return SpinorField(self.grid, vals, SPECTRAL)

    def as_physical(self) -> "SpinorField":
        if self.rep == PHYSICAL:
            return self
        vals = _ifft2(self.values) / self.grid.fwd_scale
        return SpinorField(self.grid, vals, PHYSICAL)

    def l2(self) -> float:
        if self.rep == PHYSICAL:
            return float(np.linalg.norm(self.values)) * self.grid.dx
        return float(np.linalg.norm(self.values)) * (2.0 * np.pi / self.grid.length)


def projection_matrix(xi: tuple[float, float], sign: int) -> np.ndarray:
    """Half-wave eigenprojection (I + sign * xi.alpha/|xi|)/2 at one frequency.

    At xi = 0 the limit does not exist; the convention here is I/2, which
    still resolves the identity but is not idempotent. Evolution states keep
    spinor components mean-free so that mode never participates.
    """
    if sign not in (-1, 1):
        raise UsageError(f"projection sign must be +1 or -1, got {sign!r}")
    x1, x2 = float(xi[0]), float(xi[1])
    r = np.hypot(x1, x2)
    if r == 0.0:
        return 0.5 * ID2
    zeta = x1 + 1j * x2
    return 0.5 * (ID2 + sign * np.array([[0.0, zeta.conjugate()], [zeta, 0.0]]) / r)


def project_spinor_modes(grid: Grid2D, values: np.ndarray, sign: int) -> np.ndarray:
    """Array-level half-wave projection of stacked spectral spinor data."""
    if sign not in (-1, 1):
        raise UsageError(f"projection sign must be +1 or -1, got {sign!r}")
    v1 = values[0]
    v2 = values[1]
    zeta = grid.xi1 + 1j * grid.xi2
    unit = np.zeros_like(zeta)
    np.divide(zeta, grid.abs_xi, out=unit, where=grid.abs_xi > 0.0)
    out = np.empty_like(values, dtype=np.complex128)
    out[0] = 0.5 * (v1 + sign * np.conj(unit) * v2)
    out[1] = 0.5 * (v2 + sign * unit * v1)
    return out


def dirac_project(f: SpinorField, sign: int) -> SpinorField:
    """Apply the half-wave projection mode by mode, in spectral representation.

    Spinors carry no conjugate symmetry, so the unpaired Nyquist modes keep
    the true symbol; that preserves exact idempotence and the resolution of
    the identity on every mode.
    """
    fs = f.as_spectral()
    return SpinorField(f.grid, project_spinor_modes(f.grid, fs.values, sign), SPECTRAL)


def dirac_hamiltonian(f: SpinorField, mass: float = 0.0) -> SpinorField:
    """(xi.alpha + mass*beta) acting mode by mode: i d/dt psi = H psi free."""
    grid = f.grid
    fs = f.as_spectral()
    v1 = fs.values[0]
    v2 = fs.values[1]
    zeta = grid.xi1 + 1j * grid.xi2
    out = np.empty_like(fs.values)
    out[0] = np.conj(zeta) * v2 + mass * v1
    out[1] = zeta * v1 - mass * v2
    return SpinorField(grid, out, SPECTRAL)


def signed_riesz_symbol(grid: Grid2D, index: int, sign: int) -> np.ndarray:
    """Modulation symbol paired with the half-wave projections.

    index 0 gives the constant -1; index j gives -sign * xi_j/|xi| with the
    zero mode sent to 0 and the Nyquist modes kept (spinor convention).
    """
    if index == 0:
        return np.full((grid.n, grid.n), -1.0)
    if index not in (1, 2):
        raise UsageError(f"riesz index must be 0, 1 or 2, got {index!r}")
    if sign not in (-1, 1):
        raise UsageError(f"riesz sign must be +1 or -1, got {sign!r}")
    comp = grid.xi1 if index == 1 else grid.xi2
    out = np.zeros((grid.n, grid.n))
    np.divide(comp, grid.abs_xi, out=out, where=grid.abs_xi > 0.0)
    return -float(sign) * out
