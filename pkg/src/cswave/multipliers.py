"""Fourier multipliers: fractional weights, Riesz symbols, wave splittings."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UsageError
from .grid import SPECTRAL, ComplexField, Grid2D

_KINDS = ("bracket", "homogeneous", "riesz", "inverseD")


@dataclass(frozen=True)
class MultiplierSpec:
    """Recipe for a radial or Riesz-type symbol.

    kind "bracket"      -> (1 + |xi|^2)^(exponent/2)
    kind "homogeneous"  -> |xi|^exponent, zero at xi = 0 for exponent < 0
    kind "inverseD"     -> |xi|^(-1), zero at xi = 0
    kind "riesz"        -> index 0: constant -1; index j in {1,2}:
                           -sign * xi_j/|xi|, zero at xi = 0 and at Nyquist
    """

    kind: str
    exponent: float = 1.0
    index: int = 0
    sign: int = 1

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise UsageError(f"unknown multiplier kind {self.kind!r}")
        if self.kind == "riesz":
            if self.index not in (0, 1, 2):
                raise UsageError(f"riesz index must be 0, 1 or 2, got {self.index!r}")
            if self.sign not in (-1, 1):
                raise UsageError(f"riesz sign must be +1 or -1, got {self.sign!r}")


def multiplier_symbol(spec: MultiplierSpec, grid: Grid2D) -> np.ndarray:
    if spec.kind == "bracket":
        return grid.bracket_xi ** spec.exponent
    if spec.kind == "homogeneous":
        if spec.exponent == 0.0:
            return np.ones((grid.n, grid.n))
        r = grid.abs_xi
        if spec.exponent > 0.0:
            return r**spec.exponent
        out = np.zeros((grid.n, grid.n))
        np.power(r, spec.exponent, out=out, where=r > 0.0)
        return out
    if spec.kind == "inverseD":
        r = grid.abs_xi
        out = np.zeros((grid.n, grid.n))
        np.divide(1.0, r, out=out, where=r > 0.0)
        return out
    # riesz
    if spec.index == 0:
        return np.full((grid.n, grid.n), -1.0)
    comp = grid.xi1 if spec.index == 1 else grid.xi2
    out = np.zeros((grid.n, grid.n))
    np.divide(comp, grid.abs_xi, out=out, where=grid.abs_xi > 0.0)
    out *= -float(spec.sign)
    # odd symbol: the unpaired k = -n/2 modes cannot carry it consistently
    out[grid.nyquist_mask] = 0.0
    return out


def apply_multiplier(f: ComplexField, spec: MultiplierSpec) -> ComplexField:
    fs = f.as_spectral()
    return ComplexField(f.grid, fs.values * multiplier_symbol(spec, f.grid), SPECTRAL)


def derivative_symbol(grid: Grid2D, axis: int) -> np.ndarray:
    """i*xi_axis with the Nyquist row/column zeroed (odd symbol)."""
    if axis not in (1, 2):
        raise UsageError(f"derivative axis must be 1 or 2, got {axis!r}")
    comp = (grid.xi1 if axis == 1 else grid.xi2).copy()
    comp[grid.nyquist_mask] = 0.0
    return 1j * comp


def spatial_derivative(f: ComplexField, axis: int) -> ComplexField:
    fs = f.as_spectral()
    return ComplexField(f.grid, fs.values * derivative_symbol(f.grid, axis), SPECTRAL)


def dispersion_symbol(grid: Grid2D, mass: float = 0.0) -> np.ndarray:
    """sqrt(mass^2 + |xi|^2), the frequency of the associated wave operator."""
    if mass < 0.0:
        raise UsageError("mass must be nonnegative")
    if mass == 0.0:
        return grid.abs_xi.copy()
    return np.sqrt(mass * mass + grid.abs_xi**2)


def half_wave_split(
    u: ComplexField, ut: ComplexField, mass: float = 0.0
) -> tuple[ComplexField, ComplexField]:
    """Split (u, du/dt) into components u_pm = (u -+ i Op^{-1} du/dt)/2.

    Op = sqrt(mass^2 - Laplacian). The plus component of a free wave evolves
    as exp(+i t Op), the minus component as exp(-i t Op). For mass 0 the
    xi = 0 mode of Op is not invertible: the mean of u is shared evenly and
    the mean of du/dt is dropped, so the round trip is exact only off that
    mode (evolution code carries means separately).
    """
    if u.grid != ut.grid:
        raise UsageError("half_wave_split arguments must share one grid")
    grid = u.grid
    omega = dispersion_symbol(grid, mass)
    inv = np.zeros_like(omega)
    np.divide(1.0, omega, out=inv, where=omega > 0.0)
    a = u.as_spectral().values
    b = ut.as_spectral().values
    shift = 1j * inv * b
    plus = ComplexField(grid, 0.5 * (a - shift), SPECTRAL)
    minus = ComplexField(grid, 0.5 * (a + shift), SPECTRAL)
    return plus, minus


def half_wave_merge(
    plus: ComplexField, minus: ComplexField, mass: float = 0.0
) -> tuple[ComplexField, ComplexField]:
    """Inverse of half_wave_split: u = u_+ + u_-, du/dt = i Op (u_+ - u_-)."""
    if plus.grid != minus.grid:
        raise UsageError("half_wave_merge arguments must share one grid")
    grid = plus.grid
    omega = dispersion_symbol(grid, mass)
    p = plus.as_spectral().values
    m = minus.as_spectral().values
    u = ComplexField(grid, p + m, SPECTRAL)
    ut = ComplexField(grid, 1j * omega * (p - m), SPECTRAL)
    return u, ut


def hodge_decompose(
    a1: ComplexField, a2: ComplexField
) -> tuple[tuple[ComplexField, ComplexField], tuple[ComplexField, ComplexField]]:
    """Split a vector field into divergence-free and curl-free parts.

    Returns ((df1, df2), (cf1, cf2)) in spectral representation. Means are
    dropped from both parts (constants are neither gradient nor rotated
    gradient on the torus). div(df) and curl(cf) vanish identically.
    """
    if a1.grid != a2.grid:
        raise UsageError("hodge_decompose arguments must share one grid")
    grid = a1.grid
    v1 = a1.as_spectral().values.copy()
    v2 = a2.as_spectral().values.copy()
    v1[0, 0] = 0.0
    v2[0, 0] = 0.0
    r2 = grid.abs_xi**2
    proj = np.zeros_like(r2)
    np.divide(1.0, r2, out=proj, where=r2 > 0.0)
    dot = grid.xi1 * v1 + grid.xi2 * v2
    cf1 = grid.xi1 * dot * proj
    cf2 = grid.xi2 * dot * proj
    df1 = v1 - cf1
    df2 = v2 - cf2
    mk = lambda v: ComplexField(grid, v, SPECTRAL)
    return (mk(df1), mk(df2)), (mk(cf1), mk(cf2))
