"""Fourier-Lebesgue and dispersive space-time norms on the periodic box.

All norms act on the weighted transform w(xi) |f_hat(xi)| with the dual
exponent r' of r in [1, 2]; r = 2 recovers the familiar L^2-based scales and
r = 1 the sup of the weighted transform.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import fft as _fft
from scipy.signal import windows as _windows

from .errors import UsageError
from .grid import PHYSICAL, TWO_PI, ComplexField, Grid2D

_MODES = ("plus", "minus", "absolute")


def conjugate_exponent(r: float) -> float:
    if not (1.0 <= r <= 2.0):
        raise UsageError(f"Lebesgue exponent must lie in [1, 2], got {r!r}")
    if r == 1.0:
        return np.inf
    return r / (r - 1.0)


def _weighted_sum(weighted_abs: np.ndarray, rprime: float, cell: float) -> float:
    """(sum (w|f|)^r' * cell)^(1/r'), max-factored; r' = inf is the plain sup."""
    peak = float(weighted_abs.max(initial=0.0))
    if peak == 0.0:
        return 0.0
    if not np.isfinite(rprime) or rprime > 1e6:
        return peak
    scaled = weighted_abs / peak
    total = float(np.sum(scaled**rprime)) * cell
    return peak * total ** (1.0 / rprime)


@dataclass(frozen=True)
class FLParams:
    """Fourier-Lebesgue index pair: regularity s, integrability r."""

    s: float
    r: float = 2.0
    homogeneous: bool = False

    def __post_init__(self):
        conjugate_exponent(self.r)

    def norm(self, f: ComplexField) -> float:
        return fl_norm(f, self.s, self.r, homogeneous=self.homogeneous)


def fl_norm(f: ComplexField, s: float, r: float = 2.0, homogeneous: bool = False) -> float:
    """Weighted-transform norm ( sum (<xi>^s |f_hat|)^r' cell )^(1/r').

    With homogeneous=True the weight is |xi|^s and the zero mode is skipped.
    """
    rprime = conjugate_exponent(r)
    grid = f.grid
    spec = np.abs(f.as_spectral().values)
    if homogeneous:
        weight = np.zeros((grid.n, grid.n))
        np.power(grid.abs_xi, s, out=weight, where=grid.abs_xi > 0.0)
        if s == 0.0:
            weight[grid.abs_xi > 0.0] = 1.0
    else:
        weight = grid.bracket_xi**s
    return _weighted_sum(weight * spec, rprime, grid.cell)


@dataclass(frozen=True)
class CriticalExponents:
    """Scaling landmarks of the r-based data scale in two space dimensions."""

    scaling: float
    threshold: float
    gap: float


def critical_exponent(r: float) -> CriticalExponents:
    """Scale-invariant regularity, the local-theory threshold, and their gap."""
    conjugate_exponent(r)
    scaling = 2.0 / r - 1.0
    threshold = 3.0 / (2.0 * r) - 0.5
    return CriticalExponents(scaling, threshold, threshold - scaling)


@dataclass(frozen=True)
class ContractionParameters:
    """Norm indices at which the iteration scheme is run, margin above critical."""

    r: float
    s: float
    b: float
    gamma: float


def contraction_parameters(r: float, margin: float = 0.01) -> ContractionParameters:
    conjugate_exponent(r)
    if margin <= 0.0:
        raise UsageError("margin must be positive")
    s = 3.0 / (2.0 * r) - 0.5 + margin
    b = 0.5 + 1.0 / (2.0 * r) + margin
    gamma = s + 0.5 - 1.0 / r
    return ContractionParameters(r, s, b, gamma)


@dataclass
class SpacetimeField:
    """Time-slab sample of a field: values[m] is the slice at t = m*window/nt.

    The slab [0, window) is treated as a torus in time; norms taper the
    samples before transforming, so fields need not match at the seam.
    """

    grid: Grid2D
    values: np.ndarray
    window: float

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.complex128)
        if v.ndim != 3 or v.shape[1:] != (self.grid.n, self.grid.n):
            raise UsageError(
                f"expected shape (nt, {self.grid.n}, {self.grid.n}), got {v.shape}"
            )
        if v.shape[0] < 2:
            raise UsageError("need at least two time slices")
        if not (float(self.window) > 0.0):
            raise UsageError("window length must be positive")
        self.values = v

    @property
    def nt(self) -> int:
        return self.values.shape[0]

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.nt) * (self.window / self.nt)

    @property
    def taus(self) -> np.ndarray:
        return np.rint(np.fft.fftfreq(self.nt) * self.nt) * (TWO_PI / self.window)

    def copy(self) -> "SpacetimeField":
        return SpacetimeField(self.grid, self.values.copy(), self.window)


def spacetime_transform(u: SpacetimeField, taper_rho: float = 0.25) -> np.ndarray:
    """Tapered space-time transform, continuum-normalized.

    Pairs with exp(i(t*tau + x.xi)): a wave exp(i t |xi|) concentrates at
    tau = +|xi|. The Tukey taper (endpoints exactly zero) suppresses the
    seam; taper_rho = 0 would alias seam jumps across all tau and is refused.
    """
    if not (taper_rho > 0.0):
        raise UsageError("taper_rho must be positive; a sharp seam pollutes tau")
    if taper_rho > 1.0:
        raise UsageError("taper_rho must not exceed 1")
    win = _windows.tukey(u.nt, alpha=taper_rho, sym=True)
    vals = u.values * win[:, None, None]
    scale = u.window * u.grid.length**2 / (TWO_PI**1.5 * u.nt * u.grid.n**2)
    return _fft.fftn(vals, axes=(0, 1, 2), workers=-1) * scale


def spacetime_cell(u: SpacetimeField) -> float:
    return TWO_PI**3 / (u.window * u.grid.length**2)


def xsb_weight(
    u: SpacetimeField, s: float, b: float, mode: str = "plus"
) -> np.ndarray:
    if mode not in _MODES:
        raise UsageError(f"mode must be one of {_MODES}, got {mode!r}")
    taus = u.taus[:, None, None]
    absxi = u.grid.abs_xi[None, :, :]
    if mode == "plus":
        dist = taus - absxi
    elif mode == "minus":
        dist = taus + absxi
    else:
        dist = np.abs(taus) - absxi
    weight = np.sqrt(1.0 + dist * dist) ** b
    return u.grid.bracket_xi[None, :, :] ** s * weight


def xsb_norm(
    u: SpacetimeField,
    s: float,
    b: float,
    r: float = 2.0,
    mode: str = "plus",
    taper_rho: float = 0.25,
) -> float:
    """Dispersive space-time norm with weight <xi>^s <tau -+ |xi|>^b.

    mode selects which characteristic sheet the modulation weight is centered
    on: "plus" for tau = +|xi|, "minus" for tau = -|xi|, "absolute" for the
    full light cone |tau| = |xi|.
    """
    rprime = conjugate_exponent(r)
    spec = np.abs(spacetime_transform(u, taper_rho))
    weight = xsb_weight(u, s, b, mode)
    return _weighted_sum(weight * spec, rprime, spacetime_cell(u))


def dilate_exact(f: ComplexField, lam: int) -> ComplexField:
    """Lattice dilation x -> lam*x realized by shrinking the box, amplitude 1.

    The returned field on a box of side length/lam has identical samples, so
    g(x) = f(lam x) holds exactly at the nodes and mode k of f becomes mode k
    (frequency lam*xi_k) of g.
    """
    if not isinstance(lam, (int, np.integer)) or lam < 2:
        raise UsageError(f"dilation factor must be an integer >= 2, got {lam!r}")
    fine = Grid2D(f.grid.n, f.grid.length / lam)
    return ComplexField(fine, f.as_physical().values.copy(), PHYSICAL)


def scaling_check(
    f: ComplexField,
    lam: int,
    s: float,
    r: float = 2.0,
    dilated: ComplexField | None = None,
) -> tuple[float, float, float]:
    """Compare norm(f_lam) against lam^(1+s-2/r) * norm(f), homogeneous scale.

    f_lam(x) = lam * f(lam x); by default it is realized exactly on the
    shrunken lattice, and ``dilated`` may supply an independently sampled
    version instead. Returns (lhs, rhs, relative error).
    """
    if dilated is None:
        g = dilate_exact(f, lam)
        g = ComplexField(g.grid, lam * g.values, PHYSICAL)
    else:
        g = dilated
    lhs = fl_norm(g, s, r, homogeneous=True)
    rhs = lam ** (1.0 + s - 2.0 / r) * fl_norm(f, s, r, homogeneous=True)
    denom = max(abs(rhs), 1e-300)
    return lhs, rhs, abs(lhs - rhs) / denom
