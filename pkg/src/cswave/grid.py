"""Periodic 2D grid, discrete Fourier transforms, and dealiased products.

The transform pair is normalized so that a spectral coefficient approximates
the continuum transform f_hat(xi) = (2*pi)^{-1} * integral f(x) exp(-i x.xi) dx.
With that choice Parseval reads  integral |f|^2 dx = sum |f_hat|^2 * (2*pi/L)^2,
and a pointwise product becomes the lattice convolution
(f g)_hat(xi) = (2*pi/L^2) * sum_eta f_hat(eta) g_hat(xi - eta).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np
from scipy import fft as _fft

from .errors import ResourceError, UsageError

TWO_PI = 2.0 * np.pi
DEFAULT_LENGTH = 16.0 * np.pi

PHYSICAL = "physical"
SPECTRAL = "spectral"

_WORKERS = -1

try:  # torch's single-threaded transforms outrun pocketfft 2-3x at these sizes
    import torch as _torch
except ModuleNotFoundError:  # pragma: no cover - plain scipy environment
    _torch = None

# batches larger than this spill out of cache and lose the torch advantage
_FFT_CHUNK = 6


def _torch_fft2(a: np.ndarray, forward: bool) -> np.ndarray:
    fn = _torch.fft.fft2 if forward else _torch.fft.ifft2
    if not a.flags["C_CONTIGUOUS"]:
        a = np.ascontiguousarray(a)
    if a.ndim == 2:
        return fn(_torch.from_numpy(a)).numpy()
    flat = a.reshape((-1,) + a.shape[-2:])
    if flat.shape[0] <= _FFT_CHUNK:
        return fn(_torch.from_numpy(flat), dim=(-2, -1)).numpy().reshape(a.shape)
    out = np.empty(flat.shape, dtype=np.complex128)
    for i in range(0, flat.shape[0], _FFT_CHUNK):
        sl = slice(i, i + _FFT_CHUNK)
        out[sl] = fn(_torch.from_numpy(flat[sl]), dim=(-2, -1)).numpy()
    return out.reshape(a.shape)


def _fft2(a: np.ndarray) -> np.ndarray:
    if _torch is not None:
        return _torch_fft2(a, True)
    return _fft.fft2(a, workers=_WORKERS)


def _ifft2(a: np.ndarray) -> np.ndarray:
    if _torch is not None:
        return _torch_fft2(a, False)
    return _fft.ifft2(a, workers=_WORKERS)


@dataclass(frozen=True)
class Grid2D:
    """Uniform n x n grid on a square torus of side ``length``."""

    n: int
    length: float = DEFAULT_LENGTH

    def __post_init__(self):
        n = self.n
        if not isinstance(n, (int, np.integer)) or n < 8 or (n & (n - 1)) != 0:
            raise UsageError(f"grid size must be a power of two >= 8, got {n!r}")
        if not (float(self.length) > 0.0):
            raise UsageError(f"grid length must be positive, got {self.length!r}")

    @property
    def dx(self) -> float:
        return self.length / self.n

    @property
    def fwd_scale(self) -> float:
        """Factor turning a raw fft2 into continuum-normalized coefficients."""
        return self.length**2 / (TWO_PI * self.n**2)

    @property
    def cell(self) -> float:
        """Dual-lattice cell measure (2*pi/L)^2."""
        return (TWO_PI / self.length) ** 2

    @cached_property
    def x(self) -> np.ndarray:
        return np.arange(self.n) * self.dx

    @cached_property
    def k(self) -> np.ndarray:
        """Integer wavenumbers in FFT storage order, k in [-n/2, n/2)."""
        return np.rint(np.fft.fftfreq(self.n) * self.n).astype(np.int64)

    @cached_property
    def xi(self) -> np.ndarray:
        return (TWO_PI / self.length) * self.k

    @cached_property
    def xi1(self) -> np.ndarray:
        return np.broadcast_to(self.xi[:, None], (self.n, self.n))

    @cached_property
    def xi2(self) -> np.ndarray:
        return np.broadcast_to(self.xi[None, :], (self.n, self.n))

    @cached_property
    def abs_xi(self) -> np.ndarray:
        return np.hypot(self.xi1, self.xi2)

    @cached_property
    def bracket_xi(self) -> np.ndarray:
        return np.sqrt(1.0 + self.abs_xi**2)

    @cached_property
    def nyquist_mask(self) -> np.ndarray:
        """True on the k = -n/2 row or column, which has no negation partner."""
        bad = self.k == -(self.n // 2)
        return bad[:, None] | bad[None, :]

    def mode_index(self, k1: int, k2: int) -> tuple[int, int]:
        half = self.n // 2
        if not (-half <= k1 < half and -half <= k2 < half):
            raise UsageError(f"mode ({k1},{k2}) outside the retained band of n={self.n}")
        return (k1 % self.n, k2 % self.n)


@dataclass
class ComplexField:
    """Scalar complex field on a Grid2D, tagged with its representation."""

    grid: Grid2D
    values: np.ndarray
    rep: str = PHYSICAL

    def __post_init__(self):
        if self.rep not in (PHYSICAL, SPECTRAL):
            raise UsageError(f"unknown representation {self.rep!r}")
        v = np.asarray(self.values, dtype=np.complex128)
        if v.shape != (self.grid.n, self.grid.n):
            raise UsageError(
                f"field shape {v.shape} does not match grid n={self.grid.n}"
            )
        self.values = v

    @classmethod
    def zeros(cls, grid: Grid2D, rep: str = SPECTRAL) -> "ComplexField":
        return cls(grid, np.zeros((grid.n, grid.n), dtype=np.complex128), rep)

    def copy(self) -> "ComplexField":
        return ComplexField(self.grid, self.values.copy(), self.rep)

    def as_spectral(self) -> "ComplexField":
        if self.rep == SPECTRAL:
            return self
        return transform(self, "forward")

    def as_physical(self) -> "ComplexField":
        if self.rep == PHYSICAL:
            return self
        return transform(self, "inverse")

    def l2(self) -> float:
        """L^2(dx) norm, evaluated in whichever representation is stored."""
        if self.rep == PHYSICAL:
            return float(np.linalg.norm(self.values)) * self.grid.dx
        return float(np.linalg.norm(self.values)) * (TWO_PI / self.grid.length)


def transform(f: ComplexField, direction: str) -> ComplexField:
    if direction == "forward":
        if f.rep != PHYSICAL:
            raise UsageError("forward transform expects a physical-representation field")
        return ComplexField(f.grid, _fft2(f.values) * f.grid.fwd_scale, SPECTRAL)
    if direction == "inverse":
        if f.rep != SPECTRAL:
            raise UsageError("inverse transform expects a spectral-representation field")
        return ComplexField(f.grid, _ifft2(f.values) / f.grid.fwd_scale, PHYSICAL)
    raise UsageError(f"direction must be 'forward' or 'inverse', got {direction!r}")


def plane_wave(grid: Grid2D, mode: tuple[int, int], amplitude: complex = 1.0) -> ComplexField:
    """exp(i x . xi_k) for an integer lattice mode k, in physical representation."""
    grid.mode_index(*mode)
    xi1 = (TWO_PI / grid.length) * mode[0]
    xi2 = (TWO_PI / grid.length) * mode[1]
    phase = np.add.outer(grid.x * xi1, grid.x * xi2)
    return ComplexField(grid, amplitude * np.exp(1j * phase), PHYSICAL)


def constant(grid: Grid2D, value: complex) -> ComplexField:
    return ComplexField(grid, np.full((grid.n, grid.n), value, dtype=np.complex128), PHYSICAL)


def embed_spectrum(spec: np.ndarray, n: int, m: int) -> np.ndarray:
    """Zero-pad FFT-ordered coefficients from an n-grid into an m-grid, m >= n.

    Operates on the trailing two axes. The k = -n/2 Nyquist entries stay with
    the negative block, so modes keep their signed identity on the fine grid.
    """
    if m < n:
        raise UsageError("embedding target must be at least as large as the source")
    h = n // 2
    out = np.zeros(spec.shape[:-2] + (m, m), dtype=np.complex128)
    src = (slice(0, h), slice(h, n))
    dst = (slice(0, h), slice(m - h, m))
    for rs, rd in zip(src, dst):
        for cs, cd in zip(src, dst):
            out[..., rd, cd] = spec[..., rs, cs]
    return out


def extract_spectrum(spec: np.ndarray, n: int, m: int) -> np.ndarray:
    """Truncate FFT-ordered coefficients on an m-grid back to the n-band.

    Only k in [-n/2, n/2) survives; the fine grid's +n/2 modes are dropped,
    never folded, so there is no wrap-around.
    """
    h = n // 2
    out = np.empty(spec.shape[:-2] + (n, n), dtype=np.complex128)
    src = (slice(0, h), slice(m - h, m))
    dst = (slice(0, h), slice(h, n))
    for rs, rd in zip(src, dst):
        for cs, cd in zip(src, dst):
            out[..., rd, cd] = spec[..., rs, cs]
    return out


# Embed targets are written in the same four corner blocks every time, so the
# zero padding between them can be reused across calls instead of re-allocated.
_EMBED_CACHE: dict = {}


def _embed_scaled(spec: np.ndarray, n: int, m: int, scale: float) -> np.ndarray:
    key = (spec.shape, m)
    buf = _EMBED_CACHE.get(key)
    if buf is None:
        if len(_EMBED_CACHE) >= 8:
            _EMBED_CACHE.clear()
        buf = np.zeros(spec.shape[:-2] + (m, m), dtype=np.complex128)
        _EMBED_CACHE[key] = buf
    h = n // 2
    src = (slice(0, h), slice(h, n))
    dst = (slice(0, h), slice(m - h, m))
    for rs, rd in zip(src, dst):
        for cs, cd in zip(src, dst):
            np.multiply(spec[..., rs, cs], scale, out=buf[..., rd, cd])
    return buf


def lift_to_fine(stack: np.ndarray, grid: Grid2D, factor: int = 2) -> np.ndarray:
    """Physical samples of spectral data on a ``factor`` times finer grid.

    Accepts any stack shaped (..., n, n); padding happens on the trailing
    axes, so a batch of fields costs one FFT call.
    """
    m = factor * grid.n
    scale = grid.length**2 / (TWO_PI * m * m)
    return _ifft2(_embed_scaled(np.asarray(stack), grid.n, m, 1.0 / scale))


def restrict_from_fine(stack: np.ndarray, grid: Grid2D, factor: int = 2) -> np.ndarray:
    """Band-limit physical fine-grid samples back to coarse spectral data."""
    m = factor * grid.n
    scale = grid.length**2 / (TWO_PI * m * m)
    return extract_spectrum(_fft2(np.asarray(stack)), grid.n, m) * scale


def pad_factor(degree: int) -> int:
    """Grid enlargement factor that renders a degree-p product alias-free."""
    if degree < 1:
        raise UsageError("product degree must be >= 1")
    return (degree + 2) // 2


def dealias_product(
    factors: Sequence[ComplexField],
    degree: int | None = None,
    budget_bytes: int = 1 << 31,
) -> ComplexField:
    """Pointwise product of fields, computed alias-free on a padded grid.

    Returns the orthogonal projection of the true product onto the retained
    band, as a spectral-representation field. ``degree`` defaults to the
    number of factors.
    """
    factors = list(factors)
    if not factors:
        raise UsageError("dealias_product needs at least one factor")
    grid = factors[0].grid
    for f in factors[1:]:
        if f.grid != grid:
            raise UsageError("dealias_product factors must share one grid")
    p = len(factors) if degree is None else int(degree)
    if p < len(factors):
        raise UsageError("declared degree below the number of factors")
    n = grid.n
    m = pad_factor(p) * n
    # working set: padded spectrum, running product, one lifted factor
    if 3 * 16 * m * m > budget_bytes:
        raise ResourceError(
            f"padded grid {m}x{m} exceeds the {budget_bytes} byte budget"
        )
    fine_scale = grid.length**2 / (TWO_PI * m * m)
    prod = None
    for f in factors:
        lifted = _ifft2(embed_spectrum(f.as_spectral().values, n, m)) / fine_scale
        prod = lifted if prod is None else prod * lifted
    spec_fine = _fft2(prod) * fine_scale
    return ComplexField(grid, extract_spectrum(spec_fine, n, m), SPECTRAL)
