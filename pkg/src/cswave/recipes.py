"""Ready-made initial data: smooth bumps and random band-limited spectra.

Envelopes are plain Gaussians centered in the fundamental cell; with the
default width well under the period, the seam mismatch is far below double
precision, so the fields behave as smooth periodic data.
"""

from __future__ import annotations

import numpy as np

from .errors import UsageError
from .grid import PHYSICAL, SPECTRAL, ComplexField, Grid2D
from .dirac import SpinorField

RECIPE_NAMES = ("gaussian", "modulated-gaussian", "annulus-spectrum")


def gaussian(
    grid: Grid2D,
    amplitude: complex = 1.0,
    sigma: float | None = None,
    center: tuple | None = None,
) -> ComplexField:
    """amplitude * exp(-|x - c|^2 / (2 sigma^2)), physical representation."""
    if sigma is None:
        sigma = grid.length / 16.0
    if not (sigma > 0.0):
        raise UsageError("sigma must be positive")
    if center is None:
        center = (grid.length / 2.0, grid.length / 2.0)
    dx1 = grid.x - center[0]
    dx2 = grid.x - center[1]
    envelope = np.exp(
        -(np.add.outer(dx1 * dx1, dx2 * dx2)) / (2.0 * sigma * sigma)
    )
    return ComplexField(grid, amplitude * envelope, PHYSICAL)


def modulated_gaussian(
    grid: Grid2D,
    amplitude: complex = 1.0,
    sigma: float | None = None,
    mode: tuple = (2, 1),
    center: tuple | None = None,
) -> ComplexField:
    """A Gaussian envelope riding on the integer lattice mode exp(i x . xi_k)."""
    env = gaussian(grid, amplitude, sigma, center).values
    grid.mode_index(*mode)
    xi1 = (2.0 * np.pi / grid.length) * mode[0]
    xi2 = (2.0 * np.pi / grid.length) * mode[1]
    phase = np.add.outer(grid.x * xi1, grid.x * xi2)
    return ComplexField(grid, env * np.exp(1j * phase), PHYSICAL)


def annulus_spectrum(
    grid: Grid2D,
    amplitude: float = 1.0,
    band: tuple = (2.0, 4.0),
    seed: int = 0,
    real: bool = False,
) -> ComplexField:
    """Random phases on lattice modes with band[0] <= |k| <= band[1].

    Coefficients are unit complex Gaussians on the annulus, zero elsewhere;
    the field is then rescaled so its largest pointwise magnitude equals
    ``amplitude``. With real=True the physical field is projected onto its
    real part before rescaling.
    """
    lo, hi = float(band[0]), float(band[1])
    if not (0.0 < lo <= hi):
        raise UsageError("band must satisfy 0 < band[0] <= band[1]")
    rng = np.random.default_rng([seed, grid.n])
    kk = np.hypot(*np.meshgrid(grid.k, grid.k, indexing="ij"))
    mask = (kk >= lo) & (kk <= hi)
    if not mask.any():
        raise UsageError("no lattice modes inside the requested band")
    spec = np.zeros((grid.n, grid.n), dtype=np.complex128)
    count = int(mask.sum())
    spec[mask] = rng.standard_normal(count) + 1j * rng.standard_normal(count)
    f = ComplexField(grid, spec, SPECTRAL).as_physical()
    vals = f.values.real.astype(np.complex128) if real else f.values
    peak = float(np.abs(vals).max())
    if peak == 0.0:
        raise UsageError("degenerate draw: annulus field vanished")
    return ComplexField(grid, (amplitude / peak) * vals, PHYSICAL)


def scalar_recipe(grid: Grid2D, name: str, amplitude: float = 1.0, **kwargs) -> ComplexField:
    if name == "gaussian":
        return gaussian(grid, amplitude, kwargs.get("sigma"), kwargs.get("center"))
    if name == "modulated-gaussian":
        return modulated_gaussian(
            grid,
            amplitude,
            kwargs.get("sigma"),
            tuple(kwargs.get("mode", (2, 1))),
            kwargs.get("center"),
        )
    if name == "annulus-spectrum":
        return annulus_spectrum(
            grid,
            amplitude,
            tuple(kwargs.get("band", (2.0, 4.0))),
            int(kwargs.get("seed", 0)),
            bool(kwargs.get("real", False)),
        )
    raise UsageError(f"unknown recipe {name!r}; choose from {RECIPE_NAMES}")


def spinor_recipe(grid: Grid2D, name: str, amplitude: float = 1.0, **kwargs) -> SpinorField:
    """Two-component data: the lower component is half as large and, for the
    modulated recipe, counter-propagating, so neither projection is trivial."""
    upper = scalar_recipe(grid, name, amplitude, **kwargs)
    lowered = dict(kwargs)
    if name == "modulated-gaussian":
        m = tuple(lowered.get("mode", (2, 1)))
        lowered["mode"] = (-m[0], -m[1])
    if name == "annulus-spectrum":
        lowered["seed"] = int(lowered.get("seed", 0)) + 1
    lower = scalar_recipe(grid, name, 0.5 * amplitude, **lowered)
    values = np.stack([upper.as_physical().values, lower.as_physical().values])
    return SpinorField(grid, values, PHYSICAL)
