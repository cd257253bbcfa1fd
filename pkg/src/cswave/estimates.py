"""Bilinear product estimates: admissibility checkers and numerical probes.

Two kinds of closure conditions are implemented: the Fourier-Lebesgue
product law on the r-based scale, and the wave-Sobolev (r = 2) law with its
fourteen index inequalities. The numerical side measures product norms of
random cone-concentrated ensembles and a cone-weighted lattice convolution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import fft as _fft

from .errors import ResourceError, UsageError
from .grid import SPECTRAL, TWO_PI, ComplexField, Grid2D, embed_spectrum
from .norms import SpacetimeField, conjugate_exponent, xsb_norm
from .nullforms import cone_weight


@dataclass(frozen=True)
class ConditionReport:
    name: str
    ok: bool
    margin: float


@dataclass(frozen=True)
class EstimateCheck:
    ok: bool
    conditions: tuple

    @property
    def failures(self) -> list:
        return [c.name for c in self.conditions if not c.ok]


def _report(conds: list[tuple[str, float, bool]]) -> EstimateCheck:
    rows = tuple(ConditionReport(n, ok, m) for n, m, ok in conds)
    return EstimateCheck(all(r.ok for r in rows), rows)


def fourier_lebesgue_product_check(
    r: float, alpha1: float, alpha2: float, b1: float, b2: float
) -> EstimateCheck:
    """Closure conditions for ||uv|| <= ||u||_{alpha1,b1} ||v||_{alpha2,b2}."""
    if not (1.0 <= r <= 2.0):
        raise UsageError(f"the scale requires 1 <= r <= 2, got {r!r}")
    thr = 3.0 / (2.0 * r)
    low = 1.0 / (2.0 * r)
    conds = [
        ("alpha1 >= 0", alpha1, alpha1 >= 0.0),
        ("alpha2 >= 0", alpha2, alpha2 >= 0.0),
        ("alpha1 + alpha2 > 3/(2r)", alpha1 + alpha2 - thr, alpha1 + alpha2 > thr),
        ("b1 + b2 > 3/(2r)", b1 + b2 - thr, b1 + b2 > thr),
        ("b1 > 1/(2r)", b1 - low, b1 > low),
        ("b2 > 1/(2r)", b2 - low, b2 > low),
    ]
    return _report(conds)


def wave_sobolev_product_check(
    s0: float, s1: float, s2: float, b0: float, b1: float, b2: float
) -> EstimateCheck:
    """The fourteen index conditions for ||uv||_{-s0,-b0} <= ||u|| ||v|| at r=2."""
    S = s0 + s1 + s2
    conds = [
        ("b0 + b1 + b2 > 1/2", b0 + b1 + b2 - 0.5, b0 + b1 + b2 > 0.5),
        ("b0 + b1 >= 0", b0 + b1, b0 + b1 >= 0.0),
        ("b0 + b2 >= 0", b0 + b2, b0 + b2 >= 0.0),
        ("b1 + b2 >= 0", b1 + b2, b1 + b2 >= 0.0),
        (
            "s0 + s1 + s2 > 3/2 - (b0 + b1 + b2)",
            S - 1.5 + (b0 + b1 + b2),
            S > 1.5 - (b0 + b1 + b2),
        ),
        (
            "s0 + s1 + s2 > 1 - min pairwise b sum",
            S - 1.0 + min(b0 + b1, b0 + b2, b1 + b2),
            S > 1.0 - min(b0 + b1, b0 + b2, b1 + b2),
        ),
        (
            "s0 + s1 + s2 > 1/2 - min(b0, b1, b2)",
            S - 0.5 + min(b0, b1, b2),
            S > 0.5 - min(b0, b1, b2),
        ),
        ("s0 + s1 + s2 > 3/4", S - 0.75, S > 0.75),
        ("(s0 + b0) + 2s1 + 2s2 > 1", s0 + b0 + 2 * s1 + 2 * s2 - 1.0, s0 + b0 + 2 * s1 + 2 * s2 > 1.0),
        ("2s0 + (s1 + b1) + 2s2 > 1", 2 * s0 + s1 + b1 + 2 * s2 - 1.0, 2 * s0 + s1 + b1 + 2 * s2 > 1.0),
        ("2s0 + 2s1 + (s2 + b2) > 1", 2 * s0 + 2 * s1 + s2 + b2 - 1.0, 2 * s0 + 2 * s1 + s2 + b2 > 1.0),
        ("s1 + s2 >= max(0, -b0)", s1 + s2 - max(0.0, -b0), s1 + s2 >= max(0.0, -b0)),
        ("s0 + s2 >= max(0, -b1)", s0 + s2 - max(0.0, -b1), s0 + s2 >= max(0.0, -b1)),
        ("s0 + s1 >= max(0, -b2)", s0 + s1 - max(0.0, -b2), s0 + s1 >= max(0.0, -b2)),
    ]
    return _report(conds)


def product_estimate_check(kind: str, **indices) -> EstimateCheck:
    if kind == "fourier-lebesgue":
        return fourier_lebesgue_product_check(**indices)
    if kind == "wave-sobolev":
        return wave_sobolev_product_check(**indices)
    raise UsageError(f"kind must be 'fourier-lebesgue' or 'wave-sobolev', got {kind!r}")


def weighted_convolution(
    f: ComplexField, g: ComplexField, gamma: float, sign: int, chunk: int = 256
) -> ComplexField:
    """Lattice convolution of spectra with the cone weight raised to gamma.

    h_hat(xi) = (2 pi/L^2) sum_eta b_sign(xi, eta)^gamma f_hat(eta)
    g_hat(xi - eta), summed over eta with both eta and xi - eta inside the
    retained band (linear convolution, no wrap). gamma = 0 forces unit
    weights, which makes this the exact band projection of the product.
    """
    if f.grid != g.grid:
        raise UsageError("weighted_convolution factors must share one grid")
    grid = f.grid
    n = grid.n
    if n > 64:
        raise ResourceError("direct lattice convolution is quadratic; use n <= 64")
    F = f.as_spectral().values.reshape(-1)
    G = g.as_spectral().values
    ks = grid.k
    kk1 = np.repeat(ks, n)
    kk2 = np.tile(ks, n)
    freq = TWO_PI / grid.length
    eta = np.stack([kk1 * freq, kk2 * freq], axis=-1)
    half = n // 2
    out = np.zeros(n * n, dtype=np.complex128)
    for lo in range(0, n * n, chunk):
        hi = min(lo + chunk, n * n)
        o1 = kk1[lo:hi, None]
        o2 = kk2[lo:hi, None]
        d1 = o1 - kk1[None, :]
        d2 = o2 - kk2[None, :]
        inside = (d1 >= -half) & (d1 < half) & (d2 >= -half) & (d2 < half)
        gv = G[d1 % n, d2 % n]
        gv[~inside] = 0.0
        if gamma == 0.0:
            w = 1.0
        else:
            xi = np.stack(
                [np.broadcast_to(o1 * freq, d1.shape), np.broadcast_to(o2 * freq, d2.shape)],
                axis=-1,
            )
            w = cone_weight(xi, eta[None, :, :], sign) ** gamma
        out[lo:hi] = np.sum(w * F[None, :] * gv, axis=1)
    out *= TWO_PI / grid.length**2
    return ComplexField(grid, out.reshape(n, n), SPECTRAL)


def _embed_time(spec: np.ndarray, nt: int, mt: int) -> np.ndarray:
    h = nt // 2
    out = np.zeros((mt,) + spec.shape[1:], dtype=np.complex128)
    out[:h] = spec[:h]
    out[mt - (nt - h) :] = spec[h:]
    return out


def _spacetime_scale(window: float, length: float, nt: int, n: int) -> float:
    return window * length**2 / (TWO_PI**1.5 * nt * n**2)


def random_cone_ensemble(
    grid: Grid2D,
    nt: int,
    window: float,
    s: float,
    b: float,
    rng: np.random.Generator,
) -> SpacetimeField:
    """Gaussian field with spectrum damped like <xi>^(-s-1) <tau -+ |xi|>^(-b-1/2).

    The cone sheet (the sign in the modulation weight) is chosen at random
    for the whole sample, mimicking a superposition of one wave family.
    """
    taus = np.rint(np.fft.fftfreq(nt) * nt) * (TWO_PI / window)
    sheet = 1 if rng.uniform() < 0.5 else -1
    dist = taus[:, None, None] - sheet * grid.abs_xi[None, :, :]
    shape = grid.bracket_xi[None, :, :] ** (-s - 1.0) * (1.0 + dist**2) ** (
        -(b + 0.5) / 2.0
    )
    z = rng.standard_normal((nt, grid.n, grid.n)) + 1j * rng.standard_normal(
        (nt, grid.n, grid.n)
    )
    spec = shape * z
    phys = _fft.ifftn(spec, axes=(0, 1, 2), workers=-1) / _spacetime_scale(
        window, grid.length, nt, grid.n
    )
    return SpacetimeField(grid, phys, window)


def spacetime_product(u: SpacetimeField, v: SpacetimeField) -> SpacetimeField:
    """Pointwise product evaluated on a doubled lattice so nothing aliases.

    Both factors are bandlimited trig polynomials; the exact product lives on
    the (2nt, 2n, 2n) lattice and is returned there, same box and window.
    """
    if u.grid != v.grid or u.nt != v.nt or u.window != v.window:
        raise UsageError("spacetime_product factors must share grid, nt and window")
    grid = u.grid
    n, nt = grid.n, u.nt
    scale = _spacetime_scale(u.window, grid.length, nt, n)
    fine_scale = _spacetime_scale(u.window, grid.length, 2 * nt, 2 * n)

    def lift(w: SpacetimeField) -> np.ndarray:
        spec = _fft.fftn(w.values, axes=(0, 1, 2), workers=-1) * scale
        spec = embed_spectrum(spec, n, 2 * n)
        spec = _embed_time(spec, nt, 2 * nt)
        return _fft.ifftn(spec, axes=(0, 1, 2), workers=-1) / fine_scale

    fine = Grid2D(2 * n, grid.length)
    return SpacetimeField(fine, lift(u) * lift(v), u.window)


@dataclass(frozen=True)
class RatioEstimate:
    """Product-norm ratios over a random ensemble of unit-norm factors."""

    mean: float
    max: float
    values: tuple


def bilinear_ratio_estimate(
    s1: float,
    b1: float,
    s2: float,
    b2: float,
    r: float = 2.0,
    n: int = 16,
    nt: int = 32,
    window: float = TWO_PI,
    num_samples: int = 16,
    seed: int = 0,
    taper_rho: float = 0.25,
) -> RatioEstimate:
    """Measure ||uv||_{0,0} over unit-norm cone ensembles u, v.

    Each factor is normalized in the (s_i, b_i) norm on the absolute-value
    modulation weight; the reported values are then the product norms
    themselves. A factor with vanishing norm contributes ratio 0.
    """
    conjugate_exponent(r)
    grid = Grid2D(n)
    values = []
    for i in range(num_samples):
        rng = np.random.default_rng([seed, n, nt, i])
        u = random_cone_ensemble(grid, nt, window, s1, b1, rng)
        v = random_cone_ensemble(grid, nt, window, s2, b2, rng)
        nu = xsb_norm(u, s1, b1, r, "absolute", taper_rho)
        nv = xsb_norm(v, s2, b2, r, "absolute", taper_rho)
        if nu == 0.0 or nv == 0.0:
            values.append(0.0)
            continue
        u.values /= nu
        v.values /= nv
        uv = spacetime_product(u, v)
        values.append(xsb_norm(uv, 0.0, 0.0, r, "absolute", taper_rho))
    arr = np.array(values)
    return RatioEstimate(float(arr.mean()), float(arr.max()), tuple(values))
