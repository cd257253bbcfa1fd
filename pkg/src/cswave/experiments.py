"""Canonical experiment suite: the studies behind the acceptance report.

Every study here is deterministic given its arguments. Random data come
from named recipes with explicit seeds, simulations journal a fixed column
set, and scans carry their own substream constants, so reruns reproduce
results bit for bit. The default arguments are the calibrated operating
points used by the acceptance suite and the command line front end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .coneintegrals import (
    cone_integral_exponents,
    delta_convolution_integral,
    integral_sup_scan,
)
from .csd import CSDSystem, charge, csd_initial_data
from .csd import constraint_residual as csd_constraint_residual
from .csh import CSHSystem, HiggsPotential, csh_initial_data, gauge_residual
from .csh import constraint_residual as csh_constraint_residual
from .errors import UsageError
from .estimates import bilinear_ratio_estimate, fourier_lebesgue_product_check
from .evolve import IntegratorConfig, PicardConfig, PicardResult, integrate, picard_iterate
from .grid import DEFAULT_LENGTH, PHYSICAL, ComplexField, Grid2D, plane_wave
from .norms import FLParams, dilate_exact, scaling_check
from .nullforms import (
    angle_bound_scan,
    hyperbolic_leibniz_ratio,
    leibniz_scan,
    symbol_bound_scan,
)
from .recipes import RECIPE_NAMES, gaussian, scalar_recipe, spinor_recipe

SYSTEMS = ("csh", "csd")

# CSV column sets, frozen per major version
CSH_COLUMNS = ("time", "phi_l2", "a_l2", "gauge_residual", "constraint_residual")
CSD_COLUMNS = (
    "time",
    "charge",
    "psi_l2",
    "a_l2",
    "gauge_residual",
    "constraint_residual",
)


@dataclass(frozen=True)
class DataRecipe:
    """Named initial-data profile; see recipes for the profile semantics."""

    name: str = "annulus-spectrum"
    amplitude: float = 0.05
    seed: int = 0
    band: tuple = (2.0, 4.0)
    mode: tuple = (2, 1)
    sigma: float | None = None

    def __post_init__(self):
        if self.name not in RECIPE_NAMES:
            raise UsageError(f"recipe must be one of {RECIPE_NAMES}, got {self.name!r}")

    def _kwargs(self) -> dict:
        return {
            "band": self.band,
            "mode": self.mode,
            "sigma": self.sigma,
            "seed": self.seed,
        }

    def scalar_pair(self, grid: Grid2D):
        """Position and velocity data: the velocity profile is half as large
        and, for seeded recipes, drawn from the next substream."""
        f = scalar_recipe(grid, self.name, self.amplitude, **self._kwargs())
        kw = self._kwargs()
        kw["seed"] = self.seed + 1
        g = scalar_recipe(grid, self.name, 0.5 * self.amplitude, **kw)
        return f, g

    def spinor(self, grid: Grid2D):
        return spinor_recipe(grid, self.name, self.amplitude, **self._kwargs())


def _default_integrator() -> IntegratorConfig:
    return IntegratorConfig(dt=1e-3, T=1.0, snapshot_stride=20)


def _default_picard() -> PicardConfig:
    return PicardConfig(T=0.5)


def _default_fl() -> FLParams:
    return FLParams(s=0.75)


@dataclass(frozen=True)
class ExperimentConfig:
    """One simulation or Picard study, fully specified.

    potential is a CSH-only switch: "self-dual" builds the sixth-order well
    matched to kappa, "none" removes it, and a comma-separated coefficient
    list is taken literally (constant term first).
    """

    system: str = "csh"
    n: int = 32
    length: float = DEFAULT_LENGTH
    kappa: float = 1.0
    mass: float = 0.0
    massive: bool = True
    potential: str = "self-dual"
    constraint: str = "project"
    recipe: DataRecipe = field(default_factory=DataRecipe)
    integrator: IntegratorConfig = field(default_factory=_default_integrator)
    picard: PicardConfig = field(default_factory=_default_picard)
    fl: FLParams = field(default_factory=_default_fl)
    outdir: str = "."

    def __post_init__(self):
        if self.system not in SYSTEMS:
            raise UsageError(f"system must be one of {SYSTEMS}, got {self.system!r}")
        if self.n < 4 or self.n % 2:
            raise UsageError("n must be an even integer >= 4")
        if not (self.length > 0.0):
            raise UsageError("length must be positive")
        _parse_potential(self.potential, self.kappa)


def _parse_potential(spec: str, kappa: float) -> HiggsPotential | None:
    if spec == "none":
        return None
    if spec == "self-dual":
        return HiggsPotential.self_dual(kappa)
    try:
        coeffs = tuple(float(c) for c in spec.split(","))
    except ValueError:
        raise UsageError(
            f"potential must be 'self-dual', 'none' or comma-separated floats, got {spec!r}"
        ) from None
    return HiggsPotential(coeffs)


def build_system(cfg: ExperimentConfig):
    grid = Grid2D(cfg.n, cfg.length)
    if cfg.system == "csh":
        return CSHSystem(
            grid,
            kappa=cfg.kappa,
            massive=cfg.massive,
            potential=_parse_potential(cfg.potential, cfg.kappa),
        )
    return CSDSystem(grid, kappa=cfg.kappa, mass=cfg.mass)


def _zero(grid: Grid2D) -> ComplexField:
    return ComplexField(grid, np.zeros((grid.n, grid.n)), PHYSICAL)


def build_state(system, recipe: DataRecipe, constraint: str = "project"):
    """Initial state from a recipe with vanishing input potentials.

    The constraint projection then supplies the rotational part of (a1, a2),
    so the journaled residuals start at solver tolerance.
    """
    grid = system.grid
    z = _zero(grid)
    if isinstance(system, CSHSystem):
        f, g = recipe.scalar_pair(grid)
        return csh_initial_data(system, f, g, z, z, z, constraint=constraint)
    psi0 = recipe.spinor(grid)
    return csd_initial_data(system, psi0, z, z, z, constraint=constraint)


def _spectral_l2(cell: float, *specs: np.ndarray) -> float:
    total = 0.0
    for s in specs:
        total += float(np.sum(np.abs(s) ** 2))
    return math.sqrt(total * cell)


def observable_row(system, state) -> tuple:
    """One journal row; the column set depends on the system kind."""
    cell = system.grid.cell
    fields = system.reconstruct(state)
    a_l2 = _spectral_l2(cell, fields["A0"], fields["A1"], fields["A2"])
    if system.kind == "csh":
        return (
            state.time,
            _spectral_l2(cell, fields["phi"]),
            a_l2,
            gauge_residual(system, state),
            csh_constraint_residual(system, state),
        )
    return (
        state.time,
        charge(system, state),
        _spectral_l2(cell, fields["psi"]),
        a_l2,
        gauge_residual(system, state),
        csd_constraint_residual(system, state),
    )


@dataclass
class SimulationResult:
    header: tuple
    rows: list
    state: object
    info: dict


def run_simulation(cfg: ExperimentConfig) -> SimulationResult:
    """Integrate to the horizon, journaling the canonical observables."""
    system = build_system(cfg)
    state, info = build_state(system, cfg.recipe, cfg.constraint)
    rows: list = []

    def observer(_k, st):
        rows.append(observable_row(system, st))

    integrate(system, state, cfg.integrator, observer=observer)
    header = CSH_COLUMNS if system.kind == "csh" else CSD_COLUMNS
    return SimulationResult(header, rows, state, info)


# -- gauge residual under refinement ----------------------------------------

GAUGE_RECIPES = {
    "csh": DataRecipe("annulus-spectrum", amplitude=0.05, seed=11, band=(13.0, 16.0)),
    "csd": DataRecipe("annulus-spectrum", amplitude=0.05, seed=11, band=(17.0, 21.0)),
}


def _gauge_config(kind: str, n: int, dt: float, T: float, amplitude: float) -> ExperimentConfig:
    base = GAUGE_RECIPES[kind]
    recipe = DataRecipe(base.name, amplitude, base.seed, base.band)
    if kind == "csh":
        return ExperimentConfig(
            system="csh",
            n=n,
            recipe=recipe,
            integrator=IntegratorConfig(dt=dt, T=T, snapshot_stride=20),
        )
    return ExperimentConfig(
        system="csd",
        n=n,
        mass=0.5,
        recipe=recipe,
        integrator=IntegratorConfig(dt=dt, T=T, snapshot_stride=20),
    )


@dataclass(frozen=True)
class RefinementPair:
    """Worst residual at a working resolution and at a refined one."""

    coarse: float
    fine: float

    @property
    def ratio(self) -> float:
        return self.coarse / self.fine if self.fine > 0.0 else math.inf


def gauge_residual_study(
    kind: str,
    coarse: tuple = (64, 1e-3),
    fine: tuple = (128, 5e-4),
    T: float = 1.0,
    amplitude: float = 0.05,
) -> RefinementPair:
    """Worst Lorenz-gauge residual along the flow, then again refined.

    The data spectrum sits in the upper third of the coarse band so the
    dealiasing tail, not the time stepper, dominates the residual; doubling
    n and halving dt must shrink it by well over the required factor.
    """
    worst = []
    for n, dt in (coarse, fine):
        cfg = _gauge_config(kind, n, dt, T, amplitude)
        res = run_simulation(cfg)
        col = res.header.index("gauge_residual")
        worst.append(max(row[col] for row in res.rows))
    return RefinementPair(worst[0], worst[1])


# -- charge conservation -----------------------------------------------------

CHARGE_RECIPE = DataRecipe("annulus-spectrum", amplitude=1.0, seed=11, band=(6.0, 9.0))


@dataclass(frozen=True)
class ChargeDriftResult:
    dts: tuple
    drifts: tuple

    @property
    def halving_ratio(self) -> float:
        return self.drifts[0] / self.drifts[1] if self.drifts[1] > 0.0 else math.inf


def charge_drift_study(
    dts: tuple = (1e-3, 5e-4),
    n: int = 32,
    T: float = 1.0,
    mass: float = 0.5,
    recipe: DataRecipe = CHARGE_RECIPE,
) -> ChargeDriftResult:
    """Relative charge drift of the spinor flow at each step size.

    The amplitude is deliberately O(1): the second-order defect of the
    stepper is interaction-driven, so at small amplitude it hides below the
    third-order remainder and the halving ratio would read 8, not 4.
    """
    drifts = []
    for dt in dts:
        cfg = ExperimentConfig(
            system="csd",
            n=n,
            mass=mass,
            recipe=recipe,
            integrator=IntegratorConfig(dt=dt, T=T, snapshot_stride=10),
        )
        res = run_simulation(cfg)
        col = res.header.index("charge")
        q0 = res.rows[0][col]
        drifts.append(max(abs(row[col] - q0) / abs(q0) for row in res.rows))
    return ChargeDriftResult(tuple(dts), tuple(drifts))


# -- integrator order ---------------------------------------------------------

ORDER_RECIPE = DataRecipe("annulus-spectrum", amplitude=0.05, seed=5, band=(4.0, 7.0))


def _comp_distance(a, b) -> float:
    total = 0.0
    for name in a.comps:
        total += float(np.sum(np.abs(a.comps[name] - b.comps[name]) ** 2))
    return math.sqrt(total)


@dataclass(frozen=True)
class ConvergenceResult:
    dts: tuple
    errors: tuple
    slope: float


def convergence_study(
    kind: str,
    dts: tuple = (4e-3, 2e-3, 1e-3),
    dt_ref: float = 1.25e-4,
    T: float = 0.5,
    n: int = 32,
    recipe: DataRecipe = ORDER_RECIPE,
) -> ConvergenceResult:
    """Global-error slope against a self-refined reference trajectory."""
    cfg = ExperimentConfig(
        system=kind,
        n=n,
        mass=0.5 if kind == "csd" else 0.0,
        recipe=recipe,
        integrator=IntegratorConfig(dt=dt_ref, T=T, snapshot_stride=10**9),
    )
    system = build_system(cfg)
    state0, _ = build_state(system, recipe, cfg.constraint)

    def run(dt: float):
        st = state0.copy()
        integrate(system, st, IntegratorConfig(dt=dt, T=T, snapshot_stride=10**9))
        return st

    ref = run(dt_ref)
    errors = tuple(_comp_distance(run(dt), ref) for dt in dts)
    slope = float(np.polyfit(np.log(dts), np.log(errors), 1)[0])
    return ConvergenceResult(tuple(dts), errors, slope)


# -- Picard contraction --------------------------------------------------------

PICARD_RECIPE = DataRecipe("annulus-spectrum", amplitude=0.01, seed=7, band=(3.0, 6.0))


def picard_study(
    amplitude: float = 0.01,
    n: int = 32,
    config: PicardConfig | None = None,
    recipe: DataRecipe = PICARD_RECIPE,
) -> PicardResult:
    """Iteration differences for small scalar data.

    At the self-dual coupling the linear compensation term cancels exactly,
    so the first Duhamel correction is quadratic in the data and doubling
    the amplitude quadruples the first difference norm.
    """
    cfg = ExperimentConfig(
        system="csh",
        n=n,
        recipe=DataRecipe(recipe.name, amplitude, recipe.seed, recipe.band),
    )
    system = build_system(cfg)
    state0, _ = build_state(system, cfg.recipe, cfg.constraint)
    return picard_iterate(system, state0, config or PicardConfig(T=0.5))


# -- scaling covariance ---------------------------------------------------------

SCALING_RECIPE = DataRecipe("annulus-spectrum", amplitude=0.1, seed=9, band=(3.0, 6.0))


@dataclass(frozen=True)
class PullbackResult:
    lam: int
    error: float
    base_norm: float


def _scaled_field(f: ComplexField, lam: int, power: float) -> ComplexField:
    g = dilate_exact(f, lam)
    return ComplexField(g.grid, float(lam) ** power * g.values, g.rep)


def scaling_pullback_study(
    lam: int = 2,
    n: int = 32,
    dt: float = 2e-3,
    t_final: float = 0.25,
    recipe: DataRecipe = SCALING_RECIPE,
) -> PullbackResult:
    """Covariance of the massless, potential-free scalar flow under dilation.

    The companion run uses data (lam^1/2 f, lam^3/2 g) on the box shrunk by
    lam, step dt/lam, horizon t/lam; its state is compared against the base
    run mapped through the same dilation. The half-wave amplitudes pick up
    lam^(p-2) mode by mode, p = 1/2 for the scalar pair and 1 for the gauge
    pair, and zero-mode channels follow the same bookkeeping with one more
    lam for each time derivative.
    """
    if lam < 2:
        raise UsageError("the dilation factor must be an integer >= 2")
    steps = round(t_final / dt)
    if abs(steps * dt - t_final) > 1e-12 * t_final:
        raise UsageError("t_final must be a whole number of steps")

    grid = Grid2D(n)
    f, g = recipe.scalar_pair(grid)
    z = _zero(grid)
    base_sys = CSHSystem(grid, kappa=1.0, massive=False, potential=None)
    base, _ = csh_initial_data(base_sys, f, g, z, z, z, constraint="project")
    integrate(base_sys, base, IntegratorConfig(dt=dt, T=t_final, snapshot_stride=10**9))

    fine = Grid2D(n, grid.length / lam)
    zf = _zero(fine)
    scaled_sys = CSHSystem(fine, kappa=1.0, massive=False, potential=None)
    scaled, _ = csh_initial_data(
        scaled_sys,
        _scaled_field(f, lam, 0.5),
        _scaled_field(g, lam, 1.5),
        zf,
        zf,
        zf,
        constraint="project",
    )
    integrate(
        scaled_sys,
        scaled,
        IntegratorConfig(dt=dt / lam, T=t_final / lam, snapshot_stride=10**9),
    )

    # spectral pullback factors: fields scale lam^p, coefficients lam^(p-2)
    lamf = float(lam)
    num = 0.0
    den = 0.0
    for name, arr in scaled.comps.items():
        power = 0.5 if name.startswith("phi") else 1.0
        expected = lamf ** (power - 2.0) * base.comps[name]
        num += float(np.sum(np.abs(arr - expected) ** 2))
        den += float(np.sum(np.abs(expected) ** 2))
    for name, ch in scaled.channels.items():
        power = 0.5 if name == "phi" else 1.0
        ref = base.channels[name]
        expected_val = lamf ** (power - 2.0) * ref.value
        expected_vel = lamf ** (power - 1.0) * ref.velocity
        num += abs(ch.value - expected_val) ** 2 + abs(ch.velocity - expected_vel) ** 2
        den += abs(expected_val) ** 2 + abs(expected_vel) ** 2
    return PullbackResult(lam, math.sqrt(num / den), math.sqrt(den))


@dataclass(frozen=True)
class NormScalingRow:
    label: str
    lhs: float
    rhs: float
    rel: float


def norm_scaling_samples(
    lam: int = 2, n: int = 32, s: float = 0.5, r: float = 1.5
) -> list:
    """Homogeneous-norm scaling identity on two kinds of data.

    The plane wave dilates onto an exact lattice mode, so its row is exact
    to rounding; the Gaussian row compares against a formula-sampled
    dilation and carries the (tiny) alias mismatch of the two lattices.
    """
    grid = Grid2D(n)
    rows = []

    f = plane_wave(grid, (3, 2))
    lhs, rhs, rel = scaling_check(f, lam, s, r)
    rows.append(NormScalingRow("single-mode", lhs, rhs, rel))

    f = gaussian(grid, amplitude=1.0)
    fine = Grid2D(n, grid.length / lam)
    dilated = gaussian(
        fine,
        amplitude=float(lam),
        sigma=grid.length / 16.0 / lam,
        center=(fine.length / 2.0, fine.length / 2.0),
    )
    lhs, rhs, rel = scaling_check(f, lam, s, r, dilated=dilated)
    rows.append(NormScalingRow("gaussian", lhs, rhs, rel))
    return rows


# -- cone-restricted convolution integrals ---------------------------------------


@dataclass(frozen=True)
class SlopeFit:
    """Log-log power fits of the restricted integral against its exponents."""

    alpha1: float
    alpha2: float
    r: float
    A: float
    B: float
    ray_slope: float
    band_slope: float

    @property
    def ray_target(self) -> float:
        return self.A + self.B

    @property
    def band_target(self) -> float:
        return self.A


def cone_slope_study(
    alpha1: float,
    alpha2: float,
    r: float,
    taus: tuple = tuple(np.geomspace(10.0, 100.0, 7)),
) -> SlopeFit:
    """Fit the (+,+) integral along two rays of the (tau, |xi|) plane.

    Along |xi| = tau/2 the distance to the cone grows with tau, exposing
    A + B; along tau - |xi| = 1 the distance is pinned, exposing A alone.
    """
    exps = cone_integral_exponents(alpha1, alpha2, r, "pp")
    ray = [
        delta_convolution_integral(t, (t / 2.0, 0.0), alpha1, alpha2, r, "pp")
        for t in taus
    ]
    band = [
        delta_convolution_integral(t, (t - 1.0, 0.0), alpha1, alpha2, r, "pp")
        for t in taus
    ]
    logt = np.log(np.asarray(taus))
    ray_slope = float(np.polyfit(logt, np.log(ray), 1)[0])
    band_slope = float(np.polyfit(logt, np.log(band), 1)[0])
    return SlopeFit(alpha1, alpha2, r, exps.A, exps.B, ray_slope, band_slope)


@dataclass(frozen=True)
class ClosedFormRow:
    tau: float
    alpha1: float
    alpha2: float
    r: float
    quadrature: float
    exact: float
    rel: float


def closed_form_study(
    cases: tuple = ((0.0, 0.0, 2.0, 3.0), (0.5, 0.5, 2.0, 3.0), (0.3, 0.7, 1.5, 5.0)),
    xi_small: float = 1e-6,
) -> list:
    """Quadrature at nearly centered xi against the radial closed form.

    xi = 0 itself takes the analytic branch, so the honest comparison runs
    the ellipse quadrature at |xi| tiny but nonzero.
    """
    rows = []
    for a1, a2, r, tau in cases:
        exact = math.pi * (tau / 2.0) ** (1.0 - (a1 + a2) * r)
        got = delta_convolution_integral(tau, (xi_small, 0.0), a1, a2, r, "pp")
        rows.append(ClosedFormRow(tau, a1, a2, r, got, exact, abs(got - exact) / exact))
    return rows


@dataclass(frozen=True)
class MCComparison:
    quadrature: float
    coarse: float
    fine: float
    extrapolated: float

    @property
    def rel_error(self) -> float:
        return abs(self.extrapolated - self.quadrature) / self.quadrature


def _mc_smeared_delta(
    tau: float,
    xi: tuple,
    e1: float,
    e2: float,
    eps: float,
    samples: int,
    seed: int,
) -> float:
    """Monte-Carlo of the delta-restricted integral with a Gaussian fattened
    delta of width eps, sampled uniformly over a box holding the ellipse."""
    rng = np.random.default_rng([seed, 77])
    c = math.hypot(*xi)
    a = 0.5 * tau
    b = math.sqrt(a * a - 0.25 * c * c)
    pad = 4.0 * eps
    x0, x1 = 0.5 * xi[0] - a - pad, 0.5 * xi[0] + a + pad
    y0, y1 = 0.5 * xi[1] - b - pad, 0.5 * xi[1] + b + pad
    area = (x1 - x0) * (y1 - y0)
    total = 0.0
    chunk = 1 << 20
    left = samples
    while left > 0:
        m = min(chunk, left)
        left -= m
        ex = rng.uniform(x0, x1, m)
        ey = rng.uniform(y0, y1, m)
        r1 = np.hypot(ex, ey)
        r2 = np.hypot(ex - xi[0], ey - xi[1])
        u = tau - r1 - r2
        w = np.exp(-0.5 * (u / eps) ** 2) / (eps * math.sqrt(2.0 * math.pi))
        np.power(r1, -e1, out=r1)
        np.power(r2, -e2, out=r2)
        total += float(np.sum(w * r1 * r2))
    return area * total / samples


def mc_delta_convolution(
    tau: float = 3.0,
    xi: tuple = (1.0, 0.0),
    alpha1: float = 0.5,
    alpha2: float = 0.5,
    r: float = 2.0,
    eps: float = 0.1,
    samples: int = 6_000_000,
    seed: int = 1,
) -> MCComparison:
    """Smeared-delta Monte-Carlo check of the ellipse quadrature.

    The width-eps estimate carries an O(eps^2) mollification bias, so the
    study runs eps and eps/2 (with twice the samples) and extrapolates.
    """
    e1 = alpha1 * r
    e2 = alpha2 * r
    ref = delta_convolution_integral(tau, xi, alpha1, alpha2, r, "pp")
    coarse = _mc_smeared_delta(tau, xi, e1, e2, eps, samples, seed)
    fine = _mc_smeared_delta(tau, xi, e1, e2, 0.5 * eps, 2 * samples, seed)
    extrapolated = (4.0 * fine - coarse) / 3.0
    return MCComparison(ref, coarse, fine, extrapolated)


# -- randomized sup scans ---------------------------------------------------------

INTEGRAL_SCAN_PARAMS = {
    "alpha0": 0.0,
    "alpha1": 0.375,
    "alpha2": 0.375,
    "gamma": 0.25,
    "r": 2.0,
}

CALIBRATION_POINT = {"tau": 7.0, "xi": (3.0, 4.0), "rho": 3.0, "eta": (3.0, 0.0)}


@dataclass(frozen=True)
class ScanStudy:
    name: str
    sups: tuple
    seeds: tuple

    @property
    def spread(self) -> float:
        lo = min(self.sups)
        return (max(self.sups) - lo) / lo if lo > 0.0 else math.inf


def scan_suite(num: int = 1_000_000, seeds: tuple = (0, 1, 2)) -> list:
    """Every randomized sup scan at the frozen operating points.

    The weighted-integral scan runs at the marginal admissible point where
    gamma sits exactly at 1/(2r); there the weighted value plateaus at the
    cone instead of diverging, which is what keeps the sup seed-stable. Its
    parameters fail the far-tail hypotheses, so the difference-sign region
    is restricted to the near branch.
    """
    studies = []
    for name, fn, kw in (
        ("symbol_pp", symbol_bound_scan, {"sign1": 1, "sign2": 1}),
        ("symbol_pm", symbol_bound_scan, {"sign1": 1, "sign2": -1}),
        ("angle", angle_bound_scan, {"sign1": 1, "sign2": 1}),
        ("leibniz", leibniz_scan, {}),
    ):
        sups = tuple(fn(num=num, radius=10.0, seed=sd, **kw).sup for sd in seeds)
        studies.append(ScanStudy(name, sups, tuple(seeds)))
    sups = tuple(
        integral_sup_scan(
            num_samples=1000,
            radius=8.0,
            seed=sd,
            include_far_tail=False,
            **INTEGRAL_SCAN_PARAMS,
        ).sup
        for sd in seeds
    )
    studies.append(ScanStudy("integral", sups, tuple(seeds)))
    return studies


def calibration_ratio() -> float:
    """Leibniz ratio at the on-cone 3-4-5 point; exactly 1 by construction."""
    p = CALIBRATION_POINT
    return hyperbolic_leibniz_ratio(p["tau"], p["xi"], p["rho"], p["eta"], 1)


# -- bilinear refinement ------------------------------------------------------------

BILINEAR_POINT = {"s1": 0.8, "b1": 0.76, "s2": 0.8, "b2": 0.76, "r": 2.0}


@dataclass(frozen=True)
class BilinearRefinement:
    grids: tuple
    maxima: tuple

    @property
    def growth(self) -> float:
        return self.maxima[-1] / self.maxima[0] if self.maxima[0] > 0.0 else math.inf


def bilinear_refinement_study(
    grids: tuple = (16, 32),
    num_samples: int = 64,
    seed: int = 0,
    point: dict | None = None,
) -> BilinearRefinement:
    """Max product-norm ratio per grid at an admissible index point."""
    pt = dict(BILINEAR_POINT if point is None else point)
    check = fourier_lebesgue_product_check(
        r=pt["r"], alpha1=pt["s1"], alpha2=pt["s2"], b1=pt["b1"], b2=pt["b2"]
    )
    if not check.ok:
        raise UsageError(f"index point violates: {', '.join(check.failures)}")
    maxima = tuple(
        bilinear_ratio_estimate(
            pt["s1"],
            pt["b1"],
            pt["s2"],
            pt["b2"],
            r=pt["r"],
            n=n,
            nt=32,
            num_samples=num_samples,
            seed=seed,
        ).max
        for n in grids
    )
    return BilinearRefinement(tuple(grids), maxima)
