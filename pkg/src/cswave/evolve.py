"""Time integration: exponential steppers and a Picard contraction probe.

The linear flow is applied exactly (phase multiplication per component,
polynomial or rotational drift per channel); only the nonlinearity is
discretized. The midpoint scheme is the workhorse: second order, and it
reduces to velocity Verlet on the zero-mode channels.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BlowupError, ResourceError, UsageError
from .grid import SPECTRAL, ComplexField
from .norms import SpacetimeField, fl_norm, xsb_norm
from .state import Channel, HalfWaveState

_SCHEMES = ("etd-midpoint", "etd-euler")


def linear_propagate(state: HalfWaveState, h: float) -> HalfWaveState:
    """Exact free flow over time h, in place. Returns the state."""
    state.phase_multiply(h)
    state.drift_channels(h)
    state.time += h
    return state


def _step_euler(system, state: HalfWaveState, h: float) -> None:
    G = system.rhs(state)
    for name, arr in state.comps.items():
        arr += h * G.comps[name]
    state.phase_multiply(h)
    for name, ch in state.channels.items():
        ch.kick(h, G.kicks[name])
        ch.drift(h)


def _step_midpoint(system, state: HalfWaveState, h: float) -> None:
    # integrating-factor midpoint: the Euler slope is taken at t_n and
    # transported through the half flow along with the state
    half = 0.5 * h
    G1 = system.rhs(state)
    mid = state.copy()
    for name, arr in mid.comps.items():
        arr += half * G1.comps[name]
    for name, ch in mid.channels.items():
        ch.kick(half, G1.kicks[name])
    mid.phase_multiply(half)
    mid.drift_channels(half)
    G2 = system.rhs(mid)
    state.phase_multiply(half)
    state.drift_channels(half)
    for name, arr in state.comps.items():
        arr += h * G2.comps[name]
    state.phase_multiply(half)
    for name, ch in state.channels.items():
        ch.kick(h, G2.kicks[name])
        ch.drift(half)


def step(system, state: HalfWaveState, h: float, scheme: str = "etd-midpoint"):
    """Advance one step of size h in place and return the state."""
    if scheme not in _SCHEMES:
        raise UsageError(f"scheme must be one of {_SCHEMES}, got {scheme!r}")
    t0 = state.time
    if scheme == "etd-euler":
        _step_euler(system, state, h)
    else:
        _step_midpoint(system, state, h)
    state.time = t0 + h
    if not state.is_finite():
        raise BlowupError(state.time)
    return state


@dataclass(frozen=True)
class IntegratorConfig:
    dt: float
    T: float
    scheme: str = "etd-midpoint"
    snapshot_stride: int = 1

    def __post_init__(self):
        if not (self.dt > 0.0):
            raise UsageError("dt must be positive")
        if self.T < self.dt:
            raise UsageError("horizon T must cover at least one step")
        if self.scheme not in _SCHEMES:
            raise UsageError(f"scheme must be one of {_SCHEMES}")
        if self.snapshot_stride < 1:
            raise UsageError("snapshot_stride must be at least 1")

    @property
    def steps(self) -> int:
        """Whole steps closest to the horizon; T is matched to steps*dt."""
        return max(1, int(round(self.T / self.dt)))


def integrate(system, state: HalfWaveState, config: IntegratorConfig, observer=None):
    """March to the horizon in place.

    observer(k, state) fires at k = 0, then after every snapshot_stride-th
    step and after the last one. Node times are kept exact against drift:
    state.time is pinned to t0 + k*dt rather than accumulated.
    """
    t0 = state.time
    steps = config.steps
    if observer is not None:
        observer(0, state)
    for k in range(1, steps + 1):
        step(system, state, config.dt, config.scheme)
        state.time = t0 + k * config.dt
        if observer is not None and (
            k % config.snapshot_stride == 0 or k == steps
        ):
            observer(k, state)
    return state


@dataclass(frozen=True)
class PicardConfig:
    """Horizon, iteration count and the norms used for differences.

    nodes fixes the quadrature resolution of the Duhamel integrals; it is
    an implementation knob, not part of the mathematical statement.
    """

    T: float
    iterations: int = 5
    s: float = 0.75
    b: float = 0.76
    r: float = 2.0
    nodes: int = 16
    taper_rho: float = 0.25
    budget_bytes: int = 1 << 31

    def __post_init__(self):
        if not (self.T > 0.0):
            raise UsageError("horizon T must be positive")
        if self.iterations < 1:
            raise UsageError("need at least one iteration")
        if self.nodes < 1:
            raise UsageError("need at least one node interval")

    @property
    def dt(self) -> float:
        return self.T / self.nodes


@dataclass
class PicardResult:
    """Successive-difference sizes of the iteration and their ratios.

    contraction_failed is set when a difference grows tenfold over two
    iterations or a node stops being finite; it is a flag, not an error,
    since leaving the contraction regime is a legitimate observation.
    """

    diffs: list
    ratios: list
    contraction_failed: bool
    node_times: np.ndarray


@dataclass
class _Nodes:
    comps: dict
    chan_vals: dict
    chan_vels: dict


def _free_nodes(state0: HalfWaveState, times: np.ndarray) -> _Nodes:
    nt = len(times)
    comps = {}
    for name, c0 in state0.comps.items():
        lam = state0.lams[name]
        arr = np.empty((nt,) + c0.shape, dtype=np.complex128)
        for k, t in enumerate(times):
            arr[k] = c0 * np.exp(1j * t * lam)
        comps[name] = arr
    chan_vals = {}
    chan_vels = {}
    for name, ch in state0.channels.items():
        vals = np.empty((nt,) + ch.value.shape, dtype=np.complex128)
        if ch.velocity is not None:
            vels = np.empty_like(vals)
            for k, t in enumerate(times):
                vals[k] = ch.value + t * ch.velocity
                vels[k] = ch.velocity
            chan_vels[name] = vels
        else:
            for k, t in enumerate(times):
                vals[k] = np.exp(t * ch.generator) * ch.value
            chan_vels[name] = None
        chan_vals[name] = vals
    return _Nodes(comps, chan_vals, chan_vels)


def _node_state(system, state0: HalfWaveState, nodes: _Nodes, k: int, t: float):
    comps = {name: arr[k] for name, arr in nodes.comps.items()}
    channels = {}
    for name, ch in state0.channels.items():
        vals = nodes.chan_vals[name]
        vels = nodes.chan_vels[name]
        if vels is not None:
            channels[name] = Channel(vals[k], vels[k])
        else:
            channels[name] = Channel(vals[k], generator=ch.generator)
    return HalfWaveState(state0.grid, t, comps, state0.lams, channels)


def _rhs_at_nodes(system, state0: HalfWaveState, nodes: _Nodes, times: np.ndarray):
    nt = len(times)
    gcomps = {name: np.empty_like(arr) for name, arr in nodes.comps.items()}
    gkicks = {name: np.empty_like(v) for name, v in nodes.chan_vals.items()}
    for k, t in enumerate(times):
        res = system.rhs(_node_state(system, state0, nodes, k, state0.time + t))
        for name in gcomps:
            gcomps[name][k] = res.comps[name]
        for name in gkicks:
            gkicks[name][k] = res.kicks[name]
    return gcomps, gkicks


def _march(state0: HalfWaveState, gcomps: dict, gkicks: dict, times, dt: float):
    """Trapezoidal Duhamel update against the previous iterate's forcing."""
    nt = len(times)
    half = 0.5 * dt
    comps = {}
    for name, c0 in state0.comps.items():
        phase = np.exp(1j * dt * state0.lams[name])
        arr = np.empty((nt,) + c0.shape, dtype=np.complex128)
        arr[0] = c0
        g = gcomps[name]
        for k in range(nt - 1):
            arr[k + 1] = phase * (arr[k] + half * g[k]) + half * g[k + 1]
        comps[name] = arr
    chan_vals = {}
    chan_vels = {}
    for name, ch in state0.channels.items():
        f = gkicks[name]
        vals = np.empty((nt,) + ch.value.shape, dtype=np.complex128)
        vals[0] = ch.value
        if ch.velocity is not None:
            vels = np.empty_like(vals)
            vels[0] = ch.velocity
            for k in range(nt - 1):
                vals[k + 1] = vals[k] + dt * vels[k] + 0.5 * dt * dt * f[k]
                vels[k + 1] = vels[k] + half * (f[k] + f[k + 1])
            chan_vels[name] = vels
        else:
            rot = np.exp(dt * ch.generator)
            for k in range(nt - 1):
                vals[k + 1] = rot * (vals[k] + half * f[k]) + half * f[k + 1]
            chan_vels[name] = None
        chan_vals[name] = vals
    return _Nodes(comps, chan_vals, chan_vels)


def _comp_mode(name: str) -> str:
    sign = 1 if name.endswith("+") else -1
    orient = -1 if name.startswith("psi") else 1
    return "plus" if sign * orient == 1 else "minus"


def _nodes_finite(nodes: _Nodes) -> bool:
    for arr in nodes.comps.values():
        if not np.all(np.isfinite(arr.view(np.float64))):
            return False
    for arr in nodes.chan_vals.values():
        if not np.all(np.isfinite(arr)):
            return False
    return True


def _distance(state0: HalfWaveState, a: _Nodes, b: _Nodes, config: PicardConfig) -> float:
    grid = state0.grid
    nt = len(next(iter(a.comps.values())))
    window = nt * config.dt
    total = 0.0
    for name in a.comps:
        d = b.comps[name] - a.comps[name]
        slices = [d] if d.ndim == 3 else [d[:, i] for i in range(d.shape[1])]
        mode = _comp_mode(name)
        for sl in slices:
            st = SpacetimeField(grid, sl, window)
            total += xsb_norm(st, config.s, config.b, config.r, mode, config.taper_rho)
            sup = 0.0
            for k in range(nt):
                sup = max(
                    sup,
                    fl_norm(ComplexField(grid, sl[k], SPECTRAL), config.s, config.r),
                )
            total += sup
    for name in a.chan_vals:
        total += float(np.max(np.abs(b.chan_vals[name] - a.chan_vals[name])))
        if a.chan_vels[name] is not None:
            total += float(np.max(np.abs(b.chan_vels[name] - a.chan_vels[name])))
    return total


def picard_iterate(system, state0: HalfWaveState, config: PicardConfig) -> PicardResult:
    """Run the Duhamel fixed-point iteration from the free flow.

    Returns the sizes of successive differences in the dispersive norm plus
    a per-node spatial sup; for data in the contraction regime the ratios
    settle near the small factor set by the data size.
    """
    nt = config.nodes + 1
    per_set = sum(arr.size for arr in state0.comps.values()) * 16 * nt
    need = 3 * per_set + 2 * nt * state0.grid.n**2 * 16
    if need > config.budget_bytes:
        raise ResourceError(
            f"picard nodes need about {need} bytes, budget is {config.budget_bytes}"
        )
    times = np.arange(nt) * config.dt  # elapsed from the anchor state
    last = _free_nodes(state0, times)
    diffs: list = []
    failed = False
    for _ in range(config.iterations):
        gcomps, gkicks = _rhs_at_nodes(system, state0, last, times)
        cur = _march(state0, gcomps, gkicks, times, config.dt)
        if not _nodes_finite(cur):
            diffs.append(float("inf"))
            failed = True
            break
        diffs.append(_distance(state0, last, cur, config))
        last = cur
        if len(diffs) >= 3 and diffs[-1] > 10.0 * diffs[-3]:
            failed = True
            break
    ratios = [
        diffs[i + 1] / max(diffs[i], 1e-300) for i in range(len(diffs) - 1)
    ]
    return PicardResult(diffs, ratios, failed, state0.time + times)
