"""Evolution state for half-wave systems: oscillatory components and channels.

A state keeps one spectral array per half-wave component together with that
component's phase generator lam(xi): the free flow is multiplication by
exp(i t lam). Frequencies where lam vanishes (the zero mode of a massless
operator) cannot live in a component; each such mode gets a channel holding
the spectral coefficient and, for second-order fields, its velocity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import UsageError
from .grid import Grid2D


@dataclass
class Channel:
    """Zero-mode carrier. Second order: (value, velocity) with linear drift
    value += h * velocity. First order: value only, with an exact diagonal
    rotation exp(h * generator) as the linear flow."""

    value: np.ndarray
    velocity: np.ndarray | None = None
    generator: np.ndarray | None = None

    def __post_init__(self):
        self.value = np.asarray(self.value, dtype=np.complex128)
        if self.velocity is not None:
            self.velocity = np.asarray(self.velocity, dtype=np.complex128)
            if self.generator is not None:
                raise UsageError("a channel is either second order or rotating, not both")
        if self.generator is not None:
            self.generator = np.asarray(self.generator, dtype=np.complex128)

    def copy(self) -> "Channel":
        return Channel(
            self.value.copy(),
            None if self.velocity is None else self.velocity.copy(),
            None if self.generator is None else self.generator.copy(),
        )

    def drift(self, h: float) -> None:
        if self.velocity is not None:
            self.value = self.value + h * self.velocity
        elif self.generator is not None:
            self.value = np.exp(h * self.generator) * self.value

    def kick(self, h: float, rate: np.ndarray) -> None:
        if self.velocity is not None:
            self.velocity = self.velocity + h * np.asarray(rate)
        else:
            self.value = self.value + h * np.asarray(rate)


@dataclass
class RhsResult:
    """Nonlinear forcing: per-component spectral arrays plus channel rates."""

    comps: dict
    kicks: dict


@dataclass
class HalfWaveState:
    grid: Grid2D
    time: float
    comps: dict
    lams: dict
    channels: dict = field(default_factory=dict)

    def __post_init__(self):
        if set(self.comps) != set(self.lams):
            raise UsageError("components and phase generators must share keys")
        for name, arr in self.comps.items():
            if arr.shape[-2:] != (self.grid.n, self.grid.n):
                raise UsageError(f"component {name!r} has shape {arr.shape}")

    def copy(self) -> "HalfWaveState":
        return HalfWaveState(
            self.grid,
            self.time,
            {k: v.copy() for k, v in self.comps.items()},
            self.lams,
            {k: c.copy() for k, c in self.channels.items()},
        )

    def is_finite(self) -> bool:
        for arr in self.comps.values():
            if not np.all(np.isfinite(arr.view(np.float64))):
                return False
        for ch in self.channels.values():
            if not np.all(np.isfinite(ch.value)):
                return False
            if ch.velocity is not None and not np.all(np.isfinite(ch.velocity)):
                return False
        return True

    def phase_multiply(self, h: float) -> None:
        """Advance every component by its free flow exp(i h lam)."""
        for name, table in _phase_tables(self.lams, h).items():
            self.comps[name] *= table

    def drift_channels(self, h: float) -> None:
        for ch in self.channels.values():
            ch.drift(h)


# Steppers revisit the same (lams, h) pair thousands of times; the exp tables
# are cached per generator dict, which systems build once and never mutate.
# Holding the dict itself keeps id() stable for the key.
_PHASE_CACHE: dict = {}


def _phase_tables(lams: dict, h: float) -> dict:
    entry = _PHASE_CACHE.get(id(lams))
    if entry is None or entry[0] is not lams:
        if len(_PHASE_CACHE) >= 8:
            _PHASE_CACHE.clear()
        entry = (lams, {})
        _PHASE_CACHE[id(lams)] = entry
    per_h = entry[1]
    tables = per_h.get(h)
    if tables is None:
        if len(per_h) >= 16:
            per_h.clear()
        tables = {name: np.exp(1j * h * lam) for name, lam in lams.items()}
        per_h[h] = tables
    return tables
