"""Chern-Simons gauge field coupled to a two-component Dirac spinor.

First-order matter: the spinor splits into eigenspaces of the Dirac operator
through the spectral projections, one half-wave per sign, and the mass term
exchanges the two. The gauge sector is the same Lorenz-gauge wave system as
in the scalar model, driven here by the spinor current

    n^mu = psi^dag alpha^mu psi,   alpha = (I, sigma^1, sigma^2).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConstraintViolationError, UsageError
from .grid import SPECTRAL, TWO_PI, ComplexField, Grid2D, lift_to_fine, restrict_from_fine
from .multipliers import derivative_symbol, dispersion_symbol
from .dirac import SpinorField, project_spinor_modes, signed_riesz_symbol
from .state import Channel, HalfWaveState, RhsResult
from .csh import (
    _project_rotational,
    _degenerate_mask,
    _require_real,
    _split_pair,
    gauge_residual,
)

__all__ = [
    "CSDSystem",
    "csd_rhs",
    "csd_initial_data",
    "charge",
    "dirac_current",
    "constraint_residual",
    "gauge_residual",
    "NullformSplit",
    "current_nullform_split",
    "interaction_nullform_split",
]


class CSDSystem:
    """Grid-resident operators and parameters for the spinor gauge system."""

    kind = "csd"

    def __init__(self, grid: Grid2D, kappa: float = 1.0, mass: float = 0.0):
        if kappa == 0.0:
            raise UsageError("the coupling kappa must be nonzero")
        if mass < 0.0:
            raise UsageError("the spinor mass must be nonnegative")
        self.grid = grid
        self.kappa = float(kappa)
        self.mass = float(mass)
        n = grid.n
        self.omega_a = dispersion_symbol(grid, 0.0)
        self.inv_a = np.zeros((n, n))
        np.divide(1.0, self.omega_a, out=self.inv_a, where=self.omega_a > 0.0)
        self.d1 = derivative_symbol(grid, 1)
        self.d2 = derivative_symbol(grid, 2)
        self._iomega_a = 1j * self.omega_a
        self._rhs_buf = None
        # a sign-s spinor mode oscillates against the sign of its eigenvalue
        self.lams = {"psi+": -self.omega_a, "psi-": self.omega_a}
        for j in range(3):
            self.lams[f"A{j}+"] = self.omega_a
            self.lams[f"A{j}-"] = -self.omega_a
        self.channel_fields = ("A0", "A1", "A2")

    def comp_names(self) -> tuple:
        return tuple(self.lams)

    def psi_generator(self) -> np.ndarray:
        """Diagonal of -i m beta: the exact rotation of the spinor mean."""
        return np.array([-1j * self.mass, 1j * self.mass])

    def blank_state(self, time: float = 0.0) -> HalfWaveState:
        n = self.grid.n
        comps = {
            "psi+": np.zeros((2, n, n), dtype=np.complex128),
            "psi-": np.zeros((2, n, n), dtype=np.complex128),
        }
        for j in range(3):
            comps[f"A{j}+"] = np.zeros((n, n), dtype=np.complex128)
            comps[f"A{j}-"] = np.zeros((n, n), dtype=np.complex128)
        channels = {
            name: Channel(np.complex128(0.0), np.complex128(0.0))
            for name in self.channel_fields
        }
        channels["psi"] = Channel(
            np.zeros(2, dtype=np.complex128), generator=self.psi_generator()
        )
        return HalfWaveState(self.grid, time, comps, self.lams, channels)

    def reconstruct(self, state: HalfWaveState) -> dict:
        """Spectral spinor and gauge fields, channel modes included."""
        out = {}
        psi = state.comps["psi+"] + state.comps["psi-"]
        psi[:, 0, 0] = state.channels["psi"].value
        out["psi"] = psi
        for j in range(3):
            name = f"A{j}"
            plus = state.comps[name + "+"]
            minus = state.comps[name + "-"]
            val = plus + minus
            vel = 1j * self.omega_a * (plus - minus)
            ch = state.channels[name]
            val[0, 0] = ch.value
            vel[0, 0] = ch.velocity
            out[name] = val
            out[name + "_t"] = vel
        return out

    def rhs(self, state: HalfWaveState) -> RhsResult:
        """Nonlinear forcing: gauge waves from the current, spinor from the
        potential term and the mass exchange. Cubic at worst, so one doubled
        grid carries every product alias-free."""
        comps = state.comps
        channels = state.channels
        d1, d2 = self.d1, self.d2
        n = self.grid.n
        buf = self._rhs_buf
        if buf is None:
            buf = self._rhs_buf = np.empty((11, n, n), dtype=np.complex128)
        # slots: psi1 psi2 d1psi1 d1psi2 d2psi1 d2psi2 A0 A1 A2 At1 At2
        for i in range(2):
            np.add(comps["psi+"][i], comps["psi-"][i], out=buf[i])
            buf[i][0, 0] = channels["psi"].value[i]
            np.multiply(d1, buf[i], out=buf[2 + i])
            np.multiply(d2, buf[i], out=buf[4 + i])
        for j in range(3):
            np.add(comps[f"A{j}+"], comps[f"A{j}-"], out=buf[6 + j])
            buf[6 + j][0, 0] = channels[f"A{j}"].value
        for slot, name in ((9, "A1"), (10, "A2")):
            np.subtract(comps[name + "+"], comps[name + "-"], out=buf[slot])
            buf[slot] *= self._iomega_a
            buf[slot][0, 0] = channels[name].velocity
        p1, p2, d1p1, d1p2, d2p1, d2p2, A0, A1, A2, At1, At2 = lift_to_fine(
            buf, self.grid
        )
        m = self.mass
        wm = A1 - 1j * A2
        M1 = A0 * p1
        M1 += wm * p2
        np.negative(M1, out=M1)
        wp = A1 + 1j * A2
        M2 = A0 * p2
        M2 += wp * p1
        np.negative(M2, out=M2)
        pt1 = d2p2 - M1
        if m != 0.0:
            pt1 -= m * p1
        pt1 *= 1j
        pt1 -= d1p2
        pt2 = d2p1 + M2
        if m != 0.0:
            pt2 -= m * p2
        pt2 *= -1j
        pt2 -= d1p1
        n0 = p1.real**2
        n0 += p1.imag**2
        n0 += p2.real**2
        n0 += p2.imag**2
        cp1 = np.conj(p1)
        cross = cp1 * p2
        n1 = 2.0 * cross.real
        n2 = 2.0 * cross.imag
        np.conj(pt1, out=pt1)
        dcross = pt1 * p2
        np.multiply(cp1, pt2, out=pt2)
        dcross += pt2
        nd1 = 2.0 * dcross.real
        nd2 = 2.0 * dcross.imag
        n0h, n1h, n2h, nd1h, nd2h, M1h, M2h = restrict_from_fine(
            np.stack([n0, n1, n2, nd1, nd2, M1, M2]), self.grid
        )
        cpl = 2.0 / self.kappa
        F = {
            "A0": -cpl * (d1 * n2h - d2 * n1h),
            "A1": -cpl * (nd2h + d2 * n0h),
            "A2": cpl * (nd1h + d1 * n0h),
        }
        # A is a real field; its unpaired Nyquist row cannot be embedded
        # symmetrically, so forcing there would make the lifted field complex
        # and silently break charge conservation. Keep the row empty.
        h = n // 2
        for name in ("A0", "A1", "A2"):
            F[name][h, :] = 0.0
            F[name][:, h] = 0.0
        out_comps = {}
        kicks = {}
        for name in ("A0", "A1", "A2"):
            g = -0.5j * self.inv_a * F[name]
            out_comps[name + "+"] = g
            out_comps[name + "-"] = -g
            kicks[name] = F[name][0, 0]
        Mh = np.stack([M1h, M2h])
        for s, tag, other in ((1, "+", "-"), (-1, "-", "+")):
            g = project_spinor_modes(self.grid, Mh, s)
            if m != 0.0:
                opp = comps["psi" + other]
                g[0] += m * opp[0]
                g[1] -= m * opp[1]
            g *= -1j
            g[:, 0, 0] = 0.0
            out_comps["psi" + tag] = g
        kicks["psi"] = -1j * Mh[:, 0, 0]
        return RhsResult(out_comps, kicks)


def csd_rhs(system: CSDSystem, state: HalfWaveState) -> RhsResult:
    return system.rhs(state)


def _spinor_density(grid: Grid2D, psi_hat: np.ndarray) -> tuple:
    """Alias-free spectra of n^0, n^1, n^2 from a spectral spinor."""
    p1, p2 = lift_to_fine(psi_hat, grid)
    n0 = p1.real**2 + p1.imag**2 + p2.real**2 + p2.imag**2
    cross = np.conj(p1) * p2
    return restrict_from_fine(
        np.stack([n0, 2.0 * cross.real, 2.0 * cross.imag]), grid
    )


def csd_initial_data(
    system: CSDSystem,
    psi0: SpinorField,
    a0: ComplexField,
    a1: ComplexField,
    a2: ComplexField,
    constraint: str = "project",
    tol: float = 1e-8,
) -> tuple[HalfWaveState, dict]:
    """Build a state from spinor data psi0 and gauge data (a0, a1, a2).

    Here the elliptic constraint reads curl a = -(2/kappa) psi^dag psi; the
    projection replaces the rotational part of (a1, a2) accordingly, up to
    the unattainable torus flux. Time derivatives of the potentials follow
    from the Lorenz condition and the curvature equations.
    """
    grid = system.grid
    if psi0.grid != grid:
        raise UsageError("psi0 lives on a different grid")
    for fld, name in ((a0, "a0"), (a1, "a1"), (a2, "a2")):
        if fld.grid != grid:
            raise UsageError(f"{name} lives on a different grid")
        _require_real(fld, name)
    if constraint not in ("project", "check", "none"):
        raise UsageError("constraint must be 'project', 'check' or 'none'")

    ph = psi0.as_spectral().values
    a0h = a0.as_spectral().values.copy()
    a1h = a1.as_spectral().values.copy()
    a2h = a2.as_spectral().values.copy()
    d1, d2 = system.d1, system.d2
    cpl = 2.0 / system.kappa

    n0h, n1h, n2h = _spinor_density(grid, ph)
    Ch = -cpl * n0h

    info = {"constraint": constraint}
    if constraint == "project":
        a1h, a2h = _project_rotational(grid, d1, d2, a1h, a2h, Ch, info)
    elif constraint == "check":
        resid = float(np.linalg.norm(d1 * a2h - d2 * a1h - Ch)) * (
            TWO_PI / grid.length
        )
        info["constraint_residual"] = resid
        if resid > tol:
            raise ConstraintViolationError(
                f"curl constraint residual {resid:.3e} exceeds {tol:.1e}"
            )

    at0 = d1 * a1h + d2 * a2h
    at1 = d1 * a0h - cpl * n2h
    at2 = d2 * a0h + cpl * n1h

    state = system.blank_state(0.0)
    h = grid.n // 2
    for name, (val, vel) in {
        "A0": (a0h, at0),
        "A1": (a1h, at1),
        "A2": (a2h, at2),
    }.items():
        # real gauge fields stay off the unpaired Nyquist row, matching rhs
        for arr in (val, vel):
            arr[h, :] = 0.0
            arr[:, h] = 0.0
        plus, minus = _split_pair(val, vel, system.omega_a, system.inv_a)
        state.channels[name] = Channel(val[0, 0], vel[0, 0])
        plus[0, 0] = 0.0
        minus[0, 0] = 0.0
        state.comps[name + "+"] = np.ascontiguousarray(plus)
        state.comps[name + "-"] = np.ascontiguousarray(minus)
    plus = project_spinor_modes(grid, ph, 1)
    minus = project_spinor_modes(grid, ph, -1)
    mean = ph[:, 0, 0].copy()
    plus[:, 0, 0] = 0.0
    minus[:, 0, 0] = 0.0
    state.comps["psi+"] = plus
    state.comps["psi-"] = minus
    state.channels["psi"] = Channel(mean, generator=system.psi_generator())
    return state, info


def charge(system: CSDSystem, state: HalfWaveState) -> float:
    """Total charge: the space integral of psi^dag psi."""
    psi = system.reconstruct(state)["psi"]
    return float(np.sum(psi.real**2 + psi.imag**2)) * system.grid.cell


def dirac_current(system: CSDSystem, state: HalfWaveState) -> dict:
    """Spectral current components n^0, n^1, n^2 of the present state."""
    psi = system.reconstruct(state)["psi"]
    n0h, n1h, n2h = _spinor_density(system.grid, psi)
    mk = lambda a: ComplexField(system.grid, a, SPECTRAL)
    return {"n0": mk(n0h), "n1": mk(n1h), "n2": mk(n2h)}


def constraint_residual(system: CSDSystem, state: HalfWaveState) -> float:
    """L^2 defect of curl a = -(2/kappa) n^0, unattainable modes excluded."""
    R = system.reconstruct(state)
    n0h, _, _ = _spinor_density(system.grid, R["psi"])
    res = system.d1 * R["A2"] - system.d2 * R["A1"] + (2.0 / system.kappa) * n0h
    res[0, 0] = 0.0
    res[_degenerate_mask(system.grid)] = 0.0
    return float(np.linalg.norm(res)) * (TWO_PI / system.grid.length)


def _alpha_apply(mu: int, f: np.ndarray) -> np.ndarray:
    """alpha^mu acting on a stacked spinor, pointwise in either space."""
    if mu == 0:
        return f.copy()
    if mu == 1:
        return np.stack([f[1], f[0]])
    if mu == 2:
        return np.stack([-1j * f[1], 1j * f[0]])
    raise UsageError("alpha index must be 0, 1 or 2")


def _signed_parts(grid: Grid2D, psi_hat: np.ndarray) -> dict:
    out = {}
    for s in (1, -1):
        pr = project_spinor_modes(grid, psi_hat, s)
        pr[:, 0, 0] = 0.0
        out[s] = pr
    return out


@dataclass(frozen=True)
class NullformSplit:
    """A bilinear or potential term split into its projected part (the piece
    carrying null structure) and the bounded radial remainder."""

    direct: np.ndarray
    projected: np.ndarray
    remainder: np.ndarray
    rel_error: float


def current_nullform_split(psi: SpinorField) -> NullformSplit:
    """Split psi^dag alpha^mu psi over sign pairs of the spinor.

    Index mu runs over the leading axis of the returned spectra. Each
    sign-(s1, s2) summand is rewritten with the companion projection on the
    left factor of alpha, leaving a Riesz-symbol remainder; the identity is
    exact mode by mode away from xi = 0, so mean-free parts reproduce the
    direct product to rounding.
    """
    grid = psi.grid
    ph = psi.as_spectral().values
    parts = _signed_parts(grid, ph)
    total = parts[1] + parts[-1]

    names = []
    specs = []

    def push(name, arr):
        names.append(name)
        specs.append(arr)

    push("t1", total[0])
    push("t2", total[1])
    riesz = {
        (j, s): signed_riesz_symbol(grid, j, s) for j in (1, 2) for s in (1, -1)
    }
    for s, tag in ((1, "+"), (-1, "-")):
        push(f"p1{tag}", parts[s][0])
        push(f"p2{tag}", parts[s][1])
        for mu in range(3):
            proj = project_spinor_modes(grid, _alpha_apply(mu, parts[s]), -s)
            push(f"pa{mu}{tag}1", proj[0])
            push(f"pa{mu}{tag}2", proj[1])
        for j in (1, 2):
            push(f"r{j}p1{tag}", riesz[(j, s)] * parts[s][0])
            push(f"r{j}p2{tag}", riesz[(j, s)] * parts[s][1])

    F = dict(zip(names, lift_to_fine(np.stack(specs), grid)))

    def pair(c1a, c2a, c1b, c2b):
        return np.conj(c1a) * c1b + np.conj(c2a) * c2b

    shape = F["t1"].shape
    direct = np.zeros((3,) + shape, dtype=np.complex128)
    projected = np.zeros_like(direct)
    remainder = np.zeros_like(direct)
    for mu in range(3):
        at = _alpha_apply(mu, np.stack([F["t1"], F["t2"]]))
        direct[mu] = pair(F["t1"], F["t2"], at[0], at[1])
        for t1 in ("+", "-"):
            for t2 in ("+", "-"):
                projected[mu] += pair(
                    F[f"p1{t1}"], F[f"p2{t1}"], F[f"pa{mu}{t2}1"], F[f"pa{mu}{t2}2"]
                )
                if mu == 0:
                    rem1, rem2 = -F[f"p1{t2}"], -F[f"p2{t2}"]
                else:
                    rem1, rem2 = F[f"r{mu}p1{t2}"], F[f"r{mu}p2{t2}"]
                remainder[mu] -= pair(F[f"p1{t1}"], F[f"p2{t1}"], rem1, rem2)

    flat = restrict_from_fine(direct.reshape((3,) + shape), grid)
    proj_h = restrict_from_fine(projected, grid)
    rem_h = restrict_from_fine(remainder, grid)
    num = float(np.linalg.norm(flat - proj_h - rem_h))
    den = max(float(np.linalg.norm(flat)), 1e-300)
    return NullformSplit(flat, proj_h, rem_h, num / den)


def interaction_nullform_split(
    psi: SpinorField,
    a0: ComplexField,
    a1: ComplexField,
    a2: ComplexField,
    sign0: int = 1,
) -> NullformSplit:
    """Split the potential term -A_mu alpha^mu psi seen from a sign-s0 output.

    The output projection is applied after the products; inside, each spinor
    half-wave contributes a companion-projected piece plus a Riesz remainder,
    exactly as in the current split. Gauge factors keep their means.
    """
    if sign0 not in (1, -1):
        raise UsageError("sign0 must be +1 or -1")
    grid = psi.grid
    for fld, name in ((a0, "a0"), (a1, "a1"), (a2, "a2")):
        if fld.grid != grid:
            raise UsageError(f"{name} lives on a different grid")
    ph = psi.as_spectral().values
    parts = _signed_parts(grid, ph)
    total = parts[1] + parts[-1]
    amu = (
        a0.as_spectral().values,
        a1.as_spectral().values,
        a2.as_spectral().values,
    )

    names = []
    specs = []

    def push(name, arr):
        names.append(name)
        specs.append(arr)

    for mu in range(3):
        push(f"A{mu}", amu[mu])
    push("t1", total[0])
    push("t2", total[1])
    riesz = {
        (j, s): signed_riesz_symbol(grid, j, s) for j in (1, 2) for s in (1, -1)
    }
    for s, tag in ((1, "+"), (-1, "-")):
        push(f"p1{tag}", parts[s][0])
        push(f"p2{tag}", parts[s][1])
        for mu in range(3):
            proj = project_spinor_modes(grid, _alpha_apply(mu, parts[s]), -s)
            push(f"pa{mu}{tag}1", proj[0])
            push(f"pa{mu}{tag}2", proj[1])
        for j in (1, 2):
            push(f"r{j}p1{tag}", riesz[(j, s)] * parts[s][0])
            push(f"r{j}p2{tag}", riesz[(j, s)] * parts[s][1])

    F = dict(zip(names, lift_to_fine(np.stack(specs), grid)))

    shape = F["t1"].shape
    direct = np.zeros((2,) + shape, dtype=np.complex128)
    projected = np.zeros_like(direct)
    remainder = np.zeros_like(direct)
    for mu in range(3):
        at = _alpha_apply(mu, np.stack([F["t1"], F["t2"]]))
        direct[0] -= F[f"A{mu}"] * at[0]
        direct[1] -= F[f"A{mu}"] * at[1]
        for tag, s in (("+", 1), ("-", -1)):
            projected[0] -= F[f"A{mu}"] * F[f"pa{mu}{tag}1"]
            projected[1] -= F[f"A{mu}"] * F[f"pa{mu}{tag}2"]
            if mu == 0:
                rem1, rem2 = -F[f"p1{tag}"], -F[f"p2{tag}"]
            else:
                rem1, rem2 = F[f"r{mu}p1{tag}"], F[f"r{mu}p2{tag}"]
            remainder[0] += F[f"A{mu}"] * rem1
            remainder[1] += F[f"A{mu}"] * rem2

    out = []
    for block in (direct, projected, remainder):
        spec = restrict_from_fine(block, grid)
        out.append(project_spinor_modes(grid, spec, sign0))
    direct_h, proj_h, rem_h = out
    num = float(np.linalg.norm(direct_h - proj_h - rem_h))
    den = max(float(np.linalg.norm(direct_h)), 1e-300)
    return NullformSplit(direct_h, proj_h, rem_h, num / den)
