"""Restricted convolution integrals over cone sections and their exponents.

The central object is the curve integral

    I(tau, xi) = integral delta(tau - s1|eta| - s2|zeta|) |eta|^(-a1 r)
                 |zeta|^(-a2 r) d eta,   zeta = xi - eta,

whose level set is an ellipse with foci 0 and xi for signs (+,+) and one
branch of a hyperbola for signs (+,-). Both are parametrized exactly; the
quadrature is spectral on the ellipse and adaptive plus an analytic tail on
the hyperbola.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate as _integrate

from .errors import HypothesisError, QuadratureError, UsageError

_SIGNS = ("pp", "pm")
_REGIONS = ("all", "near", "far")

# coshpsi = 2 splits the hyperbola into |eta|+|zeta| <= 2|xi| and the tail
_PSI_SPLIT = float(np.arccosh(2.0))
# beyond this the branch is a pure exponential to double precision
_PSI_ASYMPTOTIC = 35.0


@dataclass(frozen=True)
class ConeIntegralExponents:
    """Power-law exponents of I near its singular support: tau^A * dist^B."""

    A: float
    B: float
    regime: str


def cone_integral_exponents(
    alpha1: float, alpha2: float, r: float, case: str
) -> ConeIntegralExponents:
    """Closed-form asymptotic exponents of the cone-restricted integral.

    case "pp" is the sum surface (distance measured as tau - |xi|), case
    "pm_a" the near part of the difference surface (distance |xi| - |tau|,
    prefactor a power of |xi|). The far part "pm_b" has no clean power pair
    and is refused. The borderline max(alpha_i) r = 3/2 mixes logarithms in
    and is refused as well.
    """
    if not (r > 0.0):
        raise UsageError("r must be positive")
    e1 = alpha1 * r
    e2 = alpha2 * r
    if abs(max(e1, e2) - 1.5) <= 1e-12:
        raise UsageError("borderline max(alpha_i) r = 3/2 has logarithmic asymptotics")
    regime = "low" if max(e1, e2) < 1.5 else "high"
    if case == "pp":
        m = max(e1, e2, 1.5)
        return ConeIntegralExponents(m - e1 - e2, 1.0 - m, regime)
    if case == "pm_a":
        m = max(e2, 1.5)
        return ConeIntegralExponents(m - e1 - e2, 1.0 - m, regime)
    if case == "pm_b":
        raise UsageError("the far difference region has no closed exponent pair")
    raise UsageError(f"case must be 'pp', 'pm_a' or 'pm_b', got {case!r}")


def _ellipse_integral(tau: float, axi: float, e1: float, e2: float, rtol: float) -> float:
    a = 0.5 * tau
    c = 0.5 * axi
    b2 = a * a - c * c
    b = math.sqrt(b2)
    prev = None
    n = 64
    while n <= 1 << 22:
        psi = (2.0 * np.pi / n) * np.arange(n)
        cp = np.cos(psi)
        sp = np.sin(psi)
        ea = a + c * cp
        ez = a - c * cp
        arc = np.sqrt(a * a * sp * sp + b2 * cp * cp)
        vals = ea ** (-e1) * ez ** (-e2) * arc * np.sqrt(ea * ez) / (2.0 * b)
        cur = float(vals.mean()) * 2.0 * np.pi
        if prev is not None and abs(cur - prev) <= rtol * max(abs(cur), 1e-300):
            return cur
        prev = cur
        n *= 2
    raise QuadratureError("ellipse quadrature did not converge")


def _hyperbola_integrand(psi, a, c, B, e1, e2):
    ch = np.cosh(psi)
    ea = c * ch + a
    ez = c * ch - a
    return ea ** (1.0 - e1) * ez ** (1.0 - e2) / B


def _quad(f, lo, hi, rtol):
    val, err, *_ = _integrate.quad(f, lo, hi, epsabs=0.0, epsrel=1e-10, limit=200, full_output=1)
    if err > max(rtol * abs(val), 1e-250):
        raise QuadratureError(
            f"adaptive quadrature error {err:.3e} too large on [{lo:.3g}, {hi:.3g}]"
        )
    return float(val)


def _hyperbola_far(a, c, B, e1, e2, rtol):
    total = e1 + e2
    if total <= 2.0:
        raise UsageError(
            "far difference integral diverges unless (alpha1 + alpha2) r > 2"
        )
    f = lambda psi: _hyperbola_integrand(psi, a, c, B, e1, e2)
    body = _quad(f, _PSI_SPLIT, _PSI_ASYMPTOTIC, rtol)
    # beyond the cut cosh(psi) = exp(psi)/2 to machine precision
    lam = 2.0 - total
    tail = (0.5 * c) ** lam * math.exp(lam * _PSI_ASYMPTOTIC) / (B * (total - 2.0))
    return body + tail


def delta_convolution_integral(
    tau: float,
    xi,
    alpha1: float,
    alpha2: float,
    r: float,
    signs: str = "pp",
    region: str = "all",
    rtol: float = 1e-8,
) -> float:
    """Evaluate the delta-restricted convolution integral at one point.

    signs "pp" integrates over |eta| + |zeta| = tau (needs tau > |xi|); signs
    "pm" over |eta| - |zeta| = tau (needs |tau| < |xi|), where region "near"
    keeps |eta| + |zeta| <= 2|xi|, "far" the complement, "all" both. The
    result depends on xi only through |xi|.
    """
    if signs not in _SIGNS:
        raise UsageError(f"signs must be one of {_SIGNS}, got {signs!r}")
    if region not in _REGIONS:
        raise UsageError(f"region must be one of {_REGIONS}, got {region!r}")
    if not (r > 0.0):
        raise UsageError("r must be positive")
    xi = np.asarray(xi, dtype=np.float64)
    if xi.shape != (2,):
        raise UsageError("xi must be a 2-vector")
    tau = float(tau)
    axi = float(np.hypot(xi[0], xi[1]))
    e1 = alpha1 * r
    e2 = alpha2 * r

    if signs == "pp":
        if region != "all":
            raise UsageError("the sum surface has no near/far split")
        if not (tau > axi):
            raise UsageError("sum surface is empty or singular unless tau > |xi|")
        if axi == 0.0:
            # delta(tau - 2|eta|) reduces to a single radius
            return np.pi * (0.5 * tau) ** (1.0 - e1 - e2)
        return _ellipse_integral(tau, axi, e1, e2, rtol)

    if tau < 0.0:
        # eta <-> zeta swaps the roles and the exponents
        return delta_convolution_integral(-tau, xi, alpha2, alpha1, r, "pm", region, rtol)
    if not (tau < axi):
        raise UsageError("difference surface needs |tau| < |xi|")
    a = 0.5 * tau
    c = 0.5 * axi
    B = math.sqrt(c * c - a * a)
    out = 0.0
    if region in ("all", "near"):
        f = lambda psi: _hyperbola_integrand(psi, a, c, B, e1, e2)
        out += _quad(f, 0.0, _PSI_SPLIT, rtol)
    if region in ("all", "far"):
        out += _hyperbola_far(a, c, B, e1, e2, rtol)
    return out


def check_scan_hypotheses(
    alpha0: float,
    alpha1: float,
    alpha2: float,
    gamma: float,
    r: float,
    include_far_tail: bool = True,
) -> None:
    """Validate the admissibility inequalities for the weighted sup scan.

    Raises HypothesisError naming the first failing condition. With
    include_far_tail=False the two conditions that only control the far
    difference region are waived, matching the restricted scan.
    """
    tol = 1e-12
    if not (1.0 < r <= 2.0):
        raise HypothesisError(f"need 1 < r <= 2, got r = {r}")
    if abs(alpha1 + alpha2 - alpha0 - gamma - 1.0 / r) > tol:
        raise HypothesisError(
            "scaling balance alpha1 + alpha2 - alpha0 = gamma + 1/r fails: "
            f"{alpha1 + alpha2 - alpha0} != {gamma + 1.0 / r}"
        )
    if not (0.0 <= alpha0 + tol):
        raise HypothesisError(f"need alpha0 >= 0, got {alpha0}")
    if not (alpha0 <= min(alpha1, alpha2) + tol):
        raise HypothesisError(
            f"need alpha0 <= min(alpha1, alpha2): {alpha0} > {min(alpha1, alpha2)}"
        )
    if not (gamma + tol >= 1.0 / (2.0 * r)):
        raise HypothesisError(f"need gamma >= 1/(2r): {gamma} < {1.0 / (2.0 * r)}")
    if not (gamma + tol >= alpha1 - 1.0 / r):
        raise HypothesisError(f"need gamma >= alpha1 - 1/r: {gamma} < {alpha1 - 1.0 / r}")
    if not (gamma + tol >= alpha2 - 1.0 / r):
        raise HypothesisError(f"need gamma >= alpha2 - 1/r: {gamma} < {alpha2 - 1.0 / r}")
    if abs(max(alpha1, alpha2) - 1.5 / r) <= tol:
        raise HypothesisError("borderline max(alpha1, alpha2) = 3/(2r) is excluded")
    if include_far_tail:
        if not (alpha1 + alpha2 > 2.0 / r):
            raise HypothesisError(
                f"need alpha1 + alpha2 > 2/r: {alpha1 + alpha2} <= {2.0 / r}"
            )
        if not (alpha0 > 1.0 / r - gamma):
            raise HypothesisError(
                f"need alpha0 > 1/r - gamma: {alpha0} <= {1.0 / r - gamma}"
            )


@dataclass(frozen=True)
class IntegralScanResult:
    """Weighted-integral sup scan: the sup, its witness rows, and rejects."""

    sup: float
    rows: list
    num_rejected: int


def integral_sup_scan(
    alpha0: float,
    alpha1: float,
    alpha2: float,
    gamma: float,
    r: float,
    num_samples: int = 400,
    radius: float = 8.0,
    seed: int = 0,
    include_far_tail: bool = True,
    rtol: float = 1e-8,
) -> IntegralScanResult:
    """Randomized sup of ||tau|-|xi||^gamma |xi|^alpha0 I(tau,xi)^(1/r).

    Samples xi uniformly in a ball and tau >= 0 (the integrand is even in
    tau after swapping the input exponents). Points in the band
    ||tau|-|xi|| < 1e-3 <xi> hug the singular support and are rejected and
    counted. Admissibility is checked first; see check_scan_hypotheses.
    """
    check_scan_hypotheses(alpha0, alpha1, alpha2, gamma, r, include_far_tail)
    rng = np.random.default_rng([seed, 404])
    rows = []
    rejected = 0
    sup = 0.0
    for _ in range(num_samples):
        u = rng.uniform(0.0, 1.0)
        th = rng.uniform(0.0, 2.0 * np.pi)
        rad = radius * math.sqrt(u)
        xi = np.array([rad * math.cos(th), rad * math.sin(th)])
        tau = rng.uniform(0.0, 2.0 * radius)
        axi = float(np.hypot(xi[0], xi[1]))
        dist = abs(tau - axi)
        if dist < 1e-3 * math.sqrt(1.0 + axi * axi):
            rejected += 1
            continue
        if tau > axi:
            integral = delta_convolution_integral(
                tau, xi, alpha1, alpha2, r, "pp", "all", rtol
            )
        else:
            region = "all" if include_far_tail else "near"
            integral = delta_convolution_integral(
                tau, xi, alpha1, alpha2, r, "pm", region, rtol
            )
        value = dist**gamma * axi**alpha0 * integral ** (1.0 / r)
        rows.append((tau, float(xi[0]), float(xi[1]), value))
        if value > sup:
            sup = value
    return IntegralScanResult(sup, rows, rejected)
