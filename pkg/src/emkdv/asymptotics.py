"""Leading-order long-time asymptotics in the oscillatory region -9a^2/20b < x/t < 0."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import loggamma

from .errors import DiscreteSpectrumPresent, MissingScattering, QuadratureFailure, WrongRegion, ZeroReflection
from .model import ModelParams
from .phase import FAST_DECAY, OSCILLATORY, classify_region, stationary_points
from .scattering import ReflectionData


def nu(rval) -> float:
    return np.log1p(np.abs(rval) ** 2) / (2 * np.pi)


def arg_gamma_i(v: float) -> float:
    """arg Gamma(i v), continuous in v (the log-gamma branch); 0 at the pole v = 0."""
    if v == 0:
        return 0.0
    return float(loggamma(1j * v).imag)


def beta_X(q: complex, strict: bool = False) -> complex:
    """Parabolic-cylinder model coefficient sqrt(nu) exp(i(pi/4 - arg q - arg Gamma(i nu)))."""
    if q == 0:
        if strict:
            raise ZeroReflection("beta_X undefined at q = 0", "beta_X")
        return 0j
    v = nu(q)
    return np.sqrt(v) * np.exp(1j * (np.pi / 4 - np.angle(q) - arg_gamma_i(v)))


def _log_weight(data: ReflectionData, s):
    return np.log1p(np.abs(data.reflection_at(s)) ** 2)


def _panels(data: ReflectionData, k1: float, k2: float, n: int):
    """Composite Gauss-Legendre nodes with panel edges on the spline knots."""
    knots = data.k[(data.k > k1) & (data.k < k2)]
    edges = np.concatenate([[k1], knots, [k2]])
    edges = edges[np.concatenate([[True], np.diff(edges) > 1e-14])]
    g, w = leggauss(n)
    lo, hi = edges[:-1, None], edges[1:, None]
    s = (0.5 * (hi - lo) * g + 0.5 * (hi + lo)).ravel()
    ws = (0.5 * (hi - lo) * w).ravel()
    return s, ws


def _chi_integral(data: ReflectionData, k1: float, k2: float, kj: float, n: int) -> float:
    """Real integral I_j; the removable point s = kj takes the one-sided derivative."""
    s, w = _panels(data, k1, k2, n)
    fj = _log_weight(data, kj)
    f = _log_weight(data, s)
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = (f - fj) * (1 / (s - kj) - 1 / (s + kj))
    h = data.step
    near = np.abs(s - kj) < 1e-13 * max(1.0, abs(kj))
    if np.any(near):
        side = 1.0 if kj == k1 else -1.0
        deriv = (_log_weight(data, kj + side * h) - fj) / (side * h)
        vals[near] = deriv - (f[near] - fj) / (s[near] + kj)
    return float(np.sum(w * vals))


def chi(data: ReflectionData, k1: float, k2: float, which: int = 1, n: int = 8, quad_tol: float = 1e-9) -> complex:
    """chi_j(k_j) = (1/2 pi i) * integral over [k1, k2]; purely imaginary."""
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    lo, hi = data.hull
    if not (lo <= k1 < k2 <= hi):
        raise MissingScattering("stationary points outside the reflection grid", "chi", k1=k1, k2=k2)
    kj = k1 if which == 1 else k2
    I = _chi_integral(data, k1, k2, kj, n)
    I2 = _chi_integral(data, k1, k2, kj, 2 * n)
    if abs(I2 - I) > quad_tol:
        raise QuadratureFailure("chi quadrature not converged", "chi", estimate=abs(I2 - I), n=n)
    return I2 / (2j * np.pi)


def delta(k, data: ReflectionData, k1: float, k2: float, n: int = 8) -> np.ndarray:
    """Scalar factoriser exp{(1/2 pi i) int_{[-k2,-k1] u [k1,k2]} ln(1+|r|^2)/(s-k) ds}.

    The log weight at Re k is subtracted on each interval and integrated in closed form,
    so evaluation stays accurate close to the cuts.
    """
    k = np.atleast_1d(np.asarray(k, dtype=complex))
    out = np.zeros(k.shape, dtype=complex)
    for a, b in ((-k2, -k1), (k1, k2)):
        s, ws = _panels(data, a, b, n)
        f = _log_weight(data, s)
        kr = np.clip(k.real, a, b)
        f0 = _log_weight(data, kr)
        with np.errstate(divide="ignore", invalid="ignore"):
            rem = np.sum(ws * (f[None, :] - f0[:, None]) / (s[None, :] - k[:, None]), axis=1)
        out += rem + f0 * (np.log(b - k) - np.log(a - k))
    return np.exp(out / (2j * np.pi))


@dataclass(frozen=True)
class AsymptoticEnvelope:
    k1: float
    k2: float
    nu1: float
    nu2: float
    phi_a: float
    phi_b: float
    amp1: float
    amp2: float
    chi1_at_k1: complex
    chi2_at_k2: complex
    phase1: float = 0.0
    phase2: float = 0.0


def envelope(xi: float, data: ReflectionData, p: ModelParams, n: int = 8, quad_tol: float = 1e-9) -> AsymptoticEnvelope:
    """t-independent parts of the two-cosine formula at x/t = xi."""
    sp = stationary_points(xi, p)
    if sp.region != OSCILLATORY:
        raise WrongRegion(f"xi = {xi} is in region {sp.region}", "leading_order", xi=xi)
    a, b = p.alpha, p.beta
    k1, k2 = sp.k1, sp.k2
    lo, hi = data.hull
    if not (lo <= -k2 and k2 <= hi):
        raise MissingScattering("stationary points outside the reflection grid", "leading_order", k1=k1, k2=k2)
    r1, r2 = data.reflection_at(k1), data.reflection_at(k2)
    nu1, nu2 = nu(r1), nu(r2)
    c1 = chi(data, k1, k2, 1, n, quad_tol)
    c2 = chi(data, k1, k2, 2, n, quad_tol)
    # -(1/pi) I_j = -2 Im(chi_j) ... since chi_j = I_j/(2 pi i) = -i I_j/(2 pi)
    I1, I2 = -2 * np.pi * c1.imag, -2 * np.pi * c2.imag
    phi_a = (-np.pi / 4 - np.angle(r1) + arg_gamma_i(nu1)
             + 2 * nu1 * np.log((k1 + k2) / (2 * k1)) - I1 / np.pi)
    phi_b = (np.pi / 4 - np.angle(r2) - arg_gamma_i(nu2)
             + 2 * nu2 * np.log(2 * k2 / (k1 + k2)) - I2 / np.pi)
    amp1 = np.sqrt(nu1 / (k1 * (3 * a - 40 * b * k1**2)))
    amp2 = np.sqrt(nu2 / (k2 * (40 * b * k2**2 - 3 * a)))
    return AsymptoticEnvelope(k1, k2, float(nu1), float(nu2), float(phi_a), float(phi_b),
                              float(amp1), float(amp2), c1, c2)


def carrier_phases(env: AsymptoticEnvelope, t: float, p: ModelParams) -> tuple[float, float]:
    a, b = p.alpha, p.beta
    k1, k2 = env.k1, env.k2
    gap = 16 * t * (k2 - k1) ** 2
    ph1 = (16 * t * k1**3 * (8 * b * k1**2 - a)
           - env.nu1 * np.log(gap * (3 * a * k1 - 40 * b * k1**3)) + env.phi_a)
    ph2 = (16 * t * k2**3 * (8 * b * k2**2 - a)
           + env.nu2 * np.log(gap * (40 * b * k2**3 - 3 * a * k2)) + env.phi_b)
    return float(ph1), float(ph2)


def leading_order(x: float, t: float, data: ReflectionData, p: ModelParams, n: int = 8,
                  quad_tol: float = 1e-9) -> tuple[float, AsymptoticEnvelope]:
    """-u_as(x,t)/sqrt(t), together with the envelope carrying the carrier phases."""
    if t < 3:
        raise WrongRegion("asymptotic formula requires t >= 3", "leading_order", t=t)
    if data.zero_count:
        raise DiscreteSpectrumPresent("a(k) has zeros in the upper half plane", "leading_order",
                                      zeros=data.zero_count)
    region = classify_region(x, t, p)
    if region != OSCILLATORY:
        raise WrongRegion(f"(x, t) lies in region {region}", "leading_order", x=x, t=t)
    env = envelope(x / t, data, p, n, quad_tol)
    ph1, ph2 = carrier_phases(env, t, p)
    uas = env.amp1 * np.cos(ph1) + env.amp2 * np.cos(ph2)
    env = AsymptoticEnvelope(**{**env.__dict__, "phase1": ph1, "phase2": ph2})
    return float(-uas / np.sqrt(t)), env


def decay_region_bound(x: float, t: float, data: ReflectionData, p: ModelParams) -> tuple[float, str]:
    """Leading-order prediction (zero) beyond the merge point; no rate is claimed."""
    region = classify_region(x, t, p)
    if region != FAST_DECAY:
        raise WrongRegion(f"(x, t) lies in region {region}", "decay_region_bound", x=x, t=t)
    return 0.0, "rapid_decay"
