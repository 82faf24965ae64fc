"""Forward scattering for the Zakharov-Shabat-type x-problem.

The Jost matrix is integrated in the interaction picture
    m' = [[0, u e^{-2ikx}], [-u e^{2ikx}, 0]] m,   m(-X) = I,
so s(k) = m(X) with s = [[conj a, b], [-conj b, a]] for real k.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicSpline

from .errors import InconclusiveWinding, IntegratorFailure, OutOfRange, UnitarityViolation
from .model import InitialProfile


def _jost_batch(u0: InitialProfile, k: np.ndarray, ode_tol: float) -> np.ndarray:
    """Scattering matrices for a batch of real k, shape (nk, 2, 2)."""
    k = np.asarray(k, dtype=float).ravel()
    X = u0.X
    if u0.is_zero:
        return np.broadcast_to(np.eye(2, dtype=complex), (k.size, 2, 2)).copy()

    def rhs(x, y):
        m = y.reshape(4, -1)  # m11, m21, m12, m22
        e = np.exp(-2j * k * x)
        ux = u0(x)
        d = np.empty_like(m)
        d[0] = ux * e * m[1]
        d[1] = -ux * np.conj(e) * m[0]
        d[2] = ux * e * m[3]
        d[3] = -ux * np.conj(e) * m[2]
        return d.ravel()

    y0 = np.zeros((4, k.size), dtype=complex)
    y0[0] = y0[3] = 1
    sol = solve_ivp(rhs, (-X, X), y0.ravel(), method="DOP853", rtol=ode_tol, atol=ode_tol / 10)
    if not sol.success:
        raise IntegratorFailure(sol.message, "integrate_jost", ode_tol=ode_tol)
    m = sol.y[:, -1].reshape(4, -1)
    out = np.empty((k.size, 2, 2), dtype=complex)
    out[:, 0, 0], out[:, 1, 0], out[:, 0, 1], out[:, 1, 1] = m
    return out


def integrate_jost(u0: InitialProfile, k: float, ode_tol: float = 1e-12) -> np.ndarray:
    """2x2 scattering matrix s(k) at a single real k."""
    return _jost_batch(u0, np.array([k]), ode_tol)[0]


def a_upper(u0: InitialProfile, k, ode_tol: float = 1e-12) -> np.ndarray:
    """a(k) for Im k >= 0.

    Uses mu12 = e^{2ikx} m12, which stays bounded in the upper half plane:
    mu12' = 2ik mu12 + u m22, m22' = -u mu12.
    """
    k = np.atleast_1d(np.asarray(k, dtype=complex)).ravel()
    if u0.is_zero:
        return np.ones(k.size, dtype=complex)
    X = u0.X

    def rhs(x, y):
        mu, m22 = y.reshape(2, -1)
        ux = u0(x)
        return np.concatenate([2j * k * mu + ux * m22, -ux * mu])

    y0 = np.concatenate([np.zeros(k.size, complex), np.ones(k.size, complex)])
    sol = solve_ivp(rhs, (-X, X), y0, method="DOP853", rtol=ode_tol, atol=ode_tol / 10)
    if not sol.success:
        raise IntegratorFailure(sol.message, "a_upper", ode_tol=ode_tol)
    return sol.y[k.size:, -1]


@dataclass(frozen=True)
class ReflectionData:
    k: np.ndarray
    a: np.ndarray
    b: np.ndarray
    r: np.ndarray
    X: float
    ode_tol: float
    profile: InitialProfile | None = None
    unitarity_defect: float = 0.0
    symmetry_defect: float = 0.0
    zero_count: int | None = None
    _splines: tuple = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        sr = CubicSpline(self.k, self.r.real)
        si = CubicSpline(self.k, self.r.imag)
        object.__setattr__(self, "_splines", (sr, si))

    @property
    def hull(self) -> tuple[float, float]:
        return float(self.k[0]), float(self.k[-1])

    @property
    def step(self) -> float:
        return float(np.min(np.diff(self.k)))

    def reflection_at(self, k):
        """Cubic interpolant of r on Re/Im parts separately."""
        kk = np.asarray(k, dtype=float)
        lo, hi = self.hull
        if np.any(kk < lo) or np.any(kk > hi):
            raise OutOfRange("k outside the sampled grid", "reflection_at", k_min=lo, k_max=hi)
        sr, si = self._splines
        out = sr(kk) + 1j * si(kk)
        return complex(out) if out.ndim == 0 else out

    def with_zero_count(self, n: int) -> "ReflectionData":
        return ReflectionData(
            self.k, self.a, self.b, self.r, self.X, self.ode_tol, self.profile,
            self.unitarity_defect, self.symmetry_defect, n,
        )


def default_grid(step: float = 0.01, kmax: float = 5.0) -> np.ndarray:
    n = int(round(kmax / step))
    return np.arange(-n, n + 1) * step


def compute_scattering(
    u0: InitialProfile,
    k_grid=None,
    ode_tol: float = 1e-12,
    unitarity_tol: float = 1e-8,
    tail_tol: float = 1e-10,
    kmax_limit: float = 40.0,
    k_step: float = 0.01,
    k_max: float = 5.0,
) -> ReflectionData:
    """Sample a, b, r on a symmetric real grid.

    With k_grid=None the uniform grid (k_step on [-k_max, k_max]) is extended one unit
    at a time until |b| < tail_tol at both ends.
    """
    if k_grid is None:
        step, kmax = k_step, k_max
        S = _jost_batch(u0, default_grid(step, kmax), ode_tol)
        while max(abs(S[0, 0, 1]), abs(S[-1, 0, 1])) >= tail_tol and kmax < kmax_limit:
            n_old = int(round(kmax / step))
            kmax += 1.0
            n_new = int(round(kmax / step))
            right = np.arange(n_old + 1, n_new + 1) * step
            Sr = _jost_batch(u0, np.concatenate([-right[::-1], right]), ode_tol)
            m = right.size
            S = np.concatenate([Sr[:m], S, Sr[m:]])
        k = default_grid(step, kmax)
    else:
        k = np.sort(np.asarray(k_grid, dtype=float))
        S = _jost_batch(u0, k, ode_tol)

    a = S[:, 1, 1]
    b = S[:, 0, 1]
    unit = np.abs(np.abs(a) ** 2 + np.abs(b) ** 2 - 1.0)
    udef = float(unit.max())
    if udef > unitarity_tol:
        raise UnitarityViolation(
            "|a|^2+|b|^2 deviates from 1", "compute_scattering",
            max_defect=udef, k_worst=float(k[np.argmax(unit)]), ode_tol=ode_tol, X=u0.X,
        )
    sdef = 0.0
    if np.allclose(k, -k[::-1], atol=1e-12, rtol=0):
        sdef = float(max(np.abs(a[::-1] - np.conj(a)).max(), np.abs(b[::-1] - np.conj(b)).max()))
    r = np.conj(b) / a
    return ReflectionData(k, a, b, r, float(u0.X), ode_tol, u0, udef, sdef)


def _winding_edge(u0, z0, z1, n, ode_tol, max_rounds):
    """Sample a along the segment z0 -> z1 until adjacent phase steps are below pi/2."""
    t = np.linspace(0.0, 1.0, n + 1)
    vals = a_upper(u0, z0 + (z1 - z0) * t, ode_tol)
    for _ in range(max_rounds):
        dphi = np.abs(np.angle(vals[1:] / vals[:-1]))
        bad = np.nonzero(dphi > np.pi / 2)[0]
        if bad.size == 0:
            break
        mids = 0.5 * (t[bad] + t[bad + 1])
        mv = a_upper(u0, z0 + (z1 - z0) * mids, ode_tol)
        t = np.concatenate([t, mids])
        vals = np.concatenate([vals, mv])
        order = np.argsort(t)
        t, vals = t[order], vals[order]
    return vals


def count_zeros_of_a(
    data: ReflectionData,
    contour_height: float = 2.0,
    delta: float = 1e-3,
    K: float | None = None,
    n: int = 64,
    ode_tol: float = 1e-10,
    max_rounds: int = 8,
) -> int:
    """Argument-principle count of zeros of a in [-K, K] x [delta, contour_height]."""
    u0 = data.profile
    if u0 is None:
        raise InconclusiveWinding("no profile attached to evaluate a off the axis", "count_zeros_of_a")
    if u0.is_zero:
        return 0
    if K is None:
        K = max(abs(data.k[0]), abs(data.k[-1]))
    corners = [complex(-K, delta), complex(K, delta), complex(K, contour_height), complex(-K, contour_height)]
    nh = max(8, n // 4)
    total = 0.0
    for i, (z0, z1) in enumerate(zip(corners, corners[1:] + corners[:1])):
        vals = _winding_edge(u0, z0, z1, n if i % 2 == 0 else nh, ode_tol, max_rounds)
        if np.min(np.abs(vals)) < 1e-8:
            raise InconclusiveWinding("a nearly vanishes on the contour", "count_zeros_of_a", edge=i)
        steps = np.angle(vals[1:] / vals[:-1])
        if np.max(np.abs(steps)) > np.pi / 2:
            raise InconclusiveWinding(
                "phase jump between adjacent samples after refinement", "count_zeros_of_a",
                edge=i, max_jump=float(np.max(np.abs(steps))),
            )
        total += steps.sum()
    w = total / (2 * np.pi)
    if abs(w - round(w)) > 0.05:
        raise InconclusiveWinding("non-integer winding", "count_zeros_of_a", winding=w)
    return int(round(w))
