"""Fourth-order Painleve II transcendent u_p(y; s) from its Riemann-Hilbert problem.

Jumps: [[1, 0], [s e^{2i theta}, 1]] on the upper pair of rays (arg z = pi/6, 5pi/6) and
[[1, conj(s) e^{-2i theta}], [0, 1]] on the lower pair, theta = 4z^5/5 + yz, all oriented
left to right. Each pair is deformed to the hyperbola z = sqrt(3) sig +- i sqrt(h^2 + sig^2),
which keeps the same asymptotic directions but avoids the corner at the origin.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import GridTooCoarse, SingularSystem, TruncationTooSmall, WrongRegion
from .model import ModelParams


def _theta(z, y):
    return 0.8 * z**5 + y * z


@dataclass(frozen=True)
class RHContour:
    """Two Gauss-Legendre discretised hyperbolas truncated at radius L."""

    L: float = 2.6
    n: int = 200
    h: float = 0.2
    jump_tol: float = 1e-14

    def __post_init__(self):
        if not (self.L > self.h > 0) or self.n < 8:
            raise TruncationTooSmall("need L > h > 0 and n >= 8", "RHContour", L=self.L, h=self.h, n=self.n)

    @property
    def half_span(self) -> float:
        # |z(sig)|^2 = 4 sig^2 + h^2
        return 0.5 * np.sqrt(self.L**2 - self.h**2)

    def _curve(self, sign: int, sig):
        z = np.sqrt(3) * sig + sign * 1j * np.sqrt(self.h**2 + sig**2)
        dz = np.sqrt(3) + sign * 1j * sig / np.sqrt(self.h**2 + sig**2)
        return z, dz

    @cached_property
    def nodes(self):
        """(z, dz/dsig, quadrature weight in z) for both curves, upper first."""
        tau, wt = leggauss(self.n)
        T = self.half_span
        zs, dzs = [], []
        for sign in (1, -1):
            z, dz = self._curve(sign, T * tau)
            zs.append(z)
            dzs.append(dz)
        z = np.concatenate(zs)
        dz = np.concatenate(dzs)
        w = dz * np.tile(wt, 2) * T
        return z, dz, w

    @cached_property
    def cauchy_matrix(self) -> np.ndarray:
        """Nystrom matrix of the principal-value Cauchy operator (1/2 pi i) PV int f(s)/(s - z) ds."""
        n = self.n
        z, dz, w = self.nodes
        tau, wt = leggauss(n)
        T = self.half_span
        # barycentric weights for Legendre points, then the differentiation matrix in sig
        bw = (-1.0) ** np.arange(n) * np.sqrt((1 - tau**2) * wt)
        diff = tau[:, None] - tau[None, :]
        np.fill_diagonal(diff, 1.0)
        D = (bw[None, :] / bw[:, None]) / diff
        np.fill_diagonal(D, 0.0)
        np.fill_diagonal(D, -D.sum(axis=1))
        D /= T
        H = np.empty((2 * n, 2 * n), dtype=complex)
        for c, sign in enumerate((1, -1)):
            rows = slice(c * n, (c + 1) * n)
            zc = z[rows]
            for oc in range(2):
                cols = slice(oc * n, (oc + 1) * n)
                if oc != c:
                    H[rows, cols] = w[cols][None, :] / (z[cols][None, :] - zc[:, None])
                    continue
                d = zc[None, :] - zc[:, None]
                np.fill_diagonal(d, 1.0)
                K = w[rows][None, :] / d
                np.fill_diagonal(K, 0.0)
                zA, _ = self._curve(sign, -T)
                zB, _ = self._curve(sign, T)
                # subtract f(z_i) * sum_j w_j/(s_j - z_i), add back the exact PV log,
                # and the diagonal node contributes w_i f'(z_i)
                pv = np.log((zB - zc) / (zc - zA))
                K[np.diag_indices(n)] = -K.sum(axis=1) + pv
                K += (w[rows] / dz[rows])[:, None] * D
                H[rows, cols] = K
        return H / (2j * np.pi)

    def jumps(self, s: complex, y: float) -> np.ndarray:
        z, _, _ = self.nodes
        n = self.n
        e = np.exp(2j * _theta(z, y))
        V = np.zeros((2 * n, 2, 2), dtype=complex)
        V[:, 0, 0] = V[:, 1, 1] = 1
        V[:n, 1, 0] = s * e[:n]
        V[n:, 0, 1] = np.conj(s) / e[n:]
        return V

    def check_truncation(self, s: complex, y: float) -> float:
        T = self.half_span
        worst = 0.0
        for sign in (1, -1):
            for end in (-T, T):
                z, _ = self._curve(sign, end)
                worst = max(worst, abs(s) * abs(np.exp(sign * 2j * _theta(z, y))))
        if not worst < self.jump_tol:
            raise TruncationTooSmall("jump not close to identity at the truncation radius",
                                     "RHContour", L=self.L, y=y, defect=worst)
        return worst


def solve_rh_painleve(s: complex, y: float, contour: RHContour | None = None) -> np.ndarray:
    """Residue N_1 of N(z) = I + N_1/z + ..., from a Nystrom solve for the jump density."""
    contour = contour or RHContour()
    if s == 0:
        return np.zeros((2, 2), dtype=complex)
    contour.check_truncation(s, y)
    H = contour.cauchy_matrix
    V = contour.jumps(s, y)
    _, _, w = contour.nodes
    m = H.shape[0]
    I = np.eye(m)
    Cp, Cm = 0.5 * I + H, -0.5 * I + H
    # density U (rows of N): (C+ U) - (C- U) V = V - I
    A = np.empty((2 * m, 2 * m), dtype=complex)
    for q in range(2):
        for p in range(2):
            blk = -V[:, p, q][:, None] * Cm
            if p == q:
                blk = blk + Cp
            A[q * m:(q + 1) * m, p * m:(p + 1) * m] = blk
    rhs = np.empty((2 * m, 2), dtype=complex)
    for row in range(2):
        for q in range(2):
            rhs[q * m:(q + 1) * m, row] = V[:, row, q] - (1.0 if row == q else 0.0)
    try:
        U = np.linalg.solve(A, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(str(exc), "solve_rh_painleve", s=s, y=y) from exc
    if not np.all(np.isfinite(U)):
        raise SingularSystem("non-finite density", "solve_rh_painleve", s=s, y=y)
    # U[q*m + i, row] is the (row, q) entry of the density at node i
    dens = U.reshape(2, m, 2).transpose(1, 2, 0)
    return -(1 / (2j * np.pi)) * np.einsum("i,ipq->pq", w, dens)


def u_p(s: float, y: float, contour: RHContour | None = None, solver_tol: float = 1e-8) -> float:
    N1 = solve_rh_painleve(s, y, contour)
    val = -1j * N1[0, 1]
    if abs(val.imag) > solver_tol:
        raise SingularSystem("u_p not real; refine the contour", "u_p", s=s, y=y, imag=val.imag)
    return float(val.real)


def fd_weights(order: int, points: int) -> np.ndarray:
    """Central finite-difference weights on offsets -m..m (unit spacing)."""
    m = points // 2
    off = np.arange(-m, m + 1, dtype=float)
    A = np.vander(off, increasing=True).T
    b = np.zeros(points)
    b[order] = float(np.prod(np.arange(1, order + 1)))
    return np.linalg.solve(A, b)


@dataclass(frozen=True)
class PainleveSolution:
    s: float
    y: np.ndarray
    u_p: np.ndarray
    N1: np.ndarray
    L: float
    n: int
    solver_tol: float
    residual: np.ndarray = field(default=None)


def ode_residual(sol: PainleveSolution, h: float | None = None, stencil: int = 9) -> tuple[float, np.ndarray]:
    """Residual of u'''' + 40u^2u'' + 40u u'^2 + 96u^5 + 4yu at the interior nodes.

    Returns (max residual, per-node residual with NaN where the stencil does not fit).
    """
    y = np.asarray(sol.y, dtype=float)
    u = np.asarray(sol.u_p, dtype=float)
    if stencil not in (5, 7, 9) or y.size < stencil + 4:
        raise GridTooCoarse("need an odd stencil in {5,7,9} and >= 5 interior points",
                            "ode_residual", points=y.size, stencil=stencil)
    dy = np.diff(y)
    if h is None:
        h = float(dy.mean())
    if np.max(np.abs(dy - h)) > 1e-9 * max(1.0, h):
        raise GridTooCoarse("y grid must be uniform with spacing h", "ode_residual", h=h)
    m = stencil // 2
    out = np.full(y.size, np.nan)
    d1, d2, d4 = (fd_weights(o, stencil) for o in (1, 2, 4))
    win = np.lib.stride_tricks.sliding_window_view(u, stencil)
    u1 = win @ d1 / h
    u2 = win @ d2 / h**2
    u4 = win @ d4 / h**4
    uc = u[m:-m]
    out[m:-m] = u4 + 40 * uc**2 * u2 + 40 * uc * u1**2 + 96 * uc**5 + 4 * y[m:-m] * uc
    return float(np.nanmax(np.abs(out))), out


def solve_profile(s: float, y_grid, contour: RHContour | None = None, solver_tol: float = 1e-8,
                  stencil: int = 9) -> PainleveSolution:
    """u_p on a uniform y grid, with the ODE residual attached."""
    contour = contour or RHContour()
    y = np.asarray(y_grid, dtype=float)
    N1 = np.array([solve_rh_painleve(s, yy, contour) for yy in y])
    vals = -1j * N1[:, 0, 1]
    if np.max(np.abs(vals.imag), initial=0.0) > solver_tol:
        raise SingularSystem("u_p not real; refine the contour", "solve_profile",
                             imag=float(np.max(np.abs(vals.imag))))
    sol = PainleveSolution(s, y, vals.real, N1, contour.L, contour.n, solver_tol)
    if y.size >= stencil + 4:
        _, res = ode_residual(sol, stencil=stencil)
        sol = PainleveSolution(s, y, vals.real, N1, contour.L, contour.n, solver_tol, res)
    return sol


def painleve_scale(t: float, p: ModelParams) -> float:
    return (8.0 / (5.0 * p.beta * t)) ** 0.2


def painleve_asymptote(x: float, t: float, s: float, p: ModelParams, contour: RHContour | None = None,
                       M: float | None = None) -> float:
    """(8/(5 beta t))^{1/5} u_p(-x/(20 beta t)^{1/5}) for alpha = 0, 0 < x <= M t^{1/5}."""
    if p.alpha != 0:
        raise WrongRegion("Painleve sector formula needs alpha = 0", "painleve_asymptote", alpha=p.alpha)
    if t < 3 or x <= 0 or (M is not None and x > M * t**0.2):
        raise WrongRegion("(x, t) outside the Painleve sector", "painleve_asymptote", x=x, t=t, M=M)
    if s == 0:
        return 0.0
    y = -x / (20 * p.beta * t) ** 0.2
    return painleve_scale(t, p) * u_p(s, y, contour)
