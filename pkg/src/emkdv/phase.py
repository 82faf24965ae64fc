"""Phase function Phi(k) = 2i(-k xi + 16 beta k^5 - 4 alpha k^3), stationary points and regions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ModelParams

OSCILLATORY = "oscillatory"
MERGED = "merged"
FAST_DECAY = "fast_decay"
POSITIVE_XI = "positive_xi"
PAINLEVE = "painleve_sector"
REGIONS = (OSCILLATORY, MERGED, FAST_DECAY, POSITIVE_XI, PAINLEVE)

GUARD = 1e-9


def phase(k, xi: float, p: ModelParams):
    k = np.asarray(k, dtype=complex)
    return 2j * (-k * xi + 16 * p.beta * k**5 - 4 * p.alpha * k**3)


def phase_prime(k, xi: float, p: ModelParams):
    k = np.asarray(k, dtype=complex)
    return 2j * (-xi + 80 * p.beta * k**4 - 12 * p.alpha * k**2)


@dataclass(frozen=True)
class StationaryPointSet:
    region: str
    xi: float
    k1: float | None = None
    k2: float | None = None
    k0: float | None = None

    def points(self) -> list[float]:
        """All real stationary points, signed."""
        ks = [k for k in (self.k1, self.k2, self.k0) if k is not None]
        return sorted({s * k for k in ks for s in (-1.0, 1.0)})


def _xi_region(xi: float, p: ModelParams) -> str:
    xc = p.xi_merge
    if abs(xi - xc) <= GUARD:
        return MERGED if p.alpha > 0 else FAST_DECAY
    if xi < xc:
        return FAST_DECAY
    if xi >= -GUARD:
        # the k1 pair collapses into the origin at xi = 0
        return POSITIVE_XI
    return OSCILLATORY


def stationary_points(xi: float, p: ModelParams) -> StationaryPointSet:
    region = _xi_region(xi, p)
    a, b = p.alpha, p.beta
    if region == OSCILLATORY:
        d = np.sqrt(1 + 20 * b * xi / (9 * a * a))
        k2sq = 3 * a / (40 * b) * (1 + d)
        # product of the two roots in k^2 is -xi/80b; avoids cancellation in 1 - d
        k1sq = (-xi / (80 * b)) / k2sq
        return StationaryPointSet(region, xi, k1=float(np.sqrt(k1sq)), k2=float(np.sqrt(k2sq)))
    if region == MERGED:
        km = float(np.sqrt(3 * a / (40 * b)))
        return StationaryPointSet(region, xi, k1=km, k2=km)
    if region == POSITIVE_XI:
        if a == 0:
            if xi <= 0:
                return StationaryPointSet(region, xi)
            return StationaryPointSet(region, xi, k0=float((xi / (80 * b)) ** 0.25))
        d = np.sqrt(1 + 20 * b * max(xi, 0.0) / (9 * a * a))
        return StationaryPointSet(region, xi, k2=float(np.sqrt(3 * a / (40 * b) * (1 + d))))
    return StationaryPointSet(region, xi)


def signature_table(xi: float, p: ModelParams, window=(-1.0, 1.0, -1.0, 1.0), n: int = 101):
    """Sign of Re Phi on an n x n grid; |Re Phi| < 1e-12 counts as zero.

    Returns (re_axis, im_axis, sign) with sign[i, j] at re_axis[j] + i*im_axis[i].
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    re = np.linspace(window[0], window[1], n)
    im = np.linspace(window[2], window[3], n)
    K = re[None, :] + 1j * im[:, None]
    val = phase(K, xi, p).real
    sign = np.where(np.abs(val) < 1e-12, 0, np.sign(val)).astype(int)
    return re, im, sign


def classify_region(x: float, t: float, p: ModelParams, M: float | None = None) -> str:
    if t <= 0:
        raise ValueError("t must be positive")
    if p.alpha == 0 and M is not None and 0 < x <= M * t**0.2:
        return PAINLEVE
    return _xi_region(x / t, p)
