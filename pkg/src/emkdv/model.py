"""Equation coefficients and initial data."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import ConfigError, NonDecayingDatum

KINDS = ("sech", "gaussian", "tabulated")


@dataclass(frozen=True)
class ModelParams:
    """Coefficients of u_t + a(6u^2u_x + u_xxx) + b(30u^4u_x + ... + u_xxxxx) = 0."""

    alpha: float = 1.0
    beta: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.alpha) and np.isfinite(self.beta)):
            raise ConfigError("coefficients must be finite", "ModelParams")
        if self.beta <= 0:
            raise ConfigError("beta must be > 0", "ModelParams", beta=self.beta)
        if self.alpha < 0:
            raise ConfigError("alpha must be >= 0", "ModelParams", alpha=self.alpha)

    @property
    def xi_merge(self) -> float:
        # x/t where the two positive stationary points coalesce
        return -9.0 * self.alpha**2 / (20.0 * self.beta)


@dataclass(frozen=True)
class InitialProfile:
    """Real initial datum u0(x), truncated to [-X, X] for scattering.

    X defaults to the smallest half-width (in steps of 1) where |u0| < decay_tol.
    """

    kind: str = "sech"
    amplitude: float = 0.3
    width: float = 1.0
    samples: Sequence[tuple[float, float]] | None = None
    X: float | None = None
    decay_tol: float = 1e-12
    _spline: object = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown profile kind {self.kind!r}", "InitialProfile")
        if self.width <= 0:
            raise ConfigError("width must be > 0", "InitialProfile", width=self.width)
        if self.kind == "tabulated":
            if not self.samples or len(self.samples) < 4:
                raise ConfigError("tabulated profile needs >= 4 samples", "InitialProfile")
            xs, us = np.asarray(self.samples, dtype=float).T
            order = np.argsort(xs)
            object.__setattr__(self, "_spline", CubicSpline(xs[order], us[order]))
        if self.X is None:
            object.__setattr__(self, "X", self._auto_support())
        if self.X <= 0:
            raise ConfigError("X must be > 0", "InitialProfile", X=self.X)
        edge = max(abs(float(self(-self.X))), abs(float(self(self.X))))
        if not edge < self.decay_tol:
            raise NonDecayingDatum(
                "datum does not decay at the truncation edge",
                "InitialProfile",
                X=self.X,
                edge_value=edge,
                decay_tol=self.decay_tol,
            )

    def _auto_support(self) -> float:
        if self.kind == "tabulated":
            xs = np.asarray(self.samples, dtype=float)[:, 0]
            return float(max(abs(xs.min()), abs(xs.max())))
        A = abs(self.amplitude)
        if A == 0:
            return 1.0
        if self.kind == "sech":
            X = self.width * np.log(2 * A / self.decay_tol)
        else:
            X = self.width * np.sqrt(np.log(A / self.decay_tol))
        return float(np.ceil(max(X, 1.0)))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        A, w = self.amplitude, self.width
        if self.kind == "sech":
            # 1/cosh overflows harmlessly to 0 for |x| > ~710
            with np.errstate(over="ignore"):
                return A / np.cosh(x / w)
        if self.kind == "gaussian":
            return A * np.exp(-((x / w) ** 2))
        xs = self._spline.x
        inside = (x >= xs[0]) & (x <= xs[-1])
        return np.where(inside, self._spline(np.clip(x, xs[0], xs[-1])), 0.0)

    @property
    def is_zero(self) -> bool:
        if self.kind == "tabulated":
            return not np.any(np.asarray(self.samples, dtype=float)[:, 1])
        return self.amplitude == 0
