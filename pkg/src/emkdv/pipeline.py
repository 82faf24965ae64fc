"""Experiment orchestration: scatter -> classify -> asymptote -> simulate -> compare."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import export as ex
from .asymptotics import decay_region_bound, leading_order
from .config import ExperimentConfig
from .errors import ConfigError, DiscreteSpectrumPresent, WrongRegion
from .painleve import painleve_asymptote, solve_profile
from .pde import evolve
from .phase import FAST_DECAY, OSCILLATORY, PAINLEVE, classify_region, signature_table, stationary_points
from .scattering import ReflectionData, compute_scattering, count_zeros_of_a, default_grid

VERBS = ("scatter", "phase", "asymptote", "painleve", "simulate", "compare")


@dataclass(frozen=True)
class ComparisonRecord:
    x: float
    t: float
    u_direct: float
    u_asymptotic: float
    abs_err: float
    scaled_err: float
    region: str


def scaled_error(abs_err: float, t: float, region: str) -> float:
    if region == OSCILLATORY:
        return abs_err * t / np.log(t)
    if region == PAINLEVE:
        return abs_err * t**0.4
    # fast decay: the prediction is 0, so this is |u| relative to the t^{-1/2} scale
    return abs_err * np.sqrt(t)


@dataclass
class PipelineResult:
    files: list = field(default_factory=list)
    records: list = field(default_factory=list)
    reflection: ReflectionData | None = None


def scatter(cfg: ExperimentConfig, out: Path, res: PipelineResult) -> ReflectionData:
    if cfg.reflection_input:
        data = ex.read_reflection(cfg.reflection_input)
    else:
        grid = None if cfg.auto_extend else default_grid(cfg.k_step, cfg.k_max)
        data = compute_scattering(cfg.datum, grid, cfg.ode_tol, cfg.unitarity_tol, cfg.tail_tol,
                                  k_step=cfg.k_step, k_max=cfg.k_max)
    if data.zero_count is None and data.profile is not None:
        n = count_zeros_of_a(data, cfg.contour_height, cfg.zero_floor)
        data = data.with_zero_count(n)
    res.reflection = data
    res.files += ex.write_reflection(data, out / "reflection",
                                     {"contour_height": cfg.contour_height, "zero_floor": cfg.zero_floor})
    if data.zero_count:
        raise DiscreteSpectrumPresent("a(k) has zeros in the upper half plane", "run_pipeline",
                                      zeros=data.zero_count)
    return data


def phase_tables(cfg: ExperimentConfig, out: Path, res: PipelineResult):
    rows = []
    for x, t in cfg.queries:
        region = classify_region(x, t, cfg.params, cfg.M)
        sp = stationary_points(x / t, cfg.params)
        rows.append([x, t, x / t, region] + [np.nan if v is None else v for v in (sp.k1, sp.k2, sp.k0)])
    if rows:
        res.files.append(ex.write_csv(out / "stationary_points.csv",
                                      ["x", "t", "xi", "region", "k1", "k2", "k0"], rows))
    xi = cfg.queries[0][0] / cfg.queries[0][1] if cfg.queries else -0.2
    re, im, sign = signature_table(xi, cfg.params, (-1.0, 1.0, -1.0, 1.0), 101)
    table = zip(np.broadcast_to(re[None, :], sign.shape).ravel(),
                np.broadcast_to(im[:, None], sign.shape).ravel(), sign.ravel())
    res.files.append(ex.write_csv(out / "signature.csv", ["re_k", "im_k", "sign"], table))


def stokes_datum(cfg: ExperimentConfig, data: ReflectionData | None) -> float:
    if cfg.s_override is not None:
        return cfg.s_override
    if data is None:
        raise ConfigError("painleve.s not set and no scattering data", "run_pipeline")
    return float(data.reflection_at(0.0).real)


def asymptote(cfg: ExperimentConfig, out: Path, res: PipelineResult, data: ReflectionData):
    preds, rows = [], []
    for x, t in cfg.queries:
        region = classify_region(x, t, cfg.params, cfg.M)
        if region == OSCILLATORY:
            val, env = leading_order(x, t, data, cfg.params, cfg.panel_nodes, cfg.quad_tol)
            rows.append([x, t, val, env.amp1, env.amp2, env.phase1, env.phase2])
        elif region == PAINLEVE:
            if cfg.params.alpha != 0:
                raise ConfigError("Painleve sector requires alpha = 0", "run_pipeline")
            val = painleve_asymptote(x, t, stokes_datum(cfg, data), cfg.params, cfg.contour, cfg.M)
        elif region == FAST_DECAY:
            val, _ = decay_region_bound(x, t, data, cfg.params)
        else:
            raise WrongRegion(f"no leading-order formula in region {region}", "run_pipeline", x=x, t=t)
        preds.append((x, t, val, region))
    if rows:
        res.files.append(ex.write_csv(out / "asymptotic.csv",
                                      ["x", "t", "u_asymptotic", "amp1", "amp2", "phase1", "phase2"], rows))
    return preds


def painleve(cfg: ExperimentConfig, out: Path, res: PipelineResult, data: ReflectionData | None):
    s = stokes_datum(cfg, data)
    sol = solve_profile(s, cfg.y_grid, cfg.contour, cfg.solver_tol, cfg.stencil)
    resid = sol.residual if sol.residual is not None else np.full(sol.y.size, np.nan)
    res.files.append(ex.write_csv(out / "painleve.csv", ["y", "u_p", "residual"], zip(sol.y, sol.u_p, resid)))
    res.files.append(ex.write_json(out / "painleve.json", {
        "s": s, "L": cfg.contour.L, "n": cfg.contour.n, "h": cfg.contour.h,
        "solver_tol": cfg.solver_tol, "stencil": cfg.stencil,
        "max_residual": float(np.nanmax(np.abs(resid))) if np.any(np.isfinite(resid)) else None,
    }))
    return sol


def simulate(cfg: ExperimentConfig, out: Path, res: PipelineResult):
    times = sorted({t for _, t in cfg.queries})
    if not times:
        raise ConfigError("no query times to simulate", "run_pipeline")
    ev = evolve(cfg.datum, cfg.params, cfg.grid, cfg.dt, times, cfg.sponge_width,
                cfg.sponge_strength, cfg.boundary_tol)
    for snap in ev.snapshots:
        res.files.append(ex.write_csv(out / f"snapshot_t{snap.t:g}.csv", ["x", "u"], zip(snap.x, snap.u)))
    res.files.append(ex.write_json(out / "simulation.json", ev.manifest))
    return {s.t: s for s in ev.snapshots}


def run_pipeline(cfg: ExperimentConfig, out_dir, verb: str = "compare") -> PipelineResult:
    if verb not in VERBS:
        raise ConfigError(f"unknown verb {verb!r}", "run_pipeline", verbs=list(VERBS))
    out = Path(out_dir)
    res = PipelineResult()
    data = None
    if verb in ("scatter", "asymptote", "compare") or (verb == "painleve" and cfg.s_override is None):
        data = scatter(cfg, out, res)
    if verb == "phase":
        phase_tables(cfg, out, res)
    if verb == "painleve":
        painleve(cfg, out, res, data)
    if verb == "simulate":
        simulate(cfg, out, res)
    if verb in ("asymptote", "compare"):
        preds = asymptote(cfg, out, res, data)
    if verb == "compare":
        snaps = simulate(cfg, out, res)
        for x, t, val, region in preds:
            ud = float(snaps[t].at(x)[0])
            err = abs(ud - val)
            res.records.append(ComparisonRecord(x, t, ud, val, err, scaled_error(err, t, region), region))
        res.files += ex.export([asdict(r) for r in res.records], out / "comparison")
    res.files.append(ex.write_json(out / "manifest.json", {
        "verb": verb,
        "config_sha256": cfg.digest,
        "config": cfg.text.splitlines(),
        "files": {p.name: ex.sha256(p) for p in res.files},
    }))
    return res
