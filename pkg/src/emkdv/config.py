"""Experiment configuration: an INI-style key/value file read with configparser.

Every key has a default, so an empty file is a valid configuration of the
reference experiment (a = b = 1, u0 = 0.3 sech x, x/t = -0.2).
"""

from __future__ import annotations

import configparser
import hashlib
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .model import InitialProfile, ModelParams
from .painleve import RHContour
from .pde import DEFAULT_SCHEDULE, SpectralGrid

DEFAULTS: dict[str, dict[str, str]] = {
    "model": {"alpha": "1.0", "beta": "1.0"},
    "datum": {
        "kind": "sech",
        "amplitude": "0.3",
        "width": "1.0",
        "samples": "",  # CSV file with columns x,u for kind = tabulated
        "support": "",  # truncation half-width X; empty = automatic
        "decay_tol": "1e-12",
    },
    "scattering": {
        "k_step": "0.01",
        "k_max": "5.0",
        "auto_extend": "yes",
        "ode_tol": "1e-12",
        "unitarity_tol": "1e-8",
        "tail_tol": "1e-10",
        "contour_height": "2.0",
        "zero_floor": "1e-3",
        "input": "",  # previously exported reflection CSV; skips the scattering solve
    },
    "asymptotics": {"quad_tol": "1e-9", "panel_nodes": "8"},
    "queries": {
        "points": "",  # "x,t; x,t; ..."
        "xi": "-0.2",
        "t": "50, 100, 200, 400",
        "window": "0.05",  # half-width of the x/t window around each xi
        "window_samples": "5",
    },
    "painleve": {
        "M": "2.0",
        "s": "",  # empty = r(0) from the scattering data
        "y_min": "-2.0",
        "y_max": "3.0",
        "y_step": "0.05",
        "L": "2.6",
        "n": "200",
        "h": "0.2",
        "solver_tol": "1e-8",
        "stencil": "9",
    },
    "pde": {
        "L_domain": "512",
        "N": "16384",
        "dt": ", ".join(f"{e}:{d}" for e, d in DEFAULT_SCHEDULE),
        "sponge_width": "100",
        "sponge_strength": "20",
        "boundary_tol": "1e-8",
    },
}


@dataclass(frozen=True)
class ExperimentConfig:
    params: ModelParams
    datum: InitialProfile
    k_step: float
    k_max: float
    auto_extend: bool
    ode_tol: float
    unitarity_tol: float
    tail_tol: float
    contour_height: float
    zero_floor: float
    reflection_input: str
    quad_tol: float
    panel_nodes: int
    queries: tuple
    M: float
    s_override: float | None
    y_grid: np.ndarray
    contour: RHContour
    solver_tol: float
    stencil: int
    grid: SpectralGrid
    dt: object
    sponge_width: float
    sponge_strength: float
    boundary_tol: float
    text: str = field(default="", repr=False)

    @property
    def digest(self) -> str:
        return hashlib.sha256(self.text.encode()).hexdigest()


def _floats(text: str) -> list[float]:
    return [float(v) for v in text.replace(";", ",").split(",") if v.strip()]


def parse_schedule(text: str):
    """Either a single step '0.005' or 't_until:dt' pairs."""
    text = text.strip()
    if ":" not in text:
        return float(text)
    out = []
    for item in text.split(","):
        e, d = item.split(":")
        out.append((float(e), float(d)))
    return tuple(out)


def _queries(sec) -> tuple:
    pts = []
    for item in sec["points"].split(";"):
        if item.strip():
            x, t = _floats(item)
            pts.append((x, t))
    hw = float(sec["window"])
    ns = int(sec["window_samples"])
    for xi in _floats(sec["xi"]):
        offs = np.linspace(-hw, hw, ns) if ns > 1 else np.zeros(1)
        for t in _floats(sec["t"]):
            for d in offs:
                pts.append((float((xi + d) * t), float(t)))
    return tuple(pts)


def load_config(path: str | Path | None = None, overrides: list[str] = ()) -> ExperimentConfig:
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str
    cp.read_dict(DEFAULTS)
    if path is not None:
        try:
            with open(path) as fh:
                cp.read_file(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}", "load_config", path=str(path)) from exc
        except configparser.Error as exc:
            raise ConfigError(f"malformed config: {exc}", "load_config") from exc
    for ov in overrides:
        key, sep, value = ov.partition("=")
        sec, dot, opt = key.strip().partition(".")
        if not sep or not dot:
            raise ConfigError(f"bad override {ov!r}; expected section.key=value", "load_config")
        if sec not in DEFAULTS or opt not in DEFAULTS[sec]:
            raise ConfigError(f"unknown override key {key.strip()!r}", "load_config")
        cp[sec][opt] = value.strip()
    for sec in cp.sections():
        unknown = set(cp[sec]) - set(DEFAULTS.get(sec, {}))
        if sec not in DEFAULTS or unknown:
            raise ConfigError(f"unknown key(s) in [{sec}]: {sorted(unknown)}", "load_config")
    try:
        return _build(cp)
    except ConfigError:
        raise
    except (ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"invalid value: {exc}", "load_config") from exc


def _build(cp) -> ExperimentConfig:
    m, d, sc, asy, q, pa, pde = (cp[s] for s in DEFAULTS)
    params = ModelParams(float(m["alpha"]), float(m["beta"]))
    samples = None
    if d["kind"] == "tabulated":
        if not d["samples"]:
            raise ConfigError("tabulated datum needs datum.samples", "load_config")
        arr = np.loadtxt(d["samples"], delimiter=",", skiprows=1, ndmin=2)
        samples = tuple(map(tuple, arr[:, :2]))
    datum = InitialProfile(
        d["kind"], float(d["amplitude"]), float(d["width"]), samples,
        float(d["support"]) if d["support"] else None, float(d["decay_tol"]),
    )
    tols = {k: float(sc[k]) for k in ("ode_tol", "unitarity_tol", "tail_tol")}
    tols["quad_tol"] = float(asy["quad_tol"])
    tols["solver_tol"] = float(pa["solver_tol"])
    if any(v <= 0 for v in tols.values()):
        raise ConfigError("all tolerances must be > 0", "load_config", **tols)
    queries = _queries(q)
    if any(t < 3 for _, t in queries):
        raise ConfigError("query times must satisfy t >= 3", "load_config")
    y_grid = np.arange(float(pa["y_min"]), float(pa["y_max"]) + 0.5 * float(pa["y_step"]), float(pa["y_step"]))
    dt = parse_schedule(pde["dt"])
    text = "\n".join(f"{s}.{k}={cp[s][k]}" for s in DEFAULTS for k in DEFAULTS[s])
    return ExperimentConfig(
        params=params,
        datum=datum,
        k_step=float(sc["k_step"]),
        k_max=float(sc["k_max"]),
        auto_extend=cp.getboolean("scattering", "auto_extend"),
        ode_tol=tols["ode_tol"],
        unitarity_tol=tols["unitarity_tol"],
        tail_tol=tols["tail_tol"],
        contour_height=float(sc["contour_height"]),
        zero_floor=float(sc["zero_floor"]),
        reflection_input=sc["input"],
        quad_tol=tols["quad_tol"],
        panel_nodes=int(asy["panel_nodes"]),
        queries=queries,
        M=float(pa["M"]),
        s_override=float(pa["s"]) if pa["s"] else None,
        y_grid=y_grid,
        contour=RHContour(float(pa["L"]), int(pa["n"]), float(pa["h"])),
        solver_tol=tols["solver_tol"],
        stencil=int(pa["stencil"]),
        grid=SpectralGrid(float(pde["L_domain"]), int(pde["N"])),
        dt=dt,
        sponge_width=float(pde["sponge_width"]),
        sponge_strength=float(pde["sponge_strength"]),
        boundary_tol=float(pde["boundary_tol"]),
        text=text,
    )
