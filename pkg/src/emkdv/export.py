"""Deterministic CSV/JSON writers.

Floats are written with repr(), the shortest string that round-trips (at most 17
significant digits), so identical inputs give byte-identical files.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .errors import IoFailure
from .model import InitialProfile
from .scattering import ReflectionData


def fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, str):
        return v
    f = float(v)
    return "nan" if np.isnan(f) else repr(f)


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        return f if np.isfinite(f) else str(f)
    return obj


def write_csv(path, header: list[str], rows) -> Path:
    rows = list(rows)
    if not rows:
        raise IoFailure("refusing to export an empty table", "export", path=str(path))
    path = Path(path)
    lines = [",".join(header)]
    for row in rows:
        if len(row) != len(header):
            raise IoFailure("row width does not match header", "export", path=str(path))
        lines.append(",".join(fmt(v) for v in row))
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise IoFailure(str(exc), "export", path=str(path)) from exc
    return path


def write_json(path, obj) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(_plain(obj), indent=2, sort_keys=True) + "\n")
    except OSError as exc:
        raise IoFailure(str(exc), "export", path=str(path)) from exc
    return path


def export(table: list[dict], path_stem, formats=("csv", "json")) -> list[Path]:
    """Write a list of uniform records as <stem>.csv and/or <stem>.json."""
    if not table:
        raise IoFailure("refusing to export an empty table", "export", path=str(path_stem))
    cols = list(table[0])
    out = []
    if "csv" in formats:
        out.append(write_csv(f"{path_stem}.csv", cols, [[r[c] for c in cols] for r in table]))
    if "json" in formats:
        out.append(write_json(f"{path_stem}.json", {"columns": cols, "rows": table}))
    return out


def sha256(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


REFLECTION_HEADER = ["k", "re_a", "im_a", "re_b", "im_b", "re_r", "im_r"]


def write_reflection(data: ReflectionData, path_stem, extra: dict | None = None) -> list[Path]:
    rows = zip(data.k, data.a.real, data.a.imag, data.b.real, data.b.imag, data.r.real, data.r.imag)
    csv = write_csv(f"{path_stem}.csv", REFLECTION_HEADER, rows)
    meta = {
        "X": data.X,
        "ode_tol": data.ode_tol,
        "unitarity_defect": data.unitarity_defect,
        "symmetry_defect": data.symmetry_defect,
        "zero_count": data.zero_count,
    }
    if data.profile is not None:
        p = data.profile
        meta["profile"] = {"kind": p.kind, "amplitude": p.amplitude, "width": p.width,
                           "decay_tol": p.decay_tol}
    meta.update(extra or {})
    return [csv, write_json(f"{path_stem}.json", meta)]


def read_reflection(csv_path) -> ReflectionData:
    """Inverse of write_reflection; the JSON sidecar is read when present."""
    csv_path = Path(csv_path)
    try:
        arr = np.loadtxt(csv_path, delimiter=",", skiprows=1, ndmin=2)
    except (OSError, ValueError) as exc:
        raise IoFailure(str(exc), "read_reflection", path=str(csv_path)) from exc
    meta = {}
    side = csv_path.with_suffix(".json")
    if side.exists():
        meta = json.loads(side.read_text())
    prof = None
    if "profile" in meta and meta["profile"]["kind"] != "tabulated":
        pm = meta["profile"]
        prof = InitialProfile(pm["kind"], pm["amplitude"], pm["width"], X=meta["X"], decay_tol=pm["decay_tol"])
    k, ra, ia, rb, ib, rr, ir = arr.T
    return ReflectionData(k, ra + 1j * ia, rb + 1j * ib, rr + 1j * ir, float(meta.get("X", np.nan)),
                          float(meta.get("ode_tol", np.nan)), prof,
                          float(meta.get("unitarity_defect", 0.0)), float(meta.get("symmetry_defect", 0.0)),
                          meta.get("zero_count"))
