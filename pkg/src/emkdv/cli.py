"""Command-line entry point.

    emkdv --config run.ini --out results --verb compare --override model.alpha=0

Exit codes: 0 success, 2 configuration error, 3 discrete spectrum, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .config import load_config
from .errors import EmkdvError, IoFailure
from .export import write_json
from .pipeline import VERBS, run_pipeline

log = logging.getLogger("emkdv")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="emkdv", description="emKdV scattering, asymptotics and reference solver")
    ap.add_argument("--config", type=Path, default=None, help="key/value config file (INI sections)")
    ap.add_argument("--out", type=Path, default=Path("out"), help="output directory")
    ap.add_argument("--verb", choices=VERBS, default="compare")
    ap.add_argument("--override", action="append", default=[], metavar="SECTION.KEY=VALUE")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        cfg = load_config(args.config, args.override)
        res = run_pipeline(cfg, args.out, args.verb)
    except EmkdvError as exc:
        payload = exc.to_dict()
        try:
            write_json(args.out / "error.json", payload)
        except IoFailure:
            pass
        print(json.dumps(payload, sort_keys=True), file=sys.stderr)
        return exc.exit_code
    for p in res.files:
        log.info("wrote %s", p)
    for r in res.records:
        log.info("%s x=%g t=%g err=%.3e scaled=%.3e", r.region, r.x, r.t, r.abs_err, r.scaled_err)
    return 0


if __name__ == "__main__":
    sys.exit(main())
