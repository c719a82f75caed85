"""Command-line entry point: ``kerr-sim <experiment> [--config FILE] [flags]``.

Exit status is 0 on success, 2 for configuration errors and 3 when a
numerical guard (norm drift, stiffness) trips.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .errors import NumericalGuardError
from .experiments import (
    RUNNERS,
    RunConfig,
    default_jobs,
    loglog_slope,
    run_worked_example,
    to_csv,
)

log = logging.getLogger("kerrsim")

SUBCOMMANDS = ("fig1", "sweep", "eit-loss", "r-calc", "worked-example")
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


def _floats(text):
    return [float(s) for s in text.split(",") if s.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kerr-sim", description=__doc__.splitlines()[0])
    parser.add_argument("experiment", choices=SUBCOMMANDS)
    parser.add_argument("--config", help="JSON file with RunConfig fields")
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.add_argument("--jobs", type=int, default=None, help="worker processes (default: $KERR_SIM_JOBS or 1)")
    parser.add_argument("-v", "--verbose", action="store_true")

    g = parser.add_argument_group("pulse")
    g.add_argument("--shape", choices=("gaussian", "sech", "square"))
    g.add_argument("--sigma", type=float)
    g.add_argument("--sigmas", type=_floats, help="comma-separated list of widths")
    g.add_argument("--sigma-min", type=float)
    g.add_argument("--sigma-max", type=float)
    g.add_argument("--z1", type=float)
    g.add_argument("--n-max", type=int)

    g = parser.add_argument_group("medium and dynamics")
    g.add_argument("--z0", type=float)
    g.add_argument("--l", type=float)
    coupling = g.add_mutually_exclusive_group()
    coupling.add_argument("--eta", type=float)
    coupling.add_argument("--phi", dest="Phi", type=float)
    g.add_argument("--steps", type=int)
    g.add_argument("--method", choices=("full_matrix", "reduced_mu"))
    g.add_argument("--phi-min", dest="Phi_min", type=float)
    g.add_argument("--phi-max", dest="Phi_max", type=float)
    g.add_argument("--points", type=int)
    g.add_argument("--curve-points", type=int)
    g.add_argument("--r-values", type=_floats)

    g = parser.add_argument_group("EIT atom")
    g.add_argument("--g13", type=float)
    g.add_argument("--omega-c", dest="Omega_c", type=float)
    g.add_argument("--gamma31", type=float)
    g.add_argument("--big-gamma31", dest="Gamma31", type=float)
    g.add_argument("--eit-steps", type=int)
    return parser


_NON_CONFIG = {"experiment", "config", "verbose"}


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(cfg: RunConfig) -> str:
    if cfg.experiment == "worked_example":
        return json.dumps(run_worked_example(), indent=2, sort_keys=True) + "\n"
    header, rows = RUNNERS[cfg.experiment](cfg)
    if cfg.experiment == "eit_loss" and len(rows) > 1:
        ok = [row for row in rows if row[5] and row[2] > 0]
        if len(ok) > 1:
            log.info("log-log slope of loss vs bandwidth: %.4f", loglog_slope([r[1] for r in ok], [r[2] for r in ok]))
    return to_csv(header, rows)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    overrides = {k: v for k, v in vars(args).items() if k not in _NON_CONFIG}
    if overrides.get("jobs") is None:
        overrides["jobs"] = default_jobs()
    experiment = args.experiment.replace("-", "_")
    try:
        if args.config:
            cfg = RunConfig.from_json(args.config, experiment, overrides)
        else:
            cfg = RunConfig.build(experiment, None, overrides)
        text = run(cfg)
    except (ValueError, OSError) as exc:
        print(f"kerr-sim: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalGuardError as exc:
        print(f"kerr-sim: numerical guard: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    _emit(text, cfg.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
