"""Command line entry point.

``simulate`` writes the entanglement time series of a preset (with
optional parameter overrides) as CSV; ``verify`` cross-checks the
analytic amplitudes against the RK4 oracle and exits nonzero on
mismatch.  A ``key=value`` config file can supply any flag; explicit
flags win over the file.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import scenarios
from .scenarios import UnknownPreset, preset, run, verify, with_overrides

_OVERRIDE_KEYS = ("tau_max", "samples", "delta", "chi1", "chi2", "chi_cross",
                  "beta1", "beta2", "phi", "alpha1", "alpha2", "eps_trunc")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--preset", choices=("a", "b", "c", "d"))
    p.add_argument("--coupling", choices=("constant", "intensity"))
    p.add_argument("--config", help="key=value file; flags override it")


def _add_overrides(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tau-max", dest="tau_max", type=float)
    p.add_argument("--samples", type=int)
    for key in ("delta", "chi1", "chi2", "chi-cross", "beta1", "beta2", "phi",
                "alpha1", "alpha2", "eps-trunc"):
        p.add_argument(f"--{key}", dest=key.replace("-", "_"), type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kerrcavity")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="compute an entanglement time series")
    _add_common(sim)
    _add_overrides(sim)
    sim.add_argument("--out", help="output CSV path (default: stdout)")

    ver = sub.add_parser("verify", help="check analytic amplitudes against the ODE oracle")
    _add_common(ver)
    _add_overrides(ver)
    ver.add_argument("--blocks", type=int,
                     help="highest-weight blocks (and tail samples) to check, default 20")
    ver.add_argument("--dt", type=float,
                     help="upper bound on the integrator step, units of 1/lambda, default 1e-4")
    return parser


def _read_config(path: str) -> dict:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, val = (s.strip() for s in line.split("=", 1))
            values[key.replace("-", "_")] = val
    return values


def _merge_config(args: argparse.Namespace) -> None:
    if not args.config:
        return
    conv = {"samples": int, "blocks": int, "preset": str, "coupling": str}
    for key, raw in _read_config(args.config).items():
        if key not in _OVERRIDE_KEYS + ("preset", "coupling", "blocks", "dt"):
            raise ValueError(f"unknown config key {key!r}")
        if getattr(args, key, None) is None:
            setattr(args, key, conv.get(key, float)(raw))


def _scenario_from_args(args: argparse.Namespace):
    if not args.preset:
        raise UnknownPreset("a preset is required (flag --preset or config file)")
    scen = preset(args.preset, args.coupling or "constant")
    overrides = {k: getattr(args, k, None) for k in _OVERRIDE_KEYS}
    return with_overrides(scen, **overrides)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _merge_config(args)
        scen = _scenario_from_args(args)
    except (UnknownPreset, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.command == "simulate":
        if args.out:
            run(scen, args.out)
        else:
            run(scen, sys.stdout)
        return 0

    report = verify(scen, blocks=args.blocks if args.blocks is not None else 20,
                    dt=args.dt if args.dt is not None else 1e-4)
    summary = {k: report[k] for k in
               ("scenario", "coupling", "max_deviation", "passed")}
    summary["blocks_checked"] = len(report["blocks"])
    print(json.dumps(summary, sort_keys=True))
    if not report["passed"]:
        worst = max(report["blocks"], key=lambda r: r["deviation"])
        print(f"oracle mismatch: block ({worst['n']}, {worst['m']}) "
              f"deviates by {worst['deviation']:.3e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
