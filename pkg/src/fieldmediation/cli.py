"""Command-line entry point: ``run``, ``sweep``, ``verify`` and ``qgem``."""
from __future__ import annotations

import argparse
import io
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

import numpy as np

from .config import load_config, qgem_amplitudes
from .entanglement import concurrence, mutual_information, negativity
from .errors import ConfigError, FieldMediationError, InvariantViolation, SingularityError
from .gaussian import branch_data, density_from_overlaps, overlaps_from_data
from .qgem import PAIRS, all_phases, phase_asymmetry, qgem_concurrence, qgem_state
from .scenario import causal_classification, interval_gap
from .verification import run_all

SWEEP_PARAMETERS = ("modes", "box_length", "mass", "smear_width", "coupling", "coupling_a", "coupling_b",
                    "b_offset", "quad_steps")
CSV_HEADER = "parameter,value,classification,negativity,mutual_information,cross_phase,box_length,modes"


def _g(x: float) -> str:
    return format(float(x), ".17g")


def evaluate(cfg):
    s, spec = cfg.scenario, cfg.field
    data = branch_data(s, spec, cfg.quad_step)
    overlaps = overlaps_from_data(data)
    rho = density_from_overlaps(s, overlaps)
    return {
        "classification": causal_classification(s, cfg.margin, spec.smear_width),
        "gap": interval_gap(s, spec.smear_width),
        "negativity": negativity(rho),
        "mutual_information": mutual_information(rho),
        "concurrence": concurrence(rho),
        "cross_phase": data.cross_phase,
        "overlaps": overlaps,
        "rho": rho,
    }


def cmd_run(args, out):
    cfg = _load(args)
    if cfg.scenario is None:
        raise ConfigError("config has no branch sections; use the qgem subcommand")
    r = evaluate(cfg)
    spec = cfg.field
    print(f"field: mass={_g(spec.mass)} box_length={_g(spec.box_length)} modes={spec.mode_cutoff} "
          f"smear_width={_g(spec.smear_width)} quad_steps={cfg.quad_steps}", file=out)
    print(f"classification: {r['classification']} (interval gap {r['gap']:.6g}, margin {cfg.margin:g})", file=out)
    print(f"negativity: {r['negativity']:.6e}", file=out)
    print(f"mutual_information: {r['mutual_information']:.6e}", file=out)
    print(f"concurrence: {r['concurrence']:.6e}", file=out)
    print(f"cross_phase: {r['cross_phase']:.6e}", file=out)
    print("overlap |M| (rows/cols RR RL LR LL):", file=out)
    for row in np.abs(r["overlaps"]):
        print("  " + " ".join(f"{v:.6f}" for v in row), file=out)
    off = np.abs(r["overlaps"])[~np.eye(4, dtype=bool)]
    print(f"min off-diagonal |M|: {off.min():.6f}", file=out)
    return 0


def _apply(cfg, parameter: str, value: float):
    spec, s = cfg.field, cfg.scenario
    if parameter == "modes":
        return replace(cfg, field=replace(spec, mode_cutoff=int(value)))
    if parameter in ("box_length", "mass", "smear_width"):
        return replace(cfg, field=replace(spec, **{parameter: value}))
    if parameter == "coupling":
        return replace(cfg, scenario=replace(s, coupling_a=value, coupling_b=value))
    if parameter in ("coupling_a", "coupling_b"):
        return replace(cfg, scenario=replace(s, **{parameter: value}))
    if parameter == "b_offset":
        return replace(cfg, scenario=s.with_b_offset(value))
    if parameter == "quad_steps":
        return replace(cfg, quad_steps=int(value))
    raise ConfigError(f"unknown sweep parameter {parameter!r}; choose from {', '.join(SWEEP_PARAMETERS)}")


def _sweep_row(job):
    cfg, parameter, value = job
    point = _apply(cfg, parameter, value)
    r = evaluate(point)
    fields = [parameter, _g(value), str(r["classification"]), _g(r["negativity"]), _g(r["mutual_information"]),
              _g(r["cross_phase"]), _g(point.field.box_length), str(point.field.mode_cutoff)]
    return ",".join(fields)


def sweep_csv(cfg, parameter: str, values, jobs: int = 1) -> str:
    if parameter not in SWEEP_PARAMETERS:
        raise ConfigError(f"unknown sweep parameter {parameter!r}; choose from {', '.join(SWEEP_PARAMETERS)}")
    work = [(cfg, parameter, v) for v in values]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_row, work))
    else:
        rows = [_sweep_row(w) for w in work]
    return "\n".join([CSV_HEADER, *rows]) + "\n"


def cmd_sweep(args, out):
    cfg = _load(args)
    if cfg.scenario is None:
        raise ConfigError("config has no branch sections")
    try:
        values = [float(v) for v in args.values.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"--values: cannot parse {args.values!r} as comma-separated numbers") from None
    out.write(sweep_csv(cfg, args.param, values, args.jobs))
    return 0


def cmd_verify(args, out):
    checks = run_all(args.seed)
    for c in checks:
        print(c.line(), file=out)
    failed = [c for c in checks if not c.passed]
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed (seed {args.seed})", file=out)
    return 1 if failed else 0


def cmd_qgem(args, out):
    cfg = _load(args)
    if cfg.qgem is None:
        raise ConfigError("config has no [qgem] section")
    phases = all_phases(cfg.qgem)
    alpha, beta = qgem_amplitudes(args.config)
    for label, phi in zip(PAIRS, phases):
        print(f"Phi_{label}: {phi:.12e}", file=out)
    dphi = phase_asymmetry(phases)
    print(f"Delta_Phi: {dphi:.12e}", file=out)
    print(f"concurrence: {qgem_concurrence(qgem_state(phases, alpha, beta)):.12e}", file=out)
    return 0


def _load(args):
    if not args.config:
        raise ConfigError("--config is required")
    return load_config(args.config, modes=args.modes, box_length=args.box_length, quad_steps=args.quad_steps)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="scenario config file")
    common.add_argument("--out", help="output path (default stdout)")
    common.add_argument("--modes", type=int, help="override mode cutoff N")
    common.add_argument("--box-length", type=float, help="override box length L")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--quad-steps", type=int, help="override quadrature steps")

    p = argparse.ArgumentParser(prog="fieldmediation", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("run", parents=[common], help="evaluate one scenario")
    sw = sub.add_parser("sweep", parents=[common], help="scan one parameter and emit CSV")
    sw.add_argument("--param", required=True, choices=SWEEP_PARAMETERS)
    sw.add_argument("--values", required=True, help="comma-separated values")
    sw.add_argument("--jobs", type=int, default=1)
    sub.add_parser("verify", parents=[common], help="randomized theorem and oracle checks")
    sub.add_parser("qgem", parents=[common], help="Newtonian branch phases and concurrence")
    return p


COMMANDS = {"run": cmd_run, "sweep": cmd_sweep, "verify": cmd_verify, "qgem": cmd_qgem}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    buf = io.StringIO()
    try:
        code = COMMANDS[args.command](args, buf)
    except InvariantViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ConfigError, SingularityError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FieldMediationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
