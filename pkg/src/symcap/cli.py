"""Command-line entry point.

Subcommands: spectrum, capacity, squeeze, maslov, ebk, flow, selftest.
Global flags --hbar/--tol/--seed/--samples/--format/--out; environment
variables SYMCAP_HBAR, SYMCAP_TOL, SYMCAP_SEED, SYMCAP_SAMPLES, SYMCAP_FORMAT
supply defaults, with flags taking precedence.  Exit codes: 0 success,
1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import acceptance, ebk, maslov, regions, squeeze, symcore, williamson

EXIT_OK = 0
EXIT_VERIFICATION = 1
EXIT_INPUT = 2


@dataclass
class RunConfig:
    hbar: float = 1.0
    tol: float = 1e-9
    seed: int = 0
    samples: int = 10**5
    output_format: str = "json"

    def __post_init__(self):
        if not (self.hbar > 0 and self.tol > 0 and self.samples > 0):
            raise symcore.ValidationError("hbar, tol and samples must be positive")
        if self.output_format not in ("json", "csv"):
            raise symcore.ValidationError(f"unknown format {self.output_format!r}")


def _env(name, cast, default):
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError as exc:
        raise symcore.ValidationError(f"bad {name}={raw!r}: {exc}") from exc


def _config(args) -> RunConfig:
    return RunConfig(
        hbar=args.hbar if args.hbar is not None else _env("SYMCAP_HBAR", float, 1.0),
        tol=args.tol if args.tol is not None else _env("SYMCAP_TOL", float, 1e-9),
        seed=args.seed if args.seed is not None else _env("SYMCAP_SEED", int, 0),
        samples=args.samples if args.samples is not None else _env("SYMCAP_SAMPLES", int, 10**5),
        output_format=args.format if args.format is not None
        else _env("SYMCAP_FORMAT", str, "json"),
    )


def _emit(text: str, args):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _load_matrix_arg(raw: str) -> dict:
    if os.path.exists(raw):
        with open(raw) as fh:
            return json.load(fh)
    return json.loads(raw)


def _cmd_spectrum(args, cfg):
    obj = _load_matrix_arg(args.hessian)
    R = np.asarray(obj["rows"] if isinstance(obj, dict) else obj, dtype=float)
    spec = williamson.symplectic_spectrum(R)
    if cfg.output_format == "csv":
        _emit(spec.to_csv(), args)
    else:
        _emit(json.dumps({"mu": spec.mu.tolist(), "radii": spec.radii.tolist(),
                          "omega": spec.omega.tolist()}, sort_keys=True), args)
    return EXIT_OK


def _cmd_capacity(args, cfg):
    region = regions.region_from_json(args.region)
    _emit(regions.capacity(region).to_json(), args)
    return EXIT_OK


def _cmd_squeeze(args, cfg):
    report = squeeze.nonsqueeze_verify(args.n, trials=args.trials, seed=cfg.seed,
                                       tol=cfg.tol)
    _emit(report.to_json(), args)
    return EXIT_OK if not report.violations else EXIT_VERIFICATION


def _cmd_maslov(args, cfg):
    if args.loop:
        with open(args.loop) as fh:
            loop = maslov.LagrangianLoop.from_json(fh.read())
    elif args.torus:
        radii = [float(r) for r in args.torus.split(",")]
        loop = maslov.torus_cycle_loop(radii, args.cycle, samples=args.loop_samples)
    else:
        raise symcore.ValidationError("provide --loop FILE or --torus R1,R2,...")
    res = maslov.maslov_index(loop)
    _emit(json.dumps({"index": res.index, "raw_winding": res.raw_winding,
                      "refinement_depth": res.refinement_depth}, sort_keys=True), args)
    return EXIT_OK


def _parse_action_hamiltonian(spec: str, n: int) -> ebk.ActionHamiltonian:
    kind, _, payload = spec.partition(":")
    if kind == "oscillator":
        omegas = [float(w) for w in payload.split(",")]
        return ebk.oscillator_hamiltonian(omegas)
    if kind == "power":
        a = float(payload)
        return ebk.ActionHamiltonian(K=lambda I: float(np.sum(I**a)), n=n,
                                     monotone=a > 0)
    if kind == "table":
        # JSON file mapping action grids to energies via linear interpolation (1D)
        with open(payload) as fh:
            table = json.load(fh)
        grid = np.asarray(table["I"], dtype=float)
        vals = np.asarray(table["K"], dtype=float)
        return ebk.ActionHamiltonian(
            K=lambda I: float(np.interp(I[0], grid, vals)), n=1,
            monotone=bool(np.all(np.diff(vals) > 0)))
    raise symcore.ValidationError(f"unknown K spec {spec!r}")


def _cmd_ebk(args, cfg):
    maslov_tuple = tuple(int(m) for m in args.maslov.split(","))
    K = _parse_action_hamiltonian(args.K, len(maslov_tuple))
    spec = ebk.energy_levels(K, maslov_tuple, args.Nmax, hbar=cfg.hbar)
    if cfg.output_format == "csv":
        _emit(spec.to_csv(), args)
    else:
        _emit(spec.to_json(), args)
    return EXIT_OK


def _cmd_flow(args, cfg):
    obj = _load_matrix_arg(args.hessian)
    R = np.asarray(obj["rows"] if isinstance(obj, dict) else obj, dtype=float)
    H = symcore.QuadraticHamiltonian(R)
    S = symcore.quad_propagator(H, args.t, tol=cfg.tol)
    out = {"propagator": json.loads(S.to_json()), "t": args.t}
    if args.z0:
        z0 = np.asarray([float(v) for v in args.z0.split(",")])
        zt = S.transform(z0)
        out["z0"] = z0.tolist()
        out["z_t"] = zt.tolist()
        out["energy_drift"] = abs(H.value(zt) - H.value(z0))
    _emit(json.dumps(out, sort_keys=True), args)
    return EXIT_OK


def _cmd_selftest(args, cfg):
    results = acceptance.run_all(acceptance.AcceptanceConfig(
        hbar=cfg.hbar, tol=cfg.tol, seed=cfg.seed))
    lines = []
    failures = 0
    for res in results:
        status = "PASS" if res.ok else "FAIL"
        failures += not res.ok
        lines.append(f"{status} {res.name}: {res.detail}")
    _emit("\n".join(lines), args)
    return EXIT_OK if failures == 0 else EXIT_VERIFICATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symcap")
    parser.add_argument("--hbar", type=float, default=None)
    parser.add_argument("--tol", type=float, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--samples", type=int, default=None)
    parser.add_argument("--format", choices=["json", "csv"], default=None)
    parser.add_argument("--out", default=None, help="write the report to a file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="symplectic spectrum of a positive-definite matrix")
    p.add_argument("--hessian", required=True, help="JSON rows or a file path")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("capacity", help="capacity of a phase-space region")
    p.add_argument("--region", required=True, help="region JSON")
    p.set_defaults(func=_cmd_capacity)

    p = sub.add_parser("squeeze", help="batch non-squeezing verification")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.set_defaults(func=_cmd_squeeze)

    p = sub.add_parser("maslov", help="Maslov index of a Lagrangian-frame loop")
    p.add_argument("--loop", default=None, help="loop JSON file")
    p.add_argument("--torus", default=None, help="torus radii R1,R2,...")
    p.add_argument("--cycle", type=int, default=1, help="basic-cycle index j")
    p.add_argument("--loop-samples", type=int, default=64)
    p.set_defaults(func=_cmd_maslov)

    p = sub.add_parser("ebk", help="EBK semiclassical energy levels")
    p.add_argument("--K", required=True,
                   help='"oscillator:w1,w2", "power:a", or "table:file.json"')
    p.add_argument("--maslov", required=True, help="Maslov indices m1,m2,...")
    p.add_argument("--Nmax", type=int, required=True)
    p.set_defaults(func=_cmd_ebk)

    p = sub.add_parser("flow", help="exact propagator of a quadratic Hamiltonian")
    p.add_argument("--hessian", required=True, help="JSON rows or a file path")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--z0", default=None, help="initial point x1,..,xn,p1,..,pn")
    p.set_defaults(func=_cmd_flow)

    p = sub.add_parser("selftest", help="run the full acceptance suite")
    p.set_defaults(func=_cmd_selftest)
    return parser


def dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _config(args)
        return args.func(args, cfg)
    except (symcore.ValidationError, symcore.DimensionError,
            symcore.DegenerateInputError, regions.UnsupportedCombinationError,
            regions.InconsistentCertificateError, ebk.InvalidMaslovError,
            ebk.TheoremHypothesisError, ebk.NonCompactOrbitError,
            maslov.ClosureError, json.JSONDecodeError, FileNotFoundError,
            KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main():
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
