"""
Batch front end: ``python -m discrete_ck`` / ``discrete-ck``.

Runs one solver (or compares two) on a configured lattice problem and
writes CSV field slices plus an optional JSON manifest.

Exit codes: 0 success, 1 tolerance failure, 2 invalid configuration or
CFL violation, 3 I/O failure.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import fieldio
from .exceptions import CFLError
from .lattice import LatticeGrid, sup_distance
from .solvers import SolveConfig, SolverSpec, kernel, solve, subordination_solve

EXIT_OK, EXIT_TOLERANCE, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3

FIELDS = ("dim", "points", "spacing", "tau", "steps", "initial", "solver", "compare", "tol",
          "out", "emit_kernel", "manifest")
DEFAULTS = {"dim": 1, "points": 16, "spacing": 1.0, "steps": 0, "initial": "delta",
            "solver": "spectral", "compare": None, "tol": 1e-9, "out": None,
            "emit_kernel": False, "manifest": False}


class ConfigError(ValueError):
    """Invalid command-line or JSON configuration."""


@dataclass
class RunOptions:
    cfg: SolveConfig
    compare: tuple[SolverSpec, SolverSpec] | None
    tol: float
    out: Path | None
    emit_kernel: bool
    manifest: bool
    echo: dict = field(default_factory=dict)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="discrete-ck",
                                description="Lattice Dirac Cauchy problem: solve, compare, emit CSV.")
    p.add_argument("--config", help="JSON file with the same field names; flags override it")
    p.add_argument("--dim", type=int, help="spatial dimension n")
    p.add_argument("--points", type=int, help="lattice points N per axis (even, >= 4)")
    p.add_argument("--spacing", type=float, help="lattice spacing h")
    p.add_argument("--tau", type=float, help="time step")
    p.add_argument("--steps", type=int, help="number of time steps")
    p.add_argument("--initial", help="delta | gaussian:SIGMA | planewave:K[,K2..] | file:PATH")
    p.add_argument("--solver", help="leapfrog | spectral | series:K | convolution | subordination:P,Mp,Mw")
    p.add_argument("--compare", help="two solvers A,B to compare slice by slice")
    p.add_argument("--tol", type=float, help="sup-norm tolerance for --compare")
    p.add_argument("--out", help="output directory for CSV files")
    p.add_argument("--emit-kernel", dest="emit_kernel", action="store_true", default=None,
                   help="also write the kernel table at the final time")
    p.add_argument("--manifest", action="store_true", default=None, help="write manifest.json")
    return p


def _split_compare(text: str) -> tuple[SolverSpec, SolverSpec]:
    # "series:20,spectral" and "subordination:40,96,2048,leapfrog" both need care
    names = ("leapfrog", "spectral", "series", "convolution", "subordination")
    parts, cur = [], []
    for tok in text.split(","):
        if tok.strip().split(":")[0].lower() in names and cur:
            parts.append(",".join(cur))
            cur = []
        cur.append(tok)
    parts.append(",".join(cur))
    if len(parts) != 2:
        raise ConfigError(f"--compare needs exactly two solvers, got {text!r}")
    return SolverSpec.parse(parts[0]), SolverSpec.parse(parts[1])


def parse_config(argv=None) -> RunOptions:
    """Merge JSON file and flags into validated options.

    Raises :class:`ConfigError` for bad values and :class:`CFLError` when
    the time step violates ``d_h(xi)^2 tau^2 <= 2(sqrt(2)-1)``.
    """
    args = build_parser().parse_args(argv)
    merged = dict(DEFAULTS)
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise OSError(f"cannot read config {args.config}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {args.config} is not valid JSON: {exc}") from exc
        unknown = set(doc) - set(FIELDS)
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        merged.update(doc)
    for name in FIELDS:
        val = getattr(args, name)
        if val is not None:
            merged[name] = val
    if merged.get("tau") is None:
        raise ConfigError("tau is required")
    try:
        grid = LatticeGrid(int(merged["dim"]), int(merged["points"]), float(merged["spacing"]))
        cfg = SolveConfig(grid, float(merged["tau"]), int(merged["steps"]), str(merged["initial"]),
                          SolverSpec.parse(str(merged["solver"])))
        cfg.phi0  # realise the datum now so bad specs fail as configuration errors
        compare = _split_compare(merged["compare"]) if merged["compare"] else None
    except CFLError:
        raise
    except OSError:
        raise
    except (ValueError, TypeError) as exc:
        raise ConfigError(str(exc)) from exc
    tol = float(merged["tol"])
    if not tol >= 0:
        raise ConfigError("tol must be nonnegative")
    out = Path(merged["out"]) if merged["out"] else None
    return RunOptions(cfg, compare, tol, out, bool(merged["emit_kernel"]), bool(merged["manifest"]),
                      echo={k: merged[k] for k in FIELDS})


def _with_solver(cfg: SolveConfig, spec: SolverSpec) -> SolveConfig:
    return SolveConfig(cfg.grid, cfg.tau, cfg.steps, cfg.initial, spec)


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _slug(spec: SolverSpec) -> str:
    return str(spec).replace(":", "-").replace(",", "_")


def compare(cfg: SolveConfig, a: SolverSpec, b: SolverSpec, tol: float) -> dict:
    """Per-slice sup-norm gaps between two solvers."""
    ta = solve(_with_solver(cfg, a))
    tb = solve(_with_solver(cfg, b))
    gaps = [sup_distance(x, y) for x, y in zip(ta, tb)]
    worst = max(gaps)
    return {"solvers": [str(a), str(b)], "gaps": gaps, "max_gap": worst, "tol": tol,
            "pass": bool(worst <= tol), "trajectories": (ta, tb)}


def run(opts: RunOptions, stdout=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    cfg = opts.cfg
    start = time.perf_counter()
    files: list[Path] = []
    results = {}
    code = EXIT_OK
    if opts.compare:
        rep = compare(cfg, *opts.compare, opts.tol)
        ta, tb = rep.pop("trajectories")
        for k, g in enumerate(rep["gaps"]):
            print(f"slice {k:4d}  t = {k * cfg.tau:.6g}  gap = {g:.3e}", file=stdout)
        verdict = "PASS" if rep["pass"] else "FAIL"
        print(f"{verdict}: max gap {rep['max_gap']:.3e} vs tol {opts.tol:.3e}", file=stdout)
        results["compare"] = rep
        trajectories = {_slug(opts.compare[0]): ta, _slug(opts.compare[1]): tb}
        if not rep["pass"]:
            code = EXIT_TOLERANCE
    else:
        traj = solve(cfg)
        trajectories = {_slug(cfg.solver): traj}
        if cfg.solver.name == "subordination":
            t_end = cfg.steps * cfg.tau
            results["subordination"] = subordination_solve(cfg, t_end, *cfg.solver.params).summary()
        print(f"solver {cfg.solver}: {len(traj)} slices, final sup norm {traj[-1].sup_norm():.6e}",
              file=stdout)
    if opts.out is not None:
        opts.out.mkdir(parents=True, exist_ok=True)
        for slug, traj in trajectories.items():
            for k, f in enumerate(traj):
                files.append(fieldio.write_field_csv(opts.out / f"{slug}_t{k:04d}.csv", f))
        if opts.emit_kernel:
            files.append(fieldio.write_field_csv(opts.out / f"kernel_t{cfg.steps:04d}.csv",
                                                 kernel(cfg, cfg.steps * cfg.tau)))
    elapsed = time.perf_counter() - start
    if opts.manifest:
        target = opts.out if opts.out is not None else Path(".")
        target.mkdir(parents=True, exist_ok=True)
        manifest = {
            "config": opts.echo,
            "solvers": [str(s) for s in (opts.compare or (cfg.solver,))],
            "wall_time_s": elapsed,
            "results": _jsonable(results),
            "files": [{"path": p.name, "sha256": _sha256(p)} for p in files],
        }
        path = target / "manifest.json"
        path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return code


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    return obj


def main(argv=None) -> int:
    try:
        opts = parse_config(argv)
    except CFLError as exc:
        print(f"error: CFL violation: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConfigError as exc:
        print(f"error: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        return run(opts)
    except OSError as exc:
        print(f"error: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
