"""Command-line front end: config parsing, orchestration, CSV/JSON emission.

Four experiments, each writing deterministic CSV files plus a JSON sidecar
per file with the fully resolved configuration:

    spinpump spectrum --out out/            Fig-2a/2b-class data
    spinpump winding  --out out/            Fig-2c-class data
    spinpump pump     --out out/ --jobs 2   Fig-3/4-class trajectories
    spinpump qpt      --out out/            Fig-5-class energy scan

A JSON config may set any field (--config path); individual flags mirror
field paths (--model.S, --cycle.period-T) and override the file.  Exit codes:
0 success, 2 configuration error, 1 numerical failure.
"""

from __future__ import annotations

import argparse
import warnings
import copy
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import dynamics, manybody, spectra, topology
from .hilbert import ModelParams, basis_states, build_h1
from .output import write_csv, write_sidecar


class ConfigError(ValueError):
    """Invalid run configuration; message names the offending field."""


DEFAULT_CONFIG = {
    "experiment": None,
    "out_dir": "out",
    "jobs": 1,
    "model": {"S": 5.0, "w": 1.0, "v": 0.0, "delta": 0.0, "lam": 0.0},
    "grids": {
        # (min, max, steps) inclusive linspace
        "v": [0.0, 2.0, 201],
        "lam": None,  # qpt default: [2*lambda_crit, 0, 41], resolved at run time
    },
    "spectrum": {"midgap_tol": 0.05},
    "winding": {"profile_v": [0.5, 1.5], "window": [-10.0, 10.0]},
    "cycle": {"v0": 1.0, "w0": 1.0, "delta0": 20.0, "period_T": 3.0,
              "v_offset": 0.0, "delta_offset": 0.0, "lam": 0.0,
              "start_phase": 0.0},
    "pump": {"n_cycles": 10, "steps_per_cycle": 20000, "samples_per_cycle": 200,
             "circuits": [{"v_offset": 0.0, "delta_offset": 0.0}],
             "lambdas": [0.0]},
}

# flag name -> (config path, type); flags mirror field paths with - for _
_FLAG_MAP = {
    "model.S": float, "model.w": float, "model.v": float,
    "model.delta": float, "model.lam": float,
    "cycle.v0": float, "cycle.w0": float, "cycle.delta0": float,
    "cycle.period-T": float, "cycle.v-offset": float,
    "cycle.delta-offset": float, "cycle.lam": float, "cycle.start-phase": float,
    "pump.n-cycles": int, "pump.steps-per-cycle": int,
    "pump.samples-per-cycle": int,
    "spectrum.midgap-tol": float,
}


def _merge(base: dict, override: dict, path="") -> dict:
    out = copy.deepcopy(base)
    for key, val in override.items():
        where = f"{path}.{key}" if path else key
        if key not in out:
            raise ConfigError(f"unknown config field: {where}")
        if isinstance(out[key], dict) and isinstance(val, dict):
            out[key] = _merge(out[key], val, where)
        else:
            out[key] = copy.deepcopy(val)
    return out


def _grid(spec, name: str) -> np.ndarray:
    try:
        lo, hi, steps = spec
        steps = int(steps)
    except (TypeError, ValueError):
        raise ConfigError(f"grids.{name} must be [min, max, steps], got {spec!r}")
    if steps < 1:
        raise ConfigError(f"grids.{name}: steps must be >= 1, got {steps}")
    return np.linspace(float(lo), float(hi), steps)


def _model(cfg: dict) -> ModelParams:
    m = cfg["model"]
    try:
        return ModelParams(S=float(m["S"]), w=float(m["w"]), v=float(m["v"]),
                           delta=float(m["delta"]), lam=float(m["lam"]))
    except (ValueError, KeyError) as err:
        raise ConfigError(f"model: {err}") from err


def _cycle(cfg: dict, **overrides) -> dynamics.DriveCycle:
    c = dict(cfg["cycle"])
    c.update(overrides)
    try:
        return dynamics.DriveCycle(**c)
    except (TypeError, ValueError) as err:
        raise ConfigError(f"cycle: {err}") from err


# ---------------------------------------------------------------------------
# experiments
# ---------------------------------------------------------------------------

def run_spectrum(cfg: dict) -> list[Path]:
    p = _model(cfg)
    v_grid = _grid(cfg["grids"]["v"], "v")
    tol = float(cfg["spectrum"]["midgap_tol"])
    out = Path(cfg["out_dir"])
    vs, energies = spectra.spectrum_scan(p.S, p.w, v_grid)

    d = energies.shape[1]
    spec_csv = write_csv(out / "spectrum.csv",
                         ["v"] + [f"E_{i + 1}" for i in range(d)],
                         ([v] + list(row) for v, row in zip(vs, energies)))
    files = [spec_csv, write_sidecar(spec_csv, cfg)]

    labels = basis_states(p.S)
    rows = []
    for v in vs:
        es = spectra.eigh(build_h1(ModelParams(S=p.S, w=p.w, v=v)))
        for idx, _e in spectra.midgap_states(es, tol):
            amps = es.eigenvectors[:, idx]
            for b, a in zip(labels, amps):
                rows.append([v, b.n, b.sigma, a.real, a.imag])
    states_csv = write_csv(out / "states.csv", ["v", "n", "sigma", "re", "im"], rows)
    files += [states_csv, write_sidecar(states_csv, cfg)]
    return files


def _fmt_tag(x: float) -> str:
    return format(float(x), "g").replace("-", "m").replace(".", "p")


def run_winding(cfg: dict) -> list[Path]:
    p = _model(cfg)
    v_grid = _grid(cfg["grids"]["v"], "v")
    window = tuple(float(x) for x in cfg["winding"]["window"])
    out = Path(cfg["out_dir"])
    files = []
    for v in cfg["winding"]["profile_v"]:
        H = build_h1(ModelParams(S=p.S, w=p.w, v=float(v)))
        with warnings.catch_warnings():
            warnings.filterwarnings("ignore",
                                    message="sector matrix poorly conditioned")
            prof = topology.local_winding_profile(H, window)
        csv = write_csv(out / f"profile_v{_fmt_tag(v)}.csv", ["n", "nu"],
                        zip(prof.n_values, prof.nu))
        files += [csv, write_sidecar(csv, cfg, {"profile_v": float(v)})]
    vs, avgs = topology.winding_transition_scan(p.S, p.w, v_grid, window)
    csv = write_csv(out / "transition.csv", ["v", "nu_avg"], zip(vs, avgs))
    extra = {}
    try:
        extra["transition_midpoint"] = topology.transition_midpoint(vs, avgs)
    except ValueError:
        pass  # scan window may not straddle the transition
    files += [csv, write_sidecar(csv, cfg, extra)]
    return files


def _one_pump_run(args) -> list[str]:
    cfg, circuit, lam = args
    p = _model(cfg)
    pump = cfg["pump"]
    cyc = _cycle(cfg, lam=float(lam), **circuit)
    traj = dynamics.propagate(cyc, p, n_cycles=int(pump["n_cycles"]),
                              steps_per_cycle=int(pump["steps_per_cycle"]),
                              samples_per_cycle=int(pump["samples_per_cycle"]),
                              store_snapshots=False)
    tag = f"pump_voff{_fmt_tag(circuit.get('v_offset', 0.0))}" \
          f"_doff{_fmt_tag(circuit.get('delta_offset', 0.0))}_lam{_fmt_tag(lam)}"
    out = Path(cfg["out_dir"])
    csv = write_csv(out / f"{tag}.csv", ["t", "dn", "norm", "j_integral"],
                    zip(traj.times, traj.displacement, traj.norm,
                        traj.current_integral))
    side = write_sidecar(csv, cfg, {"circuit": circuit, "lambda": float(lam)})
    return [str(csv), str(side)]


def run_pump(cfg: dict) -> list[Path]:
    pump = cfg["pump"]
    combos = [(cfg, dict(circ), float(lam))
              for circ in pump["circuits"] for lam in pump["lambdas"]]
    jobs = int(cfg["jobs"])
    if jobs > 1 and len(combos) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(combos))) as pool:
            results = list(pool.map(_one_pump_run, combos))
    else:
        results = [_one_pump_run(c) for c in combos]
    return [Path(f) for pair in results for f in pair]


def run_qpt(cfg: dict) -> list[Path]:
    p = _model(cfg)
    lc = manybody.lambda_crit(p)
    grid_spec = cfg["grids"]["lam"] or [2 * lc, 0.0, 41]
    grid = _grid(grid_spec, "lam")
    scan = manybody.qpt_scan(p, grid)
    out = Path(cfg["out_dir"])
    csv = write_csv(out / "qpt.csv", ["lambda", "e0_quantum", "e0_mf"],
                    zip(scan.lambda_grid, scan.e0_quantum, scan.e0_meanfield))
    side = write_sidecar(csv, cfg, {"lambda_crit": scan.lambda_crit})
    return [csv, side]


_EXPERIMENTS = {
    "spectrum": run_spectrum,
    "winding": run_winding,
    "pump": run_pump,
    "qpt": run_qpt,
}


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="spinpump", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="experiment", required=True)
    for name in _EXPERIMENTS:
        sp = sub.add_parser(name, help=f"run the {name} experiment")
        sp.add_argument("--config", type=Path, default=None,
                        help="JSON config file")
        sp.add_argument("--out", type=str, default=None,
                        help="output directory (overrides config out_dir)")
        sp.add_argument("--jobs", type=int, default=None,
                        help="worker processes for independent runs")
        for flag, typ in _FLAG_MAP.items():
            sp.add_argument(f"--{flag}", type=typ, default=None,
                            dest=flag.replace(".", "__").replace("-", "_"),
                            help=argparse.SUPPRESS)
        sp.add_argument("--grids.v", type=str, default=None, dest="grids__v",
                        help="v grid as min:max:steps")
        sp.add_argument("--grids.lam", type=str, default=None, dest="grids__lam",
                        help="lambda grid as min:max:steps")
    return ap


def _parse_grid_flag(text: str, name: str) -> list:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"grids.{name} flag must be min:max:steps, got {text!r}")
    try:
        return [float(parts[0]), float(parts[1]), int(parts[2])]
    except ValueError as err:
        raise ConfigError(f"grids.{name}: {err}") from err


def resolve_config(ns: argparse.Namespace) -> dict:
    cfg = copy.deepcopy(DEFAULT_CONFIG)
    if ns.config is not None:
        try:
            with open(ns.config) as fh:
                file_cfg = json.load(fh)
        except OSError as err:
            raise ConfigError(f"cannot read config {ns.config}: {err}") from err
        except json.JSONDecodeError as err:
            raise ConfigError(f"config {ns.config} is not valid JSON: {err}") from err
        cfg = _merge(cfg, file_cfg)
    cfg["experiment"] = ns.experiment
    if ns.out is not None:
        cfg["out_dir"] = ns.out
    if ns.jobs is not None:
        cfg["jobs"] = ns.jobs
    for flag, _typ in _FLAG_MAP.items():
        attr = flag.replace(".", "__").replace("-", "_")
        val = getattr(ns, attr, None)
        if val is not None:
            section, leaf = flag.split(".")
            cfg[section][leaf.replace("-", "_")] = val
    if getattr(ns, "grids__v", None) is not None:
        cfg["grids"]["v"] = _parse_grid_flag(ns.grids__v, "v")
    if getattr(ns, "grids__lam", None) is not None:
        cfg["grids"]["lam"] = _parse_grid_flag(ns.grids__lam, "lam")
    _model(cfg)   # field-level validation up front
    _cycle(cfg)
    if int(cfg["jobs"]) < 1:
        raise ConfigError(f"jobs must be >= 1, got {cfg['jobs']}")
    pump = cfg["pump"]
    if int(pump["n_cycles"]) < 1:
        raise ConfigError(f"pump.n_cycles must be >= 1, got {pump['n_cycles']}")
    if int(pump["steps_per_cycle"]) < 1000:
        raise ConfigError(
            f"pump.steps_per_cycle must be >= 1000, got {pump['steps_per_cycle']}")
    if int(pump["steps_per_cycle"]) % int(pump["samples_per_cycle"]):
        raise ConfigError("pump.samples_per_cycle must divide pump.steps_per_cycle")
    if not pump["circuits"] or not pump["lambdas"]:
        raise ConfigError("pump.circuits and pump.lambdas must be non-empty")
    for circ in pump["circuits"]:
        if not isinstance(circ, dict) or not set(circ) <= {"v_offset", "delta_offset"}:
            raise ConfigError(
                f"pump.circuits entries must be dicts with v_offset/delta_offset, got {circ!r}")
    return cfg


def main(argv=None) -> int:
    ap = build_parser()
    ns = ap.parse_args(argv)
    try:
        cfg = resolve_config(ns)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2
    try:
        files = _EXPERIMENTS[cfg["experiment"]](cfg)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2
    except (dynamics.PropagationError, dynamics.DegenerateGroundStateError,
            topology.WindingUndefinedError, np.linalg.LinAlgError) as err:
        print(f"numerical failure: {err}", file=sys.stderr)
        return 1
    except OSError as err:
        print(f"i/o failure: {err}", file=sys.stderr)
        return 1
    for f in files:
        print(f)
    return 0


if __name__ == "__main__":
    sys.exit(main())
