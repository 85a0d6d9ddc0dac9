"""``qmetrics`` command-line entry point.

Scenarios are read from a YAML file and may be amended with ``--set
key.path=value`` overrides and a few dedicated flags; flags win over the file.
Reports are written as JSON and landscapes as CSV, with every float printed at
12 significant digits so output is byte-stable.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from importlib import resources
from typing import Any

import numpy as np
import yaml

from . import linalg, spin
from .errors import (
    ConsistencyFailure,
    DegenerateLikelihood,
    QMetricsError,
    ZeroInformation,
)
from .estimate import crb_experiment
from .fisher import report
from .model import Hamiltonian, MeasurementBasis, PureState, amplitude_track
from .optimal import build_optimal_basis, max_variance_probe
from .stability import DriftModel, hessian_at

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CONSISTENCY = 3
EXIT_ZERO_INFO = 4

DEFAULT_SCAN_GRID = (181, 361)
HISTOGRAM_BINS = 20

_PAULI = {
    "pauli_x": np.array([[0, 1], [1, 0]], dtype=complex),
    "pauli_y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "pauli_z": np.array([[1, 0], [0, -1]], dtype=complex),
}
_SPIN = {"spin_jx": "jx", "spin_jy": "jy", "spin_jz": "jz"}


class ConfigError(Exception):
    """Invalid scenario configuration; ``field`` names the offending entry."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field


# ---------------------------------------------------------------------------
# number formatting and emission


def fmt(x: float) -> str:
    x = float(x)
    if x == 0.0:
        return "0"
    return format(x, ".12g")


def _encode(obj: Any) -> str:
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj: Any) -> str:
    """Deterministic JSON text with floats at 12 significant digits."""
    return _encode(obj) + "\n"


def load_schema(name: str) -> dict:
    text = resources.files("qmetrics").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


# ---------------------------------------------------------------------------
# configuration


def _set_path(tree: dict, path: str, value: Any) -> None:
    keys = path.split(".")
    node = tree
    for k in keys[:-1]:
        nxt = node.get(k)
        if not isinstance(nxt, dict):
            nxt = {} if nxt is None else {"preset": nxt}
            node[k] = nxt
        node = nxt
    node[keys[-1]] = value


def load_config(path: str | None, overrides=(), flags: dict | None = None) -> dict:
    cfg: dict = {}
    if path is not None:
        try:
            with open(path) as fh:
                loaded = yaml.safe_load(fh)
        except OSError as exc:
            raise ConfigError("--config", str(exc)) from None
        except yaml.YAMLError as exc:
            mark = getattr(exc, "problem_mark", None)
            where = f"line {mark.line + 1}, column {mark.column + 1}" if mark else path
            raise ConfigError(where, f"YAML syntax error: {getattr(exc, 'problem', exc)}") from None
        if loaded is None:
            loaded = {}
        if not isinstance(loaded, dict):
            raise ConfigError("<root>", "config file must contain a mapping")
        cfg = loaded
    for item in overrides:
        if "=" not in item:
            raise ConfigError("--set", f"expected key=value, got {item!r}")
        key, raw = item.split("=", 1)
        try:
            value = yaml.safe_load(raw)
        except yaml.YAMLError:
            raise ConfigError(f"--set {key}", f"cannot parse value {raw!r}") from None
        _set_path(cfg, key.strip(), value)
    for key, value in (flags or {}).items():
        if value is not None:
            _set_path(cfg, key, value)
    return cfg


def _as_section(value, field: str) -> dict:
    if value is None:
        raise ConfigError(field, "missing")
    if isinstance(value, str):
        return {"preset": value}
    if isinstance(value, dict):
        return value
    raise ConfigError(field, f"expected a preset name or a mapping, got {value!r}")


def _scalar(value, field: str) -> complex:
    if isinstance(value, bool):
        raise ConfigError(field, f"expected a number, got {value!r}")
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, str):
        try:
            return complex(value.replace(" ", "").replace("i", "j"))
        except ValueError:
            pass
    raise ConfigError(field, f"expected a real or complex number, got {value!r}")


def _real(value, field: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        if isinstance(value, str):
            try:
                return float(value)
            except ValueError:
                pass
        raise ConfigError(field, f"expected a real number, got {value!r}")
    return float(value)


def _integer(value, field: str, minimum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(field, f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ConfigError(field, f"must be >= {minimum}, got {value}")
    return value


def _vector(value, field: str) -> np.ndarray:
    if not isinstance(value, list) or not value:
        raise ConfigError(field, "expected a non-empty list of numbers")
    return np.array([_scalar(v, f"{field}[{i}]") for i, v in enumerate(value)])


def _matrix(value, field: str) -> np.ndarray:
    if not isinstance(value, list) or not value:
        raise ConfigError(field, "expected a non-empty list of rows")
    rows = [_vector(r, f"{field}[{i}]") for i, r in enumerate(value)]
    n = len(rows)
    for i, r in enumerate(rows):
        if r.shape[0] != n:
            raise ConfigError(f"{field}[{i}]", f"row has {r.shape[0]} entries, matrix needs {n}")
    return np.array(rows)


def _cstr(z: complex) -> str:
    z = complex(z)
    if z.imag == 0:
        return fmt(z.real)
    return f"{fmt(z.real)}{'+' if z.imag >= 0 else '-'}{fmt(abs(z.imag))}j"


def check_hermitian(m: np.ndarray, field: str) -> None:
    """Raise a ConfigError naming the entry farthest from Hermitian symmetry."""
    diff = np.abs(m - m.conj().T)
    if float(diff.max()) <= linalg.HERMITIAN_TOL:
        return
    i, j = np.unravel_index(int(np.argmax(diff)), diff.shape)
    raise ConfigError(
        f"{field}[{i}][{j}]",
        f"not Hermitian: entry is {_cstr(m[i, j])} but conj({field}[{j}][{i}]) is "
        f"{_cstr(np.conj(m[j, i]))}",
    )


def _spin_j(sec: dict, field: str) -> spin.SpinSystem:
    if "j" not in sec:
        raise ConfigError(f"{field}.j", "spin presets need j")
    j = sec["j"]
    if isinstance(j, str) and "/" in j:
        num, _, den = j.partition("/")
        try:
            j = float(num) / float(den)
        except ValueError:
            raise ConfigError(f"{field}.j", f"cannot parse {sec['j']!r}") from None
    try:
        return spin.make_spin(_real(j, f"{field}.j"))
    except QMetricsError as exc:
        raise ConfigError(f"{field}.j", str(exc)) from None


def _operator(sec: dict, field: str) -> tuple[np.ndarray, spin.SpinSystem | None]:
    """Matrix from a preset or literal, with optional ``scale`` and ``shift``."""
    s = None
    if "matrix" in sec:
        m = _matrix(sec["matrix"], f"{field}.matrix")
        check_hermitian(m, f"{field}.matrix")
    elif "preset" in sec:
        name = sec["preset"]
        if name in _PAULI:
            m = _PAULI[name].copy()
        elif name in _SPIN:
            s = _spin_j(sec, field)
            m = getattr(s, _SPIN[name]).copy()
        elif name == "zero":
            if "dim" not in sec:
                raise ConfigError(f"{field}.dim", "the zero preset needs dim")
            m = np.zeros((_integer(sec["dim"], f"{field}.dim", 1),) * 2, dtype=complex)
        else:
            raise ConfigError(f"{field}.preset", f"unknown preset {name!r}")
    else:
        raise ConfigError(field, "needs either preset or matrix")
    m = m * _real(sec.get("scale", 1.0), f"{field}.scale")
    m = m + _real(sec.get("shift", 0.0), f"{field}.shift") * np.eye(m.shape[0])
    return m, s


class Scenario:
    """Validated objects built from a configuration tree."""

    def __init__(self, cfg: dict, need_probe: bool = True, need_basis: bool = True):
        self.cfg = cfg
        hsec = _as_section(cfg.get("hamiltonian"), "hamiltonian")
        m, self.spin = _operator(hsec, "hamiltonian")
        self.h_preset = hsec.get("preset")
        self.h = self._wrap(lambda: Hamiltonian(m), "hamiltonian")
        self.probe_chi = 0.0
        self.probe_kind = None
        if need_probe:
            self.psi0 = self._probe(_as_section(cfg.get("probe"), "probe"))
        if need_basis:
            self.basis_kind = None
            self.basis = self._basis(_as_section(cfg.get("basis"), "basis"))
        self.thetas = self._thetas(cfg.get("theta", 0.0))

    @staticmethod
    def _wrap(build, field):
        try:
            return build()
        except QMetricsError as exc:
            raise ConfigError(field, str(exc)) from None

    def _dim_check(self, n: int, field: str) -> None:
        if n != self.h.dim:
            raise ConfigError(field, f"dimension {n} does not match the Hamiltonian ({self.h.dim})")

    def _probe(self, sec: dict) -> PureState:
        kind = sec.get("preset", "amplitudes" if "amplitudes" in sec else None)
        self.probe_kind = kind
        chi = _real(sec.get("chi", 0.0), "probe.chi")
        self.probe_chi = chi
        if kind == "max_variance":
            return self._wrap(lambda: max_variance_probe(self.h, chi), "probe")
        if kind == "noon":
            if self.spin is None or self.h_preset != "spin_jy":
                raise ConfigError("probe.preset", "noon needs the spin_jy Hamiltonian preset")
            return spin.noon_state(self.spin, chi)
        if kind == "eigenstate":
            idx = _integer(sec.get("index", 0), "probe.index", 0)
            if idx >= self.h.dim:
                raise ConfigError("probe.index", f"index {idx} out of range for dim {self.h.dim}")
            return PureState(self.h.spectrum.eigenvectors[:, idx])
        if kind == "amplitudes":
            v = _vector(sec.get("amplitudes"), "probe.amplitudes")
            self._dim_check(v.shape[0], "probe.amplitudes")
            if sec.get("normalize", False):
                return self._wrap(lambda: PureState.normalized(v), "probe.amplitudes")
            return self._wrap(lambda: PureState(v), "probe.amplitudes")
        raise ConfigError("probe.preset", f"unknown probe {kind!r}")

    def _basis(self, sec: dict) -> MeasurementBasis:
        kind = sec.get("preset", "vectors" if "vectors" in sec else None)
        self.basis_kind = kind
        if kind == "eq11":
            return self._wrap(lambda: build_optimal_basis(self.h), "basis")
        if kind == "eigenbasis":
            return MeasurementBasis(self.h.spectrum.eigenvectors)
        if kind == "jx_eigenbasis":
            if self.spin is None:
                raise ConfigError("basis.preset", "jx_eigenbasis needs a spin Hamiltonian preset")
            return spin.reference_basis(self.spin, spin.BasisKind.JX_BASIS)
        if kind == "vectors":
            raw = sec.get("vectors")
            if not isinstance(raw, list) or not raw:
                raise ConfigError("basis.vectors", "expected a list of kets")
            kets = [_vector(k, f"basis.vectors[{i}]") for i, k in enumerate(raw)]
            if len(kets) != self.h.dim:
                raise ConfigError("basis.vectors", f"{len(kets)} kets for dimension {self.h.dim}")
            for i, k in enumerate(kets):
                self._dim_check(k.shape[0], f"basis.vectors[{i}]")
            if sec.get("normalize", False):
                kets = [k / np.linalg.norm(k) for k in kets]
            return self._wrap(lambda: MeasurementBasis.from_kets(kets), "basis.vectors")
        raise ConfigError("basis.preset", f"unknown basis {kind!r}")

    @staticmethod
    def _thetas(value) -> list[float]:
        if isinstance(value, list):
            if not value:
                raise ConfigError("theta", "empty list")
            return [_real(t, f"theta[{i}]") for i, t in enumerate(value)]
        return [_real(value, "theta")]

    def drift(self) -> tuple[DriftModel, float]:
        sec = _as_section(self.cfg.get("drift"), "drift")
        gsec = sec.get("generator")
        if gsec is None:
            raise ConfigError("drift.generator", "missing")
        gsec = _as_section(gsec, "drift.generator")
        if gsec.get("preset") in _SPIN and "j" not in gsec and self.spin is not None:
            gsec = {**gsec, "j": self.spin.j}
        g, _ = _operator(gsec, "drift.generator")
        self._dim_check(g.shape[0], "drift.generator")
        omega = _real(sec.get("omega", 0.0), "drift.omega")
        return self._wrap(lambda: DriftModel(g), "drift.generator"), omega


# ---------------------------------------------------------------------------
# commands


def _track_dict(track) -> dict:
    return {
        "amplitude_re": track.a.real,
        "amplitude_im": track.a.imag,
        "r": track.r,
        "p": track.p,
        "phi": track.phi,
        "r_dot": track.r_dot,
        "rphi_dot": track.rphi_dot,
        "phi_dot": [None if not d else float(v) for v, d in zip(track.phi_dot, track.phase_defined)],
        "tau": track.tau,
        "phase_defined": track.phase_defined,
    }


def cmd_report(cfg: dict, args) -> dict:
    sc = Scenario(cfg)
    out = []
    for theta in sc.thetas:
        rep = report(sc.h, sc.psi0, sc.basis, theta)
        d = rep.as_dict()
        d["bound_variance"] = bool(rep.J <= 4 * rep.variance + 1e-9)
        d["bound_seminorm"] = bool(4 * rep.variance <= rep.seminorm_sq + 1e-9)
        d["saturates_variance_bound"] = rep.saturates_variance_bound
        d["track"] = _track_dict(amplitude_track(sc.h, sc.psi0, sc.basis, theta))
        out.append(d)
    return {"command": "report", "dim": sc.h.dim, "reports": out}


def cmd_stability(cfg: dict, args) -> dict:
    sc = Scenario(cfg)
    drift, omega = sc.drift()
    step = _real(cfg.get("step", 1e-4), "step")
    if len(sc.thetas) != 1:
        raise ConfigError("theta", "stability needs a single theta")
    try:
        rep = hessian_at(sc.h, sc.psi0, sc.basis, drift, sc.thetas[0], omega, step=step)
    except QMetricsError as exc:
        if isinstance(exc, ConsistencyFailure):
            raise
        raise ConfigError("step" if "step" in str(exc) else "drift", str(exc)) from None
    d = rep.as_dict()
    d["status"] = "gm" if rep.certified else "not gm"
    d["gm_conditions_hold"] = rep.gm_conditions_hold if rep.certified else None
    return {"command": "stability", "dim": sc.h.dim, "report": d}


def _histogram(estimates: np.ndarray) -> dict:
    counts, edges = np.histogram(estimates, bins=HISTOGRAM_BINS)
    return {"edges": edges, "counts": counts.tolist()}


def cmd_crb(cfg: dict, args) -> dict:
    sc = Scenario(cfg)
    sec = cfg.get("crb") or {}
    if not isinstance(sec, dict):
        raise ConfigError("crb", "expected a mapping with N, T and seed")
    n = _integer(sec.get("N", 10_000), "crb.N", 1)
    t = _integer(sec.get("T", 400), "crb.T", 2)
    seed = _integer(sec.get("seed", 0), "crb.seed", 0)
    if seed >= 2**64:
        raise ConfigError("crb.seed", "must fit in 64 bits")
    interval = sec.get("interval")
    if interval is not None:
        if not isinstance(interval, list) or len(interval) != 2:
            raise ConfigError("crb.interval", "expected [lo, hi]")
        interval = [_real(v, f"crb.interval[{i}]") for i, v in enumerate(interval)]
    if len(sc.thetas) != 1:
        raise ConfigError("theta", "crb needs a single theta_true")
    run = crb_experiment(sc.h, sc.psi0, sc.basis, sc.thetas[0], n, t, seed,
                         interval=interval, threads=args.threads)
    est = run.estimates
    return {
        "command": "crb",
        "theta_true": run.theta_true,
        "samples_per_trial": run.samples_per_trial,
        "trials": run.trials,
        "seed": run.seed,
        "J": run.J,
        "interval": list(run.interval),
        "empirical_variance": run.empirical_variance,
        "crb": run.crb,
        "ratio": run.ratio,
        "bound_respected": bool(run.ratio >= 1 - 3 / math.sqrt(run.trials)),
        "estimates_summary": {
            "mean": float(np.mean(est)),
            "std": float(np.std(est, ddof=1)),
            "min": float(np.min(est)),
            "max": float(np.max(est)),
            "bias": run.bias,
            "standard_error": run.standard_error,
            "mse": run.mse,
            "edge_margin": run.edge_margin(),
        },
        "histogram": _histogram(est),
    }


def _scan_grid(cfg: dict) -> tuple[int, int]:
    sec = cfg.get("drift") or {}
    if not isinstance(sec, dict):
        raise ConfigError("drift", "expected a mapping")
    grid = sec.get("grid", list(DEFAULT_SCAN_GRID))
    if not isinstance(grid, list) or len(grid) != 2:
        raise ConfigError("drift.grid", f"expected [n_omega_y, n_omega_z], got {grid!r}")
    ny, nz = (_integer(g, f"drift.grid[{i}]") for i, g in enumerate(grid))
    if ny < 2 or nz < 2:
        raise ConfigError("drift.grid", f"each axis needs at least 2 points, got {grid!r}")
    return ny, nz


def cmd_scan(cfg: dict, args) -> tuple[str, dict]:
    sc = Scenario(cfg, need_probe=False, need_basis=False)
    if sc.spin is None or sc.h_preset != "spin_jy":
        raise ConfigError("hamiltonian.preset", "scan needs the spin_jy preset")
    psec = _as_section(cfg.get("probe", "noon"), "probe")
    if psec.get("preset", "noon") != "noon":
        raise ConfigError("probe.preset", "scan uses the noon probe")
    chi = _real(psec.get("chi", 0.0), "probe.chi")
    bsec = _as_section(cfg.get("basis", "jx_eigenbasis"), "basis")
    kinds = {"jx_eigenbasis": spin.BasisKind.JX_BASIS, "eq11": spin.BasisKind.EQ11_BASIS}
    if bsec.get("preset") not in kinds:
        raise ConfigError("basis.preset", "scan supports jx_eigenbasis or eq11")
    kind = kinds[bsec["preset"]]
    if len(sc.thetas) != 1:
        raise ConfigError("theta", "scan needs a single theta")
    theta = sc.thetas[0]
    grid = _scan_grid(cfg)
    s = sc.spin
    land = spin.landscape_scan(s, chi, kind, grid, theta=theta, threads=args.threads)
    summary = spin.classify(land)
    lines = ["omega_y,omega_z,J,classification"]
    for iy, wy in enumerate(land.omega_y_values):
        for iz, wz in enumerate(land.omega_z_values):
            lines.append(f"{fmt(wy)},{fmt(wz)},{fmt(land.J_values[iy, iz])},"
                         f"{summary['labels'][iy, iz]}")
    tol = None
    if summary["supra_classical_exists"] and s.j >= 1 and kind is spin.BasisKind.JX_BASIS:
        angle, crossed = spin.transverse_tolerance(s, chi, theta=theta)
        tol = {"angle": angle, "crossed": crossed}
    sidecar = {
        "command": "scan",
        "j": s.j,
        "dim": s.dim,
        "chi": chi,
        "theta": theta,
        "basis": bsec["preset"],
        "grid": list(grid),
        "rows": grid[0] * grid[1],
        "classical_bound": s.classical_bound,
        "heisenberg_bound": s.heisenberg,
        "J_max": float(land.J_values.max()),
        "J_min": float(land.J_values.min()),
        "supra_classical_exists": summary["supra_classical_exists"],
        "hotspot_count": summary["hotspot_count"],
        "arc_count": summary["arc_count"],
        "area_fraction": summary["supra_fraction"],
        "hotspot_fraction": summary["hotspot_fraction"],
        "latitude": summary["latitude"],
        "transverse_tolerance": tol,
        "note": None if summary["supra_classical_exists"]
        else "no supra-classical region: 4j^2 equals 2j",
    }
    return "\n".join(lines) + "\n", sidecar


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE", help="YAML scenario file")
    common.add_argument("--set", dest="overrides", action="append", default=[],
                        metavar="KEY=VALUE", help="override a config entry (dotted key)")
    common.add_argument("--theta", type=float, help="parameter value (overrides theta)")
    common.add_argument("--output", "-o", metavar="FILE", help="write output here instead of stdout")
    common.add_argument("--threads", type=int, help="worker threads (overrides QMETRICS_THREADS)")
    parser = argparse.ArgumentParser(prog="qmetrics", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("report", parents=[common], help="Fisher information report")
    p = sub.add_parser("scan", parents=[common], help="spin-j precision landscape (CSV)")
    p.add_argument("--sidecar", metavar="FILE",
                   help="summary JSON path (default: OUTPUT.json, or stderr without --output)")
    p.add_argument("--grid", type=int, nargs=2, metavar=("NY", "NZ"), help="scan grid size")
    p = sub.add_parser("stability", parents=[common], help="complement Hessian under drift")
    p.add_argument("--omega", type=float, help="drift angle (overrides drift.omega)")
    p = sub.add_parser("crb", parents=[common], help="Monte-Carlo Cramer-Rao check")
    p.add_argument("--seed", type=int, help="overrides crb.seed")
    p.add_argument("-N", type=int, dest="n", help="samples per trial (overrides crb.N)")
    p.add_argument("-T", type=int, dest="t", help="trials (overrides crb.T)")
    return parser


def _write(path: str | None, text: str, stream) -> None:
    if path is None:
        stream.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def _flags(args) -> dict:
    flags = {"theta": args.theta}
    if args.command == "scan" and args.grid is not None:
        flags["drift.grid"] = list(args.grid)
    if args.command == "stability":
        flags["drift.omega"] = args.omega
    if args.command == "crb":
        flags.update({"crb.seed": args.seed, "crb.N": args.n, "crb.T": args.t})
    return flags


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.threads is not None and args.threads < 0:
        print("qmetrics: config error: --threads must be >= 0", file=sys.stderr)
        return EXIT_CONFIG
    if args.threads == 0:
        args.threads = None
    try:
        cfg = load_config(args.config, args.overrides, _flags(args))
        if args.command == "scan":
            csv_text, sidecar = cmd_scan(cfg, args)
            _write(args.output, csv_text, sys.stdout)
            side_path = args.sidecar or (f"{args.output}.json" if args.output else None)
            _write(side_path, dumps(sidecar), sys.stderr)
        else:
            command = {"report": cmd_report, "stability": cmd_stability, "crb": cmd_crb}
            _write(args.output, dumps(command[args.command](cfg, args)), sys.stdout)
    except ConfigError as exc:
        print(f"qmetrics: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConsistencyFailure as exc:
        print(f"qmetrics: internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except (ZeroInformation, DegenerateLikelihood) as exc:
        print(f"qmetrics: zero-information instance: {exc}", file=sys.stderr)
        return EXIT_ZERO_INFO
    except QMetricsError as exc:
        print(f"qmetrics: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
