"""Command-line front end.

Subcommands: ``algebra``, ``matrix``, ``evolve``, ``search``, ``qutrit``.
A JSON run file (``--config``) holds a ``command`` field and flat parameters;
flags given on the command line override it.

Exit codes: 0 success, 1 algebra failure, 2 matrix comparison failure,
3 I/O error, 4 invalid input.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import sys
import warnings

import numpy as np

from . import __version__
from .algebra import GELLMANN, nonzero_table, verify_algebra
from .bloch import (
    as_amplitudes,
    bloch_from_density,
    density_from_amplitudes,
    exact_trajectory,
    generator_matrix,
    integrate_bloch,
    paper_generator,
    sample_times,
    transcription_repairs,
)
from .exceptions import InvalidArgumentError
from .invariants import RESONANT_BLOCKS, block_structure, search_invariants
from .model import SystemConfig, dressed_hamiltonian
from .qutrit import QutritAngles, qutrit_amplitudes, qutrit_bloch, qutrit_density

EXIT_OK, EXIT_ALGEBRA, EXIT_MATRIX, EXIT_IO, EXIT_INVALID = 0, 1, 2, 3, 4

CONFIG_KEYS = (
    "configuration", "kappa1", "kappa2", "delta1", "delta2",
    "omega1", "omega2", "big_omega1", "big_omega2",
)
CSV_HEADER = ["t"] + [f"S{i}" for i in range(1, 9)] + ["p1", "p2", "p3", "r2sq", "r4sq", "norm"]


class UsageError(Exception):
    """Invalid input; mapped to exit code 4."""


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _cplx(z) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def _seed(text) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _common_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", metavar="PATH", help="JSON run-configuration file")
    p.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    p.add_argument("--json", action="store_true", default=None, help="machine-readable output")
    p.add_argument("--seed", type=_seed, help="random seed (default 42)")
    return p


def _system_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--configuration", choices=["cascade", "lambda", "vee"])
    for name in CONFIG_KEYS[1:]:
        p.add_argument("--" + name.replace("_", "-"), dest=name, type=float)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="su3bloch",
        description="SU(3) Bloch-vector dynamics of three-level systems",
    )
    parser.add_argument("--version", action="version", version=__version__)
    common, system = _common_parent(), _system_parent()
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p = sub.add_parser("algebra", parents=[common], help="verify the SU(3) algebra")
    p.add_argument("--corrupt-basis", action="store_true", default=None, help=argparse.SUPPRESS)

    sub.add_parser("matrix", parents=[common, system],
                   help="compare the derived Bloch generator with the published one")

    p = sub.add_parser("evolve", parents=[common, system], help="write a Bloch trajectory as CSV")
    p.add_argument("--amplitudes", type=json.loads, metavar="JSON",
                   help="initial amplitudes as [[re, im], [re, im], [re, im]]")
    p.add_argument("--angles", type=float, nargs=4, metavar=("T0", "T1", "T2", "PHI"),
                   help="initial state as qutrit angles")
    p.add_argument("--t-max", dest="t_max", type=float)
    p.add_argument("--dt", type=float)
    p.add_argument("--method", choices=["exact", "rk4"])
    p.add_argument("--normalize", action="store_true", default=None)

    p = sub.add_parser("search", parents=[common, system], help="search conserved subsets")
    p.add_argument("--trials", type=int)
    p.add_argument("--tolerance", "--tol", dest="tolerance", type=float)
    p.add_argument("--allow-degenerate", dest="allow_degenerate", action="store_true", default=None)

    p = sub.add_parser("qutrit", parents=[common], help="qutrit state report")
    p.add_argument("--angles", type=float, nargs=4, metavar=("T0", "T1", "T2", "PHI"))
    return parser


DEFAULTS = {
    "json": False,
    "seed": 42,
    "t_max": 10.0,
    "dt": 0.01,
    "method": "exact",
    "normalize": False,
    "trials": 5,
    "tolerance": 1e-8,
    "allow_degenerate": False,
    "corrupt_basis": False,
}


def _load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise OSError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"config {path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    params = dict(data.get("parameters", {}))
    params.update({k: v for k, v in data.items() if k != "parameters"})
    return params


def resolve_arguments(argv) -> dict:
    """Merge defaults < config file < command-line flags."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    file_params = _load_config(known.config) if known.config else {}
    commands = {"algebra", "matrix", "evolve", "search", "qutrit"}
    if not commands & set(argv):
        if "command" not in file_params:
            parser.print_help(sys.stderr)
            raise UsageError("no command given")
        argv = [str(file_params["command"])] + argv
    args = vars(parser.parse_args(argv))
    file_cmd = file_params.get("command")
    if file_cmd is not None and file_cmd != args["command"]:
        raise UsageError(f"config command {file_cmd!r} does not match {args['command']!r}")
    merged = dict(DEFAULTS)
    merged.update({k: v for k, v in file_params.items() if k != "command"})
    merged.update({k: v for k, v in args.items() if v is not None})
    return merged


def _system_config(params: dict) -> SystemConfig:
    if params.get("configuration") is None:
        raise UsageError("--configuration is required")
    kwargs = {k: params.get(k) for k in CONFIG_KEYS}
    if kwargs["kappa1"] is None or kwargs["kappa2"] is None:
        raise UsageError("--kappa1 and --kappa2 are required")
    with warnings.catch_warnings():
        warnings.simplefilter("always")
        return SystemConfig(**kwargs)


def _initial_amplitudes(params: dict) -> np.ndarray:
    amps, angles = params.get("amplitudes"), params.get("angles")
    if (amps is None) == (angles is None):
        raise UsageError("give exactly one of --amplitudes or --angles")
    if angles is not None:
        return qutrit_amplitudes(QutritAngles(*_angles(angles)))
    try:
        pairs = np.asarray(amps, dtype=float)
    except (TypeError, ValueError):
        raise UsageError("amplitudes must be three [re, im] pairs") from None
    if pairs.shape != (3, 2):
        raise UsageError("amplitudes must be three [re, im] pairs")
    return as_amplitudes(pairs[:, 0] + 1j * pairs[:, 1], normalize=bool(params["normalize"]))


def _angles(values) -> list[float]:
    try:
        values = [float(v) for v in values]
    except (TypeError, ValueError):
        raise UsageError("angles must be four numbers") from None
    if len(values) != 4:
        raise UsageError("angles must be four numbers: theta0 theta1 theta2 phi")
    return values


def _matrix_text(m: np.ndarray) -> str:
    return np.array2string(np.asarray(m), precision=6, suppress_small=True, max_line_width=160)


def run_algebra(params: dict):
    basis = None
    if params["corrupt_basis"]:
        basis = GELLMANN.copy()
        basis[0] = basis[0] * (1 + 1e-6)
    report = verify_algebra(basis)
    f_table, d_table = nonzero_table("f"), nonzero_table("d")
    code = EXIT_OK if report.passed else EXIT_ALGEBRA
    if params["json"]:
        payload = {
            "command": "algebra",
            "passed": report.passed,
            "tolerance": report.tolerance,
            "max_residual": report.max_residual,
            "residuals": report.residuals(),
            "independent_nonzero_f": len(f_table),
            "f": [{"ijk": list(ijk), "value": v} for ijk, v in f_table],
            "d": [{"ijk": list(ijk), "value": v} for ijk, v in d_table],
        }
        return json.dumps(payload, indent=2) + "\n", code
    lines = ["SU(3) algebra check", ""]
    for name, value in report.residuals().items():
        lines.append(f"  {name:<16} max residual {value:.3e}")
    lines.append(f"  {'overall':<16} {'PASS' if report.passed else 'FAIL'} (tol {report.tolerance:g})")
    lines += ["", f"nonzero f_ijk (i<j<k): {len(f_table)} independent values"]
    lines += [f"  f{ijk} = {v:+.15f}" for ijk, v in f_table]
    lines += ["", f"nonzero d_ijk (i<=j<=k): {len(d_table)}"]
    lines += [f"  d{ijk} = {v:+.15f}" for ijk, v in d_table]
    return "\n".join(lines) + "\n", code


def compare_generators(config: SystemConfig) -> dict:
    """Derived vs published generator for one configuration."""
    derived = generator_matrix(dressed_hamiltonian(config))
    published = paper_generator(config)
    dev_direct = float(np.abs(derived - published).max())
    dev_transpose = float(np.abs(derived - published.T).max())
    convention = "transpose" if dev_transpose <= dev_direct else "direct"
    pattern = lambda m: np.abs(m) > 1e-12  # noqa: E731
    return {
        "derived": derived,
        "published": published,
        "convention": convention,
        "deviation": min(dev_direct, dev_transpose),
        "pattern_match": bool(np.array_equal(pattern(derived), pattern(published))),
        "blocks": block_structure(derived),
        "repairs": transcription_repairs(config.configuration),
    }


def run_matrix(params: dict):
    config = _system_config(params)
    cmp = compare_generators(config)
    ok = cmp["pattern_match"] and cmp["deviation"] < 1e-12
    code = EXIT_OK if ok else EXIT_MATRIX
    h = dressed_hamiltonian(config)
    if params["json"]:
        payload = {
            "command": "matrix",
            "configuration": config.configuration.value,
            "resonant": config.resonant,
            "dressed_hamiltonian": h.real.tolist(),
            "derived_generator": cmp["derived"].tolist(),
            "published_generator": cmp["published"].tolist(),
            "convention": cmp["convention"],
            "deviation": cmp["deviation"],
            "pattern_match": cmp["pattern_match"],
            "blocks": [list(b) for b in cmp["blocks"]],
            "published_sign_repairs": [
                {"row": i, "col": j, "printed_sign": a, "repaired_sign": b}
                for i, j, a, b in cmp["repairs"]
            ],
        }
        return json.dumps(payload, indent=2) + "\n", code
    lines = [
        f"configuration: {config.configuration.value}  kappa1={config.kappa1:g} kappa2={config.kappa2:g}"
        f"  delta1={config.delta1:g} delta2={config.delta2:g}",
        "",
        "dressed Hamiltonian:",
        _matrix_text(h.real),
        "",
        "derived generator M (dS/dt = M S):",
        _matrix_text(cmp["derived"]),
        "",
        "published generator (sign slips repaired):",
        _matrix_text(cmp["published"]),
        "",
        f"convention: derived = {'published^T' if cmp['convention'] == 'transpose' else 'published'}",
        f"max deviation: {cmp['deviation']:.3e}",
        f"nonzero pattern match: {cmp['pattern_match']}",
        "blocks: " + " ".join("{" + ",".join(map(str, b)) + "}" for b in cmp["blocks"]),
    ]
    for i, j, a, b in cmp["repairs"]:
        lines.append(f"repaired printed entry ({i},{j}): sign {a:+.0f} -> {b:+.0f}")
    lines.append("PASS" if ok else "FAIL")
    return "\n".join(lines) + "\n", code


def evolve_rows(config: SystemConfig, c0, t_max: float, dt: float, method: str) -> np.ndarray:
    h = dressed_hamiltonian(config)
    if method == "exact":
        traj = exact_trajectory(h, c0, sample_times(t_max, dt))
    elif method == "rk4":
        s0 = bloch_from_density(density_from_amplitudes(c0))
        traj = integrate_bloch(generator_matrix(h), s0, t_max, dt)
    else:
        raise UsageError(f"unknown method {method!r}")
    three, five = RESONANT_BLOCKS[config.configuration]
    s = traj.states
    r2 = (s[:, [i - 1 for i in three]] ** 2).sum(axis=1)
    r4 = (s[:, [i - 1 for i in five]] ** 2).sum(axis=1)
    norm = (s**2).sum(axis=1)
    return np.column_stack([traj.times, s, traj.populations, r2, r4, norm])


def run_evolve(params: dict):
    config = _system_config(params)
    c0 = _initial_amplitudes(params)
    t_max, dt = float(params["t_max"]), float(params["dt"])
    if not (math.isfinite(t_max) and t_max >= 0 and math.isfinite(dt) and dt > 0):
        raise UsageError("need t_max >= 0 and dt > 0")
    rows = evolve_rows(config, c0, t_max, dt, params["method"])
    buf = io.StringIO()
    buf.write(",".join(CSV_HEADER) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(x) for x in row) + "\n")
    return buf.getvalue(), EXIT_OK


def run_search(params: dict):
    config = _system_config(params)
    report = search_invariants(
        config,
        trials=params["trials"],
        tol=float(params["tolerance"]),
        seed=int(params["seed"]),
        allow_degenerate=bool(params["allow_degenerate"]),
    )
    return report.to_json(indent=2) + "\n", EXIT_OK


def run_qutrit(params: dict):
    if params.get("angles") is None:
        raise UsageError("--angles T0 T1 T2 PHI is required")
    q = QutritAngles(*_angles(params["angles"]))
    c = qutrit_amplitudes(q)
    rho = qutrit_density(q)
    s = qutrit_bloch(q)
    payload = {
        "command": "qutrit",
        "angles": {"theta0": q.theta0, "theta1": q.theta1, "theta2": q.theta2, "phi": q.phi},
        "amplitudes": [_cplx(z) for z in c],
        "density_matrix": [[_cplx(z) for z in row] for row in rho],
        "diagonal": [float(x) for x in rho.diagonal().real],
        "bloch_vector": [float(x) for x in s],
        "norm": float(np.dot(s, s)),
        "normalization_residual": float(abs(np.vdot(c, c).real - 1.0)),
        "purity_residual": float(np.abs(rho @ rho - rho).max()),
        "notes": [
            "rho11 = cos^2(theta0/2) from the outer product; the published list gives cos^2(theta1/2)",
        ],
    }
    return json.dumps(payload, indent=2) + "\n", EXIT_OK


RUNNERS = {
    "algebra": run_algebra,
    "matrix": run_matrix,
    "evolve": run_evolve,
    "search": run_search,
    "qutrit": run_qutrit,
}


def main(argv=None) -> int:
    try:
        params = resolve_arguments(argv)
        text, code = RUNNERS[params["command"]](params)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code not in (0, None) else 0
    except (UsageError, InvalidArgumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO

    out = params.get("out")
    if out:
        try:
            with open(out, "w", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {out}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
