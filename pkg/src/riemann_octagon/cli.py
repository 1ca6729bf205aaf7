"""Command-line front end: tables and reports for every computation, plus the validator.

Exit codes: 0 success, 1 validation failure, 2 domain or region error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from . import dynamics as dyn
from . import orbits, validation
from .errors import DomainError, NumericError, OctagonError
from .fuchsian import generators, normalization, relation_defect, side_pairing_defect
from .octagon import P_REG, OctagonParams, build_geometry, perimeter
from .teichmuller import fn_coordinates, wp_density

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_DOMAIN = 2
EXIT_NUMERIC = 3

FLOAT_FMT = "%.12e"


class Table:
    """Rows for CSV/JSON output; floats are formatted only at write time."""

    def __init__(self, command: str, params: dict, columns: Sequence[str]):
        self.command = command
        self.params = params
        self.columns = list(columns)
        self.rows: list[list] = []

    def add(self, *values) -> None:
        self.rows.append(list(values))

    def to_csv(self) -> str:
        buf = io.StringIO()
        settings = " ".join(f"{k}={_fmt_param(v)}" for k, v in self.params.items())
        buf.write(f"# riemann-octagon {__version__} {self.command} {settings}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_csv_cell(v) for v in row])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "version": __version__,
            "command": self.command,
            "parameters": {k: _json_value(v) for k, v in self.params.items()},
            "columns": self.columns,
            "rows": [[_json_value(v) for v in row] for row in self.rows],
        }
        return json.dumps(doc, indent=2) + "\n"


def _fmt_param(v) -> str:
    return repr(float(v)) if isinstance(v, float) else str(v)


def _csv_cell(v) -> str:
    if isinstance(v, (float, np.floating)):
        return FLOAT_FMT % v
    return str(v)


def _json_value(v):
    # decimal strings keep full double precision through any JSON reader
    if isinstance(v, (float, np.floating, np.longdouble)):
        return repr(float(v))
    if isinstance(v, complex):
        return [repr(v.real), repr(v.imag)]
    if isinstance(v, dict):
        return {k: _json_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    return v


def read_config(path: str | Path) -> dict[str, str]:
    """Parse a ``key=value`` file; ``#`` starts a comment, blank lines are skipped."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _angle(args, value: float) -> float:
    return math.radians(value) if args.degrees else value


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise DomainError(message)


def cmd_describe(args) -> tuple[dict, int]:
    p = OctagonParams(args.a, _angle(args, args.alpha)).validate()
    geom = build_geometry(p)
    gs = generators(p)
    fn = fn_coordinates(p)
    P = perimeter(p)
    J = orbits.action_J(P)
    # the angle variable does not exist on the one-point orbit of the regular octagon
    Phi = None if P - P_REG < orbits.NEAR_REG else orbits.angle_Phi(p.a, P, p.eps)
    report = {
        "a": p.a,
        "alpha": p.alpha,
        "alpha_tilde": p.alpha_tilde,
        "eps": p.eps,
        "b": geom.b,
        "beta": geom.beta,
        "R_plus": geom.R_plus,
        "R_minus": geom.R_minus,
        "phi_plus": geom.phi_plus,
        "phi_minus": geom.phi_minus,
        "vertices": [complex(v) for v in geom.vertices],
        "perimeter": P,
        "fn_lengths": list(fn.lengths),
        "fn_twists": list(fn.twists),
        "wp_density": wp_density(p),
        "normalization": normalization(p),
        "generators": {
            f"g{k}": {"u": complex(g.u), "v": complex(g.v)} for k, g in enumerate(gs.g)
        },
        "relation_defect": relation_defect(gs),
        "side_pairing_defect": side_pairing_defect(p, gs),
        "action_J": J,
        "angle_Phi": Phi,
    }
    return report, EXIT_OK


def cmd_orbit(args) -> tuple[Table, int]:
    _require(args.n >= 2, "n must be >= 2")
    T = orbits.t_of_p(args.perimeter)
    table = Table("orbit", {"perimeter": args.perimeter, "n": args.n},
                  ["phi", "a", "alpha_tilde", "perimeter_check"])
    for k in range(args.n):
        phi = 2.0 * math.pi * k / args.n
        a, at = orbits.orbit_point(T, phi)
        table.add(phi, a, at, perimeter(OctagonParams.from_tilde(a, at)))
    return table, EXIT_OK


def _area_or_none(P: float) -> float | None:
    try:
        return orbits.wp_area_numeric(P)
    except NumericError:
        return None


def cmd_area(args) -> tuple[Table, int]:
    _require(args.n >= 2, "n must be >= 2")
    _require(args.p_max > args.p_min, "p_max must exceed p_min")
    orbits.t_of_p(args.p_min)
    h = args.fd_step
    table = Table("area", {"p_min": args.p_min, "p_max": args.p_max, "n": args.n, "fd_step": h},
                  ["P", "A_numeric", "A_dilog", "dAdP_analytic", "dAdP_fd", "status"])
    warnings = 0
    for P in np.linspace(args.p_min, args.p_max, args.n):
        P = float(P)
        status = []
        A = _area_or_none(P)
        if A is None:
            status.append("quadrature")
        try:
            A0 = orbits.wp_area_dilog(P)
        except DomainError:
            A0 = math.nan  # the approximation is undefined on the degenerate orbit
        dadp = orbits.dA_dP(P)
        if P - h >= P_REG:
            pts = (_area_or_none(P + h), _area_or_none(P - h))
            fd = None if None in pts else (pts[0] - pts[1]) / (2 * h)
        else:
            # second-order one-sided difference at the lower end
            pts = (_area_or_none(P), _area_or_none(P + h), _area_or_none(P + 2 * h))
            fd = None if None in pts else (-3 * pts[0] + 4 * pts[1] - pts[2]) / (2 * h)
        if fd is None:
            status.append("fd")
        if status:
            warnings += 1
        table.add(P, math.nan if A is None else A, A0, dadp, math.nan if fd is None else fd,
                  "ok" if not status else "failed:" + "+".join(status))
    if warnings:
        print(f"warning: {warnings} row(s) with quadrature failures", file=sys.stderr)
    return table, EXIT_OK


def cmd_evolve(args) -> tuple[Table, int]:
    _require(args.n >= 2, "n must be >= 2")
    _require(args.tau_max > args.tau_min, "tau_max must exceed tau_min")
    taus = np.linspace(args.tau_min, args.tau_max, args.n)
    alpha = _angle(args, args.alpha)
    base = "rk4" if args.method == "rk4" else "closed"
    traj = dyn.trajectory_in_A(args.a, alpha, args.C, taus, p_max=args.p_max, method=base)
    columns = ["tau", "J", "Phi", "a", "alpha", "H"]
    if args.method == "both":
        columns += ["dJ_rk4", "dPhi_rk4"]
        aa = orbits.action_angle(OctagonParams(args.a, alpha))
        kept = np.array([s.tau for s in traj.states])
        J_rk, Phi_rk = dyn.evolve_rk4_at(aa.J, aa.Phi, aa.eps, args.C, kept)
    params = {"a": args.a, "alpha": alpha, "C": args.C, "tau_min": args.tau_min,
              "tau_max": args.tau_max, "n": args.n, "method": args.method}
    table = Table("evolve", params, columns)
    for k, s in enumerate(traj.states):
        row = [s.tau, s.J, s.Phi, s.a, s.alpha, s.H]
        if args.method == "both":
            row += [J_rk[k] - s.J, Phi_rk[k] - s.Phi]
        table.add(*row)
    if traj.truncated:
        print(f"error: trajectory truncated ({traj.diagnostic})", file=sys.stderr)
        return table, EXIT_NUMERIC
    return table, EXIT_OK


def cmd_spectrum(args) -> tuple[Table, int]:
    _require(args.n_max >= 0, "n_max must be >= 0")
    table = Table("spectrum", {"n_max": args.n_max}, ["n", "A_n"])
    for n in range(args.n_max + 1):
        table.add(n, dyn.area_spectrum(n))
    return table, EXIT_OK


def _parse_tol(items: Sequence[str]) -> dict[str, float]:
    out = {}
    for item in items:
        if "=" not in item:
            raise DomainError(f"--tol expects name=value, got {item!r}")
        k, v = item.split("=", 1)
        if k not in validation.TOLERANCES:
            raise DomainError(f"unknown tolerance {k!r}; known: {', '.join(validation.TOLERANCES)}")
        out[k] = float(v)
    return out


def cmd_validate(args) -> tuple[dict, int]:
    results = validation.run_suite(args.level, _parse_tol(args.tol or []))
    for r in results:
        print(r.line(), file=sys.stderr)
    doc = validation.summary(results, args.level)
    return doc, EXIT_OK if doc["passed"] else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="riemann-octagon",
        description="Genus-two octagon geometry, WP action-angle variables and boost dynamics.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, help: str, fmt: str = "csv") -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("--config", help="file of key=value defaults (flags override)")
        p.add_argument("--format", choices=("csv", "json"), default=fmt)
        p.add_argument("--output", "-o", help="write here instead of standard output")
        p.add_argument("--degrees", action="store_true", help="angles given in degrees")
        return p

    p = command("describe", "JSON report for one octagon", fmt="json")
    p.add_argument("--a", type=float, default=2.0 ** -0.25)
    p.add_argument("--alpha", type=float, default=math.pi / 4)
    p.set_defaults(func=cmd_describe)

    p = command("orbit", "samples of a constant-perimeter orbit")
    p.add_argument("--perimeter", type=float, required=True)
    p.add_argument("--n", type=int, default=64)
    p.set_defaults(func=cmd_orbit)

    p = command("area", "WP-area and dA/dP over a perimeter range")
    p.add_argument("--p-min", type=float, default=P_REG)
    p.add_argument("--p-max", type=float, default=41.0)
    p.add_argument("--n", type=int, default=50)
    p.add_argument("--fd-step", type=float, default=1e-3)
    p.set_defaults(func=cmd_area)

    p = command("evolve", "boost trajectory mapped into the region")
    p.add_argument("--a", type=float, default=0.8)
    p.add_argument("--alpha", type=float, default=math.pi / 3)
    p.add_argument("--C", type=float, default=0.0)
    p.add_argument("--tau-min", type=float, default=-5.5)
    p.add_argument("--tau-max", type=float, default=3.5)
    p.add_argument("--n", type=int, default=181)
    p.add_argument("--p-max", type=float, default=dyn.P_MAX_DEFAULT)
    p.add_argument("--method", choices=("closed", "rk4", "both"), default="closed")
    p.set_defaults(func=cmd_evolve)

    p = command("spectrum", "area eigenvalues 4 pi (n + 1/2)")
    p.add_argument("--n-max", type=int, default=10)
    p.set_defaults(func=cmd_spectrum)

    p = command("validate", "run the acceptance checks", fmt="json")
    p.add_argument("--level", choices=("fast", "full"), default="fast")
    p.add_argument("--tol", action="append", metavar="NAME=VALUE",
                   help="override a tolerance (repeatable)")
    p.set_defaults(func=cmd_validate)
    return parser


def _parse(argv: Sequence[str] | None) -> argparse.Namespace:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    subparsers = parser._subparsers._group_actions[0].choices
    command = next((tok for tok in argv if tok in subparsers), None)
    if known.config and command:
        cfg = read_config(known.config)
        subparser = subparsers[command]
        actions = {a.dest: a for a in subparser._actions}
        unknown = set(cfg) - set(actions) - {"config"}
        if unknown:
            raise DomainError(f"unknown config keys for {command}: {', '.join(sorted(unknown))}")
        for key in cfg:
            actions[key].required = False
        # string defaults go through each option's type conversion
        subparser.set_defaults(**cfg)
    return parser.parse_args(argv)


def _emit(result, args) -> None:
    if isinstance(result, Table):
        text = result.to_json() if args.format == "json" else result.to_csv()
    else:
        text = json.dumps(_json_value(result), indent=2) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = _parse(argv)
        result, code = args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OctagonError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    _emit(result, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
