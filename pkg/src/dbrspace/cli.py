"""Command-line interface: scalar evaluations, verification suites, scanners.

Exit codes: 0 when every selected check passes, 1 when a check fails,
2 for malformed input (bad JSON, invalid objects, bad flags).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from . import debranges, dirichlet, series_core, verify, weights
from .quadrature import make_disk_rule

BUNDLED_PREFIX = "bundled:"


class InputError(Exception):
    """Malformed user input; reported with exit code 2."""


def load_json(text: str):
    """Inline JSON, a path to a JSON file, or ``bundled:<name>``."""
    if text.startswith(BUNDLED_PREFIX):
        name = text[len(BUNDLED_PREFIX):].replace("-", "_")
        try:
            text = resources.files("dbrspace").joinpath("data", f"{name}.json").read_text()
        except FileNotFoundError as exc:
            raise InputError(f"no bundled example named {name!r}") from exc
    elif not text.lstrip().startswith(("{", "[")) and Path(text).is_file():
        text = Path(text).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc


def parse_complex(text: str) -> complex:
    """Accepts ``0.3+0.4j``, ``0.3,0.4`` or a JSON pair ``[0.3, 0.4]``."""
    s = text.strip()
    try:
        if s.startswith("["):
            re_, im = json.loads(s)
            return complex(float(re_), float(im))
        if "," in s:
            re_, im = s.split(",")
            return complex(float(re_), float(im))
        return complex(s.replace(" ", "").replace("i", "j"))
    except (ValueError, TypeError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot parse complex number {text!r}") from exc


def parse_grid(text: str) -> tuple[int, int]:
    try:
        r, a = text.lower().split("x")
        return int(r), int(a)
    except ValueError as exc:
        raise InputError(f"--grid expects RxA (e.g. 15x16), got {text!r}") from exc


def _decode(fn, data, what: str):
    try:
        return fn(data)
    except (ValueError, TypeError, KeyError) as exc:
        raise InputError(f"invalid {what}: {exc}") from exc


def _function(args, boundary_poles: bool = False):
    if args.f is None:
        raise InputError("--f is required")
    return _decode(lambda d: series_core.from_json(d, boundary_poles), load_json(args.f), "function")


def _weight(args) -> weights.Weight:
    if args.weight is not None:
        return _decode(weights.weight_from_json, load_json(args.weight), "weight")
    if args.measure is not None:
        mu = _decode(weights.measure_from_json, load_json(args.measure), "measure")
        return weights.AtomicWeight(mu)
    if args.zeta is not None:
        return weights.omega(parse_complex(args.zeta))
    raise InputError("one of --weight, --measure or --zeta is required")


def _pair(args) -> debranges.PairBA:
    if args.phi is not None:
        phi = _decode(lambda d: series_core.from_json(d, boundary_poles=True), load_json(args.phi), "symbol")
        return _decode(lambda p: debranges.pair_from_phi(p, args.M, args.N), phi, "symbol")
    if args.zeta is not None:
        return debranges.pair_closed_form(parse_complex(args.zeta), args.M, args.N)
    raise InputError("one of --phi or --zeta is required")


def _rule(args):
    return make_disk_rule(args.nr, args.ntheta)


def _z_values(args) -> np.ndarray:
    if not args.z:
        raise InputError("--z is required")
    z = np.array([parse_complex(s) for s in args.z])
    if np.any(np.abs(z) >= 1):
        raise InputError("--z points must lie in the open unit disk")
    return z


def _complex_json(v: complex) -> list[float]:
    return [float(np.real(v)), float(np.imag(v))]


# subcommands ---------------------------------------------------------------

def cmd_dirichlet(args) -> int:
    f = _function(args)
    print(repr(dirichlet.dirichlet_area(f, _weight(args), _rule(args)).value))
    return 0


def cmd_local(args) -> int:
    if args.zeta is None:
        raise InputError("--zeta is required")
    f = _function(args)
    print(repr(dirichlet.local_dirichlet(f, parse_complex(args.zeta), args.M).value))
    return 0


def cmd_pair(args) -> int:
    pair = _pair(args)
    inv = pair.invariants()
    out = debranges.pair_to_json(pair)
    out["invariants"] = {k: (_complex_json(v) if isinstance(v, complex) else float(v)) for k, v in inv.items()}
    _emit_json(out, args.out)
    return 0


def cmd_fplus(args) -> int:
    f = series_core.as_poly(_function(args))
    pair = _pair(args)
    fp = debranges.f_plus(f, pair, args.N)
    out = {"coeffs": series_core.encode_coeffs(fp.coeffs),
           "residual": debranges.fplus_residual(f, fp, pair, max(args.N, f.degree))}
    _emit_json(out, args.out)
    return 0


def cmd_hbnorm(args) -> int:
    f = series_core.as_poly(_function(args))
    print(repr(debranges.hb_norm_sq(f, _pair(args))))
    return 0


def cmd_bergman(args) -> int:
    w, z = _weight(args), _z_values(args)
    vals = np.atleast_1d(weights.bergman_projection(w, z, _rule(args)))
    for v in vals:
        print(repr(complex(v)))
    return 0


def cmd_berezin(args) -> int:
    w, z = _weight(args), _z_values(args)
    vals = np.atleast_1d(weights.berezin(w, z, _rule(args)))
    for v in vals:
        print(repr(float(np.real(v))))
    return 0


def _config(args) -> verify.VerifyConfig:
    cfg = verify.VerifyConfig(n_r=args.nr, n_theta=args.ntheta, M=args.M, N=args.N, seed=args.seed, tol=args.tol)
    if args.grid:
        cfg.qb_grid = parse_grid(args.grid)
    return cfg


def _input_checks(args, cfg: verify.VerifyConfig) -> list[verify.CheckResult]:
    """Raw checks on a user-supplied measure or weight instead of the built-in suite."""
    if args.suite == "moments":
        mu = _decode(lambda d: weights.measure_from_json(d, signed=True), load_json(args.measure), "measure")
        res = weights.moment_residual(mu, args.m_max, args.m_max)
        return [verify.CheckResult("moments/input", res, cfg.tol if cfg.tol is not None else 1e-14,
                                   {"m_max": args.m_max, "n_max": args.m_max,
                                    "measure": weights.measure_to_json(mu)})]
    if args.suite == "qb":
        w = _weight(args)
        grid = weights.default_qb_grid(*cfg.qb_grid)
        res = weights.qb_residual(w, grid, cfg.rule())
        return [verify.CheckResult("qb/input", res, cfg.tol if cfg.tol is not None else verify.TOL_BOUNDARY,
                                   {"grid": list(cfg.qb_grid), "weight": weights.weight_to_json(w)})]
    if args.suite == "phieqn":
        mu = _decode(weights.measure_from_json, load_json(args.measure), "measure")
        grid = np.concatenate([[0j], weights.default_qb_grid(*cfg.qb_grid)])
        res = float(np.max(np.abs(verify.phieqn_profile(mu, grid, cfg.rule()))))
        return [verify.CheckResult("phieqn/input", res, cfg.tol if cfg.tol is not None else 1e-6,
                                   {"grid": list(cfg.qb_grid), "measure": weights.measure_to_json(mu)})]
    raise InputError(f"suite {args.suite!r} does not take --measure/--weight input")


def cmd_verify(args) -> int:
    cfg = _config(args)
    if args.measure is not None or args.weight is not None:
        checks = _input_checks(args, cfg)
    else:
        checks = verify.run_suites([args.suite], cfg)
    scans = {"signed_moment_datum": verify.signed_datum()} if args.suite in ("moments", "all") else None
    report = verify.build_report(checks, cfg, scans)
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"[{status}] {c.name}: residual={c.max_residual:.3e} tol={c.tolerance:.1e}", file=sys.stderr)
    if args.format == "csv":
        rows = [{k: v for k, v in c.items() if k != "grid_meta"} for c in report["checks"]]
        _emit_csv(rows, args.out)
    else:
        _emit_json(report, args.out)
    return 0 if all(c.passed for c in checks) else 1


def cmd_scan(args) -> int:
    cfg = _config(args)
    rows = verify.scan_qb(cfg) if args.kind == "qb" else verify.scan_moments(cfg, args.m_max, args.m_max)
    if args.format == "csv":
        _emit_csv(rows, args.out)
    else:
        _emit_json({"scan": args.kind, "config": cfg.to_json(), "rows": rows}, args.out)
    return 0


# output ------------------------------------------------------------------

def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_json(obj, out: str | None) -> None:
    _emit(json.dumps(obj, indent=2, sort_keys=False) + "\n", out)


def _flat(v):
    if isinstance(v, list) and len(v) == 2 and all(isinstance(x, float) for x in v):
        return complex(*v)
    return v


def _emit_csv(rows: list[dict], out: str | None) -> None:
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _flat(v) for k, v in row.items()})
    _emit(buf.getvalue(), out)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--nr", type=int, default=verify.VerifyConfig.n_r, help="radial Gauss-Legendre nodes")
    common.add_argument("--ntheta", type=int, default=verify.VerifyConfig.n_theta, help="angular nodes per ring")
    common.add_argument("--M", type=int, default=verify.VerifyConfig.M, help="boundary grid size (power of two)")
    common.add_argument("--N", type=int, default=verify.VerifyConfig.N, help="Taylor truncation degree")
    common.add_argument("--tol", type=float, default=None, help="override every check tolerance")
    common.add_argument("--grid", default=None, help="QB/phi grid as RxA (radii x angles)")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=verify.VerifyConfig.seed)
    common.add_argument("--f", default=None, help="function JSON {num, den}")
    common.add_argument("--phi", default=None, help="symbol JSON {num, den}")
    common.add_argument("--zeta", default=None, help="point of the closed disk, e.g. 0.3+0.4j")
    common.add_argument("--weight", default=None, help="weight JSON (kind atomic|power|sampled)")
    common.add_argument("--measure", default=None, help="measure JSON, file or bundled:two-atom")
    common.add_argument("--z", action="append", default=[], help="evaluation point (repeatable)")
    common.add_argument("--m-max", type=int, default=4, dest="m_max", help="moment order for raw checks")

    parser = argparse.ArgumentParser(prog="dbrspace", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn, helptext in (
        ("dirichlet", cmd_dirichlet, "weighted Dirichlet integral by area quadrature"),
        ("local", cmd_local, "local Dirichlet integral by the boundary formula"),
        ("pair", cmd_pair, "pair (b, a) from a symbol or a point zeta"),
        ("fplus", cmd_fplus, "solve for f+"),
        ("hbnorm", cmd_hbnorm, "squared H(b) norm"),
        ("bergman", cmd_bergman, "Bergman projection of a weight"),
        ("berezin", cmd_berezin, "Berezin transform of a weight"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.set_defaults(func=fn)
    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suite", choices=[*verify.SUITES, "all"])
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("scan", parents=[common], help="residual scanners")
    p.add_argument("kind", choices=("qb", "moments"))
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
