"""Command-line front end.

Subcommands: classify, spectrum, curvature, decompose, loop-phase,
surface-flux, monopole, sweep, selfcheck, job.  Single results are written
as JSON; sweeps as CSV with a fixed, documented column order.  Exit codes:
0 success, 1 usage or descriptor error, 2 degenerate-input rejection.

Every number emitted here is obtained through the library API; the CLI adds
no computation of its own.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__, curvature, holonomy, limits, selfcheck, spectrum, tensors
from .algebra import invariants
from .errors import DegenerateInput

SCHEMA = "su3holo/1"

SWEEP_BASE_COLUMNS = [
    "index", "xi1", "xi2", "xi3", "xi4", "xi5", "xi6", "xi7", "xi8",
    "norm", "phi", "class", "e12", "e23", "e13", "quadratic", "cubic",
]
SWEEP_CURVATURE_COLUMNS = ["v12", "v45", "v67", "v38", "vmax"]


class _Parser(argparse.ArgumentParser):
    # usage errors must exit 1 (argparse default is 2, reserved here for
    # degenerate-input rejection)
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(1)


def _vec8(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 8:
        raise argparse.ArgumentTypeError("expected 8 comma-separated numbers")
    return np.array([float(p) for p in parts])


def _vec3(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected 3 comma-separated numbers")
    return np.array([float(p) for p in parts])


def _rest_pair(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected x3,x8")
    xi = np.zeros(8)
    xi[2], xi[7] = float(parts[0]), float(parts[1])
    return xi


def _grid_shape(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected NUxNV, e.g. 64x128")
    return int(parts[0]), int(parts[1])


def _jsonable(value):
    if isinstance(value, float):
        return None if math.isnan(value) else value
    if isinstance(value, np.floating):
        return _jsonable(float(value))
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def _emit_json(payload: dict, path: str | None) -> None:
    text = json.dumps(_jsonable(payload), indent=2) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_csv(rows: list[dict], columns: list[str], path: str | None) -> None:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: row.get(k, "") for k in columns})
    text = buf.getvalue()
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _xi_from_args(args) -> np.ndarray:
    if getattr(args, "xi", None) is not None:
        return args.xi
    if getattr(args, "rest", None) is not None:
        return args.rest
    raise SystemExit2("one of --xi or --rest is required", 1)


class SystemExit2(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _cmd_classify(args) -> None:
    xi = _xi_from_args(args)
    s = spectrum.eigenvalues(xi, args.classify_tol)
    payload = {
        "schema": SCHEMA,
        "command": "classify",
        "xi": xi,
        "class": s.degeneracy.value,
        "phi": s.phi,
        "gaps": {"e12": s.e12, "e23": s.e23, "e13": s.e13},
    }
    _emit_json(payload, args.output)


def _cmd_spectrum(args) -> None:
    xi = _xi_from_args(args)
    s = spectrum.eigenvalues(xi, args.classify_tol)
    quad, cubic = invariants(xi)
    payload = {
        "schema": SCHEMA,
        "command": "spectrum",
        "xi": xi,
        "energies": [s.e1, s.e2, s.e3],
        "phi": s.phi,
        "gaps": {"e12": s.e12, "e23": s.e23, "e13": s.e13},
        "class": s.degeneracy.value,
        "rest_frame": spectrum.rest_frame(xi),
        "invariants": {"quadratic": quad, "cubic": cubic},
    }
    _emit_json(payload, args.output)


def _curvature_routes(xi, level: int, route: str, tol: float) -> dict:
    routes = {}
    if route in ("spectral", "all"):
        routes["spectral"] = curvature.curvature_spectral(xi, level, tol).coeffs
    if route in ("transported", "all"):
        routes["transported"] = curvature.curvature_transported(xi, level, tol).coeffs
    if route in ("parts", "all"):
        routes["parts"] = tensors.curvature_from_parts(xi, level, tol).coeffs
    return routes


def _cmd_curvature(args) -> None:
    xi = _xi_from_args(args)
    routes = _curvature_routes(xi, args.level, args.route, args.classify_tol)
    payload = {
        "schema": SCHEMA,
        "command": "curvature",
        "xi": xi,
        "level": args.level,
        "route": args.route,
        "coefficients": {name: mat for name, mat in routes.items()},
    }
    if len(routes) > 1:
        names = list(routes)
        dev = max(
            float(np.abs(routes[a] - routes[b]).max())
            for i, a in enumerate(names) for b in names[i + 1:]
        )
        payload["max_pairwise_deviation"] = dev
    _emit_json(payload, args.output)


def _cmd_decompose(args) -> None:
    xi = _xi_from_args(args)
    level = args.level
    form = curvature.curvature_spectral(xi, level, args.classify_tol)
    parts = tensors.project_irreducible(form.coeffs)
    s = spectrum.eigenvalues(xi, args.classify_tol)
    lam, mu = tensors.octet_coefficients(level, spectrum.rest_frame(xi), args.classify_tol)
    payload = {
        "schema": SCHEMA,
        "command": "decompose",
        "xi": xi,
        "level": level,
        "octet": parts.octet,
        "decouplet_re": parts.decouplet.real,
        "decouplet_im": parts.decouplet.imag,
        "antidecouplet_re": parts.antidecouplet.real,
        "antidecouplet_im": parts.antidecouplet.imag,
        "octet_expansion": {
            "lambda": lam,
            "mu": mu,
            "prefactor": -1.0 / (4.0 * s.e12 * s.e13 * s.e23),
        },
        "decouplet_weight": tensors.decouplet_weight(level, s.e12, s.e23),
    }
    _emit_json(payload, args.output)


def _loop_from_args(args) -> holonomy.LoopPath:
    if args.path_file:
        with open(args.path_file, encoding="utf-8") as fh:
            data = json.load(fh)
        return holonomy.LoopPath(np.array(data, dtype=float), args.classify_tol)
    for name in ("center", "axis1", "axis2", "radius"):
        if getattr(args, name) is None:
            raise SystemExit2(f"loop generator needs --{name} (or --path-file)", 1)
    return holonomy.circle_loop(
        args.center, args.axis1, args.axis2, args.radius, args.samples,
        args.classify_tol,
    )


def _cmd_loop_phase(args) -> None:
    loop = _loop_from_args(args)
    payload = {"schema": SCHEMA, "command": "loop_phase", "samples": len(loop.samples)}
    if args.level:
        payload["level"] = args.level
        payload["phase"] = holonomy.loop_phase(loop, args.level)
    else:
        phases, total = holonomy.phase_sum_rule_check(loop)
        payload["phases"] = {"level1": phases[0], "level2": phases[1], "level3": phases[2]}
        payload["sum_mod_2pi"] = total
    _emit_json(payload, args.output)


def _patch_from_args(args) -> holonomy.SurfacePatch:
    if args.patch_file:
        with open(args.patch_file, encoding="utf-8") as fh:
            data = json.load(fh)
        return holonomy.SurfacePatch(np.array(data, dtype=float), args.classify_tol)
    for name in ("center", "frame1", "frame2", "frame3", "radius"):
        if getattr(args, name) is None:
            raise SystemExit2(f"patch generator needs --{name} (or --patch-file)", 1)
    frame = np.stack([args.frame1, args.frame2, args.frame3])
    return holonomy.spherical_patch(
        args.center, frame, args.radius,
        (args.theta_min, args.theta_max), args.grid, args.classify_tol,
    )


def _cmd_surface_flux(args) -> None:
    patch = _patch_from_args(args)
    level = args.level or 1
    payload = {
        "schema": SCHEMA,
        "command": "surface_flux",
        "level": level,
        "grid": list(patch.grid.shape[:2]),
        "flux": holonomy.surface_flux(patch, level),
    }
    _emit_json(payload, args.output)


def _cmd_monopole(args) -> None:
    level = args.level or 1
    flux = limits.monopole_flux(
        args.direction, args.radius, level,
        center_offset=args.offset, rel_tol=args.quadrature_tol,
        tol=args.classify_tol,
    )
    payload = {
        "schema": SCHEMA,
        "command": "monopole",
        "direction": args.direction,
        "radius": args.radius,
        "level": level,
        "flux": flux,
        "flux_over_2pi": flux / (2.0 * np.pi),
    }
    _emit_json(payload, args.output)


def _sweep_points(args) -> np.ndarray:
    rng = np.random.default_rng(args.seed)
    if args.generator == "ray":
        if args.ray_from is None or args.toward is None:
            raise SystemExit2("ray sweep needs --ray-from and --toward", 1)
        deltas = np.logspace(
            math.log10(args.delta_start), math.log10(args.delta_stop), args.count
        )
        return args.ray_from + deltas[:, None] * args.toward
    if args.generator == "random":
        pts, tries = [], 0
        while len(pts) < args.count and tries < 100 * args.count:
            xi = args.scale * rng.standard_normal(8)
            tries += 1
            if spectrum.classify(xi, args.classify_tol) is spectrum.DegeneracyClass.GENERIC:
                pts.append(xi)
        return np.array(pts)
    if args.generator == "rest-frame":
        e12 = rng.uniform(0.2, 2.0, size=args.count)
        e23 = rng.uniform(0.2, 2.0, size=args.count)
        pts = np.zeros((args.count, 8))
        pts[:, 2] = e12
        pts[:, 7] = (e12 + 2.0 * e23) / np.sqrt(3.0)
        return pts
    raise SystemExit2(f"generator: unknown kind {args.generator!r}", 1)


def _sweep_row(index: int, xi: np.ndarray, level: int | None, tol: float) -> dict:
    s = spectrum.eigenvalues(xi, tol)
    quad, cubic = invariants(xi)
    row = {
        "index": index,
        **{f"xi{k+1}": repr(float(xi[k])) for k in range(8)},
        "norm": repr(float(spectrum.octet_norm(xi))),
        "phi": "" if math.isnan(s.phi) else repr(s.phi),
        "class": s.degeneracy.value,
        "e12": repr(s.e12), "e23": repr(s.e23), "e13": repr(s.e13),
        "quadratic": repr(quad), "cubic": repr(cubic),
    }
    if level is not None:
        if s.degeneracy is spectrum.DegeneracyClass.GENERIC:
            v = curvature.curvature_spectral(xi, level, tol).coeffs
            row.update(
                v12=repr(float(v[0, 1])), v45=repr(float(v[3, 4])),
                v67=repr(float(v[5, 6])), v38=repr(float(v[2, 7])),
                vmax=repr(float(np.abs(v).max())),
            )
        else:
            row.update(v12="nan", v45="nan", v67="nan", v38="nan", vmax="nan")
    return row


def _cmd_sweep(args) -> None:
    points = _sweep_points(args)
    threads = args.threads or os.cpu_count() or 1
    columns = list(SWEEP_BASE_COLUMNS)
    if args.level is not None:
        columns += SWEEP_CURVATURE_COLUMNS
    work = [(i, xi) for i, xi in enumerate(points)]
    if threads > 1 and len(work) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(
                pool.map(lambda w: _sweep_row(w[0], w[1], args.level, args.classify_tol), work)
            )
    else:
        rows = [_sweep_row(i, xi, args.level, args.classify_tol) for i, xi in work]
    _emit_csv(rows, columns, args.output)


def _cmd_selfcheck(args) -> int:
    results = selfcheck.run_all(args.seed)
    passed = sum(r.passed for r in results)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}")
    print(f"{passed}/{len(results)} checks passed")
    if args.output:
        _emit_json(
            {
                "schema": SCHEMA,
                "command": "selfcheck",
                "passed": passed,
                "total": len(results),
                "checks": [
                    {"name": r.name, "passed": r.passed, "detail": r.detail}
                    for r in results
                ],
            },
            args.output,
        )
    return 0 if passed == len(results) else 1


def _require_field(obj: dict, name: str, kind=None):
    if name not in obj:
        raise SystemExit2(f"descriptor field {name!r} is missing", 1)
    if kind is not None and not isinstance(obj[name], kind):
        raise SystemExit2(f"descriptor field {name!r} has the wrong type", 1)
    return obj[name]


def _cmd_job(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            desc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SystemExit2(f"cannot read descriptor: {exc}", 1) from exc
    if not isinstance(desc, dict):
        raise SystemExit2("descriptor must be a JSON object", 1)
    if _require_field(desc, "schema", str) != SCHEMA:
        raise SystemExit2(f"schema: expected {SCHEMA!r}", 1)
    command = _require_field(desc, "command", str)
    tolerances = desc.get("tolerances", {})
    output = desc.get("output", {})
    argv = [command]
    if "xi" in desc:
        xi = desc["xi"]
        if not isinstance(xi, list) or len(xi) != 8:
            raise SystemExit2("xi: expected a list of 8 numbers", 1)
        flag = "--direction" if command == "monopole" else "--xi"
        argv += [flag, ",".join(repr(float(v)) for v in xi)]
    if command == "monopole":
        argv += ["--radius", repr(float(desc.get("radius", 1e-3)))]
    if "level" in desc:
        argv += ["--level", str(int(desc["level"]))]
    if "classify" in tolerances:
        argv += ["--classify-tol", repr(float(tolerances["classify"]))]
    if "quadrature" in tolerances:
        argv += ["--quadrature-tol", repr(float(tolerances["quadrature"]))]
    if "seed" in desc:
        argv += ["--seed", str(int(desc["seed"]))]
    if "path" in output and output["path"]:
        argv += ["--output", str(output["path"])]
    if "format" in output and output["format"]:
        argv += ["--format", str(output["format"])]
    gen = desc.get("generator")
    if gen is not None:
        argv += _generator_argv(command, gen)
    return main(argv)


def _generator_argv(command: str, gen: dict) -> list[str]:
    kind = _require_field(gen, "kind", str)
    out: list[str] = []

    def vec(name):
        val = _require_field(gen, name, list)
        return ",".join(repr(float(v)) for v in val)

    if kind == "circle":
        out += ["--center", vec("center8")]
        pair = _require_field(gen, "axis_pair", list)
        if len(pair) != 2:
            raise SystemExit2("axis_pair: expected two 8-vectors", 1)
        out += ["--axis1", ",".join(repr(float(v)) for v in pair[0])]
        out += ["--axis2", ",".join(repr(float(v)) for v in pair[1])]
        out += ["--radius", repr(float(_require_field(gen, "radius")))]
        out += ["--samples", str(int(gen.get("samples", 1000)))]
    elif kind == "sphere-patch":
        out += ["--center", vec("center8")]
        frame = _require_field(gen, "frame", list)
        if len(frame) != 3:
            raise SystemExit2("frame: expected three 8-vectors", 1)
        for k, v in enumerate(frame, 1):
            out += [f"--frame{k}", ",".join(repr(float(x)) for x in v)]
        out += ["--radius", repr(float(_require_field(gen, "radius")))]
        theta = gen.get("theta_range", [0.0, math.pi])
        out += ["--theta-min", repr(float(theta[0])), "--theta-max", repr(float(theta[1]))]
        grid = gen.get("grid", [64, 128])
        out += ["--grid", f"{int(grid[0])}x{int(grid[1])}"]
    elif kind in ("ray", "random", "rest-frame"):
        out += ["--generator", kind]
        if kind == "ray":
            out += ["--ray-from", vec("from8"), "--toward", vec("toward8")]
            deltas = gen.get("delta_range", [1e-4, 1e-1])
            out += ["--delta-start", repr(float(deltas[0])),
                    "--delta-stop", repr(float(deltas[1]))]
        if "count" in gen:
            out += ["--count", str(int(gen["count"]))]
        if "scale" in gen:
            out += ["--scale", repr(float(gen["scale"]))]
    else:
        raise SystemExit2(f"generator.kind: unknown kind {kind!r}", 1)
    return out


def _add_common(p: argparse.ArgumentParser, point: bool = False) -> None:
    p.add_argument("--output", help="output path (default: stdout)")
    p.add_argument("--format", choices=["json", "csv"], default=None)
    p.add_argument("--seed", type=int, default=0, help="seed for all randomness")
    p.add_argument("--classify-tol", type=float, default=spectrum.DEFAULT_CLASSIFY_TOL)
    p.add_argument("--quadrature-tol", type=float, default=1e-4)
    p.add_argument("--threads", type=int, default=None)
    if point:
        p.add_argument("--xi", type=_vec8, help="explicit octet vector, 8 comma-separated values")
        p.add_argument("--rest", type=_rest_pair, help="rest-frame pair x3,x8")


def _build_parser() -> _Parser:
    parser = _Parser(prog="su3holo", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    for name in ("classify", "spectrum"):
        p = sub.add_parser(name)
        _add_common(p, point=True)

    p = sub.add_parser("curvature")
    _add_common(p, point=True)
    p.add_argument("--level", type=int, choices=[1, 2, 3], required=True)
    p.add_argument("--route", choices=["spectral", "transported", "parts", "all"],
                   default="spectral")

    p = sub.add_parser("decompose")
    _add_common(p, point=True)
    p.add_argument("--level", type=int, choices=[1, 2, 3], required=True)

    p = sub.add_parser("loop-phase")
    _add_common(p)
    p.add_argument("--level", type=int, choices=[1, 2, 3])
    p.add_argument("--path-file", help="JSON file with a list of 8-vectors")
    p.add_argument("--center", type=_vec8)
    p.add_argument("--axis1", type=_vec8)
    p.add_argument("--axis2", type=_vec8)
    p.add_argument("--radius", type=float)
    p.add_argument("--samples", type=int, default=1000)

    p = sub.add_parser("surface-flux")
    _add_common(p)
    p.add_argument("--level", type=int, choices=[1, 2, 3])
    p.add_argument("--patch-file", help="JSON file with an (nu, nv, 8) grid")
    p.add_argument("--center", type=_vec8)
    p.add_argument("--frame1", type=_vec8)
    p.add_argument("--frame2", type=_vec8)
    p.add_argument("--frame3", type=_vec8)
    p.add_argument("--radius", type=float)
    p.add_argument("--theta-min", type=float, default=0.0)
    p.add_argument("--theta-max", type=float, default=math.pi)
    p.add_argument("--grid", type=_grid_shape, default=(64, 128))

    p = sub.add_parser("monopole")
    _add_common(p)
    p.add_argument("--direction", type=_vec8, required=True)
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--level", type=int, choices=[1, 2, 3])
    p.add_argument("--offset", type=_vec3, default=None,
                   help="sphere-center offset in the unfolding subspace")

    p = sub.add_parser("sweep")
    _add_common(p)
    p.add_argument("--generator", choices=["ray", "random", "rest-frame"], required=True)
    p.add_argument("--level", type=int, choices=[1, 2, 3])
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--ray-from", type=_vec8)
    p.add_argument("--toward", type=_vec8)
    p.add_argument("--delta-start", type=float, default=1e-4)
    p.add_argument("--delta-stop", type=float, default=1e-1)

    p = sub.add_parser("selfcheck")
    _add_common(p)

    p = sub.add_parser("job")
    p.add_argument("file", help="JSON job descriptor")

    return parser


_HANDLERS = {
    "classify": _cmd_classify,
    "spectrum": _cmd_spectrum,
    "curvature": _cmd_curvature,
    "decompose": _cmd_decompose,
    "loop-phase": _cmd_loop_phase,
    "surface-flux": _cmd_surface_flux,
    "monopole": _cmd_monopole,
    "sweep": _cmd_sweep,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.cmd == "selfcheck":
            return _cmd_selfcheck(args)
        if args.cmd == "job":
            return _cmd_job(args)
        if getattr(args, "format", None) == "csv" and args.cmd != "sweep":
            raise SystemExit2("format: csv is only available for sweep", 1)
        if getattr(args, "format", None) == "json" and args.cmd == "sweep":
            raise SystemExit2("format: sweep emits csv only", 1)
        _HANDLERS[args.cmd](args)
        return 0
    except SystemExit2 as exc:
        sys.stderr.write(f"su3holo: error: {exc}\n")
        return exc.code
    except DegenerateInput as exc:
        sys.stderr.write(f"su3holo: degenerate input: {exc}\n")
        return 2
    except (ValueError, TypeError, OSError) as exc:
        sys.stderr.write(f"su3holo: error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
