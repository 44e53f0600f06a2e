"""Command line front end.

Polygons travel as JSON {"n": int, "vertices": [[re, im], ...]}.  Exit
status: 0 on success, 1 on domain errors (for example a missing even-n
dedal polygon, with the defect reported as JSON on stderr), 2 on input,
parse, or output errors.  Randomized commands use numpy's PCG64 generator
seeded per trial, so a fixed seed reproduces output byte for byte.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from .billiard import (
    InteriorPointError,
    OrbitTrace,
    SingularPointError,
    find_fagnano,
    orbit,
)
from .classify import classification_report
from .dynamics import convexification_ensemble, decay_report, iterate
from .midpoint import NoDedalError, dedal, dedal_even, develop, family_member
from .polygon import Polygon, vertex_distance
from .spectral import decompose
from .svg import render_svg


class InputError(Exception):
    """Unreadable or malformed input; maps to exit status 2."""


def _load_polygon(path: str) -> Polygon:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        return Polygon.from_json_dict(data)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"cannot load polygon from {path}: {exc}") from exc


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _emit_json(data: dict, out: Optional[str]) -> None:
    _emit(json.dumps(data, indent=2) + "\n", out)


def _error_json(payload: dict) -> None:
    sys.stderr.write(json.dumps(payload) + "\n")


def cmd_dedal(args) -> int:
    p = _load_polygon(args.input)
    if p.n % 2 == 0 and (args.s_re or args.s_im):
        family = dedal_even(p, args.tol)
        q = family_member(family, complex(args.s_re, args.s_im))
    else:
        q = dedal(p, args.tol)
    if args.check:
        err = vertex_distance(develop(q), p)
        bound = (args.tol or 1e-9) * (1.0 + max(abs(v) for v in p.vertices))
        if err > bound:
            raise RuntimeError(f"round trip failed: max vertex error {err}")
    _emit_json(q.to_json_dict(), args.out)
    return 0


def cmd_develop(args) -> int:
    p = _load_polygon(args.input)
    _emit_json(develop(p).to_json_dict(), args.out)
    return 0


def cmd_spectrum(args) -> int:
    p = _load_polygon(args.input)
    _emit_json(decompose(p).to_json_dict(), args.out)
    return 0


def cmd_classify(args) -> int:
    p = _load_polygon(args.input)
    _emit_json(classification_report(p, args.tol), args.out)
    return 0


def cmd_iterate(args) -> int:
    p = _load_polygon(args.input)
    trace = iterate(p, args.steps)
    report = None
    distances: Optional[list[float]] = None
    if args.steps >= 10:
        try:
            rep = decay_report(p, args.steps)
            distances = list(rep.distances)
            report = {
                "j": rep.j,
                "predicted_rate": rep.predicted_rate,
                "fitted_rate": rep.fitted_rate,
                "distances": distances,
            }
        except ValueError:
            report = None
    if args.format == "json":
        data = {
            "steps": trace.steps,
            "polygons": [poly.to_json_dict() for poly in trace.polygons],
            "report": report,
        }
        _emit_json(data, args.out)
    else:
        lines = []
        header = ["step"]
        for i in range(p.n):
            header += [f"v{i}_re", f"v{i}_im"]
        header.append("dist_to_attractor")
        lines.append(",".join(header))
        for step, poly in enumerate(trace.polygons):
            row = [str(step)]
            for v in poly.vertices:
                row += [repr(float(v.real)), repr(float(v.imag))]
            row.append(repr(float(distances[step])) if distances is not None else "")
            lines.append(",".join(row))
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_orbit(args) -> int:
    p = _load_polygon(args.input)
    z = complex(args.start_re, args.start_im)
    trace = orbit(p, z, args.steps, tol=args.tol, convention=args.convention)
    termination = trace.termination.to_json_dict()
    if args.format == "json":
        data = {
            "points": [[pt.real, pt.imag] for pt in trace.points],
            "support_indices": list(trace.support_indices),
            "termination": termination,
        }
        _emit_json(data, args.out)
    else:
        lines = ["step,re,im,support_vertex_index"]
        for step, pt in enumerate(trace.points):
            sup = (
                str(trace.support_indices[step])
                if step < len(trace.support_indices)
                else ""
            )
            lines.append(f"{step},{float(pt.real)!r},{float(pt.imag)!r},{sup}")
        _emit("\n".join(lines) + "\n", args.out)
        _error_json({"termination": termination})
    return 0


def cmd_fagnano(args) -> int:
    p = _load_polygon(args.input)
    q = find_fagnano(p, args.tol)
    data = {"found": q is not None, "orbit": q.to_json_dict() if q else None}
    _emit_json(data, args.out)
    return 0


def cmd_bgs(args) -> int:
    results = convexification_ensemble(args.n, args.samples, args.max_m, args.seed)
    counts: dict[int, int] = {}
    for m in results:
        if m is not None:
            counts[m] = counts.get(m, 0) + 1
    converged = sum(counts.values())
    data = {
        "n": args.n,
        "samples": args.samples,
        "seed": args.seed,
        "max_m": args.max_m,
        "histogram": [[m, counts[m]] for m in sorted(counts)],
        "unconverged": args.samples - converged,
        "fraction_converged": converged / args.samples,
    }
    _emit_json(data, args.out)
    return 0


def cmd_render(args) -> int:
    p = _load_polygon(args.input)
    overlays = []
    if args.dedal:
        overlays.append(dedal(p, args.tol))
    for path in args.overlay or []:
        overlays.append(_load_polygon(path))
    if args.orbit_start_re is not None or args.orbit_start_im is not None:
        z = complex(args.orbit_start_re or 0.0, args.orbit_start_im or 0.0)
        overlays.append(
            orbit(p, z, args.orbit_steps, tol=args.tol, convention=args.convention)
        )
    render_svg(p, overlays, path=args.out)
    return 0


def _add_common(sub, *, tol=True, out=True) -> None:
    if tol:
        sub.add_argument("--tol", type=float, default=1e-9, help="tolerance")
    if out:
        sub.add_argument("--out", help="output path (default: stdout)")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dedal",
        description="Dedal polygons, midpoint-map dynamics, and outer billiards.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("dedal", help="dedal polygon of the input")
    sp.add_argument("input")
    sp.add_argument("--s-re", type=float, default=0.0, help="family parameter (even n)")
    sp.add_argument("--s-im", type=float, default=0.0)
    sp.add_argument("--check", action="store_true", help="verify the round trip")
    _add_common(sp)
    sp.set_defaults(func=cmd_dedal)

    sp = sub.add_parser("develop", help="midpoint polygon of the input")
    sp.add_argument("input")
    _add_common(sp, tol=False)
    sp.set_defaults(func=cmd_develop)

    sp = sub.add_parser("spectrum", help="eigenbasis coefficients of the input")
    sp.add_argument("input")
    _add_common(sp, tol=False)
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("classify", help="regularity classification report")
    sp.add_argument("input")
    _add_common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("iterate", help="midpoint orbit trace")
    sp.add_argument("input")
    sp.add_argument("--steps", type=int, default=40)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    _add_common(sp, tol=False)
    sp.set_defaults(func=cmd_iterate)

    sp = sub.add_parser("orbit", help="dual billiard orbit trace")
    sp.add_argument("input")
    sp.add_argument("--start-re", type=float, required=True)
    sp.add_argument("--start-im", type=float, required=True)
    sp.add_argument("--steps", type=int, default=1000)
    sp.add_argument("--convention", choices=("ccw", "cw"), default="ccw")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    _add_common(sp)
    sp.set_defaults(func=cmd_orbit)

    sp = sub.add_parser("fagnano", help="search for a Fagnano orbit")
    sp.add_argument("input")
    _add_common(sp)
    sp.set_defaults(func=cmd_fagnano)

    sp = sub.add_parser("bgs", help="convexification ensemble statistics")
    sp.add_argument("--n", type=int, default=5)
    sp.add_argument("--samples", type=int, default=1000)
    sp.add_argument("--max-m", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    _add_common(sp, tol=False)
    sp.set_defaults(func=cmd_bgs)

    sp = sub.add_parser("render", help="emit an SVG figure")
    sp.add_argument("input")
    sp.add_argument("--dedal", action="store_true", help="overlay the dedal polygon")
    sp.add_argument("--overlay", action="append", help="overlay polygon JSON path")
    sp.add_argument("--orbit-start-re", type=float)
    sp.add_argument("--orbit-start-im", type=float)
    sp.add_argument("--orbit-steps", type=int, default=100)
    sp.add_argument("--convention", choices=("ccw", "cw"), default="ccw")
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--out", required=True, help="SVG output path")
    sp.set_defaults(func=cmd_render)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        _error_json({"error": str(exc)})
        return 2
    except NoDedalError as exc:
        _error_json(
            {"error": str(exc), "defect": [exc.defect.real, exc.defect.imag]}
        )
        return 1
    except SingularPointError as exc:
        _error_json({"error": str(exc), "side_index": exc.side_index})
        return 1
    except InteriorPointError as exc:
        _error_json({"error": str(exc)})
        return 1
    except (ValueError, RuntimeError) as exc:
        _error_json({"error": str(exc)})
        return 1
    except OSError as exc:
        _error_json({"error": str(exc)})
        return 2


if __name__ == "__main__":
    sys.exit(main())
