"""Command-line front end: scene files in, summaries / CSV / SVG out.

Exit codes: 0 success, 1 domain error (invalid scene, no solution), 2 usage
or scene-file syntax error.
"""

from __future__ import annotations

import argparse
import math
import sys

from .errors import SceneFileError, SnellwaveError
from .interface_laws import Critical, Refracted, TotalReflection, critical_angles, reflect, refract
from .oracle import format_report, verify
from .profiles import Vector2
from .sceneio import (
    dump_scene,
    load_scene,
    wavefront_svg,
    write_cutlocus_csv,
    write_trajectory_csv,
    write_wavefront_csv,
)
from .trajectories import global_minimizer
from .wavefront import composite_wavefront, cut_locus

POINT_OPTIONS = ("--from", "--to", "--source")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _point(text: str) -> Vector2:
    try:
        x, y = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected X,Y, got {text!r}") from None
    return Vector2(x, y)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="snellwave", description="Two-media anisotropic traveltime engine.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def scene_cmd(name, help):
        c = sub.add_parser(name, help=help)
        c.add_argument("--scene", required=True, help="scene file (key = value lines)")
        return c

    scene_cmd("critical", "critical incidence angles")
    for name in ("refract", "reflect"):
        c = scene_cmd(name, f"{name} a ray at the interface")
        c.add_argument("--theta1", type=float, required=True, help="incidence angle")
        c.add_argument("--degrees", action="store_true", help="angles in degrees")

    c = scene_cmd("trace", "globally time-minimising path between two points")
    c.add_argument("--from", dest="src", type=_point, required=True, metavar="X,Y")
    c.add_argument("--to", dest="dst", type=_point, required=True, metavar="X,Y")
    c.add_argument("--csv", help="write the trajectory here")

    c = scene_cmd("wavefront", "composite wavefront at one time")
    c.add_argument("--source", type=_point, required=True, metavar="X,Y")
    c.add_argument("--time", type=float, required=True)
    c.add_argument("--samples", type=int, default=256)
    c.add_argument("--csv")
    c.add_argument("--svg")

    c = scene_cmd("cutlocus", "cut-locus branches up to a final time")
    c.add_argument("--source", type=_point, required=True, metavar="X,Y")
    c.add_argument("--tmax", type=float, required=True)
    c.add_argument("--samples", type=int, default=64)
    c.add_argument("--csv")

    c = scene_cmd("verify", "compare analytic minimisers with the brute-force oracle")
    c.add_argument("--cases", type=int, default=50)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--grid", type=int, default=512)
    c.add_argument("--rounds", type=int, default=4)

    scene_cmd("scene-dump", "print the scene in canonical form")
    return p


def _glue_points(argv):
    """Let ``--source -1,0`` through: argparse would read -1,0 as an option."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in POINT_OPTIONS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def _angle_out(theta, degrees):
    return repr(math.degrees(theta) if degrees else theta)


def _cmd_critical(scene, args, out):
    crit = critical_angles(scene)
    for name, v in (("theta_c_plus", crit.plus), ("theta_c_minus", crit.minus)):
        print(f"{name} = {'none' if v is None else repr(v)}", file=out)


def _cmd_refract(scene, args, out):
    theta1 = math.radians(args.theta1) if args.degrees else args.theta1
    res = refract(scene, theta1)
    if isinstance(res, Refracted):
        print("outcome = refracted", file=out)
        print(f"theta2 = {_angle_out(res.theta2, args.degrees)}", file=out)
    elif isinstance(res, Critical):
        print("outcome = critical", file=out)
        print(f"sign = {'+' if res.sign > 0 else '-'}", file=out)
        print(f"theta2 = {_angle_out(res.theta2, args.degrees)}", file=out)
    else:
        assert isinstance(res, TotalReflection)
        print("outcome = total-reflection", file=out)
        print(f"theta3 = {_angle_out(res.theta3, args.degrees)}", file=out)


def _cmd_reflect(scene, args, out):
    theta1 = math.radians(args.theta1) if args.degrees else args.theta1
    print(f"theta3 = {_angle_out(reflect(scene, theta1), args.degrees)}", file=out)


def _cmd_trace(scene, args, out):
    res = global_minimizer(scene, args.src, args.dst)
    label = res.kind.value + ("" if res.sign is None else ("+" if res.sign > 0 else "-"))
    print(f"classification = {label}", file=out)
    print(f"time = {res.time!r}", file=out)
    print(f"cut_locus = {'yes' if res.on_cut_locus else 'no'}", file=out)
    for i, seg in enumerate(res.trajectory.segments):
        print(f"segment {i}: {seg.region.value} ({seg.start.x:.6g}, {seg.start.y:.6g}) -> "
              f"({seg.end.x:.6g}, {seg.end.y:.6g})  t = [{seg.t_start:.6g}, {seg.t_end:.6g}]", file=out)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            write_trajectory_csv(res.trajectory, fh)


def _cmd_wavefront(scene, args, out):
    front = composite_wavefront(scene, args.source, args.time, args.samples)
    print(f"time = {front.time!r}", file=out)
    print(f"closed = {'yes' if front.closed else 'no'}", file=out)
    for i, arc in enumerate(front.arcs):
        lo, hi = arc.param_range
        print(f"arc {i}: {arc.kind.value} param [{lo:.6g}, {hi:.6g}] samples {len(arc.points)}", file=out)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            write_wavefront_csv(front, fh)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(wavefront_svg(front))


def _cmd_cutlocus(scene, args, out):
    samples = cut_locus(scene, args.source, args.tmax, args.samples)
    for sign in (1, -1):
        branch = [s for s in samples if s.branch == sign]
        if branch:
            first, last = branch[0], branch[-1]
            print(f"branch {'+' if sign > 0 else '-'}: {len(branch)} samples, t in "
                  f"[{first.t:.6g}, {last.t:.6g}], end point ({last.point.x:.6g}, {last.point.y:.6g})",
                  file=out)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            write_cutlocus_csv(samples, fh)


def _cmd_verify(scene, args, out):
    report = verify(scene, args.cases, args.seed, args.grid, args.rounds)
    out.write(format_report(report))
    return 0 if all(c.passed for c in report) else 1


def _cmd_dump(scene, args, out):
    out.write(dump_scene(scene))


COMMANDS = {
    "critical": _cmd_critical,
    "refract": _cmd_refract,
    "reflect": _cmd_reflect,
    "trace": _cmd_trace,
    "wavefront": _cmd_wavefront,
    "cutlocus": _cmd_cutlocus,
    "verify": _cmd_verify,
    "scene-dump": _cmd_dump,
}


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_glue_points(argv))
    except UsageError as exc:
        print(exc, file=err)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        scene = load_scene(args.scene)
    except OSError as exc:
        print(f"error: cannot read scene: {exc}", file=err)
        return 2
    except SceneFileError as exc:
        print(f"error: {args.scene}: {exc}", file=err)
        return 2
    except SnellwaveError as exc:
        print(f"error: {args.scene}: {exc}", file=err)
        return 1
    try:
        code = COMMANDS[args.command](scene, args, out)
    except (SnellwaveError, ValueError) as exc:
        print(f"error: {exc}", file=err)
        return 1
    return code or 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
