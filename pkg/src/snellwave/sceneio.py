"""Scene files, CSV tables and SVG snapshots."""

from __future__ import annotations

import io
import math
from typing import Iterable, TextIO

from .errors import InvalidProfile, InvalidScene, SceneFileError
from .interface_laws import Scene
from .profiles import FocusEllipse, Isotropic
from .trajectories import Trajectory
from .wavefront import CompositeWavefront, CutLocusSample

PROFILE_KEYS = {"isotropic": ("speed",), "ellipse": ("a", "eps", "phi")}


def fmt(x: float) -> str:
    return f"{x:.17g}"


def parse_scene(text: str) -> Scene:
    """Parse ``key = value`` lines into a Scene.

    Syntax problems raise ``SceneFileError`` carrying the line number; values
    that parse but describe an invalid medium raise ``InvalidScene``.
    """
    entries = {}
    lines = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SceneFileError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, value = (part.strip() for part in line.split("=", 1))
        region, dot, field = key.partition(".")
        if region not in ("region1", "region2") or not dot or not field:
            raise SceneFileError(f"unknown key {key!r}", lineno)
        if key in entries:
            raise SceneFileError(f"duplicate key {key!r}", lineno)
        entries[key] = value
        lines[key] = lineno

    profiles = []
    for region in ("region1", "region2"):
        kind_key = f"{region}.profile"
        if kind_key not in entries:
            raise SceneFileError(f"missing key {kind_key!r}")
        kind = entries[kind_key].lower()
        if kind not in PROFILE_KEYS:
            raise SceneFileError(f"unknown profile {entries[kind_key]!r}", lines[kind_key])
        allowed = set(PROFILE_KEYS[kind]) | {"profile"}
        for key in entries:
            if key.startswith(region + ".") and key.split(".", 1)[1] not in allowed:
                raise SceneFileError(f"key {key!r} does not apply to a {kind} profile", lines[key])
        values = {}
        for name in PROFILE_KEYS[kind]:
            key = f"{region}.{name}"
            if key not in entries:
                if name == "phi":
                    values[name] = 0.0
                    continue
                raise SceneFileError(f"missing key {key!r}", lines[kind_key])
            try:
                values[name] = float(entries[key])
            except ValueError:
                raise SceneFileError(f"{key} is not a number: {entries[key]!r}", lines[key]) from None
            if not math.isfinite(values[name]):
                raise SceneFileError(f"{key} must be finite", lines[key])
        try:
            if kind == "isotropic":
                profiles.append(Isotropic(values["speed"]))
            else:
                profiles.append(FocusEllipse(values["a"], values["eps"], values["phi"]))
        except InvalidProfile as exc:
            raise InvalidScene(f"line {lines[kind_key]}: {region}: {exc}") from None
    try:
        return Scene(*profiles)
    except InvalidScene as exc:
        raise InvalidScene(f"line {lines['region1.profile']}: {exc}") from None


def load_scene(path) -> Scene:
    with open(path, encoding="utf-8") as fh:
        return parse_scene(fh.read())


def dump_scene(scene: Scene) -> str:
    out = []
    for region, prof in (("region1", scene.profile1), ("region2", scene.profile2)):
        if isinstance(prof, Isotropic):
            out.append(f"{region}.profile = isotropic")
            out.append(f"{region}.speed = {prof.c!r}")
        else:
            out.append(f"{region}.profile = ellipse")
            out.append(f"{region}.a = {prof.a!r}")
            out.append(f"{region}.eps = {prof.eps!r}")
            out.append(f"{region}.phi = {prof.phi!r}")
    return "\n".join(out) + "\n"


# -- CSV ---------------------------------------------------------------------

def write_trajectory_csv(traj: Trajectory, fh: TextIO):
    fh.write("segment,region,x0,y0,x1,y1,t0,t1,theta\n")
    for i, s in enumerate(traj.segments):
        nums = (s.start.x, s.start.y, s.end.x, s.end.y, s.t_start, s.t_end, s.theta)
        fh.write(f"{i},{s.region.value}," + ",".join(fmt(v) for v in nums) + "\n")


def write_wavefront_csv(front: CompositeWavefront, fh: TextIO):
    fh.write("arc,kind,param,x,y\n")
    for i, arc in enumerate(front.arcs):
        for param, (x, y) in zip(arc.params, arc.points):
            fh.write(f"{i},{arc.kind.value},{fmt(param)},{fmt(x)},{fmt(y)}\n")


def write_cutlocus_csv(samples: Iterable[CutLocusSample], fh: TextIO):
    fh.write("branch,t,x,y\n")
    for s in samples:
        fh.write(f"{'+' if s.branch > 0 else '-'},{fmt(s.t)},{fmt(s.point.x)},{fmt(s.point.y)}\n")


def to_text(writer, obj) -> str:
    buf = io.StringIO()
    writer(obj, buf)
    return buf.getvalue()


# -- SVG ---------------------------------------------------------------------

SVG_STYLE = """
  .standard { stroke: #1f77b4; }
  .refracted { stroke: #2ca02c; }
  .reflected { stroke: #d62728; }
  .cutlocus { stroke: #7f7f7f; stroke-dasharray: 4 2; }
  .interface { stroke: #000000; stroke-opacity: 0.3; }
"""


def wavefront_svg(front: CompositeWavefront, cut=None, size: int = 600) -> str:
    """One polyline per arc (plus the cut locus if given), y axis pointing up."""
    polys = [(arc.kind.value, [(float(x), float(y)) for x, y in arc.points]) for arc in front.arcs]
    if cut:
        for sign in (1, -1):
            pts = [(s.point.x, s.point.y) for s in cut if s.branch == sign]
            if len(pts) > 1:
                polys.append(("cutlocus", pts))
    xs = [p[0] for _, pts in polys for p in pts]
    ys = [p[1] for _, pts in polys for p in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    w, h = max(x1 - x0, 1e-9), max(y1 - y0, 1e-9)
    mx, my = 0.05 * w, 0.05 * h
    vb = (x0 - mx, -(y1 + my), w + 2 * mx, h + 2 * my)
    stroke = 0.004 * max(vb[2], vb[3])
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="{" ".join(fmt(v) for v in vb)}">',
        f"<style>{SVG_STYLE}</style>",
        f'<g fill="none" stroke-width="{fmt(stroke)}">',
    ]
    if vb[0] <= 0.0 <= vb[0] + vb[2]:
        out.append(f'<line class="interface" x1="0" y1="{fmt(vb[1])}" x2="0" y2="{fmt(vb[1] + vb[3])}"/>')
    for cls, pts in polys:
        coords = " ".join(f"{fmt(x)},{fmt(-y)}" for x, y in pts)
        out.append(f'<polyline class="{cls}" points="{coords}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
