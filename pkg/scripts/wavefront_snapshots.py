"""Composite fronts at several times, written as one SVG each plus a CSV.

    python scripts/wavefront_snapshots.py --out snapshots --times 0.4 0.9 1.5 2.5
"""

import argparse
import pathlib

from snellwave import composite_wavefront, critical_times, cut_locus, two_ellipse_scene
from snellwave.sceneio import load_scene, wavefront_svg, write_wavefront_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--scene", help="scene file; defaults to the two-ellipse scene")
    ap.add_argument("--source", type=float, nargs=2, default=(-1.0, 0.0), metavar=("X", "Y"))
    ap.add_argument("--times", type=float, nargs="+", default=[0.4, 0.9, 1.5, 2.5])
    ap.add_argument("--samples", type=int, default=256)
    ap.add_argument("--out", default="snapshots")
    args = ap.parse_args()

    scene = load_scene(args.scene) if args.scene else two_ellipse_scene()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    taus = critical_times(scene, args.source)

    for t0 in args.times:
        front = composite_wavefront(scene, args.source, t0, args.samples)
        late = [tau for tau in taus.values() if t0 > tau]
        cut = cut_locus(scene, args.source, t0, 64) if late else None
        stem = out / f"front_t{t0:g}"
        stem.with_suffix(".svg").write_text(wavefront_svg(front, cut))
        with open(stem.with_suffix(".csv"), "w", newline="") as fh:
            write_wavefront_csv(front, fh)
        kinds = "+".join(a.kind.value for a in front.arcs)
        print(f"t = {t0:g}: {kinds}, closed = {front.closed}, max gap = {max(front.gaps(), default=0):.1e}")
    print(f"wrote {len(args.times)} snapshots to {out}/")


if __name__ == "__main__":
    main()
