"""Command-line front end.

Subcommands: build-steffen, check, volume, flex-frame, flex-scan, export-obj.
Exit codes for `check`: 0 = Embedded, 1 = NotEmbedded, 2 = Inconclusive;
anything above 2 is an error (64 usage, 65 bad input, 70 internal).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import flex as flexmod
from . import modelio, report
from .checker import EMBEDDED, INCONCLUSIVE, NOT_EMBEDDED, check_embedded
from .geom import Point3
from .mesh import EXACT, FLOAT, MeshError
from .steffen import SteffenError, build_steffen, volume

EXIT_USAGE = 64
EXIT_BAD_INPUT = 65
EXIT_INTERNAL = 70

_VERDICT_EXIT = {EMBEDDED: 0, NOT_EMBEDDED: 1, INCONCLUSIVE: 2}


class _Parser(argparse.ArgumentParser):
    # usage errors must not collide with the verdict exit codes 0/1/2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="steffenflex",
                     description="Exact embeddedness checks for triangulated "
                                 "surfaces and the Steffen polyhedron")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-steffen", parents=[], help="construct the exact model")
    p.add_argument("--out", required=True, help="output JSON model path")
    p.add_argument("--precision", type=int, default=None,
                   help="also write a float model rounded to this many digits")
    p.add_argument("--float-out", default=None,
                   help="path of the float model (default: <out>.floatN.json)")

    p = sub.add_parser("check", help="verify a model is self-intersection free")
    p.add_argument("model", nargs="?", help="JSON model path")
    p.add_argument("--split-inputs", nargs=4, default=None,
                   metavar=("S", "SS", "T", "TT"),
                   help="legacy CSV lists: edge ids, edge coords, face ids, face coords")
    p.add_argument("--mode", choices=(EXACT, FLOAT), default=None,
                   help="override the model's arithmetic mode")
    p.add_argument("--eps", type=float, default=1e-9,
                   help="zero threshold for float mode (default 1e-9)")
    p.add_argument("--resolve-degenerate", action="store_true",
                   help="settle needs-study cases with the exact resolver")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out1", default=None, help="needs-additional-study text file")
    p.add_argument("--out2", default=None, help="intersections text file")
    p.add_argument("--report", default=None, help="JSON report path")

    p = sub.add_parser("volume", help="enclosed volume of a closed model")
    p.add_argument("model")

    p = sub.add_parser("flex-frame", help="one flexed frame as a float model")
    p.add_argument("--t", type=float, required=True, help="flex parameter (radians)")
    p.add_argument("--eps", type=float, default=1e-9)
    p.add_argument("--out", default=None, help="float model JSON path")
    p.add_argument("--obj", default=None, help="OBJ export path")

    p = sub.add_parser("flex-scan", help="scan embeddedness along the flex")
    p.add_argument("--from", dest="t_from", type=float, required=True)
    p.add_argument("--to", dest="t_to", type=float, required=True)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--eps", type=float, default=1e-9)
    p.add_argument("--report", default=None, help="CSV report path")
    p.add_argument("--frames", default=None, help="directory for per-sample OBJ frames")
    p.add_argument("--plot", default=None,
                   help="figure path (default: next to the CSV report)")
    p.add_argument("--no-plot", action="store_true")
    p.add_argument("--bisect-tol", type=float, default=1e-6,
                   help="bracket tolerance when the verdict flips in range")

    p = sub.add_parser("export-obj", help="approximate OBJ export of a model")
    p.add_argument("model")
    p.add_argument("--out", required=True)
    p.add_argument("--precision", type=int, default=9)

    return parser


def cmd_build_steffen(args) -> int:
    model = build_steffen()
    modelio.write_model(model.realization, args.out)
    print(f"wrote exact model: {args.out} "
          f"({len(model.complex.vertex_ids)} vertices, "
          f"{len(model.complex.edges)} edges, {len(model.complex.faces)} faces)")
    if args.precision is not None:
        digits = args.precision
        float_path = args.float_out or f"{os.path.splitext(args.out)[0]}.float{digits}.json"
        coords = {vid: Point3(*(round(float(c), digits) for c in p))
                  for vid, p in model.coords.items()}
        from .mesh import realize
        float_real = realize(model.complex, coords, mode=FLOAT)
        modelio.write_model(float_real, float_path)
        print(f"wrote float model ({digits} digits): {float_path}")
    return 0


def cmd_check(args) -> int:
    if (args.model is None) == (args.split_inputs is None):
        print("check: give either a model path or --split-inputs", file=sys.stderr)
        return EXIT_USAGE
    if args.split_inputs:
        r = modelio.read_split_inputs(*args.split_inputs, epsilon=args.eps)
    else:
        r = modelio.read_model(args.model)
    if args.mode is not None and args.mode != r.mode:
        if args.mode == FLOAT:
            from .mesh import realize
            r = realize(r.complex, r.coords, mode=FLOAT, epsilon=args.eps)
        else:
            print("check: cannot promote a float model to exact mode", file=sys.stderr)
            return EXIT_BAD_INPUT
    rep = check_embedded(r, resolve_degenerate=args.resolve_degenerate,
                         workers=args.workers)
    if args.out1:
        with open(args.out1, "w") as fh:
            fh.writelines(line + "\n" for line in rep.out1_lines())
    if args.out2:
        with open(args.out2, "w") as fh:
            fh.writelines(line + "\n" for line in rep.out2_lines())
    if args.report:
        with open(args.report, "w") as fh:
            json.dump(rep.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    print(f"verdict: {rep.verdict} "
          f"(pairs scanned: {rep.pairs_scanned}, "
          f"needs study: {len(rep.out1)}, intersections: {len(rep.out2)})")
    for line in rep.out2_lines():
        print(line)
    for line in rep.out1_lines():
        print(line)
    return _VERDICT_EXIT[rep.verdict]


def cmd_volume(args) -> int:
    r = modelio.read_model(args.model)
    v = volume(r)
    if r.is_exact:
        print(f"volume = {v}")
        print(f"       = {v.decimal_str(15)}")
    else:
        print(f"volume = {v:.15g} (float mode)")
    return 0


def cmd_flex_frame(args) -> int:
    frame = flexmod.realize_flex(args.t, epsilon=args.eps)
    residual = flexmod.edge_length_residual(frame)
    print(f"t = {args.t}: max edge residual {residual:.3e}")
    if args.out:
        modelio.write_model(frame.realization, args.out)
        print(f"wrote float model: {args.out}")
    if args.obj:
        modelio.write_obj(frame.realization, args.obj)
        print(f"wrote OBJ: {args.obj}")
    return 0


def cmd_flex_scan(args) -> int:
    samples = flexmod.scan_embeddedness(args.t_from, args.t_to, args.steps,
                                        epsilon=args.eps)
    embedded = [s for s in samples if s.verdict == EMBEDDED]
    bad = [s for s in samples if s.ok and s.verdict != EMBEDDED]
    print(f"samples: {len(samples)}, embedded: {len(embedded)}, "
          f"not embedded/inconclusive: {len(bad)}, "
          f"unrealizable: {sum(1 for s in samples if not s.ok)}")

    bracket = None
    for prev, cur in zip(samples, samples[1:]):
        if prev.verdict == EMBEDDED and cur.ok and cur.verdict != EMBEDDED:
            bracket = flexmod.max_embedded_t(prev.t, cur.t, args.bisect_tol,
                                             epsilon=args.eps)
            print(f"verdict flips in range: embeddedness threshold bracketed in "
                  f"[{bracket[0]:.7f}, {bracket[1]:.7f}] (tolerance {args.bisect_tol})")
            break

    if embedded:
        t_max = max(abs(s.t) for s in embedded)
        print(f"largest embedded |t| sampled: {t_max:.6f} rad "
              f"({math.degrees(t_max):.4f} deg)")
        print(f"v9 displacement over [-t, t]: chord {flexmod.displacement_chord(t_max):.5f}, "
              f"arc {flexmod.displacement_arc(t_max):.5f}")

    if args.frames:
        os.makedirs(args.frames, exist_ok=True)
        for i, s in enumerate(samples):
            if not s.ok:
                continue
            frame = flexmod.realize_flex(s.t, epsilon=args.eps)
            modelio.write_obj(frame.realization,
                              os.path.join(args.frames, f"frame_{i:04d}.obj"))
        print(f"wrote OBJ frames to {args.frames}")

    if args.report:
        report.write_scan_csv(samples, args.report)
        print(f"wrote scan report: {args.report}")
        if not args.no_plot:
            plot_path = args.plot or f"{os.path.splitext(args.report)[0]}.png"
            report.render_scan_figure(samples, plot_path, bracket=bracket)
            print(f"wrote scan figure: {plot_path}")
    elif args.plot and not args.no_plot:
        report.render_scan_figure(samples, args.plot, bracket=bracket)
        print(f"wrote scan figure: {args.plot}")
    return 0


def cmd_export_obj(args) -> int:
    r = modelio.read_model(args.model)
    modelio.write_obj(r, args.out, precision=args.precision)
    print(f"wrote OBJ: {args.out}")
    return 0


_COMMANDS = {
    "build-steffen": cmd_build_steffen,
    "check": cmd_check,
    "volume": cmd_volume,
    "flex-frame": cmd_flex_frame,
    "flex-scan": cmd_flex_scan,
    "export-obj": cmd_export_obj,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        code = _COMMANDS[args.command](args)
    except (modelio.ParseError, modelio.ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_BAD_INPUT
    except (MeshError, SteffenError, flexmod.FlexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_BAD_INPUT
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        code = EXIT_INTERNAL
    return code


if __name__ == "__main__":
    sys.exit(main())
