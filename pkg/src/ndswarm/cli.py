"""Command-line interface: inspect datasets, run the pipeline in batch,
produce PCA reports and glTF exports, generate synthetic data, serve the UI.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .assignment import AssignmentError, DimensionAssignment, validate
from .dataset import (ARCHETYPES, DatasetError, generate_synthetic, load_csv,
                      summarize, write_csv)
from .projection import REPORT_SCOPES, ProjectionError, pca_report, project
from .scene import (DEFAULT_SIGMA_RANGE, CameraConfig, build_frame,
                    serialize_frame)
from .slab import DEFAULT_THRESHOLD, SlabConfig, SlabMode
from .view import RotationPlane, ViewState, rotate, translate

DEFAULT_PORT = 8765


class CliError(Exception):
    pass


def _add_csv_options(parser):
    parser.add_argument("csv", help="input CSV file (header row required)")
    parser.add_argument("--delimiter", default=",", help="cell delimiter "
                        "(default ',')")
    parser.add_argument("--label-column", default=None,
                        help="column holding point labels")
    parser.add_argument("--missing-policy", default="drop-point",
                        choices=("drop-point", "strict"))


def _add_pipeline_options(parser):
    parser.add_argument("--assign", required=True,
                        help="assignment JSON file (dimension name -> "
                             "{category, target})")
    parser.add_argument("--rotate", action="append", default=[],
                        metavar="PLANE=DEG",
                        help="plane rotation in degrees, e.g. XY=45; "
                             "repeatable, applied in order")
    parser.add_argument("--translate", default=None, metavar="DX,DY,DZ,DT",
                        help="4D pan applied after rotations")
    parser.add_argument("--slab-threshold", type=float,
                        default=DEFAULT_THRESHOLD)
    parser.add_argument("--slab-mode", default="post_view",
                        choices=[m.value for m in SlabMode])
    parser.add_argument("--camera-d", type=float, default=4.0,
                        help="perspective distance along T")
    parser.add_argument("--sigma-range", type=float,
                        default=DEFAULT_SIGMA_RANGE,
                        help="visual calibration window in standard "
                             "deviations")


def _load_dataset(args):
    return load_csv(args.csv, delimiter=args.delimiter,
                    label_column=args.label_column,
                    missing_policy=args.missing_policy)


def _load_assignment(path, ds):
    try:
        with open(path, encoding="utf-8") as fh:
            spec = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read assignment file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"assignment file is not valid JSON: {exc}") from exc
    asgn = DimensionAssignment.from_spec(spec, ds.names)
    violations = validate(asgn, ds.n_dims)
    if violations:
        raise CliError("invalid assignment:\n  "
                       + "\n  ".join(v.message for v in violations))
    return asgn


def _parse_rotations(specs):
    out = []
    for spec in specs:
        plane_name, sep, degrees = spec.partition("=")
        try:
            plane = RotationPlane[plane_name.strip().upper()]
        except KeyError:
            raise CliError(f"unknown rotation plane {plane_name!r}; expected "
                           f"one of {[p.name for p in RotationPlane]}") from None
        if not sep:
            raise CliError(f"--rotate needs PLANE=DEG, got {spec!r}")
        try:
            angle = math.radians(float(degrees))
        except ValueError:
            raise CliError(f"bad rotation angle {degrees!r}") from None
        out.append((plane, angle))
    return out


def _build_view(args) -> ViewState:
    vs = ViewState()
    for plane, angle in _parse_rotations(args.rotate):
        vs = rotate(vs, plane, angle)
    if args.translate:
        parts = args.translate.split(",")
        if len(parts) != 4:
            raise CliError("--translate needs four comma-separated numbers")
        try:
            delta = [float(p) for p in parts]
        except ValueError:
            raise CliError(f"bad translation {args.translate!r}") from None
        vs = translate(vs, delta)
    return vs


def _run_pipeline(args):
    ds = _load_dataset(args)
    asgn = _load_assignment(args.assign, ds)
    _, projected = project(ds, asgn)
    vs = _build_view(args)
    slab_cfg = SlabConfig(threshold=args.slab_threshold,
                          mode=SlabMode(args.slab_mode))
    cam = CameraConfig(distance=args.camera_d)
    frame = build_frame(projected, vs, slab_cfg, cam, labels=ds.labels,
                        seq=0, sigma_range=args.sigma_range)
    return ds, frame, cam


def cmd_inspect(args) -> int:
    ds = _load_dataset(args)
    print(f"source: {ds.source}")
    print(f"dimensions: {ds.n_dims}   points: {ds.n_points}   "
          f"labels: {'yes' if ds.labels is not None else 'no'}")
    rows = summarize(ds)
    width = max(len(s.name) for s in rows)
    print(f"{'name':<{width}}  {'min':>12}  {'max':>12}  {'mean':>12}  "
          f"{'std':>12}  {'distinct':>8}")
    for s in rows:
        print(f"{s.name:<{width}}  {s.minimum:>12.6g}  {s.maximum:>12.6g}  "
              f"{s.mean:>12.6g}  {s.std:>12.6g}  {s.distinct:>8}")
    return 0


def cmd_synth(args) -> int:
    ds = generate_synthetic(args.archetype, args.n, args.seed)
    if args.out:
        write_csv(ds, args.out, label_header="name")
        print(f"wrote {ds.n_points} points x {ds.n_dims} dimensions "
              f"to {args.out}")
    else:
        write_csv(ds, sys.stdout, label_header="name")
    return 0


def cmd_project(args) -> int:
    _, frame, _ = _run_pipeline(args)
    data = serialize_frame(frame)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
        print(f"wrote frame ({frame.n_visible}/{frame.n_total} visible) "
              f"to {args.out}")
    else:
        sys.stdout.buffer.write(data + b"\n")
    return 0


def cmd_pca_report(args) -> int:
    ds = _load_dataset(args)
    asgn = _load_assignment(args.assign, ds)
    report = pca_report(ds, asgn, scope=args.scope)
    text = report.to_json(indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_export_gltf(args) -> int:
    from .glyph import export_gltf

    _, frame, cam = _run_pipeline(args)
    export_gltf(frame, args.out, camera=cam, lod=args.lod,
                glyph_size=args.glyph_size)
    print(f"wrote {frame.n_visible} avatars to {args.out}")
    return 0


def resolve_port(explicit: int | None) -> int:
    """--port wins; otherwise ND_SWARM_PORT overrides the built-in default."""
    if explicit is not None:
        return explicit
    return int(os.environ.get("ND_SWARM_PORT", DEFAULT_PORT))


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    frontend = args.frontend if args.frontend and os.path.isdir(args.frontend) \
        else None
    uvicorn.run(create_app(frontend_dir=frontend), host=args.host,
                port=resolve_port(args.port))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ndswarm",
        description="Visualize n-dimensional point clouds as a 3D swarm of "
                    "face-glyph avatars.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("inspect", help="per-dimension statistics of a CSV")
    _add_csv_options(p)
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("synth", help="generate a synthetic dataset CSV")
    p.add_argument("--archetype", required=True, choices=ARCHETYPES)
    p.add_argument("--n", type=int, required=True, help="number of points")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="output CSV (default stdout)")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("project", help="run the pipeline once and emit a "
                                       "scene frame JSON")
    _add_csv_options(p)
    _add_pipeline_options(p)
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("pca-report", help="principal-component loadings over "
                                          "the anonymous (or anonymous+"
                                          "spatial) dimensions")
    _add_csv_options(p)
    p.add_argument("--assign", required=True)
    p.add_argument("--scope", default="anonymous", choices=REPORT_SCOPES)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_pca_report)

    p = sub.add_parser("export-gltf", help="export one frame as a glTF 2.0 "
                                           "scene")
    _add_csv_options(p)
    _add_pipeline_options(p)
    p.add_argument("--out", required=True, help="output .gltf path")
    p.add_argument("--lod", type=int, default=0, choices=(0, 1, 2))
    p.add_argument("--glyph-size", type=float, default=0.08)
    p.set_defaults(func=cmd_export_gltf)

    p = sub.add_parser("serve", help="run the HTTP/WebSocket service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=None,
                   help=f"default: $ND_SWARM_PORT or {DEFAULT_PORT}")
    p.add_argument("--frontend", default=None,
                   help="directory of built UI files to serve at /")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, DatasetError, AssignmentError, ProjectionError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
