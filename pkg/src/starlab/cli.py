"""Command line front end.

Subcommands: triangle, product, structure, verify, limit-scan,
grid-dump.  Shared flags: --config PATH, --n, --grid PxA, --bandlimit,
--seed, --variant, --amplitude, --out DIR.  Numeric output uses 17
significant digits.  Exit codes: 0 success, 1 input error, 2 contract
violation (boundary, degenerate or parity trouble), 3 property failure.

Report paths write delimited data plus a rendered PNG figure next to it;
run manifests are JSON.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time

import numpy as np

from . import __version__
from .config import ConfigError, RunConfig, build_config
from .function_space import (
    BandlimitedFunction,
    coeffs_from_csv,
    coeffs_to_csv,
    lm_index,
    random_bandlimited,
)
from .kernels import KernelSpec, global_kernel, phase_factor
from .product_engine import (
    limit_scan,
    product_generalized,
    product_global,
    product_partial,
    product_restricted_even,
    product_to_csv,
    structure_constants,
    structure_to_csv,
)
from .quadrature import build_grid, grid_to_csv
from .sphere_geometry import (
    amplitude_A,
    classify_triple,
    make_point,
    midpoints_from_vertices,
    signed_area_from_vertices,
    standardize_conjugate,
    triangle_area_S,
    vertices_from_midpoints,
    TriangleVertices,
)
from .verify import run_suite

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CONTRACT = 2
EXIT_PROPERTY = 3


def _g(x) -> str:
    return format(float(x), ".17g")


def _parse_point_arg(text):
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"expected x,y,z - got {text!r}")
    return [float(p) for p in parts]


def _load_cfg(args) -> RunConfig:
    return build_config(
        getattr(args, "config", None),
        n=getattr(args, "n", None),
        grid=getattr(args, "grid", None),
        bandlimit=getattr(args, "bandlimit", None),
        seed=getattr(args, "seed", None),
        variant=getattr(args, "variant", None),
        amplitude=getattr(args, "amplitude", None),
        out_dir=getattr(args, "out", None),
        k_list=getattr(args, "k_list_parsed", None),
    )


def _outdir(cfg) -> str:
    os.makedirs(cfg.out_dir, exist_ok=True)
    return cfg.out_dir


def _write_manifest(path, cfg: RunConfig, extra: dict):
    manifest = {
        "spec": {
            "n": cfg.n,
            "variant": cfg.variant,
            "amplitude": cfg.amplitude,
            "eps_sign": _g(cfg.eps_sign),
            "eps_det": _g(cfg.eps_det),
        },
        "grid": {"n_polar": cfg.n_polar, "n_azimuth": cfg.n_azimuth},
        "seed": cfg.seed,
    }
    manifest.update(extra)
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")


# ---------------------------------------------------------------------------
# triangle

def cmd_triangle(args) -> int:
    cfg = _load_cfg(args)
    try:
        raw = [_parse_point_arg(p) for p in args.points]
        points = [make_point(v) for v in raw]
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    if args.vertices:
        verts = TriangleVertices(*points)
        try:
            t = midpoints_from_vertices(verts)
        except ValueError as exc:
            print(f"degenerate input: {exc}", file=sys.stderr)
            return EXIT_CONTRACT
        print("interpreting inputs as triangle vertices")
    else:
        t = classify_triple(points[0], points[1], points[2])
        verts = None

    print(f"d12 = {_g(t.d12)}")
    print(f"d23 = {_g(t.d23)}")
    print(f"d31 = {_g(t.d31)}")
    print(f"det = {_g(t.det)}")
    print(f"class = {t.domain_label}   eta = {t.eta}")
    if t.is_boundary:
        print("boundary triple: some |dot| is below eps_sign; no area or "
              "amplitude is defined here", file=sys.stderr)
        return EXIT_CONTRACT
    S = triangle_area_S(t)
    print(f"S (signed area) = {_g(S)}")
    try:
        A = amplitude_A(t)
    except ValueError as exc:
        print(f"degenerate triangle family: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    print(f"A (amplitude)   = {_g(A)}")
    print(f"phase exp(i n S / 2) at n={cfg.n}: {_format_c(phase_factor(t, cfg.n))}")
    print(f"global kernel at n={cfg.n}:       {_format_c(global_kernel(t, cfg.n))}")

    std, flips = standardize_conjugate(t)
    if flips != (0, 0, 0):
        print(f"standardized to W000 by flips {flips}")
    try:
        rec = vertices_from_midpoints(std)
    except ValueError as exc:
        print(f"vertex recovery failed: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    for name, p in zip("abc", rec.points()):
        print(f"vertex {name} = {_g(p.x)}, {_g(p.y)}, {_g(p.z)}")
    oracle = signed_area_from_vertices(verts if verts is not None else rec)
    S_std = triangle_area_S(std) if flips != (0, 0, 0) else S
    print(f"oracle area (vertex excess) = {_g(oracle)}")
    print(f"area agreement |S - oracle| = {_g(abs(S_std - oracle))}")
    rt = midpoints_from_vertices(rec)
    drift = max(float(np.max(np.abs(rt.points()[i].vec - std.points()[i].vec)))
                for i in range(3))
    print(f"midpoint round-trip drift   = {_g(drift)}")
    return EXIT_OK


def _format_c(z: complex) -> str:
    return f"{_g(z.real)} {'+' if z.imag >= 0 else '-'} {_g(abs(z.imag))}i"


# ---------------------------------------------------------------------------
# product

def _load_inputs(cfg: RunConfig, paths, out_dir, parity_kind):
    if paths:
        f = coeffs_from_csv(paths[0])
        g = coeffs_from_csv(paths[1])
        labels = [os.path.basename(paths[0]), os.path.basename(paths[1])]
    else:
        kw = {}
        if parity_kind == "restricted_even":
            kw = {"parity": "n_even", "n": cfg.n}
        f = random_bandlimited(cfg.bandlimit, seed=cfg.seed, **kw)
        g = random_bandlimited(cfg.bandlimit, seed=cfg.seed + 1, **kw)
        labels = ["generated:input1.csv", "generated:input2.csv"]
        coeffs_to_csv(f, os.path.join(out_dir, "input1.csv"))
        coeffs_to_csv(g, os.path.join(out_dir, "input2.csv"))
    return f, g, labels


def cmd_product(args) -> int:
    cfg = _load_cfg(args)
    out_dir = _outdir(cfg)
    kind, domain = cfg.variant_kind()
    try:
        f, g, labels = _load_inputs(cfg, args.coeff_files, out_dir, kind)
    except (OSError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    grid = build_grid(cfg.n_polar, cfg.n_azimuth)
    t0 = time.perf_counter()
    try:
        if kind == "global":
            result = product_global(f, g, cfg.n, grid,
                                    eps_sign=cfg.eps_sign, eps_det=cfg.eps_det)
        elif kind == "partial":
            result = product_partial(f, g, cfg.n, domain, grid,
                                     eps_sign=cfg.eps_sign, eps_det=cfg.eps_det)
        elif kind == "restricted_even":
            result = product_restricted_even(f, g, cfg.n, grid,
                                             eps_sign=cfg.eps_sign,
                                             eps_det=cfg.eps_det)
        else:
            result = product_generalized(f, g, cfg.n, cfg.amplitude, grid,
                                         eps_sign=cfg.eps_sign,
                                         eps_det=cfg.eps_det)
    except ValueError as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    wall = time.perf_counter() - t0

    csv_path = os.path.join(out_dir, "product.csv")
    product_to_csv(result, csv_path)
    from .figures import render_product
    png_path = render_product(result, os.path.join(out_dir, "product_map.png"))

    self_check = {}
    if kind in ("global", "generalized", "restricted_even"):
        sgn = (-1.0) ** cfg.n
        parity_err = float(np.max(np.abs(
            result.values[grid.antipode_index] - sgn * result.values)))
        self_check["output_parity_err"] = _g(parity_err)
    scale = f.norm() * g.norm()
    sup = result.norm_sup()
    if scale > 0 and sup < 1e-10 * scale:
        self_check["annihilated"] = True
        print("note: output is annihilated (sup norm "
              f"{_g(sup)} < 1e-10 |f| |g|)")
    _write_manifest(os.path.join(out_dir, "manifest.json"), cfg, {
        "inputs": labels,
        "bandlimits": [f.L, g.L],
        "skipped_weight": _g(result.skipped_weight),
        "wall_time_s": round(wall, 3),
        "self_check": self_check,
    })
    print(f"wrote {csv_path}, {png_path}, manifest.json "
          f"({grid.node_count} nodes, {wall:.2f}s)")
    return EXIT_OK


# ---------------------------------------------------------------------------
# structure

def cmd_structure(args) -> int:
    cfg = _load_cfg(args)
    out_dir = _outdir(cfg)
    grid = build_grid(cfg.n_polar, cfg.n_azimuth)
    try:
        t0 = time.perf_counter()
        tensor = structure_constants(cfg.n, cfg.bandlimit, grid,
                                     eps_sign=cfg.eps_sign,
                                     eps_det=cfg.eps_det)
        wall = time.perf_counter() - t0
    except ValueError as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    csv_path = os.path.join(out_dir, "structure.csv")
    structure_to_csv(tensor, csv_path)
    from .figures import render_structure
    png_path = render_structure(tensor,
                                os.path.join(out_dir, "structure_map.png"))
    _write_manifest(os.path.join(out_dir, "manifest.json"), cfg, {
        "bandlimit": cfg.bandlimit,
        "wall_time_s": round(wall, 3),
    })
    print(f"wrote {csv_path}, {png_path}, manifest.json")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify

def cmd_verify(args) -> int:
    cfg = _load_cfg(args)
    out_dir = _outdir(cfg)
    grid = build_grid(cfg.n_polar, cfg.n_azimuth)
    t0 = time.perf_counter()
    results = run_suite(grid=grid, L=cfg.bandlimit, n_values=cfg.n_list,
                        seed=cfg.seed)
    wall = time.perf_counter() - t0
    all_pass = all(r.passed for r in results)
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"[{status}] {r.name}: err={r.error:.3e} tol={r.tolerance:.1e}"
        if r.detail:
            line += f"  ({r.detail})"
        print(line)
    report = {
        "config": {
            "n_list": list(cfg.n_list),
            "bandlimit": cfg.bandlimit,
            "grid": [cfg.n_polar, cfg.n_azimuth],
            "seed": cfg.seed,
        },
        "passed": all_pass,
        "properties": [r.as_dict() for r in results],
    }
    json_path = os.path.join(out_dir, "verify_report.json")
    with open(json_path, "w") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    from .figures import render_verify_summary
    png_path = render_verify_summary(
        results, os.path.join(out_dir, "verify_summary.png"))
    print(f"wrote {json_path}, {png_path}  ({wall:.1f}s)")
    if not all_pass:
        return EXIT_PROPERTY
    return EXIT_OK


# ---------------------------------------------------------------------------
# limit scan

def _scan_function(L=2):
    """Normalized real n-even mix: constant plus the degree-2 zonal."""
    coeffs = np.zeros((L + 1) * (L + 1), dtype=complex)
    coeffs[lm_index(0, 0)] = math.sqrt(4.0 * math.pi)
    coeffs[lm_index(2, 0)] = 1.0
    coeffs /= np.linalg.norm(coeffs)
    return BandlimitedFunction.from_coeffs(L, coeffs)


def cmd_limit_scan(args) -> int:
    cfg = _load_cfg(args)
    out_dir = _outdir(cfg)
    f = _scan_function()
    g = _scan_function()
    t0 = time.perf_counter()
    rows = limit_scan(f, g, cfg.k_list)
    wall = time.perf_counter() - t0
    csv_path = os.path.join(out_dir, "limit_scan.csv")
    with open(csv_path, "w") as fh:
        fh.write("k,rel_error\n")
        for row in rows:
            fh.write(f"{row.k},{_g(row.rel_error)}\n")
    from .figures import render_limit_scan
    png_path = render_limit_scan(rows,
                                 os.path.join(out_dir, "limit_scan.png"))
    _write_manifest(os.path.join(out_dir, "manifest.json"), cfg, {
        "k_list": list(cfg.k_list),
        "wall_time_s": round(wall, 3),
    })
    for row in rows:
        note = f"  [{row.note}]" if row.note else ""
        print(f"k={row.k:3d}  rel_error={row.rel_error:.6g}{note}")
    print(f"wrote {csv_path}, {png_path}, manifest.json  ({wall:.1f}s)")
    return EXIT_OK


# ---------------------------------------------------------------------------
# grid dump

def cmd_grid_dump(args) -> int:
    cfg = _load_cfg(args)
    out_dir = _outdir(cfg)
    grid = build_grid(cfg.n_polar, cfg.n_azimuth)
    csv_path = os.path.join(out_dir, "grid.csv")
    grid_to_csv(grid, csv_path)
    from .figures import render_grid
    png_path = render_grid(grid, os.path.join(out_dir, "grid_map.png"))
    print(f"wrote {csv_path}, {png_path}  ({grid.node_count} nodes, "
          f"exact through degree {grid.l_exact})")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="starlab",
        description="Skewed products of functions on the sphere: geometry "
                    "reports, product runs, structure constants, property "
                    "verification and the classical-limit scan.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="flat key = value config file")
        p.add_argument("--n", type=int, help="parity integer n >= 1")
        p.add_argument("--grid", help="inner grid as POLARxAZIMUTH, e.g. 16x32")
        p.add_argument("--bandlimit", type=int, help="max harmonic degree")
        p.add_argument("--seed", type=int, help="seed for generated inputs")
        p.add_argument("--variant",
                       help="global | restricted | generalized | partial-XYZ")
        p.add_argument("--amplitude",
                       help="amplitude tag for the generalized variant")
        p.add_argument("--out", help="output directory")

    p = sub.add_parser("triangle",
                       help="classify a midpoint triple and report its "
                            "area, amplitude and recovered vertices")
    common(p)
    p.add_argument("points", nargs=3, metavar="X,Y,Z",
                   help="three comma separated 3-vectors")
    p.add_argument("--vertices", action="store_true",
                   help="treat inputs as triangle vertices instead of "
                        "midpoints")
    p.set_defaults(func=cmd_triangle)

    p = sub.add_parser("product",
                       help="compute a product of two functions and dump "
                            "values, figure and manifest")
    common(p)
    p.add_argument("coeff_files", nargs="*", metavar="COEFFS.csv",
                   help="two coefficient files (l,m,re,im); omitted = "
                        "seeded random inputs")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("structure",
                       help="harmonic-basis structure constants of the "
                            "global product")
    common(p)
    p.set_defaults(func=cmd_structure)

    p = sub.add_parser("verify",
                       help="run the full property suite and write a "
                            "machine readable verdict")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("limit-scan",
                       help="relative error against the pointwise product "
                            "for growing k")
    common(p)
    p.add_argument("--k-list", dest="k_list",
                   help="comma separated k values (default 1,2,4,8,16)")
    p.set_defaults(func=cmd_limit_scan)

    p = sub.add_parser("grid-dump", help="write the quadrature grid as CSV")
    common(p)
    p.set_defaults(func=cmd_grid_dump)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "product" and args.coeff_files \
            and len(args.coeff_files) != 2:
        print("input error: expected exactly two coefficient files",
              file=sys.stderr)
        return EXIT_INPUT
    if getattr(args, "k_list", None):
        try:
            args.k_list_parsed = tuple(int(tok) for tok
                                       in args.k_list.split(",") if tok)
        except ValueError:
            print(f"input error: bad k list {args.k_list!r}", file=sys.stderr)
            return EXIT_INPUT
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
