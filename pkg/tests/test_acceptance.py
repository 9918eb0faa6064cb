"""Acceptance battery: one test per shipped acceptance criterion.

Each test prints a single [PASS]/[FAIL] verdict line with the measured
numbers and asserts the stated tolerance, sample count, and runtime
budget.  The tolerances here are contracts, not tuning knobs; sample
counts and seeds are frozen.
"""

import math
import os
import subprocess
import sys
import time

import numpy as np

from starlab import (
    BandlimitedFunction,
    amplitude_A,
    build_grid,
    limit_scan,
    lm_index,
    midpoints_from_vertices,
    product_generalized,
    triangle_area_S,
    vertices_from_midpoints,
)
from starlab.verify import (
    check_annihilation,
    check_conjugate_relation,
    check_domain_partition,
    check_eight_way_table,
    check_generalized_robustness,
    check_graded_commutativity,
    check_kernel_flip_covariance,
    check_kernel_rotation_invariance,
    check_kernel_symmetry,
    check_output_parity,
    check_phase_flip_validity,
    check_reflection_identity,
    check_restricted_equals_global,
)

from oracles import fd_amplitude, random_vertices, solid_angle_area


def _verdict(num, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num} ({title}): {detail}"
    print(line)
    assert ok, line


def test_01_geometry_matches_independent_oracles():
    # 1000 random vertex triangles; area against the solid-angle formula,
    # midpoints -> vertices -> midpoints round trip, amplitude against a
    # finite-difference Jacobian
    rng = np.random.default_rng(2024)
    t0 = time.perf_counter()
    worst_area = worst_round = worst_amp = 0.0
    checked = 0
    for _ in range(1000):
        v = random_vertices(rng)
        t = midpoints_from_vertices(v)
        if t.is_boundary or t.domain_label != "W000" \
                or 1.0 - t.det * t.det <= 1e-6:
            continue
        checked += 1
        oracle = solid_angle_area(v.a.vec, v.b.vec, v.c.vec)
        worst_area = max(worst_area, abs(triangle_area_S(t) - oracle))
        v2 = vertices_from_midpoints(t)
        t2 = midpoints_from_vertices(v2)
        for p, q in zip(t.points(), t2.points()):
            worst_round = max(worst_round,
                              float(np.max(np.abs(p.vec - q.vec))))
        worst_amp = max(worst_amp,
                        abs(amplitude_A(t) - fd_amplitude(v)) / amplitude_A(t))
    elapsed = time.perf_counter() - t0
    ok = (checked == 1000 and worst_area <= 1e-9 and worst_round <= 1e-10
          and worst_amp <= 1e-4 and elapsed < 10.0)
    _verdict(1, "geometry vs independent oracles", ok,
             f"area {worst_area:.2e}<=1e-9, round-trip {worst_round:.2e}"
             f"<=1e-10, amplitude rel {worst_amp:.2e}<=1e-4, "
             f"{checked}/1000 triangles, {elapsed:.1f}s<10s")


def test_02_kernel_identities_hold_at_scale():
    # symmetry, the two antipodal-flip relations, the conjugate-domain
    # relation, and rotation invariance; 1e4 triples each, n = 1..6
    t0 = time.perf_counter()
    results = [
        check_kernel_symmetry(samples=10000),
        check_kernel_flip_covariance(samples=100000),
        check_phase_flip_validity(samples=100000),
        check_conjugate_relation(samples=100000),
        check_kernel_rotation_invariance(samples=40000),
    ]
    elapsed = time.perf_counter() - t0
    ok = all(r.passed and r.error <= 1e-12 for r in results) and elapsed < 10.0
    errs = ", ".join(f"{r.name} {r.error:.1e}" for r in results)
    _verdict(2, "kernel identity battery", ok,
             f"{errs} (each <=1e-12), 1e4 triples each, n=1..6, "
             f"{elapsed:.1f}s<10s")


def test_03_products_commute_with_sign_grade():
    grid = build_grid(16, 32)
    t0 = time.perf_counter()
    r = check_graded_commutativity(grid, L=4, n_values=(1, 2, 3, 4))
    elapsed = time.perf_counter() - t0
    ok = r.passed and r.error <= 1e-10 and elapsed < 300.0
    _verdict(3, "graded commutativity", ok,
             f"node-wise err {r.error:.2e}<=1e-10, L=4, n=1..4, "
             f"grid 16x32, {elapsed:.0f}s<300s")


def test_04_odd_factors_annihilate_and_outputs_have_parity():
    grid = build_grid(16, 32)
    t0 = time.perf_counter()
    kill = check_annihilation(grid, L=4, n_values=(1, 2, 3, 4))
    par = check_output_parity(grid, L=4, n_values=(1, 2, 3, 4))
    elapsed = time.perf_counter() - t0
    ok = (kill.passed and kill.error <= 1e-10
          and par.passed and par.error <= 1e-12 and elapsed < 300.0)
    _verdict(4, "odd annihilation and output parity", ok,
             f"sup/(|f||g|) {kill.error:.2e}<=1e-10, parity defect "
             f"{par.error:.2e}<=1e-12, L=4, n=1..4, grid 16x32, "
             f"{elapsed:.0f}s<300s")


def test_05_partial_mean_restricted_and_reflection_agree():
    # these are exact engine-level identities, so the modest grid is not
    # a resolution compromise
    grid = build_grid(12, 24)
    t0 = time.perf_counter()
    table = check_eight_way_table(grid, L=3, n_values=(2, 3))
    restr = check_restricted_equals_global(grid, L=3, n_values=(2, 3))
    refl = check_reflection_identity(grid, L=3, n_values=(2, 3))
    elapsed = time.perf_counter() - t0
    ok = all(r.passed and r.error <= 1e-10 for r in (table, restr, refl))
    _verdict(5, "partial family consistency", ok,
             f"eight-way mean {table.error:.2e}, restricted vs global "
             f"{restr.error:.2e}, reflection {refl.error:.2e} "
             f"(each <=1e-10), L=3, n=2..3, grid 12x24, {elapsed:.0f}s")


def test_06_replacement_amplitudes_preserve_theorems():
    # unit and polynomial amplitudes keep commutativity, annihilation,
    # and output parity at the original tolerances
    grid = build_grid(16, 32)
    t0 = time.perf_counter()
    rob = check_generalized_robustness(grid, L=4, n_values=(1, 2, 3, 4))
    par_unit = check_output_parity(grid, L=4, n_values=(1, 2, 3, 4),
                                   product=product_generalized,
                                   amplitude="unit",
                                   name="generalized_parity_unit")
    par_poly = check_output_parity(grid, L=4, n_values=(1, 2, 3, 4),
                                   product=product_generalized,
                                   amplitude="poly",
                                   name="generalized_parity_poly")
    elapsed = time.perf_counter() - t0
    ok = (rob.passed and rob.error <= 1e-10
          and par_unit.error <= 1e-12 and par_poly.error <= 1e-12)
    _verdict(6, "replacement amplitudes", ok,
             f"comm+annihilation {rob.error:.2e}<=1e-10, parity unit "
             f"{par_unit.error:.2e} poly {par_poly.error:.2e} (<=1e-12), "
             f"L=4, n=1..4, grid 16x32, {elapsed:.0f}s")


def test_07_sign_classes_partition_sampled_triples():
    t0 = time.perf_counter()
    r = check_domain_partition(samples=10**6)
    elapsed = time.perf_counter() - t0
    ok = r.passed and r.error == 0.0
    _verdict(7, "sign-class partition census", ok,
             f"10^6 triples, zero outside exactly-one-class, "
             f"{r.detail.split()[-1]} (budget 1e-3), {elapsed:.1f}s")


def test_08_relative_error_falls_toward_pointwise_limit():
    # fixed degree-2 even real input against the pointwise product;
    # the relative L2 error must be strictly smaller at k=16 than k=4
    coeffs = np.zeros(9, dtype=complex)
    coeffs[lm_index(0, 0)] = math.sqrt(4.0 * math.pi)
    coeffs[lm_index(2, 0)] = 1.0
    f = BandlimitedFunction.from_coeffs(2, coeffs)
    t0 = time.perf_counter()
    rows = limit_scan(f, f, [4, 16])
    elapsed = time.perf_counter() - t0
    ok = rows[1].rel_error < rows[0].rel_error and elapsed < 1800.0
    _verdict(8, "deformation trend", ok,
             f"rel L2 err k=4: {rows[0].rel_error:.3f} -> k=16: "
             f"{rows[1].rel_error:.3f} (strictly smaller), grids 8kx8k, "
             f"{elapsed:.0f}s<1800s")


def test_09_verification_runs_are_byte_identical(tmp_path):
    cfg = tmp_path / "verify.cfg"
    cfg.write_text("grid = 8x16\nbandlimit = 3\nn_list = 1,2\nseed = 7\n")
    t0 = time.perf_counter()
    outs = []
    for name, threads in (("run1", "1"), ("run2", "1"), ("run3", "2")):
        out = tmp_path / name
        env = dict(os.environ, STARLAB_THREADS=threads)
        proc = subprocess.run(
            [sys.executable, "-m", "starlab", "verify",
             "--config", str(cfg), "--out", str(out)],
            capture_output=True, text=True, env=env, cwd=tmp_path)
        assert proc.returncode == 0, proc.stderr[-2000:]
        outs.append(out)
    elapsed = time.perf_counter() - t0
    ref_report = (outs[0] / "verify_report.json").read_bytes()
    ref_png = (outs[0] / "verify_summary.png").read_bytes()
    same_seed = (outs[1] / "verify_report.json").read_bytes() == ref_report
    across_workers = (outs[2] / "verify_report.json").read_bytes() == ref_report
    pngs = all((o / "verify_summary.png").read_bytes() == ref_png
               for o in outs[1:])
    ok = same_seed and across_workers and pngs
    _verdict(9, "byte-identical verification runs", ok,
             f"same-seed repeat identical={same_seed}, 1 vs 2 workers "
             f"identical={across_workers}, figures identical={pngs}, "
             f"{elapsed:.0f}s")
