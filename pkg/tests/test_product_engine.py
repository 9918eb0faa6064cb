"""Product engine against the naive double-loop reference."""

import math
import warnings

import numpy as np
import pytest

from starlab import (
    BandlimitedFunction,
    build_grid,
    evaluate,
    integrate,
    lm_index,
    product_generalized,
    product_global,
    product_partial,
    product_partials_all,
    product_restricted_even,
    product_to_csv,
    random_bandlimited,
    structure_constants,
    structure_to_csv,
)
from starlab.product_engine import limit_scan, worker_count

from bruteforce import (
    UNIT_PRODUCT_6x12_NODE0,
    UNIT_PRODUCT_8x16_NODE0,
    product_all_nodes,
    product_at_node,
)

# the deliberately small grid keeps the double-loop reference affordable;
# silence the resolution hint it triggers
pytestmark = pytest.mark.filterwarnings("ignore:grid n_polar")

GRID = build_grid(6, 12)


def unit_function():
    coeffs = np.zeros(1, complex)
    coeffs[0] = math.sqrt(4.0 * math.pi)
    return BandlimitedFunction.from_coeffs(0, coeffs)


def test_unit_product_frozen_goldens():
    one = unit_function()
    for shape, want in (((8, 16), UNIT_PRODUCT_8x16_NODE0),
                        ((6, 12), UNIT_PRODUCT_6x12_NODE0)):
        grid = build_grid(*shape)
        got = product_global(one, one, 2, grid).values[0]
        assert got == pytest.approx(want, abs=1e-9)


def test_global_product_matches_brute_force_mixed_parity():
    f = random_bandlimited(2, seed=101)   # mixed parity on purpose
    g = random_bandlimited(2, seed=102)
    fv = evaluate(f, GRID)
    gv = evaluate(g, GRID)
    probe = range(0, GRID.node_count, 2)
    for n in (1, 2, 3):
        eng = product_global(f, g, n, GRID)
        for i in probe:
            ref = product_at_node(fv, gv, GRID, n, i)
            scale = max(1.0, abs(ref))
            assert abs(eng.values[i] - ref) / scale < 1e-11


def test_partial_products_match_brute_force():
    f = random_bandlimited(2, seed=103)
    g = random_bandlimited(2, seed=104)
    fv = evaluate(f, GRID)
    gv = evaluate(g, GRID)
    probe = range(0, GRID.node_count, 3)
    for n in (2, 3):
        results = product_partials_all(f, g, n, GRID)
        assert set(results) == {"000", "001", "010", "100",
                                "110", "101", "011", "111"}
        for label, res in results.items():
            for i in probe:
                ref = product_at_node(fv, gv, GRID, n, i, kernel="partial",
                                      label=label)
                scale = max(1.0, abs(ref))
                err = abs(res.values[i] - ref) / scale
                assert err < 1e-11, (label, n, i, err)


def test_single_partial_agrees_with_batch():
    f = random_bandlimited(2, seed=105, parity="n_even", n=2)
    g = random_bandlimited(2, seed=106, parity="n_even", n=2)
    batch = product_partials_all(f, g, 2, GRID)
    solo = product_partial(f, g, 2, "101", GRID)
    assert np.all(solo.values == batch["101"].values)
    assert solo.spec.domain == "101"


def test_mean_of_eight_equals_global():
    f = random_bandlimited(2, seed=107)
    g = random_bandlimited(2, seed=108)
    for n in (1, 2):
        parts = product_partials_all(f, g, n, GRID)
        mean8 = sum(p.values for p in parts.values()) / 8.0
        glob = product_global(f, g, n, GRID)
        scale = max(1.0, float(np.max(np.abs(glob.values))))
        assert np.max(np.abs(mean8 - glob.values)) / scale < 1e-12


def test_restricted_even_matches_brute_force():
    for n, seed in ((2, 109), (3, 110)):
        f = random_bandlimited(2, seed=seed, parity="n_even", n=n)
        g = random_bandlimited(2, seed=seed + 50, parity="n_even", n=n)
        fv = evaluate(f, GRID)
        gv = evaluate(g, GRID)
        res = product_restricted_even(f, g, n, GRID)
        for i in range(0, GRID.node_count, 2):
            ref = product_at_node(fv, gv, GRID, n, i, kernel="restricted")
            scale = max(1.0, abs(ref))
            assert abs(res.values[i] - ref) / scale < 1e-11


def test_restricted_even_rejects_wrong_parity():
    f = random_bandlimited(2, seed=1, parity="n_odd", n=2)
    g = random_bandlimited(2, seed=2, parity="n_even", n=2)
    with pytest.raises(ValueError, match="parity contract violated"):
        product_restricted_even(f, g, 2, GRID)


def test_odd_factor_annihilates_exactly():
    f = random_bandlimited(3, seed=11, parity="n_odd", n=2)
    g = random_bandlimited(3, seed=12)
    left = product_global(f, g, 2, GRID)
    right = product_global(g, f, 2, GRID)
    assert np.all(left.values == 0.0)
    assert np.all(right.values == 0.0)


def test_output_parity_is_bitwise():
    inv = GRID.antipode_index
    for n in (1, 2, 3):
        f = random_bandlimited(2, seed=21, parity="n_even", n=n)
        g = random_bandlimited(2, seed=22, parity="n_even", n=n)
        vals = product_global(f, g, n, GRID).values
        sign = 1.0 if n % 2 == 0 else -1.0
        assert np.all(vals[inv] == sign * vals)


def test_odd_unit_kernel_product_is_imaginary_and_antisymmetric():
    f = random_bandlimited(2, seed=31, parity="n_even", n=3, real=True)
    g = random_bandlimited(2, seed=32, parity="n_even", n=3, real=True)
    fg = product_generalized(f, g, 3, "unit", GRID)
    gf = product_generalized(g, f, 3, "unit", GRID)
    assert np.max(np.abs(fg.values.real)) < 1e-13
    scale = max(1.0, float(np.max(np.abs(fg.values))))
    assert np.max(np.abs(fg.values + gf.values)) / scale < 1e-12
    # swap antisymmetry forces the square to vanish
    ff = product_generalized(f, f, 3, "unit", GRID)
    assert np.max(np.abs(ff.values)) / scale < 1e-12


def test_jacobian_amplitude_reproduces_global_bitwise():
    f = random_bandlimited(2, seed=41)
    g = random_bandlimited(2, seed=42)
    a = product_global(f, g, 2, GRID)
    b = product_generalized(f, g, 2, "jacobian", GRID)
    assert np.all(a.values == b.values)


def test_worker_count_resolution(monkeypatch):
    assert worker_count(3) == 3
    monkeypatch.setenv("STARLAB_THREADS", "5")
    assert worker_count(None) == 5
    monkeypatch.setenv("STARLAB_THREADS", "junk")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert worker_count(None) >= 1
    monkeypatch.delenv("STARLAB_THREADS")
    assert worker_count(None) >= 1


def test_multiprocess_results_are_bitwise_equal():
    f = random_bandlimited(2, seed=51)
    g = random_bandlimited(2, seed=52)
    serial = product_global(f, g, 2, GRID, workers=1)
    pooled = product_global(f, g, 2, GRID, workers=2)
    assert np.all(serial.values == pooled.values)
    assert serial.skipped_weight == pooled.skipped_weight
    p1 = product_partials_all(f, g, 2, GRID, workers=1)
    p3 = product_partials_all(f, g, 2, GRID, workers=3)
    for label in p1:
        assert np.all(p1[label].values == p3[label].values)


def test_skip_accounting_responds_to_thresholds():
    f = random_bandlimited(2, seed=61)
    g = random_bandlimited(2, seed=62)
    tight = product_global(f, g, 2, GRID)
    loose = product_global(f, g, 2, GRID, eps_sign=0.2)
    assert loose.skipped_weight > tight.skipped_weight >= 0.0
    # relative measure of what was dropped stays tiny at the defaults
    assert tight.skipped_weight / (4.0 * math.pi) ** 2 < 1e-3


def test_under_resolved_grid_warns_but_runs():
    f = random_bandlimited(4, seed=71)
    g = random_bandlimited(4, seed=72)
    with pytest.warns(UserWarning, match="under-resolve"):
        product_global(f, g, 8, GRID)


def test_partial_engine_node_cap():
    f = unit_function()
    big = build_grid(66, 128)
    with pytest.raises(ValueError, match="at most 4096 canonical nodes"):
        product_partials_all(f, f, 2, big)


def test_structure_constants_match_brute_force():
    one_over = 1.0 / math.sqrt(4.0 * math.pi)
    tensor = structure_constants(2, 1, GRID)
    assert tensor.n == 2 and tensor.L == 1
    ones = np.full(GRID.node_count, one_over)
    ref_vals = product_all_nodes(ones, ones, GRID, 2)
    want = integrate(np.conj(ones) * ref_vals, GRID)
    got = tensor.entry(0, 0, 0, 0, 0, 0)
    assert got == pytest.approx(want, rel=1e-11)
    # degree-parity mismatches are stored as exact zeros
    assert tensor.entry(1, 0, 0, 0, 1, 0) == 0.0


def test_structure_azimuthal_selection_rule():
    tensor = structure_constants(2, 2, GRID)
    scale = float(np.max(np.abs(tensor.entries)))
    for m3 in range(-2, 3):
        val = tensor.entry(2, 1, 2, 1, 2, m3)
        if m3 != 2:
            assert abs(val) / scale < 1e-12
    assert abs(tensor.entry(2, 1, 2, 1, 2, 2)) / scale > 1e-6


def test_structure_graded_transpose():
    for n in (2, 3):
        tensor = structure_constants(n, 2, GRID)
        sign = (-1.0) ** n
        swapped = np.swapaxes(tensor.entries, 0, 1)
        scale = max(1.0, float(np.max(np.abs(tensor.entries))))
        assert np.max(np.abs(tensor.entries - sign * swapped)) / scale < 1e-10


def test_limit_scan_rows_and_validation():
    f = random_bandlimited(2, seed=81, parity="n_even", n=2, real=True)
    g = random_bandlimited(2, seed=82, parity="n_even", n=2, real=True)
    with pytest.raises(ValueError, match="k must be a positive integer"):
        limit_scan(f, g, [0])
    rows = limit_scan(f, g, [1, 2], schedule=lambda k: (8 * k, 8 * k))
    assert [r.k for r in rows] == [1, 2]
    assert all(r.rel_error >= 0.0 for r in rows)
    assert rows[1].rel_error < rows[0].rel_error


def test_product_csv_format(tmp_path):
    f = random_bandlimited(1, seed=91)
    g = random_bandlimited(1, seed=92)
    res = product_global(f, g, 2, GRID)
    path = tmp_path / "prod.csv"
    product_to_csv(res, path)
    lines = path.read_text().strip().split("\n")
    assert lines[0] == "node_index,theta,phi,re,im"
    assert len(lines) == GRID.node_count + 1
    idx, theta, _, re, im = lines[5].split(",")
    assert int(idx) == 4
    assert float(theta) == GRID.theta[4]
    assert complex(float(re), float(im)) == res.values[4]


def test_structure_csv_format(tmp_path):
    tensor = structure_constants(2, 1, GRID)
    path = tmp_path / "struct.csv"
    structure_to_csv(tensor, path)
    lines = path.read_text().strip().split("\n")
    assert lines[0] == "l1,m1,l2,m2,l3,m3,re,im"
    assert len(lines) == 4 ** 3 + 1
    first = lines[1].split(",")
    assert first[:6] == ["0", "0", "0", "0", "0", "0"]
    assert complex(float(first[6]), float(first[7])) == tensor.entry(
        0, 0, 0, 0, 0, 0)
