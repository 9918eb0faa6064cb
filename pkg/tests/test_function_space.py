"""Band-limited functions: synthesis, analysis, parity, serialization."""

import math

import numpy as np
import pytest

from starlab import (
    BandlimitedFunction,
    basis_matrix,
    build_grid,
    coeff_count,
    coeffs_from_csv,
    coeffs_to_csv,
    evaluate,
    integrate,
    lm_index,
    parity_decompose,
    project,
    random_bandlimited,
)
from starlab.function_space import ylm_on_nodes


def test_index_arithmetic():
    assert lm_index(0, 0) == 0
    assert lm_index(1, -1) == 1
    assert lm_index(1, 0) == 2
    assert lm_index(1, 1) == 3
    assert lm_index(2, -2) == 4
    assert coeff_count(0) == 1
    assert coeff_count(4) == 25
    # dense and collision free
    seen = {lm_index(l, m) for l in range(5) for m in range(-l, l + 1)}
    assert seen == set(range(25))


def test_constant_harmonic_value():
    theta = np.array([0.3, 1.2, 2.8])
    phi = np.array([0.0, 2.0, 5.0])
    vals = ylm_on_nodes(0, 0, theta, phi)
    assert np.allclose(vals, 1.0 / math.sqrt(4.0 * math.pi), atol=1e-15)


def test_polar_harmonic_value():
    theta = np.array([0.0, math.pi / 3.0, math.pi / 2.0])
    phi = np.zeros(3)
    vals = ylm_on_nodes(1, 0, theta, phi)
    want = math.sqrt(3.0 / (4.0 * math.pi)) * np.cos(theta)
    assert np.allclose(vals, want, atol=1e-14)


def test_orthonormality_on_exact_grid():
    grid = build_grid(6, 12)  # exact to degree 11
    B = basis_matrix(grid, 3)
    gram = np.einsum("ni,n,nj->ij", np.conj(B), grid.weights, B)
    assert np.max(np.abs(gram - np.eye(16))) < 1e-12


def test_basis_matrix_is_cached():
    grid = build_grid(4, 8)
    assert basis_matrix(grid, 2) is basis_matrix(grid, 2)


def test_project_round_trip():
    grid = build_grid(5, 10)  # l_exact = 9 resolves products to L = 4
    f = random_bandlimited(4, seed=12)
    vals = evaluate(f, grid)
    g = project(vals, grid, 4)
    assert np.max(np.abs(g.coeffs - f.coeffs)) < 1e-10


def test_project_requires_enough_exactness():
    grid = build_grid(3, 6)
    with pytest.raises(ValueError, match="grid exactness insufficient"):
        project(np.zeros(grid.node_count), grid, 4)


def test_evaluate_matches_dense_synthesis():
    grid = build_grid(6, 12)
    f = random_bandlimited(3, seed=4)   # mixed parity
    direct = basis_matrix(grid, 3) @ f.coeffs
    assert np.max(np.abs(evaluate(f, grid) - direct)) < 1e-13


def test_sharp_parity_values_are_bitwise_antipodal():
    grid = build_grid(6, 12)
    inv = grid.antipode_index
    even = random_bandlimited(4, seed=7, parity="n_even", n=2)
    v = evaluate(even, grid)
    assert np.all(v[inv] == v)
    odd = random_bandlimited(4, seed=7, parity="n_odd", n=2)
    u = evaluate(odd, grid)
    assert np.all(u[inv] == -u)


def test_parity_tags_follow_degree_support():
    f_even = random_bandlimited(4, seed=1, parity="n_even", n=2)
    assert f_even.parity_tag == "even-l"
    assert f_even.is_n_even(2) and not f_even.is_n_even(3)
    assert f_even.parity_sign() == 1
    f_oddl = random_bandlimited(4, seed=1, parity="n_even", n=3)
    assert f_oddl.parity_tag == "odd-l"
    assert f_oddl.parity_sign() == -1
    assert f_oddl.is_n_even(3) and f_oddl.is_n_odd(2)
    mixed = random_bandlimited(4, seed=1)
    assert mixed.parity_tag == "mixed"
    assert mixed.parity_sign() is None
    for l in range(5):
        for m in range(-l, l + 1):
            if l % 2 == 1:
                assert f_even.coeff(l, m) == 0
            if l % 2 == 0:
                assert f_oddl.coeff(l, m) == 0


def test_random_bandlimited_unit_norm_and_seeding():
    f = random_bandlimited(4, seed=42)
    g = random_bandlimited(4, seed=42)
    assert np.all(f.coeffs == g.coeffs)
    assert f.norm() == pytest.approx(1.0, abs=1e-12)
    grid = build_grid(6, 12)
    v = evaluate(f, grid)
    quad_norm = math.sqrt(integrate(np.abs(v) ** 2, grid).real
                          if np.iscomplexobj(v)
                          else integrate(v * v, grid))
    assert quad_norm == pytest.approx(1.0, abs=1e-10)


def test_real_functions_are_real_on_nodes():
    grid = build_grid(6, 12)
    f = random_bandlimited(2, seed=3, parity="n_even", n=2, real=True)
    v = evaluate(f, grid)
    assert np.max(np.abs(v.imag)) < 1e-14


def test_parity_decompose_splits_exactly():
    f = random_bandlimited(4, seed=9)
    plus, minus = parity_decompose(f, 2)
    assert np.all(plus.coeffs + minus.coeffs == f.coeffs)
    assert plus.parity_tag == "even-l"
    assert minus.parity_tag == "odd-l"
    # decomposition of a sharp function is trivial
    sharp = random_bandlimited(4, seed=9, parity="n_even", n=2)
    p2, m2 = parity_decompose(sharp, 2)
    assert np.all(p2.coeffs == sharp.coeffs)
    assert np.all(m2.coeffs == 0)


def test_basis_classmethod():
    f = BandlimitedFunction.basis(3, 2, -1)
    assert f.coeff(2, -1) == 1.0
    assert np.count_nonzero(f.coeffs) == 1
    assert f.parity_tag == "even-l"


def test_coeffs_are_read_only():
    f = random_bandlimited(2, seed=1)
    with pytest.raises(ValueError):
        f.coeffs[0] = 1.0


def test_csv_round_trip_is_exact(tmp_path):
    f = random_bandlimited(3, seed=77)
    path = tmp_path / "c.csv"
    coeffs_to_csv(f, path)
    g = coeffs_from_csv(path)
    assert g.L == 3
    assert np.all(g.coeffs == f.coeffs)
    header = path.read_text().split("\n", 1)[0]
    assert header == "l,m,re,im"


def test_csv_error_messages(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("re,im\n0,0\n")
    with pytest.raises(ValueError, match="must start with header"):
        coeffs_from_csv(bad)
    bad.write_text("l,m,re,im\n0,0,1.0\n")
    with pytest.raises(ValueError, match="malformed coefficient row at line 2"):
        coeffs_from_csv(bad)
    bad.write_text("l,m,re,im\n")
    with pytest.raises(ValueError, match="no rows"):
        coeffs_from_csv(bad)
    bad.write_text("l,m,re,im\n1,2,0.0,0.0\n")
    with pytest.raises(ValueError, match=r"\|m\| > l"):
        coeffs_from_csv(bad)
