"""Quadrature engines for the skewed products.

All products are double sphere integrals: for each output point m the
engine contracts a kernel table K(x_i, x_j, m) against weighted function
values over pairs of quadrature nodes.  The global and generalized
engines exploit the antipodal symmetry of the grid: grouping each node
with its antipode turns the full double sum into a quarter-size sum over
canonical pairs against parity-folded inputs

    fold(f)_i = f(x_i) + (-1)^n f(-x_i),

because a single antipodal flip of any kernel argument multiplies the
polynomial kernel forms by exactly (-1)^n at the bit level.  A fold of a
function of the wrong parity class is an array of exact zeros, which is
what makes the annihilation property hold exactly rather than to
rounding.

Partial products cannot be folded (the sign classes mix under flips), so
that engine expands the four sign quadrants explicitly and accumulates
one sum per sign class in a single pass, serving all eight domain labels
at once.

Determinism: contractions use numpy elementwise products and pairwise
np.sum reductions (never BLAS), tiles are a fixed function of the grid,
and parallel runs merge per-node results in node order, so outputs are
bit-identical for any worker count.
"""

from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import multiprocessing
import numpy as np

from .function_space import (
    BandlimitedFunction,
    basis_matrix,
    coeff_count,
    evaluate,
    lm_index,
    project,
)
from .kernels import (
    CONJUGATE_LABELS,
    DIRECT_LABELS,
    PARTIAL_LABELS,
    AmplitudeLike,
    KernelSpec,
    complement_label,
    even_phase_poly,
    odd_phase_poly,
    resolve_amplitude,
)
from .quadrature import QuadratureGrid, build_grid, integrate

__all__ = [
    "ProductResult",
    "StructureTensor",
    "LimitScanRow",
    "worker_count",
    "product_global",
    "product_generalized",
    "product_partial",
    "product_partials_all",
    "product_restricted_even",
    "structure_constants",
    "limit_scan",
    "product_to_csv",
    "structure_to_csv",
]

# column budget per tile slab: tile_rows * n_cols <= 2**21 entries (16 MB
# per float64 slab), keeping peak memory flat on large grids
_TILE_BUDGET = 1 << 21

# pairwise-dot tables above this entry count are recomputed per tile
# instead of being cached for the whole run
_CACHE_LIMIT = 1 << 24


@dataclass(frozen=True)
class ProductResult:
    """Values of a product on the nodes of a grid, plus skip accounting.

    skipped_weight is the worst case over output nodes of the total
    quadrature weight w_i * w_j excluded as boundary or singular.
    """

    values: np.ndarray
    skipped_weight: float
    spec: KernelSpec
    grid: QuadratureGrid

    def norm_sup(self) -> float:
        return float(np.max(np.abs(self.values)))


@dataclass(frozen=True)
class StructureTensor:
    """Harmonic matrix elements C[(l1,m1),(l2,m2),(l3,m3)] of the global
    product: projection of Y_{l1 m1} * Y_{l2 m2} onto Y_{l3 m3}."""

    n: int
    L: int
    entries: np.ndarray  # (ncoef, ncoef, ncoef) complex

    def entry(self, l1, m1, l2, m2, l3, m3) -> complex:
        return complex(self.entries[lm_index(l1, m1),
                                    lm_index(l2, m2),
                                    lm_index(l3, m3)])


@dataclass(frozen=True)
class LimitScanRow:
    k: int
    rel_error: float
    note: str = ""


def worker_count(workers: Optional[int] = None) -> int:
    """Resolve the worker budget: explicit argument, else STARLAB_THREADS,
    else the CPU count."""
    if workers is not None:
        return max(1, int(workers))
    env = os.environ.get("STARLAB_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            warnings.warn(f"ignoring non-integer STARLAB_THREADS={env!r}")
    return max(1, os.cpu_count() or 1)


def _resolution_warning(grid: QuadratureGrid, n: int, L: int = 0):
    # rule of thumb: n_polar >= 4 max(k, L) to resolve phase oscillation
    k = (n + 1) // 2
    need = 4 * max(k, L, 1)
    if grid.n_polar < need:
        warnings.warn(
            f"grid n_polar={grid.n_polar} may under-resolve the kernel "
            f"(suggest n_polar >= {need} for n={n}, L={L})",
            stacklevel=3,
        )


def _tile_rows(n_cols: int) -> int:
    return max(1, min(n_cols, _TILE_BUDGET // max(1, n_cols)))


def _fold(values: np.ndarray, grid: QuadratureGrid, even: bool) -> np.ndarray:
    """values[c] +- values[antipode(c)] over canonical nodes."""
    c = grid.canonical
    a = grid.antipodal_of_canonical
    if even:
        return values[c] + values[a]
    return values[c] - values[a]


def _dot_outer(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Pairwise dots D[i, j] = A_i . B_j without BLAS (three outer adds)."""
    return (A[:, 0][:, None] * B[:, 0][None, :]
            + A[:, 1][:, None] * B[:, 1][None, :]
            + A[:, 2][:, None] * B[:, 2][None, :])


def _cross_with(X: np.ndarray, m: np.ndarray) -> np.ndarray:
    """Rows x_j cross m, componentwise."""
    out = np.empty_like(X)
    out[:, 0] = X[:, 1] * m[2] - X[:, 2] * m[1]
    out[:, 1] = X[:, 2] * m[0] - X[:, 0] * m[2]
    out[:, 2] = X[:, 0] * m[1] - X[:, 1] * m[0]
    return out


# ---------------------------------------------------------------------------
# shared worker plumbing

_SHARED = None


def _init_worker(state):
    global _SHARED
    _SHARED = state


def _chunk_task(points):
    return [_SHARED["node_fn"](_SHARED, m) for m in points]


def _run_over_nodes(state: dict, out_points: np.ndarray, workers: int) -> list:
    """Apply state["node_fn"] to every output point, in order.

    Chunks are contiguous and results are concatenated in chunk order, so
    the result list is independent of the worker count.
    """
    n_out = len(out_points)
    if workers <= 1 or n_out < 2:
        _init_worker(state)
        try:
            return _chunk_task(out_points)
        finally:
            _init_worker(None)
    n_chunks = min(workers * 4, n_out)
    chunks = np.array_split(out_points, n_chunks)
    ctx = multiprocessing.get_context("fork")
    results: List = []
    with ProcessPoolExecutor(max_workers=workers, mp_context=ctx,
                             initializer=_init_worker,
                             initargs=(state,)) as pool:
        for part in pool.map(_chunk_task, chunks):
            results.extend(part)
    return results


# ---------------------------------------------------------------------------
# global / generalized engine

def _node_global(state, m) -> Tuple[complex, float]:
    """Folded kernel contraction for one output point m."""
    X = state["X"]
    w = state["w"]
    u = state["u"]          # w * fold(f) on canonical nodes
    v = state["v"]          # w * fold(g)
    n = state["n"]
    k = state["k"]
    even = state["even"]
    amp_fn = state["amp_fn"]
    eps_sign = state["eps_sign"]
    eps_det = state["eps_det"]
    aXX = state["aXX"]
    n_c = len(X)
    tile = _tile_rows(n_c)

    cm = _cross_with(X, m)
    dm = X[:, 0] * m[0] + X[:, 1] * m[1] + X[:, 2] * m[2]
    adm = np.abs(dm)
    col_bad = adm < eps_sign
    total = 0j
    sw = 0.0
    for a in range(0, n_c, tile):
        b = min(a + tile, n_c)
        Xt = X[a:b]
        D = (Xt[:, 0][:, None] * cm[:, 0][None, :]
             + Xt[:, 1][:, None] * cm[:, 1][None, :]
             + Xt[:, 2][:, None] * cm[:, 2][None, :])
        det2 = D * D
        s = 1.0 - det2
        a12 = aXX[a:b] if aXX is not None else np.abs(_dot_outer(Xt, X))
        skip = (a12 < eps_sign) | col_bad[None, :] | col_bad[a:b, None] | (s < eps_det)
        amp = amp_fn(n, a12, adm[None, :], adm[a:b, None], det2)
        phase = even_phase_poly(k, det2) if even else odd_phase_poly(k, D)
        K = amp * phase
        if skip.any():
            K[skip] = 0.0
            ww = w[a:b][:, None] * w[None, :]
            sw += float(np.sum(ww[skip]))
        row = np.sum(K * v[None, :], axis=1)
        total = total + np.sum(u[a:b] * row)
    value = total if even else 1j * total
    return value, 4.0 * sw


def _generalized_values(f: BandlimitedFunction, g: BandlimitedFunction,
                        n: int, amplitude: AmplitudeLike,
                        inner: QuadratureGrid, out_grid: QuadratureGrid,
                        workers: Optional[int],
                        eps_sign: float, eps_det: float):
    """Values of the generalized product on every node of out_grid."""
    even = n % 2 == 0
    k = n // 2 if even else (n + 1) // 2
    c = inner.canonical
    X = inner.nodes[c]
    w = inner.weights[c]
    u = w * _fold(evaluate(f, inner), inner, even)
    v = w * _fold(evaluate(g, inner), inner, even)
    n_c = len(c)
    aXX = np.abs(_dot_outer(X, X)) if n_c * n_c <= _CACHE_LIMIT else None
    state = {
        "node_fn": _node_global,
        "X": X, "w": w, "u": u, "v": v,
        "n": n, "k": k, "even": even,
        "amp_fn": resolve_amplitude(amplitude),
        "eps_sign": eps_sign, "eps_det": eps_det,
        "aXX": aXX,
    }
    out_c = out_grid.canonical
    pairs = _run_over_nodes(state, out_grid.nodes[out_c], worker_count(workers))
    vals_c = np.array([p[0] for p in pairs], dtype=complex)
    sw = max((p[1] for p in pairs), default=0.0)
    values = np.empty(out_grid.node_count, dtype=complex)
    values[out_c] = vals_c
    values[out_grid.antipodal_of_canonical] = vals_c if even else -vals_c
    return values, sw


def product_generalized(f: BandlimitedFunction, g: BandlimitedFunction,
                        n: int, amplitude: AmplitudeLike,
                        grid: QuadratureGrid,
                        workers: Optional[int] = None,
                        eps_sign: float = None, eps_det: float = None
                        ) -> ProductResult:
    """Generalized skewed product with a pluggable amplitude."""
    spec = KernelSpec(n, "generalized", amplitude=amplitude,
                      **_eps_kwargs(eps_sign, eps_det))
    _resolution_warning(grid, n, max(f.L, g.L))
    values, sw = _generalized_values(f, g, n, amplitude, grid, grid, workers,
                                     spec.eps_sign, spec.eps_det)
    values.setflags(write=False)
    return ProductResult(values, sw, spec, grid)


def _eps_kwargs(eps_sign, eps_det):
    kw = {}
    if eps_sign is not None:
        kw["eps_sign"] = eps_sign
    if eps_det is not None:
        kw["eps_det"] = eps_det
    return kw


def product_global(f: BandlimitedFunction, g: BandlimitedFunction,
                   n: int, grid: QuadratureGrid,
                   workers: Optional[int] = None,
                   eps_sign: float = None, eps_det: float = None
                   ) -> ProductResult:
    """Average of the eight partial skewed products, evaluated directly
    through the quarter-Jacobian trig kernel."""
    spec = KernelSpec(n, "global", **_eps_kwargs(eps_sign, eps_det))
    _resolution_warning(grid, n, max(f.L, g.L))
    values, sw = _generalized_values(f, g, n, "jacobian", grid, grid, workers,
                                     spec.eps_sign, spec.eps_det)
    values.setflags(write=False)
    return ProductResult(values, sw, spec, grid)


# ---------------------------------------------------------------------------
# partial engine (all eight domain labels in one pass)

_CLASS_OF_LABEL = {"000": 0, "001": 1, "010": 2, "100": 3}
_SIGN_VARIANTS = ((1, 1), (-1, 1), (1, -1), (-1, -1))


def _node_partial(state, m):
    """Per-class direct and conjugate-phase sums at one output point.

    Returns (P, Q, sw) where P[c] accumulates A z^n f g over pairs in
    sign class c and Q[c] the same with the conjugated phase; z is the
    unit complex eta sqrt(1 - det^2) + i det whose n-th power is the
    half-area phase factor.
    """
    X = state["X"]
    XX = state["XX"]
    aXX = state["aXX"]
    WW = state["WW"]
    n = state["n"]
    eps_sign = state["eps_sign"]
    eps_det = state["eps_det"]

    cm = _cross_with(X, m)
    dm = X[:, 0] * m[0] + X[:, 1] * m[1] + X[:, 2] * m[2]
    adm = np.abs(dm)
    sdm = np.where(dm > 0, 1.0, -1.0)
    D = _dot_outer(X, cm)
    det2 = D * D
    s = 1.0 - det2
    croot = np.sqrt(np.maximum(s, 0.0))
    skip = ((aXX < eps_sign) | (adm[None, :] < eps_sign)
            | (adm[:, None] < eps_sign) | (s < eps_det))
    inv = 1.0 / np.maximum(s, eps_det)
    A = 16.0 * aXX * adm[None, :] * adm[:, None] * (inv * inv * np.sqrt(inv))
    A[skip] = 0.0
    sXX = np.where(XX > 0, 1.0, -1.0)

    P = np.zeros(4, dtype=complex)
    Q = np.zeros(4, dtype=complex)
    for s1, s2 in _SIGN_VARIANTS:
        s12 = sXX if s1 * s2 > 0 else -sXX
        s23 = (s2 * sdm)[None, :]
        s31 = (s1 * sdm)[:, None]
        total3 = s12 + s23 + s31
        eta = np.where(total3 > 0, 1.0, -1.0)
        cls = np.where(np.abs(total3) == 3.0, 0,
                       np.where(s12 != eta, 1,
                                np.where(s31 != eta, 2, 3)))
        detv = D if s1 * s2 > 0 else -D
        z = eta * croot + 1j * detv
        zn = z
        for _ in range(n - 1):
            zn = zn * z
        AZ = A * zn
        fg = (state["fa" if s1 < 0 else "fc"][:, None]
              * state["ga" if s2 < 0 else "gc"][None, :])
        contrib = AZ * fg
        contrib_conj = np.conj(AZ) * fg
        for cid in range(4):
            mask = (cls == cid) & ~skip
            P[cid] += np.sum(contrib[mask])
            Q[cid] += np.sum(contrib_conj[mask])
    sw = 4.0 * float(np.sum(WW[skip]))
    return P, Q, sw


def _partials_values(f, g, n, grid, workers, eps_sign, eps_det):
    """Eight value arrays (one per domain label) plus the skip weight."""
    c = grid.canonical
    a = grid.antipodal_of_canonical
    X = grid.nodes[c]
    w = grid.weights[c]
    n_c = len(c)
    if n_c * n_c > _CACHE_LIMIT:
        raise ValueError("partial-product engine requires a grid with at "
                         "most 4096 canonical nodes per hemisphere")
    fv = evaluate(f, grid)
    gv = evaluate(g, grid)
    XX = _dot_outer(X, X)
    state = {
        "node_fn": _node_partial,
        "X": X, "XX": XX, "aXX": np.abs(XX),
        "WW": w[:, None] * w[None, :],
        "fc": w * fv[c], "fa": w * fv[a],
        "gc": w * gv[c], "ga": w * gv[a],
        "n": n, "eps_sign": eps_sign, "eps_det": eps_det,
    }
    results = _run_over_nodes(state, grid.nodes, worker_count(workers))
    n_nodes = grid.node_count
    P = np.array([r[0] for r in results], dtype=complex)  # (nodes, 4)
    Q = np.array([r[1] for r in results], dtype=complex)
    sw = max((r[2] for r in results), default=0.0)
    sign = 1.0 if n % 2 == 0 else -1.0
    values = {}
    for label in DIRECT_LABELS:
        values[label] = P[:, _CLASS_OF_LABEL[label]].copy()
    for label in CONJUGATE_LABELS:
        partner = complement_label(label)
        values[label] = sign * Q[:, _CLASS_OF_LABEL[partner]]
    return values, sw


def product_partials_all(f: BandlimitedFunction, g: BandlimitedFunction,
                         n: int, grid: QuadratureGrid,
                         workers: Optional[int] = None,
                         eps_sign: float = None, eps_det: float = None
                         ) -> dict:
    """All eight partial products in a single engine pass."""
    probe = KernelSpec(n, "partial", domain="000",
                       **_eps_kwargs(eps_sign, eps_det))
    _resolution_warning(grid, n, max(f.L, g.L))
    values, sw = _partials_values(f, g, n, grid, workers,
                                  probe.eps_sign, probe.eps_det)
    out = {}
    for label in PARTIAL_LABELS:
        vals = np.asarray(values[label])
        vals.setflags(write=False)
        spec = KernelSpec(n, "partial", domain=label,
                          **_eps_kwargs(eps_sign, eps_det))
        out[label] = ProductResult(vals, sw, spec, grid)
    return out

def product_partial(f: BandlimitedFunction, g: BandlimitedFunction,
                    n: int, domain: str, grid: QuadratureGrid,
                    workers: Optional[int] = None,
                    eps_sign: float = None, eps_det: float = None
                    ) -> ProductResult:
    """Partial skewed product over a single domain label 000..111."""
    if domain not in PARTIAL_LABELS:
        raise ValueError("partial variant requires a domain label 000..111")
    return product_partials_all(f, g, n, grid, workers,
                                eps_sign, eps_det)[domain]


def product_restricted_even(f: BandlimitedFunction, g: BandlimitedFunction,
                            n: int, grid: QuadratureGrid,
                            workers: Optional[int] = None,
                            eps_sign: float = None, eps_det: float = None
                            ) -> ProductResult:
    """Restricted product for a pair of n-even functions:
    (1/2)[(f star g)_000(m) + (-1)^n (f star g)_000(-m)]."""
    if not f.is_n_even(n) or not g.is_n_even(n):
        raise ValueError("parity contract violated: restricted product "
                         "requires n-even inputs")
    base = product_partial(f, g, n, "000", grid, workers, eps_sign, eps_det)
    sign = 1.0 if n % 2 == 0 else -1.0
    flipped = base.values[grid.antipode_index]
    vals = 0.5 * (base.values + sign * flipped)
    vals.setflags(write=False)
    spec = KernelSpec(n, "restricted_even", **_eps_kwargs(eps_sign, eps_det))
    return ProductResult(vals, base.skipped_weight, spec, grid)


# ---------------------------------------------------------------------------
# structure constants

def _node_structure(state, m):
    """Kernel table once, contracted against every active basis pair."""
    X = state["X"]
    w = state["w"]
    B = state["B"]          # (n_active, n_c) w-weighted folded basis values
    n = state["n"]
    k = state["k"]
    even = state["even"]
    eps_sign = state["eps_sign"]
    eps_det = state["eps_det"]
    aXX = state["aXX"]

    cm = _cross_with(X, m)
    dm = X[:, 0] * m[0] + X[:, 1] * m[1] + X[:, 2] * m[2]
    adm = np.abs(dm)
    D = _dot_outer(X, cm)
    det2 = D * D
    s = 1.0 - det2
    skip = ((aXX < eps_sign) | (adm[None, :] < eps_sign)
            | (adm[:, None] < eps_sign) | (s < eps_det))
    inv = 1.0 / np.maximum(s, eps_det)
    amp = 4.0 * aXX * adm[None, :] * adm[:, None] * (inv * inv * np.sqrt(inv))
    phase = even_phase_poly(k, det2) if even else odd_phase_poly(k, D)
    K = amp * phase
    sw = 0.0
    if skip.any():
        K[skip] = 0.0
        ww = w[:, None] * w[None, :]
        sw = 4.0 * float(np.sum(ww[skip]))
    n_active = len(B)
    C = np.empty((n_active, n_active), dtype=complex)
    for q in range(n_active):
        row = np.sum(K * B[q][None, :], axis=1)
        for p in range(n_active):
            C[p, q] = np.sum(B[p] * row)
    if not even:
        C = 1j * C
    return C, sw


def structure_constants(n: int, L: int, grid: QuadratureGrid,
                        workers: Optional[int] = None,
                        eps_sign: float = None, eps_det: float = None
                        ) -> StructureTensor:
    """Matrix elements of the global product over the harmonic basis.

    Only basis functions with l congruent to n mod 2 can contribute;
    folds of the others vanish identically, and those tensor entries are
    exact zeros.
    """
    if grid.l_exact < 2 * L:
        raise ValueError("grid exactness insufficient for bandlimit")
    spec = KernelSpec(n, "global", **_eps_kwargs(eps_sign, eps_det))
    _resolution_warning(grid, n, L)
    even = n % 2 == 0
    k = n // 2 if even else (n + 1) // 2
    c = grid.canonical
    X = grid.nodes[c]
    w = grid.weights[c]
    ncoef = coeff_count(L)
    Bfull = basis_matrix(grid, L)
    active = [j for j in range(ncoef) if _l_of_index(j) % 2 == n % 2]
    # fold of Y_lm is 2 Y_lm on matching parity (antipodal half mirrors
    # canonical half exactly), so fold directly from the canonical rows
    B = np.array([2.0 * w * Bfull[c, j] for j in active])
    state = {
        "node_fn": _node_structure,
        "X": X, "w": w, "B": B,
        "n": n, "k": k, "even": even,
        "eps_sign": spec.eps_sign, "eps_det": spec.eps_det,
        "aXX": np.abs(_dot_outer(X, X)),
    }
    out_c = grid.canonical
    results = _run_over_nodes(state, grid.nodes[out_c], worker_count(workers))
    entries = np.zeros((ncoef, ncoef, ncoef), dtype=complex)
    n_active = len(active)
    eps_par = 1.0 if even else -1.0
    for p in range(n_active):
        for q in range(n_active):
            vals_c = np.array([r[0][p, q] for r in results], dtype=complex)
            values = np.empty(grid.node_count, dtype=complex)
            values[out_c] = vals_c
            values[grid.antipodal_of_canonical] = eps_par * vals_c
            for j3 in active:
                coeff = integrate(np.conj(Bfull[:, j3]) * values, grid)
                entries[active[p], active[q], j3] = coeff
    return StructureTensor(n=n, L=L, entries=entries)


def _l_of_index(j: int) -> int:
    return int(math.isqrt(j))


# ---------------------------------------------------------------------------
# classical limit scan

def limit_scan(f: BandlimitedFunction, g: BandlimitedFunction,
               k_list: Sequence[int],
               schedule: Optional[Callable[[int], Tuple[int, int]]] = None,
               out_grid: Optional[QuadratureGrid] = None,
               workers: Optional[int] = None) -> List[LimitScanRow]:
    """Relative L2 distance between the even product f star^{2k} g and the
    pointwise product f g, per k, on grids that grow with k.

    The pointwise reference is formed in coefficient space (the product
    of two band-limited functions is band-limited at L_f + L_g) so the
    comparison is alias-free.
    """
    if schedule is None:
        schedule = lambda k: (8 * k, 8 * k)
    if out_grid is None:
        out_grid = build_grid(6, 12)
    L_prod = f.L + g.L
    exact = build_grid(L_prod + 1, 2 * L_prod + 2)
    ref_coeffs = project(evaluate(f, exact) * evaluate(g, exact),
                        exact, L_prod)
    ref_vals = evaluate(ref_coeffs, out_grid)
    ref_norm = math.sqrt(abs(integrate(np.abs(ref_vals) ** 2, out_grid)))
    rows: List[LimitScanRow] = []
    for k in k_list:
        if k < 1:
            raise ValueError("k must be a positive integer")
        if ref_norm == 0.0:
            rows.append(LimitScanRow(k=k, rel_error=0.0, note="exact-zero"))
            continue
        n_polar, n_azimuth = schedule(k)
        inner = build_grid(n_polar, n_azimuth)
        vals, _ = _generalized_values(f, g, 2 * k, "jacobian", inner,
                                      out_grid, workers,
                                      KernelSpec(2 * k).eps_sign,
                                      KernelSpec(2 * k).eps_det)
        err = vals - ref_vals
        err_norm = math.sqrt(abs(integrate(np.abs(err) ** 2, out_grid)))
        rows.append(LimitScanRow(k=k, rel_error=err_norm / ref_norm))
    return rows


# ---------------------------------------------------------------------------
# delimited output

def product_to_csv(result: ProductResult, path):
    """Write node_index, theta, phi, re, im rows for a product result."""
    g = result.grid
    with open(path, "w") as fh:
        fh.write("node_index,theta,phi,re,im\n")
        for i in range(g.node_count):
            v = result.values[i]
            fh.write("%d,%s,%s,%s,%s\n" % (
                i, format(g.theta[i], ".17g"), format(g.phi[i], ".17g"),
                format(v.real, ".17g"), format(v.imag, ".17g")))


def structure_to_csv(tensor: StructureTensor, path):
    """Write l1,m1,l2,m2,l3,m3,re,im rows in lexicographic order."""
    lm = [(l, m) for l in range(tensor.L + 1) for m in range(-l, l + 1)]
    with open(path, "w") as fh:
        fh.write("l1,m1,l2,m2,l3,m3,re,im\n")
        for l1, m1 in lm:
            for l2, m2 in lm:
                for l3, m3 in lm:
                    v = tensor.entry(l1, m1, l2, m2, l3, m3)
                    fh.write("%d,%d,%d,%d,%d,%d,%s,%s\n" % (
                        l1, m1, l2, m2, l3, m3,
                        format(v.real, ".17g"), format(v.imag, ".17g")))
