"""Executable property suite: every identity the library is supposed to
satisfy, checked at configurable scale with measured worst-case errors.

Each check returns a PropertyResult (name, measured error, tolerance,
verdict).  run_suite composes them; the CLI serializes the results.  The
checks are deterministic functions of (seed, scale) so repeated runs
produce identical reports.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, asdict
from typing import Callable, List, Optional, Sequence

import numpy as np

from .function_space import (
    BandlimitedFunction,
    basis_matrix,
    evaluate,
    lm_index,
    parity_decompose,
    project,
    random_bandlimited,
)
from .kernels import (
    DIRECT_LABELS,
    KernelSpec,
    generalized_kernel,
    global_kernel,
    partial_kernel,
    phase_factor,
)
from .product_engine import (
    product_generalized,
    product_global,
    product_partials_all,
    product_restricted_even,
    structure_constants,
)
from .quadrature import QuadratureGrid, build_grid, integrate
from .sphere_geometry import (
    EPS_SIGN,
    MidpointTriple,
    SpherePoint,
    amplitude_A,
    classify_batch,
    classify_triple,
    flip_triple,
    make_point,
    rotation_matrix,
    triangle_area_S,
)

__all__ = [
    "PropertyResult",
    "random_point",
    "random_triple",
    "random_proper_rotation",
    "check_domain_partition",
    "check_area_alternating_symmetry",
    "check_geometry_rotation_invariance",
    "check_kernel_symmetry",
    "check_kernel_flip_covariance",
    "check_phase_flip_validity",
    "check_conjugate_relation",
    "check_kernel_rotation_invariance",
    "check_grid_exactness",
    "check_parity_decomposition",
    "check_graded_commutativity",
    "check_annihilation",
    "check_output_parity",
    "check_eight_way_table",
    "check_restricted_equals_global",
    "check_reflection_identity",
    "check_generalized_robustness",
    "check_structure_rules",
    "check_worker_reproducibility",
    "measure_unit_product",
    "run_suite",
]


@dataclass(frozen=True)
class PropertyResult:
    name: str
    passed: bool
    error: float
    tolerance: float
    detail: str = ""

    def as_dict(self):
        d = asdict(self)
        d["error"] = format(self.error, ".17g")
        d["tolerance"] = format(self.tolerance, ".17g")
        return d


def _result(name, error, tol, detail=""):
    return PropertyResult(name=name, passed=bool(error <= tol),
                          error=float(error), tolerance=float(tol),
                          detail=detail)


# ---------------------------------------------------------------------------
# random geometry helpers

def random_point(rng) -> SpherePoint:
    v = rng.standard_normal(3)
    while float(v @ v) < 1e-12:
        v = rng.standard_normal(3)
    return make_point(v)


def random_triple(rng, eps_sign: float = EPS_SIGN,
                  require: Optional[str] = None) -> MidpointTriple:
    """Non-boundary random triple, optionally from one sign class."""
    while True:
        t = classify_triple(random_point(rng), random_point(rng),
                            random_point(rng), eps_sign)
        if t.is_boundary:
            continue
        if require is None or t.domain_label == require:
            return t


def random_proper_rotation(rng) -> np.ndarray:
    axis = random_point(rng).vec
    angle = rng.uniform(0.0, 2.0 * math.pi)
    return rotation_matrix(axis, angle)


def _generic(t: MidpointTriple, cut: float = 1e-2) -> bool:
    """Bounded away from the boundary and singular sets.

    The amplitude's (1 - det^2)^(-5/2) factor amplifies last-bit input
    noise by about 5/(1 - det^2), so identity checks at 1e-12 are only
    meaningful on triples where that conditioning is controlled; the
    excluded neighborhoods shrink to the measure-zero degenerate sets.
    """
    return (min(abs(t.d12), abs(t.d23), abs(t.d31)) >= cut
            and 1.0 - t.det * t.det >= cut)


def _rotate_triple(t: MidpointTriple, R: np.ndarray) -> MidpointTriple:
    return classify_triple(make_point(R @ t.p1.vec), make_point(R @ t.p2.vec),
                           make_point(R @ t.p3.vec))


# ---------------------------------------------------------------------------
# geometry and kernel checks (Monte Carlo over random triples)

def check_domain_partition(seed=0, samples=100000, eps_sign=EPS_SIGN,
                           boundary_budget=1e-3) -> PropertyResult:
    """The four sign classes partition the non-boundary triples.

    Each class predicate is evaluated independently from the raw dot
    signs (all-same, or the stated deviant dot); exactly one may hold.
    """
    rng = np.random.default_rng(seed)
    P = rng.standard_normal((3, samples, 3))
    P /= np.linalg.norm(P, axis=2, keepdims=True)
    class_id, eta, _ = classify_batch(P[0], P[1], P[2], eps_sign)
    d12 = np.einsum("ij,ij->i", P[0], P[1])
    d23 = np.einsum("ij,ij->i", P[1], P[2])
    d31 = np.einsum("ij,ij->i", P[2], P[0])
    s12, s23, s31 = np.sign(d12), np.sign(d23), np.sign(d31)
    w000 = (s12 == s23) & (s23 == s31)
    w001 = (s23 == s31) & (s12 != s23)   # deviant dot is d12
    w010 = (s12 == s23) & (s31 != s12)   # deviant dot is d31
    w100 = (s31 == s12) & (s23 != s31)   # deviant dot is d23
    counts = (w000.astype(int) + w001.astype(int)
              + w010.astype(int) + w100.astype(int))
    nonb = class_id >= 0
    bad = int(np.sum(counts[nonb] != 1))
    table = np.stack([w000, w001, w010, w100], axis=0)
    mismatch = int(np.sum(table[class_id[nonb], np.nonzero(nonb)[0]] != True))
    boundary_frac = float(np.mean(~nonb))
    err = float(bad + mismatch)
    ok = err == 0 and boundary_frac < boundary_budget
    return PropertyResult(
        name="domain_partition",
        passed=ok, error=err, tolerance=0.0,
        detail=f"samples={samples} boundary_frac={boundary_frac:.3g}")


def check_area_alternating_symmetry(seed=1, samples=2000) -> PropertyResult:
    """S(permuted triple) = sign(perm) * S within 1e-12."""
    rng = np.random.default_rng(seed)
    perms = (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
             ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1))
    worst = 0.0
    for _ in range(samples):
        t = random_triple(rng)
        pts = t.points()
        S = triangle_area_S(t)
        for order, sgn in perms:
            tp = classify_triple(pts[order[0]], pts[order[1]], pts[order[2]])
            # compare half-angle phases: branch-stable at |S| = 2 pi and
            # exactly as sensitive as the kernels (4 pi periodic)
            worst = max(worst, abs(cmath.exp(0.5j * triangle_area_S(tp))
                                   - cmath.exp(0.5j * sgn * S)))
    return _result("area_alternating_symmetry", worst, 1e-12,
                   f"samples={samples} x 6 permutations")


def check_geometry_rotation_invariance(seed=2, samples=2000) -> PropertyResult:
    """S and A are invariant under proper rotations within 1e-12."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        t = random_triple(rng)
        if not _generic(t):
            continue
        R = random_proper_rotation(rng)
        tr = _rotate_triple(t, R)
        worst = max(worst, abs(triangle_area_S(tr) - triangle_area_S(t)))
        rel = abs(amplitude_A(tr) - amplitude_A(t)) / amplitude_A(t)
        worst = max(worst, rel)
    return _result("geometry_rotation_invariance", worst, 1e-12,
                   f"samples={samples}")


def _default_kernel(t, n):
    return global_kernel(t, n)


def _partial000_kernel(t, n):
    return partial_kernel(t, KernelSpec(n, "partial", domain="000"))


def check_kernel_symmetry(seed=3, samples=10000, n_values=(1, 2, 3, 4, 5, 6),
                          kernel_fn: Callable = None,
                          name="kernel_symmetry_global",
                          require=None) -> PropertyResult:
    """Cyclic symmetry K(a,b,c) = K(c,a,b) and conjugate transposition
    K(a,b,c) = conj(K(c,b,a)) within 1e-12.

    kernel_fn(t, n) is injectable so a deliberately broken kernel can be
    shown to fail (mutation sanity).
    """
    rng = np.random.default_rng(seed)
    kernel = kernel_fn or _default_kernel
    worst = 0.0
    for _ in range(samples):
        t = random_triple(rng, require=require)
        if not _generic(t):
            continue
        cyc = classify_triple(t.p3, t.p1, t.p2)
        swp = classify_triple(t.p3, t.p2, t.p1)
        # errors scale with the amplitude bound, not the kernel value,
        # so normalize against it
        scale = max(1.0, amplitude_A(t))
        for n in n_values:
            k0 = kernel(t, n)
            worst = max(worst, abs(kernel(cyc, n) - k0) / scale)
            worst = max(worst, abs(kernel(swp, n).conjugate() - k0) / scale)
    return _result(name, worst, 1e-12,
                   f"samples={samples} n={list(n_values)}")


_FLIP_PATTERNS = (
    ((1, 0, 0), "W100"),
    ((0, 1, 0), "W010"),
    ((0, 0, 1), "W001"),
    ((0, 1, 1), "W100"),
    ((1, 0, 1), "W010"),
    ((1, 1, 0), "W001"),
    ((1, 1, 1), None),
)


def _flip_parity(flips):
    return -1 if sum(flips) % 2 else 1


def check_kernel_flip_covariance(seed=4, samples=10000,
                                 n_values=(1, 2, 3, 4, 5, 6)) -> PropertyResult:
    """Antipodal flips act on the global kernel by powers of (-1)^n and
    conjugation, on every non-boundary triple.

    Odd flip count: K -> (-1)^n K; even nonzero count: K -> (-1)^n
    conj(K); all three: K -> conj(K).
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples // 10):
        t = random_triple(rng)
        base = {n: global_kernel(t, n) for n in n_values}
        for flips, _ in _FLIP_PATTERNS:
            tf = flip_triple(t, flips)
            odd = sum(flips) % 2 == 1
            for n in n_values:
                k0 = base[n]
                kf = global_kernel(tf, n)
                sgn = (-1.0) ** n
                if sum(flips) == 3:
                    expect = k0.conjugate()
                elif odd:
                    expect = sgn * k0
                else:
                    expect = sgn * k0.conjugate()
                worst = max(worst, abs(kf - expect) / max(1.0, abs(k0)))
    return _result("kernel_flip_covariance", worst, 1e-12,
                   f"samples={samples // 10} x 7 flip patterns")


def check_phase_flip_validity(seed=5, samples=10000,
                              n_values=(1, 2, 3, 4, 5, 6)) -> PropertyResult:
    """Bare half-area phase under antipodal flips, each flip pattern
    checked on the sign classes it maps within the at-most-one-long-side
    family (the generality in which the relation is used):

    one flip at position j: valid on W000 and the class with bit j set,
    phase -> (-1)^n phase; two flips: valid on W000 and the class of the
    untouched position, phase -> (-1)^n conj(phase); all three: every
    class, phase -> conj(phase).
    """
    rng = np.random.default_rng(seed)
    worst = 0.0
    checked = 0
    for _ in range(samples // 10):
        t = random_triple(rng)
        base = {n: phase_factor(t, n) for n in n_values}
        for flips, partner in _FLIP_PATTERNS:
            if partner is not None and t.domain_label not in ("W000", partner):
                continue
            tf = flip_triple(t, flips)
            if tf.is_boundary:
                continue
            for n in n_values:
                p0 = base[n]
                pf = phase_factor(tf, n)
                sgn = (-1.0) ** n
                if sum(flips) == 3:
                    expect = p0.conjugate()
                elif sum(flips) == 1:
                    expect = sgn * p0
                else:
                    expect = sgn * p0.conjugate()
                worst = max(worst, abs(pf - expect))
                checked += 1
    return _result("phase_flip_validity", worst, 1e-12,
                   f"{checked} (triple, flip, n) cases")


def check_conjugate_relation(seed=6, samples=10000,
                             n_values=(1, 2, 3, 4, 5, 6)) -> PropertyResult:
    """Conjugate-domain kernels against an independent phase evaluation:
    for t in the carrier class of a conjugate label, the kernel equals
    (-1)^n A(t) times the phase of the all-flipped triple."""
    rng = np.random.default_rng(seed)
    conj_of = {"111": "W000", "110": "W001", "101": "W010", "011": "W100"}
    worst = 0.0
    per_label = max(1, samples // (10 * len(conj_of)))
    for label, carrier in conj_of.items():
        for _ in range(per_label):
            t = random_triple(rng, require=carrier)
            if not _generic(t):
                continue
            tf = flip_triple(t, (1, 1, 1))
            for n in n_values:
                got = partial_kernel(t, KernelSpec(n, "partial", domain=label))
                expect = (-1.0) ** n * amplitude_A(t) * phase_factor(tf, n)
                worst = max(worst, abs(got - expect) / max(1.0, abs(expect)))
    return _result("conjugate_relation", worst, 1e-12,
                   f"{per_label} triples per conjugate label")


def check_kernel_rotation_invariance(seed=7, samples=2000,
                                     n_values=(1, 2, 3, 4, 5, 6)) -> PropertyResult:
    """Every kernel is invariant under proper rotations within 1e-12."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples // 4):
        t = random_triple(rng)
        if not _generic(t):
            continue
        R = random_proper_rotation(rng)
        tr = _rotate_triple(t, R)
        scale = max(1.0, amplitude_A(t))
        for n in n_values:
            k0 = global_kernel(t, n)
            worst = max(worst, abs(global_kernel(tr, n) - k0) / scale)
            u0 = generalized_kernel(t, n, "unit")
            worst = max(worst, abs(generalized_kernel(tr, n, "unit") - u0))
    return _result("kernel_rotation_invariance", worst, 1e-12,
                   f"samples={samples // 4}")


# ---------------------------------------------------------------------------
# quadrature and function space checks

def check_grid_exactness(grid: QuadratureGrid, max_l: int = None) -> PropertyResult:
    """Weights sum to 4 pi; harmonics up to the stated exact degree
    integrate to 0 (orthogonality to the constant)."""
    worst = abs(float(np.sum(grid.weights)) - 4.0 * math.pi)
    inv = grid.antipode_index
    ok_inv = bool(np.all(inv[inv] == np.arange(grid.node_count)))
    max_l = grid.l_exact if max_l is None else min(max_l, grid.l_exact)
    B = basis_matrix(grid, max_l)
    for l in range(1, max_l + 1):
        for m in range(-l, l + 1):
            worst = max(worst, abs(integrate(B[:, lm_index(l, m)], grid)))
    if not ok_inv:
        worst = max(worst, 1.0)
    return _result("grid_exactness", worst, 1e-12,
                   f"{grid.n_polar}x{grid.n_azimuth}, harmonics to l={max_l}")


def check_parity_decomposition(seed=8, L=4, grid=None,
                               n_values=(1, 2, 3, 4)) -> PropertyResult:
    """f = g+ + g- exactly; node values of g+ obey the n-even rule."""
    grid = grid or build_grid(8, 16)
    worst = 0.0
    for n in n_values:
        f = random_bandlimited(L, seed=seed + n)
        gp, gm = parity_decompose(f, n)
        worst = max(worst, float(np.max(np.abs(gp.coeffs + gm.coeffs
                                               - f.coeffs))))
        sgn = (-1.0) ** n
        vp = evaluate(gp, grid)
        worst = max(worst, float(np.max(np.abs(vp[grid.antipode_index]
                                               - sgn * vp))))
        worst = max(worst, abs(complex(np.vdot(gp.coeffs, gm.coeffs))))
    return _result("parity_decomposition", worst, 1e-12,
                   f"L={L}, n={list(n_values)}")


# ---------------------------------------------------------------------------
# product theorems

def _pair(seed, L, n, kind):
    if kind == "even":
        f = random_bandlimited(L, seed=seed, parity="n_even", n=n)
        g = random_bandlimited(L, seed=seed + 1, parity="n_even", n=n)
    elif kind == "odd":
        f = random_bandlimited(L, seed=seed, parity="n_odd", n=n)
        g = random_bandlimited(L, seed=seed + 1)
    else:
        f = random_bandlimited(L, seed=seed)
        g = random_bandlimited(L, seed=seed + 1)
    return f, g


def check_graded_commutativity(grid, L=4, n_values=(1, 2, 3, 4), seed=100,
                               workers=None, product=product_global,
                               name="graded_commutativity",
                               **product_kw) -> PropertyResult:
    """product(f,g) = (-1)^n product(g,f) node-wise within 1e-10."""
    worst = 0.0
    for n in n_values:
        f, g = _pair(seed + 10 * n, L, n, "any")
        a = product(f, g, n, grid=grid, workers=workers, **product_kw)
        b = product(g, f, n, grid=grid, workers=workers, **product_kw)
        sgn = (-1.0) ** n
        worst = max(worst, float(np.max(np.abs(a.values - sgn * b.values))))
    return _result(name, worst, 1e-10, f"L={L}, n={list(n_values)}")


def check_annihilation(grid, L=4, n_values=(1, 2, 3, 4), seed=200,
                       workers=None, product=product_global,
                       name="odd_annihilation", **product_kw) -> PropertyResult:
    """An n-odd factor in either slot kills the product: sup norm below
    1e-10 |f| |g| (the engine cancels it exactly)."""
    worst = 0.0
    for n in n_values:
        f, g = _pair(seed + 10 * n, L, n, "odd")
        scale = f.norm() * g.norm()
        a = product(f, g, n, grid=grid, workers=workers, **product_kw)
        b = product(g, f, n, grid=grid, workers=workers, **product_kw)
        worst = max(worst, a.norm_sup() / scale, b.norm_sup() / scale)
    return _result(name, worst, 1e-10, f"L={L}, n={list(n_values)}")


def check_output_parity(grid, L=4, n_values=(1, 2, 3, 4), seed=300,
                        workers=None, product=product_global,
                        name="output_parity", **product_kw) -> PropertyResult:
    """Products of arbitrary inputs land in the n-even subspace node-wise
    within 1e-12."""
    worst = 0.0
    ap = grid.antipode_index
    for n in n_values:
        f, g = _pair(seed + 10 * n, L, n, "any")
        a = product(f, g, n, grid=grid, workers=workers, **product_kw)
        sgn = (-1.0) ** n
        worst = max(worst, float(np.max(np.abs(a.values[ap] - sgn * a.values))))
    return _result(name, worst, 1e-12, f"L={L}, n={list(n_values)}")


def check_eight_way_table(grid, L=3, n_values=(2, 3), seed=400,
                          workers=None) -> PropertyResult:
    """For n-even inputs the eight partial products reduce to the 000
    one: labels 010/100/110 repeat it, 001/011/101/111 are its
    (-1)^n-weighted reflection, and their mean is the global product."""
    worst = 0.0
    for n in n_values:
        f, g = _pair(seed + 10 * n, L, n, "even")
        parts = product_partials_all(f, g, n, grid, workers=workers)
        v000 = parts["000"].values
        sgn = (-1.0) ** n
        refl = sgn * v000[grid.antipode_index]
        expect = {"000": v000, "010": v000, "100": v000, "110": v000,
                  "001": refl, "011": refl, "101": refl, "111": refl}
        for label, want in expect.items():
            worst = max(worst, float(np.max(np.abs(parts[label].values - want))))
        mean8 = sum(parts[l].values for l in parts) / 8.0
        glob = product_global(f, g, n, grid, workers=workers)
        worst = max(worst, float(np.max(np.abs(mean8 - glob.values))))
    return _result("eight_way_table", worst, 1e-10, f"L={L}, n={list(n_values)}")


def check_restricted_equals_global(grid, L=3, n_values=(2, 3), seed=500,
                                   workers=None) -> PropertyResult:
    """Restricted even-parity product coincides with the global product
    on n-even inputs within 1e-10, and lands in the n-even subspace."""
    worst = 0.0
    ap = grid.antipode_index
    for n in n_values:
        f, g = _pair(seed + 10 * n, L, n, "even")
        r = product_restricted_even(f, g, n, grid, workers=workers)
        glob = product_global(f, g, n, grid, workers=workers)
        worst = max(worst, float(np.max(np.abs(r.values - glob.values))))
        sgn = (-1.0) ** n
        worst = max(worst, float(np.max(np.abs(r.values[ap] - sgn * r.values))))
    return _result("restricted_equals_global", worst, 1e-10,
                   f"L={L}, n={list(n_values)}")


def check_reflection_identity(grid, L=3, n_values=(2, 3), seed=600,
                              workers=None) -> PropertyResult:
    """(g2 star g1)_000(m) = (g1 star g2)_000(-m) within 1e-10."""
    worst = 0.0
    ap = grid.antipode_index
    for n in n_values:
        f, g = _pair(seed + 10 * n, L, n, "even")
        a = product_partials_all(f, g, n, grid, workers=workers)["000"]
        b = product_partials_all(g, f, n, grid, workers=workers)["000"]
        worst = max(worst, float(np.max(np.abs(b.values - a.values[ap]))))
    return _result("reflection_identity", worst, 1e-10,
                   f"L={L}, n={list(n_values)}")


def check_generalized_robustness(grid, L=3, n_values=(1, 2, 3, 4), seed=700,
                                 workers=None) -> PropertyResult:
    """Graded commutativity and odd-annihilation also hold for the unit
    and polynomial replacement amplitudes; the Jacobian tag reproduces
    the global product bit for bit."""
    worst = 0.0
    for amp in ("unit", "poly"):
        comm = check_graded_commutativity(
            grid, L, n_values, seed, workers,
            product=product_generalized, amplitude=amp,
            name=f"generalized_comm_{amp}")
        kill = check_annihilation(
            grid, L, n_values, seed + 1, workers,
            product=product_generalized, amplitude=amp,
            name=f"generalized_kill_{amp}")
        worst = max(worst, comm.error, kill.error)
    f, g = _pair(seed, L, 2, "any")
    a = product_generalized(f, g, 2, "jacobian", grid, workers=workers)
    b = product_global(f, g, 2, grid, workers=workers)
    if not np.array_equal(a.values, b.values):
        worst = max(worst, 1.0)
    return _result("generalized_robustness", worst, 1e-10,
                   f"amplitudes unit/poly, L={L}, n={list(n_values)}")


def check_structure_rules(grid, L=2, n_values=(2, 3), workers=None) -> PropertyResult:
    """Structure tensor: wrong-parity entries vanish, graded symmetry in
    the first two index pairs, azimuthal selection m3 = m1 + m2."""
    worst = 0.0
    for n in n_values:
        st = structure_constants(n, L, grid, workers=workers)
        ncoef = (L + 1) * (L + 1)
        for j in range(ncoef):
            l = math.isqrt(j)
            if l % 2 != n % 2:
                worst = max(worst, float(np.max(np.abs(st.entries[j]))),
                            float(np.max(np.abs(st.entries[:, j]))),
                            float(np.max(np.abs(st.entries[:, :, j]))))
        sgn = (-1.0) ** n
        worst = max(worst, float(np.max(np.abs(
            st.entries - sgn * np.transpose(st.entries, (1, 0, 2))))))
        for j1 in range(ncoef):
            for j2 in range(ncoef):
                for j3 in range(ncoef):
                    l1 = math.isqrt(j1)
                    l2 = math.isqrt(j2)
                    l3 = math.isqrt(j3)
                    if ((j1 - l1 * l1 - l1) + (j2 - l2 * l2 - l2)
                            != (j3 - l3 * l3 - l3)):
                        worst = max(worst, abs(st.entries[j1, j2, j3]))
    return _result("structure_rules", worst, 1e-10,
                   f"L={L}, n={list(n_values)}")


def check_worker_reproducibility(grid=None, L=3, n=2, seed=900) -> PropertyResult:
    """The same product computed with one and with three workers must be
    bit-identical."""
    grid = grid or build_grid(8, 16)
    f, g = _pair(seed, L, n, "any")
    a = product_global(f, g, n, grid, workers=1)
    b = product_global(f, g, n, grid, workers=3)
    identical = np.array_equal(a.values, b.values)
    return PropertyResult(name="worker_reproducibility",
                          passed=bool(identical),
                          error=0.0 if identical else 1.0, tolerance=0.0,
                          detail=f"grid {grid.n_polar}x{grid.n_azimuth}")


def measure_unit_product(grid=None, n=2, workers=None) -> PropertyResult:
    """Measured value of (1 star 1) at this scale; recorded, not asserted
    (whether the constant is a unit is an open question)."""
    grid = grid or build_grid(12, 24)
    one = BandlimitedFunction.from_coeffs(0, [math.sqrt(4.0 * math.pi)])
    res = product_global(one, one, n, grid, workers=workers)
    val = complex(res.values[0])
    spread = float(np.max(np.abs(res.values - val)))
    return PropertyResult(
        name="unit_product_measured", passed=True, error=0.0, tolerance=0.0,
        detail=f"(1*1)(m) = {val.real:.12g}{val.imag:+.12g}j at n={n}, "
               f"constant to {spread:.3g}, grid "
               f"{grid.n_polar}x{grid.n_azimuth}")


def run_suite(grid: QuadratureGrid = None, L: int = 4,
              n_values: Sequence[int] = (1, 2, 3, 4), seed: int = 1234,
              samples: int = 10000, partition_samples: int = 100000,
              workers: Optional[int] = None,
              small_grid: QuadratureGrid = None) -> List[PropertyResult]:
    """Full property suite at the given scale, in a fixed order."""
    grid = grid or build_grid(16, 32)
    small = small_grid or build_grid(12, 24)
    s = seed
    results = [
        check_domain_partition(seed=s, samples=partition_samples),
        check_area_alternating_symmetry(seed=s + 1, samples=samples // 5),
        check_geometry_rotation_invariance(seed=s + 2, samples=samples // 5),
        check_kernel_symmetry(seed=s + 3, samples=samples),
        check_kernel_symmetry(seed=s + 4, samples=samples // 4,
                              kernel_fn=_partial000_kernel,
                              name="kernel_symmetry_partial000",
                              require="W000"),
        check_kernel_flip_covariance(seed=s + 5, samples=samples),
        check_phase_flip_validity(seed=s + 6, samples=samples),
        check_conjugate_relation(seed=s + 7, samples=samples),
        check_kernel_rotation_invariance(seed=s + 8, samples=samples // 5),
        check_grid_exactness(grid, max_l=min(grid.l_exact, 2 * L + 2)),
        check_parity_decomposition(seed=s + 9, L=L, n_values=n_values),
        check_graded_commutativity(grid, L, n_values, seed=s + 100,
                                   workers=workers),
        check_annihilation(grid, L, n_values, seed=s + 200, workers=workers),
        check_output_parity(grid, L, n_values, seed=s + 300, workers=workers),
        check_eight_way_table(small, L=min(L, 3), seed=s + 400,
                              workers=workers),
        check_restricted_equals_global(small, L=min(L, 3), seed=s + 500,
                                       workers=workers),
        check_reflection_identity(small, L=min(L, 3), seed=s + 600,
                                  workers=workers),
        check_generalized_robustness(small, L=min(L, 3),
                                     n_values=n_values, seed=s + 700,
                                     workers=workers),
        check_structure_rules(small, L=2, workers=workers),
        check_worker_reproducibility(L=min(L, 3), seed=s + 900),
        measure_unit_product(small, n=2, workers=workers),
    ]
    return results
