"""Band-limited functions on the sphere in an orthonormal harmonic basis.

Coefficients are indexed by (l, m) with 0 <= l <= L, |m| <= l, packed flat
at index l^2 + l + m.  The basis is orthonormal with respect to the area
measure (integral of |Y_lm|^2 over the sphere equals 1, so Y_00 is the
constant 1/sqrt(4 pi)).  Under the antipodal map Y_lm picks up (-1)^l,
which splits functions into even-l and odd-l subspaces; relative to a
parity integer n the n-even subspace is spanned by degrees l == n (mod 2)
and the n-odd subspace by the rest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import sph_harm_y

from .quadrature import QuadratureGrid, integrate

__all__ = [
    "BandlimitedFunction",
    "lm_index",
    "coeff_count",
    "ylm_on_nodes",
    "basis_matrix",
    "evaluate",
    "project",
    "parity_decompose",
    "random_bandlimited",
    "coeffs_to_csv",
    "coeffs_from_csv",
]


def lm_index(l, m):
    """Flat index of (l, m) in the packed coefficient array."""
    return l * l + l + m


def coeff_count(L):
    return (L + 1) * (L + 1)


def _parity_of_coeffs(coeffs, L):
    """Intrinsic l-parity of the support: "even-l", "odd-l" or "mixed"."""
    has = [False, False]
    for l in range(L + 1):
        block = coeffs[l * l:(l + 1) * (l + 1)]
        if np.any(block != 0):
            has[l % 2] = True
    if has[0] and has[1]:
        return "mixed"
    if has[1]:
        return "odd-l"
    return "even-l"


@dataclass(frozen=True, eq=False)
class BandlimitedFunction:
    """Finite harmonic expansion with cached parity metadata.

    parity_tag is intrinsic ("even-l", "odd-l", "mixed"); whether the
    function is n-even or n-odd depends on n and is answered by
    is_n_even / is_n_odd.
    """

    L: int
    coeffs: np.ndarray  # complex, length (L+1)^2
    parity_tag: str

    @classmethod
    def from_coeffs(cls, L, coeffs):
        arr = np.asarray(coeffs, dtype=complex)
        if arr.shape != (coeff_count(L),):
            raise ValueError("coefficient array has wrong length for bandlimit")
        arr = arr.copy()
        arr.setflags(write=False)
        return cls(L=L, coeffs=arr, parity_tag=_parity_of_coeffs(arr, L))

    @classmethod
    def basis(cls, L, l, m):
        """The single harmonic Y_lm as a band-limited function."""
        c = np.zeros(coeff_count(L), dtype=complex)
        c[lm_index(l, m)] = 1.0
        return cls.from_coeffs(L, c)

    def coeff(self, l, m):
        return complex(self.coeffs[lm_index(l, m)])

    def is_n_even(self, n):
        """Support only on degrees l == n (mod 2)."""
        want = "even-l" if n % 2 == 0 else "odd-l"
        return self.parity_tag == want

    def is_n_odd(self, n):
        want = "odd-l" if n % 2 == 0 else "even-l"
        return self.parity_tag == want

    def parity_sign(self):
        """(-1)^l common to the support, or None for mixed parity."""
        if self.parity_tag == "even-l":
            return 1
        if self.parity_tag == "odd-l":
            return -1
        return None

    def norm(self):
        return float(np.linalg.norm(self.coeffs))


def ylm_on_nodes(l, m, theta, phi):
    """Orthonormal spherical harmonic on arrays of angles."""
    return sph_harm_y(l, m, theta, phi)


_BASIS_CACHE = {}


def basis_matrix(grid: QuadratureGrid, L: int) -> np.ndarray:
    """Matrix B[node, lm] of harmonics on grid nodes, antipodally exact.

    Values are synthesized on canonical nodes and mirrored to their
    antipodes with the sign (-1)^l, so node-level parity of the basis is
    exact by construction.
    """
    key = (grid.key(), L)
    cached = _BASIS_CACHE.get(key)
    if cached is not None:
        return cached
    c = grid.canonical
    a = grid.antipode_index[c]
    B = np.empty((grid.node_count, coeff_count(L)), dtype=complex)
    th = grid.theta[c]
    ph = grid.phi[c]
    for l in range(L + 1):
        sign = 1.0 if l % 2 == 0 else -1.0
        for m in range(-l, l + 1):
            col = ylm_on_nodes(l, m, th, ph)
            B[c, lm_index(l, m)] = col
            B[a, lm_index(l, m)] = sign * col
    B.setflags(write=False)
    _BASIS_CACHE[key] = B
    return B


def evaluate(f: BandlimitedFunction, grid: QuadratureGrid) -> np.ndarray:
    """Synthesize node values.

    For sharp-parity functions the antipodal half is filled from the
    canonical half by the parity sign, making f(-node) = +-f(node) exact
    at the bit level; mixed functions are synthesized directly.
    """
    B = basis_matrix(grid, f.L)
    sign = f.parity_sign()
    if sign is None:
        return B @ f.coeffs
    c = grid.canonical
    a = grid.antipode_index[c]
    vals_c = B[c] @ f.coeffs
    out = np.empty(grid.node_count, dtype=complex)
    out[c] = vals_c
    out[a] = sign * vals_c
    return out


def project(values, grid: QuadratureGrid, L: int) -> BandlimitedFunction:
    """Analysis against the harmonic basis via grid quadrature.

    Requires grid.l_exact >= 2L so that products of basis functions up to
    degree L are integrated exactly.
    """
    if grid.l_exact < 2 * L:
        raise ValueError("grid exactness insufficient for bandlimit")
    v = np.asarray(values, dtype=complex)
    B = basis_matrix(grid, L)
    coeffs = np.empty(coeff_count(L), dtype=complex)
    for j in range(coeff_count(L)):
        coeffs[j] = integrate(np.conj(B[:, j]) * v, grid)
    return BandlimitedFunction.from_coeffs(L, coeffs)


def parity_decompose(f: BandlimitedFunction, n: int):
    """Split into the n-even part (l == n mod 2) and the n-odd rest.

    The two parts sum to f exactly (coefficient arrays are partitioned).
    """
    keep = np.zeros(coeff_count(f.L), dtype=bool)
    for l in range(n % 2, f.L + 1, 2):
        keep[l * l:(l + 1) * (l + 1)] = True
    g_plus = np.where(keep, f.coeffs, 0.0)
    g_minus = np.where(keep, 0.0, f.coeffs)
    return (BandlimitedFunction.from_coeffs(f.L, g_plus),
            BandlimitedFunction.from_coeffs(f.L, g_minus))


def random_bandlimited(L, seed, parity=None, n=None, real=False):
    """Seeded random coefficients with unit norm.

    parity: None for unrestricted, "n_even" / "n_odd" (with n given) to
    keep only the matching degrees.  With real=True the coefficients obey
    c(l,-m) = (-1)^m conj(c(l,m)), so node values are real.
    """
    rng = np.random.default_rng(seed)
    coeffs = rng.standard_normal(coeff_count(L)) + 1j * rng.standard_normal(coeff_count(L))
    if real:
        for l in range(L + 1):
            coeffs[lm_index(l, 0)] = coeffs[lm_index(l, 0)].real
            for m in range(1, l + 1):
                coeffs[lm_index(l, -m)] = (-1) ** m * np.conj(coeffs[lm_index(l, m)])
    if parity is not None:
        if n is None:
            raise ValueError("parity filter requires n")
        keep_rem = n % 2 if parity == "n_even" else (n + 1) % 2
        for l in range(L + 1):
            if l % 2 != keep_rem:
                coeffs[l * l:(l + 1) * (l + 1)] = 0.0
    norm = np.linalg.norm(coeffs)
    if norm == 0:
        raise ValueError("parity filter removed every coefficient")
    return BandlimitedFunction.from_coeffs(L, coeffs / norm)


def coeffs_to_csv(f: BandlimitedFunction, path):
    """Write coefficients as CSV rows l, m, re, im."""
    with open(path, "w") as fh:
        fh.write("l,m,re,im\n")
        for l in range(f.L + 1):
            for m in range(-l, l + 1):
                c = f.coeff(l, m)
                fh.write("%d,%d,%s,%s\n" % (l, m, format(c.real, ".17g"),
                                            format(c.imag, ".17g")))


def coeffs_from_csv(path) -> BandlimitedFunction:
    """Read a coefficient CSV written by coeffs_to_csv."""
    entries = {}
    with open(path) as fh:
        header = fh.readline().strip().replace(" ", "")
        if header != "l,m,re,im":
            raise ValueError("coefficient file must start with header l,m,re,im")
        for line_no, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 4:
                raise ValueError(f"malformed coefficient row at line {line_no}")
            try:
                l = int(parts[0])
                m = int(parts[1])
                entries[(l, m)] = float(parts[2]) + 1j * float(parts[3])
            except ValueError as exc:
                raise ValueError(f"malformed coefficient row at line {line_no}") from exc
    if not entries:
        raise ValueError("coefficient file has no rows")
    L = max(l for l, _ in entries)
    coeffs = np.zeros(coeff_count(L), dtype=complex)
    for (l, m), val in entries.items():
        if abs(m) > l:
            raise ValueError("coefficient row with |m| > l")
        coeffs[lm_index(l, m)] = val
    return BandlimitedFunction.from_coeffs(L, coeffs)
