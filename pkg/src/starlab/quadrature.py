"""Antipodally symmetric quadrature grids on the sphere.

Product grids: Gauss-Legendre nodes in cos(theta) times a uniform azimuth
circle.  The polar nodes and weights are symmetrized bitwise about the
equator and the azimuthal cosine/sine tables for the second half circle are
stored as exact negations of the first half, so the antipode of every node
is again a node with an identical weight and exactly negated coordinates.
That exactness is what turns the parity cancellation theorems into exact
node-level identities in the discrete setting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss

__all__ = ["QuadratureGrid", "build_grid", "integrate", "grid_to_csv"]


@dataclass(frozen=True, eq=False)
class QuadratureGrid:
    """Immutable node set with weights and an exact antipode index map.

    nodes[antipode_index[i]] == -nodes[i] exactly;
    weights[antipode_index[i]] == weights[i] exactly;
    canonical holds the node indices i with i < antipode_index[i] (one
    representative per antipodal pair).
    """

    n_polar: int
    n_azimuth: int
    nodes: np.ndarray            # (N, 3)
    theta: np.ndarray            # (N,)
    phi: np.ndarray              # (N,)
    weights: np.ndarray          # (N,)
    antipode_index: np.ndarray   # (N,) int
    l_exact: int
    canonical: np.ndarray = field(default=None)  # (N/2,) int

    @property
    def node_count(self):
        return self.nodes.shape[0]

    @property
    def antipodal_of_canonical(self):
        return self.antipode_index[self.canonical]

    def key(self):
        return (self.n_polar, self.n_azimuth)


def build_grid(n_polar: int, n_azimuth: int) -> QuadratureGrid:
    """Build a Gauss-Legendre x uniform-azimuth product grid.

    Parameters
    ----------
    n_polar : int
        Number of Gauss-Legendre nodes in cos(theta); >= 1.
    n_azimuth : int
        Number of uniform azimuth nodes; must be even so that the antipode
        of every node is a node.

    Returns
    -------
    QuadratureGrid
        With weights summing to 4 pi and exactness degree
        l_exact = min(2 n_polar - 1, n_azimuth - 1).
    """
    if n_polar < 1:
        raise ValueError("n_polar must be >= 1")
    if n_azimuth < 2 or n_azimuth % 2 != 0:
        raise ValueError("grid not antipodally symmetric: n_azimuth must be even")

    x, w = leggauss(n_polar)
    # bitwise symmetrization about the equator
    for i in range(n_polar // 2):
        x[n_polar - 1 - i] = -x[i]
        w[n_polar - 1 - i] = w[i]
    if n_polar % 2 == 1:
        x[n_polar // 2] = 0.0
    sin_t = np.sqrt(1.0 - x * x)
    for i in range(n_polar // 2):
        sin_t[n_polar - 1 - i] = sin_t[i]

    half = n_azimuth // 2
    phi_1d = 2.0 * math.pi * np.arange(n_azimuth) / n_azimuth
    cos_p = np.cos(phi_1d)
    sin_p = np.sin(phi_1d)
    cos_p[half:] = -cos_p[:half]
    sin_p[half:] = -sin_p[:half]

    n_nodes = n_polar * n_azimuth
    nodes = np.empty((n_nodes, 3))
    theta = np.empty(n_nodes)
    phi = np.empty(n_nodes)
    weights = np.empty(n_nodes)
    antipode = np.empty(n_nodes, dtype=np.int64)
    w_az = 2.0 * math.pi / n_azimuth
    for i in range(n_polar):
        base = i * n_azimuth
        sl = slice(base, base + n_azimuth)
        nodes[sl, 0] = sin_t[i] * cos_p
        nodes[sl, 1] = sin_t[i] * sin_p
        nodes[sl, 2] = x[i]
        theta[sl] = math.acos(min(1.0, max(-1.0, x[i])))
        phi[sl] = phi_1d
        weights[sl] = w[i] * w_az
        i_op = n_polar - 1 - i
        j = np.arange(n_azimuth)
        antipode[sl] = i_op * n_azimuth + (j + half) % n_azimuth

    idx = np.arange(n_nodes)
    canonical = idx[idx < antipode[idx]]
    grid = QuadratureGrid(
        n_polar=n_polar,
        n_azimuth=n_azimuth,
        nodes=nodes,
        theta=theta,
        phi=phi,
        weights=weights,
        antipode_index=antipode,
        l_exact=min(2 * n_polar - 1, n_azimuth - 1),
        canonical=canonical,
    )
    for arr in (nodes, theta, phi, weights, antipode, canonical):
        arr.setflags(write=False)
    return grid


def _neumaier(terms):
    """Compensated sum of a real 1-D array in index order."""
    s = 0.0
    comp = 0.0
    for v in terms:
        t = s + v
        if abs(s) >= abs(v):
            comp += (s - t) + v
        else:
            comp += (v - t) + s
        s = t
    return s + comp


def integrate(values, grid: QuadratureGrid):
    """Quadrature sum of node values with a deterministic reduction.

    Antipodal pairs are folded first (so odd integrands cancel exactly on
    the symmetric grid), then the per-pair terms are accumulated with a
    Neumaier compensated sum in canonical node order.  The result is a
    fixed-order sum, bit-identical for a given grid no matter how callers
    parallelize around it.
    """
    v = np.asarray(values)
    if v.shape != (grid.node_count,):
        raise ValueError("values length does not match node count")
    c = grid.canonical
    a = grid.antipode_index[c]
    wv = v * grid.weights
    folded = wv[c] + wv[a]
    if np.iscomplexobj(folded):
        return complex(_neumaier(folded.real), _neumaier(folded.imag))
    return _neumaier(folded)


def grid_to_csv(grid: QuadratureGrid, path):
    """Write nodes as CSV columns theta, phi, weight, antipode_index."""
    with open(path, "w") as fh:
        fh.write("theta,phi,weight,antipode_index\n")
        for k in range(grid.node_count):
            fh.write("%s,%s,%s,%d\n" % (
                format(grid.theta[k], ".17g"),
                format(grid.phi[k], ".17g"),
                format(grid.weights[k], ".17g"),
                grid.antipode_index[k],
            ))
