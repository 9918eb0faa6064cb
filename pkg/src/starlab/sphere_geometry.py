"""Geometry of midpoint triangles on the unit sphere.

A geodesic triangle on S^2 can be specified either by its vertices (a, b, c)
or by the midpoints (p1, p2, p3) of its three sides.  This module provides
the midpoint-side classification of ordered triples, the signed symplectic
area of the associated triangle, the Jacobian amplitude of the vertex to
midpoint change of variables, and both directions of that change of
variables, together with an independent signed-area oracle computed from
vertices alone.

Conventions
-----------
Points are unit 3-vectors.  For a triple (p1, p2, p3) the cached scalar
products are d12 = <p1,p2>, d23 = <p2,p3>, d31 = <p3,p1> and det is the
determinant of the 3x3 matrix with rows p1, p2, p3.  A triple is classified
by the signs of its three scalar products:

* W000 : all three dots share a sign.  The triple consists of the midpoints
  of a triangle with all sides shorter than pi.
* W001 / W010 / W100 : exactly one dot deviates.  Index position k equal to
  1 means the side through midpoint k is long (> pi); the deviating dot is
  the one NOT involving midpoint k (half-side cosines cos(y_i)/cos(z_i)
  share a common ratio, so a long side flips exactly the opposite dot).
* boundary : some |dot| falls below eps_sign; the classification is
  degenerate there (measure-zero set).

eta is the shared sign for W000 and the majority sign otherwise; it is the
sign that enters the area formula S = 2 Arg(eta sqrt(1 - det^2) + i det).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "EPS_SIGN",
    "EPS_DET",
    "SpherePoint",
    "MidpointTriple",
    "TriangleVertices",
    "make_point",
    "antipode",
    "classify_triple",
    "classify_batch",
    "triangle_area_S",
    "amplitude_A",
    "midpoints_from_vertices",
    "vertices_from_midpoints",
    "signed_area_from_vertices",
    "standardize_conjugate",
    "flip_triple",
    "point_reflection",
    "rotation_matrix",
]

EPS_SIGN = 1e-12  # below this any |dot| counts as a sign boundary
EPS_DET = 1e-10   # below this 1 - det^2 counts as a singular Jacobian

_LABELS = ("W000", "W001", "W010", "W100")

# flips that carry each sign class to W000: flip the long-side midpoint
_STANDARD_FLIPS = {
    "W000": (0, 0, 0),
    "W001": (0, 0, 1),
    "W010": (0, 1, 0),
    "W100": (1, 0, 0),
}


@dataclass(frozen=True, eq=False)
class SpherePoint:
    """Unit vector on S^2."""

    vec: np.ndarray

    @property
    def x(self):
        return float(self.vec[0])

    @property
    def y(self):
        return float(self.vec[1])

    @property
    def z(self):
        return float(self.vec[2])

    def __repr__(self):
        return f"SpherePoint({self.x:+.6f}, {self.y:+.6f}, {self.z:+.6f})"


@dataclass(frozen=True, eq=False)
class MidpointTriple:
    """Ordered triple of sphere points with cached classification data.

    eta is +1 or -1 (0 encodes the boundary case), domain_label one of
    W000, W001, W010, W100 or "boundary".
    """

    p1: SpherePoint
    p2: SpherePoint
    p3: SpherePoint
    d12: float
    d23: float
    d31: float
    det: float
    eta: int
    domain_label: str

    @property
    def is_boundary(self):
        return self.domain_label == "boundary"

    def points(self):
        return (self.p1, self.p2, self.p3)


@dataclass(frozen=True, eq=False)
class TriangleVertices:
    """Vertices of a geodesic triangle."""

    a: SpherePoint
    b: SpherePoint
    c: SpherePoint

    def points(self):
        return (self.a, self.b, self.c)


def make_point(v) -> SpherePoint:
    """Normalize a raw 3-vector onto the sphere.

    Raises ValueError("degenerate point") for (near-)zero input.
    """
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise ValueError("degenerate point: expected a 3-vector")
    norm = math.sqrt(float(arr @ arr))
    if norm <= 1e-14:
        raise ValueError("degenerate point")
    return SpherePoint(arr / norm)


def antipode(p: SpherePoint) -> SpherePoint:
    """Antipodal point -p (exact componentwise negation)."""
    return SpherePoint(-p.vec)


def _classify_signs(s12, s23, s31):
    """Map three dot signs (each +-1) to (label, eta)."""
    total = s12 + s23 + s31
    if abs(total) == 3:
        return "W000", s12
    # exactly one sign deviates from the majority
    eta = 1 if total > 0 else -1
    if s12 != eta:
        return "W001", eta  # deviant dot does not involve p3
    if s31 != eta:
        return "W010", eta  # deviant dot does not involve p2
    return "W100", eta      # deviant dot does not involve p1


def classify_triple(p1: SpherePoint, p2: SpherePoint, p3: SpherePoint,
                    eps_sign: float = EPS_SIGN) -> MidpointTriple:
    """Classify an ordered triple of sphere points by dot-sign pattern.

    Parameters
    ----------
    p1, p2, p3 : SpherePoint
        The candidate midpoints.
    eps_sign : float
        Threshold below which a scalar product counts as zero, sending the
        triple to the "boundary" label.

    Returns
    -------
    MidpointTriple
        With dots, determinant, eta and domain label filled in.
    """
    v1, v2, v3 = p1.vec, p2.vec, p3.vec
    d12 = float(v1 @ v2)
    d23 = float(v2 @ v3)
    d31 = float(v3 @ v1)
    det = float(v1 @ np.cross(v2, v3))
    if min(abs(d12), abs(d23), abs(d31)) < eps_sign:
        return MidpointTriple(p1, p2, p3, d12, d23, d31, det, 0, "boundary")
    label, eta = _classify_signs(
        1 if d12 > 0 else -1,
        1 if d23 > 0 else -1,
        1 if d31 > 0 else -1,
    )
    return MidpointTriple(p1, p2, p3, d12, d23, d31, det, eta, label)


def classify_batch(P1, P2, P3, eps_sign: float = EPS_SIGN):
    """Vectorized sign-class ids for stacked triples.

    Parameters
    ----------
    P1, P2, P3 : (N, 3) arrays of unit vectors.

    Returns
    -------
    class_id : (N,) int array
        0..3 for W000, W001, W010, W100 and -1 for boundary.
    eta : (N,) int array
        Majority sign (0 on boundary).
    det : (N,) float array
    """
    P1 = np.asarray(P1, dtype=float)
    P2 = np.asarray(P2, dtype=float)
    P3 = np.asarray(P3, dtype=float)
    d12 = np.einsum("ij,ij->i", P1, P2)
    d23 = np.einsum("ij,ij->i", P2, P3)
    d31 = np.einsum("ij,ij->i", P3, P1)
    det = np.einsum("ij,ij->i", P1, np.cross(P2, P3))
    s12 = np.where(d12 > 0, 1, -1)
    s23 = np.where(d23 > 0, 1, -1)
    s31 = np.where(d31 > 0, 1, -1)
    total = s12 + s23 + s31
    eta = np.where(total > 0, 1, -1)
    class_id = np.zeros(len(d12), dtype=np.int64)
    deviant = np.abs(total) != 3
    class_id[deviant & (s12 != eta)] = 1
    class_id[deviant & (s31 != eta)] = 2
    class_id[deviant & (s23 != eta)] = 3
    boundary = np.minimum(np.minimum(np.abs(d12), np.abs(d23)), np.abs(d31)) < eps_sign
    class_id[boundary] = -1
    eta = np.where(boundary, 0, eta)
    return class_id, eta, det


def triangle_area_S(t: MidpointTriple) -> float:
    """Signed symplectic area of the geodesic triangle with midpoints t.

    S = 2 Arg(eta sqrt(1 - det^2) + i det) with the principal argument in
    (-pi, pi], so S lies in (-2pi, 2pi].  Valid for triples with at most one
    long side, i.e. any non-boundary sign class.

    Raises ValueError("sign-degenerate triple") on the boundary set.
    """
    if t.is_boundary:
        raise ValueError("sign-degenerate triple")
    s = math.sqrt(max(0.0, 1.0 - t.det * t.det))
    return 2.0 * math.atan2(t.det, t.eta * s)


def amplitude_A(t: MidpointTriple, eps_det: float = EPS_DET) -> float:
    """Jacobian amplitude of the vertex-to-midpoint change of variables.

    A = 16 |d12 d23 d31| (1 - det^2)^(-5/2).  Returns 0 for boundary triples
    (measure-zero convention).  Raises ValueError("singular Jacobian") when
    1 - det^2 < eps_det; the caller decides whether to skip the node.
    """
    if t.is_boundary:
        return 0.0
    s = 1.0 - t.det * t.det
    if s < eps_det:
        raise ValueError("singular Jacobian")
    return 16.0 * abs(t.d12 * t.d23 * t.d31) * s ** -2.5


def midpoints_from_vertices(v: TriangleVertices,
                            eps_sign: float = EPS_SIGN) -> MidpointTriple:
    """Short-geodesic side midpoints of a vertex triangle.

    p1 is the midpoint of side ab, p2 of bc, p3 of ca, each the normalized
    vertex sum.  Raises ValueError("midpoint not unique") if some vertex
    pair is antipodal.
    """
    mids = []
    for u, w in ((v.a, v.b), (v.b, v.c), (v.c, v.a)):
        s = u.vec + w.vec
        if math.sqrt(float(s @ s)) < 1e-12:
            raise ValueError("midpoint not unique")
        mids.append(make_point(s))
    return classify_triple(mids[0], mids[1], mids[2], eps_sign)


def point_reflection(p: SpherePoint) -> np.ndarray:
    """Matrix of the rotation by pi about the axis p (geodesic symmetry)."""
    u = p.vec
    return 2.0 * np.outer(u, u) - np.eye(3)


def rotation_matrix(axis, angle: float) -> np.ndarray:
    """Proper rotation by `angle` about `axis` (Rodrigues form)."""
    u = np.asarray(axis, dtype=float)
    u = u / math.sqrt(float(u @ u))
    K = np.array([
        [0.0, -u[2], u[1]],
        [u[2], 0.0, -u[0]],
        [-u[1], u[0], 0.0],
    ])
    return np.eye(3) + math.sin(angle) * K + (1.0 - math.cos(angle)) * (K @ K)


def vertices_from_midpoints(t: MidpointTriple,
                            eps_det: float = EPS_DET) -> TriangleVertices:
    """Recover the all-short-sided triangle whose side midpoints are t.

    The geodesic symmetry about the midpoint of a side swaps that side's
    endpoints, so the composite of the three point reflections about p1,
    p2, p3 (in that order) fixes vertex a.  The axis of the composite
    rotation is extracted as the eigenvector of eigenvalue 1 and the sign
    is chosen so the recovered short-geodesic midpoints match the inputs:
    a + R1 a is parallel to p1, with positive alignment exactly when side
    ab is short.

    Requires a W000 triple with |det| < 1 - eps_det.  Raises
    ValueError("degenerate triangle family") when the composite rotation
    degenerates to the identity (orthonormal midpoints).
    """
    if t.is_boundary:
        raise ValueError("sign-degenerate triple")
    if t.domain_label != "W000":
        raise ValueError("vertex recovery requires a W000 triple")
    if 1.0 - t.det * t.det < eps_det:
        raise ValueError("degenerate triangle family")
    R1 = point_reflection(t.p1)
    R2 = point_reflection(t.p2)
    R3 = point_reflection(t.p3)
    M = R3 @ R2 @ R1
    cos_angle = 0.5 * (np.trace(M) - 1.0)
    if cos_angle > 1.0 - 1e-12:
        raise ValueError("degenerate triangle family")
    w, V = np.linalg.eig(M)
    axis = np.real(V[:, int(np.argmin(np.abs(w - 1.0)))])
    axis = axis / math.sqrt(float(axis @ axis))
    align = float(t.p1.vec @ axis)
    if abs(align) < 1e-12:
        raise ValueError("degenerate triangle family")
    a = axis if align > 0 else -axis
    b = R1 @ a
    c = R2 @ b
    # closure and short-side sanity; fails only on numerically hostile input
    if float(t.p2.vec @ b) <= 0 or float(t.p3.vec @ c) <= 0 \
            or float((M @ a) @ a) < 1.0 - 1e-8:
        raise ValueError("vertex recovery failed")
    return TriangleVertices(SpherePoint(a), SpherePoint(b), SpherePoint(c))


def _interior_angle(u, v, w):
    """Angle at u between the geodesics toward v and w."""
    tv = v - (u @ v) * u
    tw = w - (u @ w) * u
    nv = math.sqrt(float(tv @ tv))
    nw = math.sqrt(float(tw @ tw))
    if nv < 1e-14 or nw < 1e-14:
        raise ValueError("degenerate triangle")
    cosang = float(tv @ tw) / (nv * nw)
    return math.acos(min(1.0, max(-1.0, cosang)))


def signed_area_from_vertices(v: TriangleVertices) -> float:
    """Oriented spherical excess (angle sum minus pi) of a vertex triangle.

    Sign follows the orientation det(a, b, c).  Independent of the
    midpoint-based area formula; used as its oracle.  Raises ValueError for
    degenerate (duplicate-vertex) input.
    """
    a, b, c = v.a.vec, v.b.vec, v.c.vec
    excess = (_interior_angle(a, b, c) + _interior_angle(b, c, a)
              + _interior_angle(c, a, b) - math.pi)
    det = float(a @ np.cross(b, c))
    return math.copysign(excess, det) if det != 0.0 else excess


def flip_triple(t: MidpointTriple, flips,
                eps_sign: float = EPS_SIGN) -> MidpointTriple:
    """Antipodally flip midpoints at positions where `flips` has a 1.

    Negating a point flips the signs of the dots touching it and of the
    determinant exactly, so the result is assembled from the cached values;
    bit-identical to reclassifying the negated points, at a fraction of
    the cost.
    """
    f1, f2, f3 = flips
    pts = [antipode(p) if f else p for p, f in zip(t.points(), flips)]
    d12 = -t.d12 if f1 != f2 else t.d12
    d23 = -t.d23 if f2 != f3 else t.d23
    d31 = -t.d31 if f3 != f1 else t.d31
    det = -t.det if (f1 + f2 + f3) % 2 else t.det
    if min(abs(d12), abs(d23), abs(d31)) < eps_sign:
        return MidpointTriple(pts[0], pts[1], pts[2], d12, d23, d31, det,
                              0, "boundary")
    label, eta = _classify_signs(1 if d12 > 0 else -1,
                                 1 if d23 > 0 else -1,
                                 1 if d31 > 0 else -1)
    return MidpointTriple(pts[0], pts[1], pts[2], d12, d23, d31, det,
                          eta, label)


def standardize_conjugate(t: MidpointTriple,
                          eps_sign: float = EPS_SIGN):
    """Carry a triple to the W000 representative of its conjugate family.

    Returns (standardized triple, flip pattern).  The flip pattern has at
    most a single 1, at the index of the midpoint on the long side; it names
    the sign class the triple belongs to when read as the midpoints of a
    triangle with at most one long side.  The all-long-sided conjugate
    classes share the same sign patterns and are reached downstream through
    the conjugate phase relation, never by flipping here.
    """
    if t.is_boundary:
        raise ValueError("sign-degenerate triple")
    flips = _STANDARD_FLIPS[t.domain_label]
    if flips == (0, 0, 0):
        return t, flips
    std = flip_triple(t, flips, eps_sign)
    return std, flips
