"""Integral kernels for the skewed product on the sphere.

The phase of every kernel is built from the signed triangle area S of a
midpoint triple and the amplitude from the Jacobian factor A (or a
pluggable replacement).  Even-n and odd-n kernels reduce to Chebyshev
polynomials in det (cos(kS) = T_k(1 - 2 det^2), sin((k-1/2)S) =
(-1)^(k-1) T_{2k-1}(det)), which makes them insensitive to the branch of
S and exactly even/odd in det at the floating-point bit level.  That
bitwise parity is what the product engine's cancellation guarantees rest
on, so the polynomial forms here are the single source of truth for both
scalar and array evaluation.

Domain labels for partial kernels are three-bit strings "000" .. "111".
The four labels with at most one set bit name the sign classes directly;
each remaining label shares its point set with the complementary class
and uses the conjugated phase times (-1)^n.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from .sphere_geometry import (
    EPS_DET,
    EPS_SIGN,
    MidpointTriple,
    amplitude_A,
    triangle_area_S,
)

__all__ = [
    "KernelSpec",
    "KernelValue",
    "AMPLITUDES",
    "PARTIAL_LABELS",
    "DIRECT_LABELS",
    "CONJUGATE_LABELS",
    "complement_label",
    "resolve_amplitude",
    "chebyshev_t",
    "even_phase_poly",
    "odd_phase_poly",
    "phase_factor",
    "partial_kernel",
    "global_kernel",
    "generalized_kernel",
    "restricted_even_kernel",
]

KernelValue = complex

PARTIAL_LABELS = ("000", "001", "010", "100", "011", "101", "110", "111")
DIRECT_LABELS = ("000", "001", "010", "100")
CONJUGATE_LABELS = ("111", "110", "101", "011")

VARIANTS = ("global", "partial", "restricted_even", "generalized")


def complement_label(label: str) -> str:
    """Bitwise complement of a three-bit domain label."""
    return "".join("1" if ch == "0" else "0" for ch in label)


def _amp_jacobian(n, ad12, ad23, ad31, det2):
    # (1/4) * A with A = 16 |d12 d23 d31| (1 - det^2)^(-5/2); the
    # inv^2 sqrt(inv) form avoids the much slower generic power on arrays
    inv = 1.0 / (1.0 - det2)
    return 4.0 * ad12 * ad23 * ad31 * (inv * inv * np.sqrt(inv))


def _amp_unit(n, ad12, ad23, ad31, det2):
    return det2 * 0.0 + 1.0


def _amp_poly(n, ad12, ad23, ad31, det2):
    # quarter-Jacobian amplitude with a polynomial-in-1/n correction
    return (1.0 + 1.0 / n) * _amp_jacobian(n, ad12, ad23, ad31, det2)


# Registry of named amplitude plug-ins.  Each receives
# (n, |d12|, |d23|, |d31|, det^2) and must be nonnegative, symmetric in
# the three dots, and rotation-invariant (all arguments already are).
AMPLITUDES = {
    "jacobian": _amp_jacobian,
    "unit": _amp_unit,
    "poly": _amp_poly,
}

AmplitudeLike = Union[str, Callable]


def resolve_amplitude(amplitude: AmplitudeLike) -> Callable:
    if callable(amplitude):
        return amplitude
    try:
        return AMPLITUDES[amplitude]
    except KeyError:
        raise ValueError(f"unknown amplitude tag {amplitude!r}") from None


@dataclass(frozen=True)
class KernelSpec:
    """Which kernel to evaluate: parity integer n, variant, amplitude.

    domain is required for (and only for) the partial variant.  The
    amplitude tag only matters for the generalized variant; global,
    partial and restricted_even always use the Jacobian amplitude.
    """

    n: int
    variant: str = "global"
    domain: Optional[str] = None
    amplitude: AmplitudeLike = "jacobian"
    eps_sign: float = EPS_SIGN
    eps_det: float = EPS_DET

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError("n must be a positive integer")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.variant == "partial":
            if self.domain not in PARTIAL_LABELS:
                raise ValueError("partial variant requires a domain label 000..111")
        elif self.domain is not None:
            raise ValueError("domain label only applies to the partial variant")
        if self.eps_sign <= 0 or self.eps_det <= 0:
            raise ValueError("tolerances must be positive")
        resolve_amplitude(self.amplitude)

    @property
    def is_even(self) -> bool:
        return self.n % 2 == 0

    @property
    def k(self) -> int:
        """Half-integer index: n = 2k for even n, n = 2k - 1 for odd n."""
        return self.n // 2 if self.n % 2 == 0 else (self.n + 1) // 2

    def describe(self) -> str:
        if self.variant == "partial":
            return f"partial-{self.domain} (n={self.n})"
        if self.variant == "generalized":
            tag = self.amplitude if isinstance(self.amplitude, str) else "custom"
            return f"generalized[{tag}] (n={self.n})"
        return f"{self.variant} (n={self.n})"


def chebyshev_t(k: int, x):
    """T_k(x) by the three-term recurrence; works on scalars and arrays."""
    if k == 0:
        return x * 0.0 + 1.0
    t_prev = x * 0.0 + 1.0
    t = x
    for _ in range(k - 1):
        t_prev, t = t, 2.0 * x * t - t_prev
    return t


def even_phase_poly(k: int, det2):
    """cos(kS) as a polynomial in det^2: T_k(1 - 2 det^2)."""
    return chebyshev_t(k, 1.0 - 2.0 * det2)


def odd_phase_poly(k: int, det):
    """sin((k - 1/2)S) as a polynomial in det: (-1)^(k-1) T_{2k-1}(det).

    Odd-degree Chebyshev polynomials contain only odd powers, so the
    result is an exactly odd function of det, bit for bit.
    """
    val = chebyshev_t(2 * k - 1, det)
    return val if (k - 1) % 2 == 0 else -val

def phase_factor(t: MidpointTriple, n: int) -> complex:
    """exp(i n S / 2) for a non-boundary triple; 0 on the boundary set."""
    if t.is_boundary:
        return 0j
    return cmath.exp(0.5j * n * triangle_area_S(t))


def _checked_amplitude(t: MidpointTriple, eps_det: float):
    """A(t), or None when the triple is boundary/singular and must skip."""
    if t.is_boundary:
        return None
    if 1.0 - t.det * t.det < eps_det:
        return None
    return amplitude_A(t, eps_det)


def partial_kernel(t: MidpointTriple, spec: KernelSpec) -> KernelValue:
    """A e^{inS/2} on the four direct classes; conjugate-partner form on
    the other four.

    The triple must lie in the sign class that carries the requested
    domain: the label itself for 000/001/010/100, the complementary
    label for 111/110/101/011 (those share the same point set).
    """
    if spec.variant != "partial":
        raise ValueError("spec variant is not partial")
    if t.is_boundary:
        return 0j
    want = spec.domain
    direct = want in DIRECT_LABELS
    carrier = want if direct else complement_label(want)
    if t.domain_label != "W" + carrier:
        raise ValueError(
            f"class mismatch: triple lies in {t.domain_label}, "
            f"domain {want} requires W{carrier}"
        )
    amp = _checked_amplitude(t, spec.eps_det)
    if amp is None:
        return 0j
    phase = cmath.exp(0.5j * spec.n * triangle_area_S(t))
    if direct:
        return amp * phase
    sign = 1.0 if spec.n % 2 == 0 else -1.0
    return sign * amp * phase.conjugate()


def generalized_kernel(t: MidpointTriple, n: int,
                       amplitude: AmplitudeLike = "jacobian",
                       eps_det: float = EPS_DET) -> KernelValue:
    """Even n = 2k: Atilde cos(kS); odd n = 2k-1: i Atilde sin((k-1/2)S).

    Boundary and near-singular triples contribute 0 (callers count the
    skips).  The skip rule is amplitude-independent so that runs with
    different amplitudes integrate over identical node sets.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if t.is_boundary:
        return 0j
    det2 = t.det * t.det
    if 1.0 - det2 < eps_det:
        return 0j
    amp_fn = resolve_amplitude(amplitude)
    amp = amp_fn(n, abs(t.d12), abs(t.d23), abs(t.d31), det2)
    if n % 2 == 0:
        return complex(amp * even_phase_poly(n // 2, det2))
    return 1j * (amp * odd_phase_poly((n + 1) // 2, t.det))


def global_kernel(t: MidpointTriple, n: int, eps_det: float = EPS_DET) -> KernelValue:
    """(1/4) A cos(kS) for n = 2k, (i/4) A sin((k-1/2)S) for n = 2k-1."""
    return generalized_kernel(t, n, "jacobian", eps_det)


def restricted_even_kernel(t: MidpointTriple, n: int,
                           eps_det: float = EPS_DET) -> KernelValue:
    """Full-amplitude trig kernel used on the 000 class only.

    A cos(kS) (even n) or i A sin((k-1/2)S) (odd n): four times the
    global kernel, restricted by the caller to triples in W000.
    """
    return 4.0 * generalized_kernel(t, n, "jacobian", eps_det)
