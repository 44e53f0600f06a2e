"""The midpoint (developing) map and dedal polygon construction.

A dedal n-gon of P is an n-gon Q whose vertex i, reflected in vertex i of
P, lands on vertex i+1 of Q; equivalently, P is the midpoint polygon of Q.
For odd n the dedal polygon exists and is unique.  For even n it exists iff
the alternating vertex sum of P vanishes, in which case the solutions form
a one-complex-parameter family spanned by the alternating segment
(1, -1, 1, -1, ...).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .polygon import Polygon
from .spectral import basis_vector, decompose, eigenvalue, reconstruct, SpectralCoefficients


class NoDedalError(ValueError):
    """No dedal polygon exists; carries the offending alternating sum."""

    def __init__(self, defect: complex, tol: float):
        self.defect = complex(defect)
        self.tol = float(tol)
        super().__init__(
            f"no dedal polygon: alternating vertex sum {self.defect} exceeds tolerance {self.tol}"
        )


@dataclass(frozen=True)
class DedalFamily:
    """All dedal polygons of an even n-gon: base_q0 + s * kernel, s complex.

    ``base_q0`` is the unique member orthogonal to the kernel segment.
    """

    base_q0: Polygon
    kernel: Polygon

    @property
    def n(self) -> int:
        return self.base_q0.n


def develop(q: Polygon) -> Polygon:
    """Midpoint polygon: vertex i is the midpoint of vertices i and i+1 of q."""
    v = q.as_array()
    return Polygon((v + np.roll(v, -1)) / 2)


def dedal_odd(p: Polygon) -> Polygon:
    """The unique dedal polygon for odd n, by alternating vertex sums."""
    n = p.n
    if n % 2 == 0:
        raise ValueError(f"n={n} is even; use dedal_even")
    v = p.as_array()
    w = np.zeros(n, dtype=complex)
    sign = 1.0
    for t in range(n):
        w += sign * np.roll(v, -t)
        sign = -sign
    return Polygon(w)


def existence_defect(p: Polygon) -> complex:
    """Alternating vertex sum; dedal polygons of an even n-gon exist iff
    this vanishes."""
    if p.n % 2 == 1:
        raise ValueError(f"n={p.n} is odd; odd n-gons always have a dedal polygon")
    total = 0j
    sign = 1.0
    for v in p.vertices:
        total += sign * v
        sign = -sign
    return total


def _existence_tol(p: Polygon, tol: Optional[float]) -> float:
    # Relative scaling keeps large polygons from being spuriously rejected.
    if tol is not None:
        return tol
    return 1e-9 * (1.0 + max(abs(v) for v in p.vertices))


def dedal_even(p: Polygon, tol: Optional[float] = None) -> DedalFamily:
    """Dedal family of an even n-gon, inverted in the eigenpolygon basis.

    Away from the kernel index the eigenvalues are uniformly bounded below,
    so the coefficientwise division is numerically benign; the kernel
    coefficient is zeroed explicitly, which pins down the base member.

    Raises NoDedalError when the alternating vertex sum is out of tolerance.
    """
    n = p.n
    if n % 2 == 1:
        raise ValueError(f"n={n} is odd; use dedal_odd")
    bound = _existence_tol(p, tol)
    defect = existence_defect(p)
    if abs(defect) > bound:
        raise NoDedalError(defect, bound)
    half = n // 2
    b = decompose(p).as_array()
    a = np.zeros(n, dtype=complex)
    for i in range(n):
        if i != half:
            a[i] = b[i] / eigenvalue(n, i)
    base = reconstruct(SpectralCoefficients(n, tuple(a)))
    return DedalFamily(base_q0=base, kernel=basis_vector(n, half))


def family_member(family: DedalFamily, s: complex) -> Polygon:
    """The dedal polygon base_q0 + s * kernel."""
    return Polygon(
        b + s * k for b, k in zip(family.base_q0.vertices, family.kernel.vertices)
    )


def dedal_through_vertex(family: DedalFamily, i: int, w: complex) -> Polygon:
    """The unique family member whose vertex i (0-based) equals w."""
    n = family.n
    if not 0 <= i < n:
        raise ValueError(f"vertex index {i} out of range 0..{n - 1}")
    # Kernel entry at index i is (-1)^i, its own inverse.
    s = (w - family.base_q0.vertices[i]) * (-1.0) ** i
    return family_member(family, s)


def dedal(p: Polygon, tol: Optional[float] = None) -> Polygon:
    """Dedal polygon of p: the unique one for odd n, the base member for even n."""
    if p.n % 2 == 1:
        return dedal_odd(p)
    return dedal_even(p, tol).base_q0
