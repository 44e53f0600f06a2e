"""Oriented polygons with complex vertices, geometric predicates, and the
two similarity relations (scalar similarity and similarity up to cyclic
relabeling / orientation reversal).

A polygon here is a marked, oriented vertex tuple.  Self-intersecting
(star shaped) and geometrically degenerate polygons are first-class values;
no operation normalizes or reorders vertices behind the caller's back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

DEFAULT_TOL = 1e-9

_SAME = "same"
_REVERSED = "reversed"


@dataclass(frozen=True)
class Polygon:
    """Immutable oriented n-gon (n >= 3) with vertices in the complex plane."""

    vertices: tuple[complex, ...]

    def __init__(self, vertices: Iterable[complex]):
        verts = tuple(complex(v) for v in vertices)
        if len(verts) < 3:
            raise ValueError(f"polygon needs at least 3 vertices, got {len(verts)}")
        object.__setattr__(self, "vertices", verts)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, i: int) -> complex:
        return self.vertices[i]

    def as_array(self) -> np.ndarray:
        return np.array(self.vertices, dtype=complex)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "vertices": [[v.real, v.imag] for v in self.vertices],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Polygon":
        verts = [complex(re, im) for re, im in data["vertices"]]
        if "n" in data and data["n"] != len(verts):
            raise ValueError(
                f"vertex count {len(verts)} does not match declared n={data['n']}"
            )
        return cls(verts)


@dataclass(frozen=True)
class DegeneracyReport:
    """Per-vertex degeneracy flags; an all-empty report means nondegenerate.

    Indices are 0-based.  Side i joins vertex i to vertex i+1 (mod n).
    Angle flags are only computed at vertices whose two adjacent sides both
    have positive length; ``two_pi_angles`` collects vertices where the
    adjacent sides fold back on each other (interior angle 0 or 2*pi).
    ``coincident_consecutive`` lists vertex indices whose successor
    coincides with them, which is the vertex-level view of a zero side.
    """

    zero_sides: tuple[int, ...] = ()
    pi_angles: tuple[int, ...] = ()
    two_pi_angles: tuple[int, ...] = ()
    coincident_consecutive: tuple[int, ...] = ()

    @property
    def is_degenerate(self) -> bool:
        return bool(self.zero_sides or self.pi_angles or self.two_pi_angles)


@dataclass(frozen=True)
class SimilarityWitness:
    """Witness that P equals ``scale`` times a relabeling of Q.

    ``shift_k`` follows the 1-based shift convention: k=1 is the identity
    relabeling.  Applying the witness to Q reproduces P.
    """

    shift_k: int
    orientation: str  # "same" or "reversed"
    scale: complex

    def apply(self, q: Polygon) -> Polygon:
        shifted = (
            cyclic_shift(q, self.shift_k)
            if self.orientation == _SAME
            else reversed_shift(q, self.shift_k)
        )
        return Polygon(self.scale * v for v in shifted.vertices)


def centroid(p: Polygon) -> complex:
    """Arithmetic mean of the vertices."""
    return sum(p.vertices) / p.n


def center(p: Polygon) -> Polygon:
    """Translate so the centroid sits at the origin.  Idempotent."""
    c = centroid(p)
    return Polygon(v - c for v in p.vertices)


def cyclic_shift(p: Polygon, k: int) -> Polygon:
    """Relabel starting from vertex k (1-based); k=1 returns p unchanged."""
    n = p.n
    if not 1 <= k <= n:
        raise ValueError(f"shift index k={k} out of range 1..{n}")
    r = k - 1
    return Polygon(p.vertices[(r + t) % n] for t in range(n))


def reversed_shift(p: Polygon, k: int) -> Polygon:
    """Relabel starting from vertex k (1-based) and walking backwards."""
    n = p.n
    if not 1 <= k <= n:
        raise ValueError(f"shift index k={k} out of range 1..{n}")
    r = k - 1
    return Polygon(p.vertices[(r - t) % n] for t in range(n))


def vertex_distance(p: Polygon, q: Polygon) -> float:
    """Max componentwise vertex distance between two equally sized polygons."""
    if p.n != q.n:
        raise ValueError(f"size mismatch: {p.n} vs {q.n}")
    return max(abs(a - b) for a, b in zip(p.vertices, q.vertices))


def diameter(p: Polygon) -> float:
    """Largest pairwise vertex distance."""
    v = p.as_array()
    return float(np.abs(v[:, None] - v[None, :]).max())


def _cross(a: complex, b: complex) -> float:
    return (a.conjugate() * b).imag


def degeneracy(p: Polygon, tol: float = DEFAULT_TOL) -> DegeneracyReport:
    """Flag zero-length sides and straight / folded-back vertex angles.

    ``tol`` bounds side lengths (absolute) and turning angles (radians).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = p.n
    v = p.vertices
    zero_sides = tuple(i for i in range(n) if abs(v[(i + 1) % n] - v[i]) <= tol)
    zero = set(zero_sides)
    pi_angles = []
    two_pi_angles = []
    for i in range(n):
        # Angles are undefined if either adjacent side vanishes.
        if (i - 1) % n in zero or i in zero:
            continue
        incoming = v[i] - v[(i - 1) % n]
        outgoing = v[(i + 1) % n] - v[i]
        turn = math.atan2(_cross(incoming, outgoing), (incoming.conjugate() * outgoing).real)
        if abs(turn) <= tol:
            pi_angles.append(i)
        elif math.pi - abs(turn) <= tol:
            two_pi_angles.append(i)
    return DegeneracyReport(
        zero_sides=zero_sides,
        pi_angles=tuple(pi_angles),
        two_pi_angles=tuple(two_pi_angles),
        coincident_consecutive=zero_sides,
    )


def _point_segment_distance(z: complex, a: complex, b: complex) -> float:
    ab = b - a
    denom = (ab.conjugate() * ab).real
    if denom == 0.0:
        return abs(z - a)
    t = ((z - a).conjugate() * ab).real / denom
    t = min(1.0, max(0.0, t))
    return abs(z - (a + t * ab))


def _segments_properly_cross(a: complex, b: complex, c: complex, d: complex) -> bool:
    d1 = _cross(b - a, c - a)
    d2 = _cross(b - a, d - a)
    d3 = _cross(d - c, a - c)
    d4 = _cross(d - c, b - c)
    return ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) and d1 != d2 and d3 != d4


def _segment_distance(a: complex, b: complex, c: complex, d: complex) -> float:
    if _segments_properly_cross(a, b, c, d):
        return 0.0
    return min(
        _point_segment_distance(a, c, d),
        _point_segment_distance(b, c, d),
        _point_segment_distance(c, a, b),
        _point_segment_distance(d, a, b),
    )


def is_simple(p: Polygon, tol: float = DEFAULT_TOL) -> bool:
    """True iff the boundary has no self-contact beyond shared edge endpoints.

    Checks every pair of non-adjacent edges for contact and every vertex
    against every non-incident edge; tolerances scale with the diameter so
    the predicate is invariant under rescaling.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = p.n
    v = p.vertices
    eff = tol * diameter(p)
    if eff == 0.0:
        return False  # all vertices coincide
    for i in range(n):
        a, b = v[i], v[(i + 1) % n]
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue
            c, d = v[j], v[(j + 1) % n]
            if _segment_distance(a, b, c, d) <= eff:
                return False
    for k in range(n):
        for i in range(n):
            if k == i or k == (i + 1) % n:
                continue
            if _point_segment_distance(v[k], v[i], v[(i + 1) % n]) <= eff:
                return False
    return True


def is_convex(p: Polygon, tol: float = DEFAULT_TOL) -> bool:
    """True iff p is simple and strictly convex (one strict turning sign).

    Either orientation is accepted.  Turning strictness is measured on the
    sine of the turning angle, so the test is scale invariant.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = p.n
    v = p.vertices
    sign = 0
    for i in range(n):
        e1 = v[(i + 1) % n] - v[i]
        e2 = v[(i + 2) % n] - v[(i + 1) % n]
        norm = abs(e1) * abs(e2)
        if norm == 0.0:
            return False
        s = _cross(e1, e2) / norm
        if abs(s) <= tol:
            return False
        cur = 1 if s > 0 else -1
        if sign == 0:
            sign = cur
        elif cur != sign:
            return False
    return is_simple(p, tol)


def _require_centered_pair(p: Polygon, q: Polygon, tol: float) -> None:
    if p.n != q.n:
        raise ValueError(f"size mismatch: {p.n} vs {q.n}")
    scale = 1.0 + max(max(abs(v) for v in p.vertices), max(abs(v) for v in q.vertices))
    if abs(centroid(p)) > tol * scale or abs(centroid(q)) > tol * scale:
        raise ValueError("similarity tests require centered polygons")


def star_similar(p: Polygon, q: Polygon, tol: float = DEFAULT_TOL) -> Optional[complex]:
    """Return ell with p = ell*q componentwise (nonzero ell), else None.

    Both polygons must be centered; for centered polygons the componentwise
    vertex test is equivalent to the componentwise test on eigenbasis
    coefficients (the change of basis is linear and fixes the constant mode).
    """
    _require_centered_pair(p, q, tol)
    qmax = max(abs(v) for v in q.vertices)
    if qmax == 0.0:
        raise ValueError("q is identically zero")
    pivot = max(range(q.n), key=lambda i: abs(q.vertices[i]))
    ell = p.vertices[pivot] / q.vertices[pivot]
    if ell == 0:
        return None
    bound = tol * (1.0 + max(abs(v) for v in p.vertices))
    if all(abs(pv - ell * qv) <= bound for pv, qv in zip(p.vertices, q.vertices)):
        return ell
    return None


def similar(p: Polygon, q: Polygon, tol: float = DEFAULT_TOL) -> Optional[SimilarityWitness]:
    """Search all 2n relabelings of q for a scalar match against p.

    Candidates are scanned by ascending shift with same orientation tried
    before reversed at each shift, so the returned witness is deterministic.
    """
    _require_centered_pair(p, q, tol)
    if max(abs(v) for v in q.vertices) == 0.0:
        raise ValueError("q is identically zero")
    for k in range(1, q.n + 1):
        for orientation in (_SAME, _REVERSED):
            cand = cyclic_shift(q, k) if orientation == _SAME else reversed_shift(q, k)
            ell = star_similar(p, cand, tol)
            if ell is not None:
                return SimilarityWitness(shift_k=k, orientation=orientation, scale=ell)
    return None
