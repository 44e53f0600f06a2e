"""The polygonal outer (dual) billiard map and Fagnano orbit machinery.

For a point z outside the table, the support vertex is the unique hull
vertex v such that every other hull vertex lies strictly to the left of the
directed ray from z through v; the map reflects z in v.  With this
orientation convention orbits circulate counterclockwise around a
counterclockwise table; pass convention="cw" for the mirrored map.

The map is left undefined (a singular hit) whenever the point falls on the
continuation of a hull side, within a tolerance that scales with the table
diameter.  Tables need not be convex: the map acts on the convex hull, with
vertex indices reported against the original polygon.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .midpoint import NoDedalError, dedal, develop
from .polygon import DEFAULT_TOL, Polygon, vertex_distance

_CONVENTIONS = ("ccw", "cw")


class InteriorPointError(ValueError):
    """The point lies inside or on the hull, where the map is undefined."""


class SingularPointError(ValueError):
    """The point lies on the continuation of a hull side."""

    def __init__(self, message: str, side_index: Optional[int] = None):
        self.side_index = side_index
        super().__init__(message)


@dataclass(frozen=True)
class Termination:
    """Why an orbit stopped: step cap, singular hit, or detected period."""

    kind: str  # "step_cap" | "singular_hit" | "period_detected"
    step: Optional[int] = None
    side_index: Optional[int] = None
    period: Optional[int] = None
    start: Optional[int] = None

    def to_json_dict(self) -> dict:
        data: dict = {"kind": self.kind}
        for key in ("step", "side_index", "period", "start"):
            value = getattr(self, key)
            if value is not None:
                data[key] = value
        return data


@dataclass(frozen=True)
class OrbitTrace:
    points: tuple[complex, ...]
    support_indices: tuple[int, ...]
    termination: Termination
    table: Polygon


@dataclass(frozen=True)
class _Hull:
    points: tuple[complex, ...]
    original: tuple[int, ...]
    diam: float


def _cross(a: complex, b: complex) -> float:
    return (a.conjugate() * b).imag


def convex_hull(p: Polygon, tol: float = DEFAULT_TOL) -> tuple[int, ...]:
    """Indices of the hull's extreme points, counterclockwise.

    Collinear and duplicate vertices are dropped; ties keep the first
    occurrence in the input order.
    """
    verts = list(enumerate(p.vertices))
    verts.sort(key=lambda item: (item[1].real, item[1].imag))
    v = p.as_array()
    diam = float(np.abs(v[:, None] - v[None, :]).max())
    eps = tol * diam * diam

    def chain(points):
        out: list[tuple[int, complex]] = []
        for item in points:
            while (
                len(out) >= 2
                and _cross(out[-1][1] - out[-2][1], item[1] - out[-2][1]) <= eps
            ):
                out.pop()
            out.append(item)
        return out

    lower = chain(verts)
    upper = chain(reversed(verts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise ValueError("convex hull is degenerate (fewer than 3 extreme points)")
    return tuple(idx for idx, _ in hull)


def _build_hull(p: Polygon, tol: float) -> _Hull:
    idx = convex_hull(p, tol)
    pts = tuple(p.vertices[i] for i in idx)
    arr = np.array(pts)
    diam = float(np.abs(arr[:, None] - arr[None, :]).max())
    return _Hull(points=pts, original=idx, diam=diam)


def _support_position(hull: _Hull, z: complex, tol: float, clockwise: bool) -> int:
    """Position (into the hull arrays) of the support vertex of z."""
    pts = hull.points
    h = len(pts)
    line_eps = tol * hull.diam

    signed = []
    for i in range(h):
        a, b = pts[i], pts[(i + 1) % h]
        signed.append(_cross(b - a, z - a) / abs(b - a))
    if min(signed) >= -line_eps:
        raise InteriorPointError(f"point {z} lies inside or on the hull")
    for i, sd in enumerate(signed):
        if abs(sd) <= line_eps:
            raise SingularPointError(
                f"point {z} lies on the continuation of hull side {i}",
                side_index=hull.original[i],
            )

    orient = -1.0 if clockwise else 1.0
    best_pos, best_margin = -1, -np.inf
    for i in range(h):
        margin = min(
            orient * _cross(pts[i] - z, pts[w] - z) for w in range(h) if w != i
        )
        if margin > best_margin:
            best_pos, best_margin = i, margin
    if best_margin <= 0.0:
        raise SingularPointError(f"no strict support vertex exists for {z}")
    return best_pos


def support_vertex(
    p: Polygon, z: complex, tol: float = DEFAULT_TOL, convention: str = "ccw"
) -> int:
    """Original index of the vertex the dual billiard map reflects z in."""
    if convention not in _CONVENTIONS:
        raise ValueError(f"convention must be one of {_CONVENTIONS}")
    hull = _build_hull(p, tol)
    pos = _support_position(hull, complex(z), tol, convention == "cw")
    return hull.original[pos]


def dual_map(
    p: Polygon, z: complex, tol: float = DEFAULT_TOL, convention: str = "ccw"
) -> complex:
    """One step of the dual billiard map: reflect z in its support vertex."""
    if convention not in _CONVENTIONS:
        raise ValueError(f"convention must be one of {_CONVENTIONS}")
    hull = _build_hull(p, tol)
    pos = _support_position(hull, complex(z), tol, convention == "cw")
    return 2 * hull.points[pos] - z


def orbit(
    p: Polygon,
    z: complex,
    steps: int,
    tol: float = DEFAULT_TOL,
    convention: str = "ccw",
) -> OrbitTrace:
    """Iterate the dual billiard map up to ``steps`` times.

    Stops early when the next point would be singular, or when it returns
    within tolerance of an earlier orbit point (reported as a period).  A
    start point inside the hull raises; a singular start is recorded as a
    singular hit at step 0.
    """
    if steps < 1:
        raise ValueError("steps must be at least 1")
    if convention not in _CONVENTIONS:
        raise ValueError(f"convention must be one of {_CONVENTIONS}")
    clockwise = convention == "cw"
    hull = _build_hull(p, tol)
    thresh = tol * hull.diam

    buf = np.empty(steps + 1, dtype=complex)
    buf[0] = complex(z)
    supports: list[int] = []
    termination = Termination(kind="step_cap")
    count = 1
    for k in range(steps):
        try:
            pos = _support_position(hull, complex(buf[k]), tol, clockwise)
        except SingularPointError as exc:
            termination = Termination(
                kind="singular_hit", step=k, side_index=exc.side_index
            )
            break
        supports.append(hull.original[pos])
        nxt = 2 * hull.points[pos] - buf[k]
        hits = np.flatnonzero(np.abs(buf[: k + 1] - nxt) <= thresh)
        buf[k + 1] = nxt
        count = k + 2
        if hits.size:
            start = int(hits[0])
            termination = Termination(
                kind="period_detected", period=k + 1 - start, start=start
            )
            break
    return OrbitTrace(
        points=tuple(complex(x) for x in buf[:count]),
        support_indices=tuple(supports),
        termination=termination,
        table=p,
    )


def verify_fagnano(p: Polygon, q: Polygon, tol: float = DEFAULT_TOL) -> bool:
    """True iff q is a Fagnano orbit of the table p.

    Demands both the midpoint condition (p is the midpoint polygon of q)
    and the dynamical one: the support vertex of every q-vertex is the
    table vertex that reflects it onto the next (or, for a clockwise table,
    the previous) q-vertex.  Any undefined support vertex means False.
    """
    if p.n != q.n:
        raise ValueError(f"size mismatch: {p.n} vs {q.n}")
    bound = tol * (1.0 + max(abs(v) for v in p.vertices))
    if vertex_distance(develop(q), p) > bound:
        return False
    try:
        hull = _build_hull(p, tol)
    except ValueError:
        return False
    svs = []
    for w in q.vertices:
        try:
            pos = _support_position(hull, w, tol, clockwise=False)
        except (InteriorPointError, SingularPointError):
            return False
        svs.append(hull.original[pos])
    n = p.n
    forward = all(svs[i] == i for i in range(n))
    backward = all(svs[i] == (i - 1) % n for i in range(n))
    return forward or backward


def find_fagnano(p: Polygon, tol: float = DEFAULT_TOL) -> Optional[Polygon]:
    """The dedal polygon of p when it is a Fagnano orbit, else None.

    For even n only the base family member is tried; other members can be
    checked with verify_fagnano directly.
    """
    try:
        q = dedal(p)
    except NoDedalError:
        return None
    return q if verify_fagnano(p, q, tol) else None
