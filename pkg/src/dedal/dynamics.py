"""Dynamics of the midpoint map on polygon space and its projectivization.

Raw vertex orbits contract to the centroid, so the quotient orbit (the
class of the iterate modulo nonzero scalars) is renormalized at every step;
that is what survives numerically over long runs.  The affinely regular
classes attract everything at an exponential rate governed by eigenvalue
ratios, and the induced map is n-periodic on them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .midpoint import develop
from .polygon import DEFAULT_TOL, Polygon, center, is_convex, vertex_distance
from .spectral import (
    ProjectiveClass,
    SpectralCoefficients,
    class_distance,
    class_from_coefficients,
    decompose,
    eigenvalue,
    project_class,
    reconstruct,
)
from .classify import is_affinely_regular

_PRESENT_REL_TOL = 1e-12


@dataclass(frozen=True)
class IterationTrace:
    """Raw midpoint orbit plus the per-step renormalized quotient orbit.

    Entry 0 is the input; a ``None`` class marks an iterate that collapsed
    to a point (iteration continues on the raw polygons regardless).
    """

    polygons: tuple[Polygon, ...]
    classes: tuple[Optional[ProjectiveClass], ...]
    steps: int


@dataclass(frozen=True)
class AttractorReport:
    j: int
    predicted_rate: float
    distances: tuple[float, ...]
    fitted_rate: float


def _gated_tail(q: Polygon) -> np.ndarray:
    """Nonconstant-mode coefficients, zeroed when they are pure round-off.

    A constant polygon must not acquire dynamics from decomposition noise in
    the nonconstant modes.
    """
    a = decompose(q).as_array()
    tail = a[1:]
    if np.linalg.norm(tail) <= 1e-12 * np.linalg.norm(a):
        return np.zeros_like(tail)
    return tail


def iterate(q: Polygon, m: int) -> IterationTrace:
    """Trace m midpoint steps: raw polygons and renormalized classes."""
    if m < 0:
        raise ValueError("step count must be nonnegative")
    n = q.n
    polygons = [q]
    cur = q
    for _ in range(m):
        cur = develop(cur)
        polygons.append(cur)

    lam = np.array([eigenvalue(n, i) for i in range(1, n)])
    c = _gated_tail(q)
    classes: list[Optional[ProjectiveClass]] = []
    for step in range(m + 1):
        if step:
            c = c * lam
            norm = np.linalg.norm(c)
            if norm > 0:
                c = c / norm
        try:
            classes.append(class_from_coefficients(n, c))
        except ValueError:
            classes.append(None)
    return IterationTrace(tuple(polygons), tuple(classes), m)


def attractor_index(q: Polygon, tol: float = _PRESENT_REL_TOL) -> int:
    """The unique j with q between the j-th and (j+1)-th spectral bands.

    Equals the minimum of min(i, n-i) over the spectral support; errors for
    polygons supported only on the degenerate segment index n/2.
    """
    n = q.n
    c = _gated_tail(q)
    mags = np.abs(c)
    top = float(mags.max())
    if top == 0.0:
        raise ValueError("point polygon has no attractor index")
    support = [i for i in range(1, n) if mags[i - 1] > tol * top]
    j = min(min(i, n - i) for i in support)
    if n % 2 == 0 and j == n // 2:
        raise ValueError("support lies on the segment index n/2 only")
    return j


def _band_distance(u: np.ndarray, keep: np.ndarray) -> float:
    """Distance from the class of u to the classes supported inside ``keep``.

    Writing k and m for the norms of the kept and discarded parts, the
    closed form sqrt(2 - 2k/f) with f = |u| rearranges to
    m * sqrt(2 / (f (f + k))), which stays accurate when m underflows far
    below the rounding noise of f.
    """
    k = float(np.linalg.norm(u[keep]))
    m = float(np.linalg.norm(u[~keep]))
    f = math.hypot(k, m)
    if f == 0.0:
        raise ValueError("zero coefficient vector has no class")
    if k == 0.0:
        return math.sqrt(2.0)
    return m * math.sqrt(2.0 / (f * (f + k)))


def decay_report(q: Polygon, m: int) -> AttractorReport:
    """Track convergence of the quotient orbit toward its attractor.

    predicted_rate is the worst middle-band eigenvalue ratio among the
    modes actually present in q.  fitted_rate comes from a least-squares
    line through the log distances over the tail half of the trace.
    """
    if m < 10:
        raise ValueError("need at least 10 steps for a meaningful fit")
    n = q.n
    j = attractor_index(q)
    c = _gated_tail(q)
    norm = np.linalg.norm(c)
    u = c / norm
    # Coefficients below the presence threshold are decomposition noise, not
    # dynamics; zero them so absent modes stay absent along the orbit.
    present = np.abs(u) > _PRESENT_REL_TOL
    u = np.where(present, u, 0.0)
    u /= np.linalg.norm(u)

    idx = np.arange(1, n)
    keep = (idx == j) | (idx == n - j)
    middle = (idx > j) & (idx < n - j)
    if n % 2 == 0:
        middle &= idx != n // 2

    lam = np.array([eigenvalue(n, i) for i in range(1, n)])
    ratios = np.abs(lam[middle & present]) / abs(eigenvalue(n, j))
    predicted = float(ratios.max()) if ratios.size else 0.0

    distances = []
    for step in range(m + 1):
        if step:
            u = u * lam
            nrm = np.linalg.norm(u)
            if nrm > 0:
                u = u / nrm
        distances.append(_band_distance(u, keep))

    fitted = 0.0
    tail = [(s, d) for s, d in enumerate(distances) if s >= (m + 1) // 2 and d > 1e-280]
    if predicted > 0.0 and len(tail) >= 2:
        xs = np.array([s for s, _ in tail], dtype=float)
        ys = np.log([d for _, d in tail])
        slope = np.polyfit(xs, ys, 1)[0]
        fitted = float(math.exp(slope))
    return AttractorReport(
        j=j,
        predicted_rate=predicted,
        distances=tuple(distances),
        fitted_rate=fitted,
    )


def cycle_scalar(n: int, j: int) -> complex:
    """Scalar relating an affinely regular polygon to its n-fold midpoint
    iterate: (-1)^j cos(pi j / n)^n, always real and symmetric in j <-> n-j.

    The index is folded onto min(j, n-j) before evaluating, which makes the
    symmetry hold bitwise.
    """
    if not 1 <= j <= n - 1:
        raise ValueError(f"index {j} out of range 1..{n - 1}")
    if n % 2 == 0 and j == n // 2:
        raise ValueError("the segment index n/2 has no cycle scalar")
    j = min(j, n - j)
    return complex((-1.0) ** j * math.cos(math.pi * j / n) ** n)


def verify_n_periodicity(q: Polygon, tol: float = 1e-8) -> bool:
    """Check that n midpoint steps return an affinely regular polygon to its
    own class, scaled by exactly the cycle scalar."""
    j = is_affinely_regular(q)
    if j is None:
        raise ValueError("polygon is not affinely regular")
    qc = center(q)
    cur = qc
    for _ in range(q.n):
        cur = develop(cur)
    if class_distance(project_class(cur), project_class(qc)) > tol:
        return False
    scalar = cycle_scalar(q.n, j)
    expected = Polygon(scalar * v for v in qc.vertices)
    bound = tol * (1.0 + max(abs(v) for v in qc.vertices))
    return vertex_distance(cur, expected) <= bound


def _spectral_iterates(q: Polygon):
    """Yield q, then its midpoint iterates recentered and renormalized.

    The iteration runs on eigenbasis coefficients, where the modes evolve
    independently: modes absent from q stay exactly absent, so an
    eigenpolygon (a star pentagon, say) keeps its shape forever instead of
    drifting onto the dominant mode through accumulated rounding.  The
    normalization is a positive scaling plus a translation, which leaves
    convexity untouched.
    """
    n = q.n
    lam = np.array([eigenvalue(n, i) for i in range(1, n)])
    c = _gated_tail(q)
    # Per-mode gate: coefficients at round-off level are absent, and absent
    # modes must not be amplified into existence along the orbit.
    top = float(np.abs(c).max())
    if top > 0.0:
        c = np.where(np.abs(c) > _PRESENT_REL_TOL * top, c, 0.0)
    yield q
    zero = Polygon([0j] * n)
    while True:
        c = c * lam
        norm = np.linalg.norm(c)
        if norm == 0.0:
            yield zero
            continue
        c = c / norm
        coeffs = np.concatenate([[0j], c])
        yield reconstruct(SpectralCoefficients(n, tuple(complex(x) for x in coeffs)))


def convexification_index(
    q: Polygon, max_m: int, tol: float = DEFAULT_TOL
) -> Optional[int]:
    """Smallest M <= max_m whose iterate is convex and stays convex.

    Returns 0 when q itself qualifies; None when no iterate up to max_m
    does.  "Stays convex" is probed over the following 10 iterates.
    """
    if max_m < 1:
        raise ValueError("max_m must be at least 1")
    flags: list[bool] = []
    gen = _spectral_iterates(q)

    def convex_at(i: int) -> bool:
        while len(flags) <= i:
            flags.append(is_convex(next(gen), tol))
        return flags[i]

    for m in range(max_m + 1):
        if convex_at(m) and all(convex_at(m + t) for t in range(1, 11)):
            return m
    return None


def convexification_ensemble(
    n: int, samples: int, max_m: int = 200, seed: int = 0
) -> list[Optional[int]]:
    """Convexification indices for random n-gons with unit-square vertices.

    Each trial draws from an independent generator keyed by (seed, trial),
    so results are reproducible and order-independent.
    """
    results: list[Optional[int]] = []
    for trial in range(samples):
        rng = np.random.default_rng([seed, trial])
        verts = rng.random(n) + 1j * rng.random(n)
        poly = center(Polygon(verts))
        results.append(convexification_index(poly, max_m))
    return results
