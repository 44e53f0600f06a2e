"""Shared generators for randomized geometry tests.

All randomness flows through caller-provided numpy generators so every test
pins its own seed.
"""

from __future__ import annotations

import numpy as np

from dedal import Polygon, SpectralCoefficients, center, existence_defect, reconstruct


def random_polygon(rng: np.random.Generator, n: int, scale: float = 1.0) -> Polygon:
    """Generic polygon with standard normal complex vertices."""
    return Polygon(scale * (rng.normal(size=n) + 1j * rng.normal(size=n)))


def on_existence_hyperplane(p: Polygon) -> Polygon:
    """Project an even n-gon onto the set where dedal polygons exist."""
    n = p.n
    defect = existence_defect(p)
    shift = defect / n
    return Polygon(v - shift * (-1.0) ** k for k, v in enumerate(p.vertices))


def random_valid_polygon(rng: np.random.Generator, n: int) -> Polygon:
    """Random polygon admitting a dedal polygon (projected when n is even)."""
    p = random_polygon(rng, n)
    return on_existence_hyperplane(p) if n % 2 == 0 else p


def random_convex_polygon(rng: np.random.Generator, n: int) -> Polygon:
    """Random strictly convex n-gon: spread angles on a circle, then a random
    orientation-preserving real-affine map."""
    while True:
        angles = np.sort(rng.uniform(0.0, 2 * np.pi, size=n))
        gaps = np.diff(np.concatenate([angles, [angles[0] + 2 * np.pi]]))
        if gaps.min() > 0.2 * (2 * np.pi / n) and gaps.max() < np.pi * 0.9:
            break
    base = np.exp(1j * angles)
    alpha = 1.0 + 0.3 * (rng.normal() + 1j * rng.normal())
    beta = 0.4 * (rng.normal() + 1j * rng.normal())
    if abs(beta) >= 0.9 * abs(alpha):
        beta *= 0.5 * abs(alpha) / abs(beta)
    mapped = alpha * base + beta * np.conj(base) + (rng.normal() + 1j * rng.normal())
    return Polygon(mapped)


def polygon_from_coeffs(n: int, entries: dict[int, complex]) -> Polygon:
    """Polygon with the given eigenbasis coefficients, all others zero."""
    coeffs = [0j] * n
    for i, c in entries.items():
        coeffs[i] = complex(c)
    return reconstruct(SpectralCoefficients(n, tuple(coeffs)))


def random_regular(rng: np.random.Generator, n: int, j: int | None = None) -> Polygon:
    """Random nonzero multiple of a single eigenpolygon (index != n/2)."""
    if j is None:
        choices = [i for i in range(1, n) if not (n % 2 == 0 and i == n // 2)]
        j = int(rng.choice(choices))
    ell = rng.normal() + 1j * rng.normal()
    while abs(ell) < 0.1:
        ell = rng.normal() + 1j * rng.normal()
    return polygon_from_coeffs(n, {j: ell})


def random_affinely_regular(
    rng: np.random.Generator, n: int, j: int | None = None
) -> Polygon:
    """Random polygon with spectral support {j, n-j}, both modes present."""
    if j is None:
        j = int(rng.integers(1, (n - 1) // 2 + 1))
    a = rng.normal() + 1j * rng.normal()
    b = rng.normal() + 1j * rng.normal()
    while abs(a) < 0.1:
        a = rng.normal() + 1j * rng.normal()
    while abs(b) < 0.1:
        b = rng.normal() + 1j * rng.normal()
    return polygon_from_coeffs(n, {j: a, n - j: b})


def random_centered(rng: np.random.Generator, n: int) -> Polygon:
    return center(random_polygon(rng, n))
