"""Eigenbasis of the midpoint map, polygon <-> coefficient transforms, and
the projective quotient of centered polygons modulo scalar similarity.

The basis vector with index i is (1, q^i, q^(2i), ..., q^((n-1)i)) with
q = exp(2*pi*i/n); index 0 is the constant (point) polygon, index 1 the
counterclockwise regular n-gon.  Coefficients follow the plain O(n^2)
discrete Fourier inversion a_i = (1/n) * sum_k z_k q^(-k*i); n stays small
here, so exactness and simplicity beat FFT speed.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .polygon import Polygon


def unit_root(n: int, k: int) -> complex:
    """q^k for q = exp(2*pi*i/n), exact at quarter turns."""
    k %= n
    if k == 0:
        return 1 + 0j
    if 2 * k == n:
        return -1 + 0j
    if 4 * k == n:
        return 1j
    if 4 * k == 3 * n:
        return -1j
    return cmath.exp(2j * math.pi * k / n)


@lru_cache(maxsize=None)
def _basis_matrix(n: int) -> np.ndarray:
    """Matrix V with V[k, i] = q^(k*i); column i is basis vector i."""
    m = np.empty((n, n), dtype=complex)
    for k in range(n):
        for i in range(n):
            m[k, i] = unit_root(n, k * i)
    m.flags.writeable = False
    return m


def _check_index(n: int, i: int) -> None:
    if n < 3:
        raise ValueError(f"n={n} must be at least 3")
    if not 0 <= i <= n - 1:
        raise ValueError(f"basis index {i} out of range 0..{n - 1}")


def basis_vector(n: int, i: int) -> Polygon:
    """The i-th eigenpolygon of the midpoint map on n-gons."""
    _check_index(n, i)
    return Polygon(unit_root(n, k * i) for k in range(n))


def eigenvalue(n: int, i: int) -> complex:
    """Midpoint-map eigenvalue (1 + q^i)/2; exactly zero at i = n/2."""
    _check_index(n, i)
    return (1 + unit_root(n, i)) / 2


@dataclass(frozen=True)
class SpectralCoefficients:
    """Coefficients a_0..a_{n-1} of a polygon in the eigenpolygon basis."""

    n: int
    coeffs: tuple[complex, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.n:
            raise ValueError("coefficient count must equal n")

    def as_array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=complex)

    def to_json_dict(self) -> dict:
        return {"n": self.n, "coeffs": [[c.real, c.imag] for c in self.coeffs]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "SpectralCoefficients":
        return cls(data["n"], tuple(complex(re, im) for re, im in data["coeffs"]))


def decompose(p: Polygon) -> SpectralCoefficients:
    """Coefficients of p in the eigenpolygon basis."""
    n = p.n
    v = _basis_matrix(n)
    a = v.conj().T @ p.as_array() / n
    return SpectralCoefficients(n, tuple(complex(x) for x in a))


def reconstruct(c: SpectralCoefficients) -> Polygon:
    """Polygon with the given eigenbasis coefficients."""
    v = _basis_matrix(c.n)
    return Polygon(v @ c.as_array())


@dataclass(frozen=True)
class ProjectiveClass:
    """Canonical representative of a scalar-similarity class.

    ``coeffs`` holds the eigenbasis coefficients with indices 1..n-1 of a
    centered representative, scaled to unit Euclidean norm with the largest
    coefficient rotated to the positive real axis.
    """

    n: int
    coeffs: tuple[complex, ...]

    def as_array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=complex)


def class_from_coefficients(n: int, coeffs: np.ndarray) -> ProjectiveClass:
    """Canonicalize a raw coefficient vector (indices 1..n-1) into a class."""
    c = np.asarray(coeffs, dtype=complex)
    if c.shape != (n - 1,):
        raise ValueError(f"expected {n - 1} coefficients, got {c.shape}")
    norm = float(np.linalg.norm(c))
    if norm == 0.0:
        raise ValueError("all coefficients vanish: the polygon is a point")
    u = c / norm
    pivot = int(np.argmax(np.abs(u)))
    u = u * (abs(u[pivot]) / u[pivot])
    u /= np.linalg.norm(u)
    return ProjectiveClass(n, tuple(complex(x) for x in u))


def project_class(p: Polygon) -> ProjectiveClass:
    """Class of p in the quotient of centered polygons by nonzero scalars."""
    a = decompose(p).as_array()
    tail = a[1:]
    # Guard against decomposition noise: a constant polygon must not acquire
    # a class from round-off in the nonconstant modes.
    if np.linalg.norm(tail) <= 1e-12 * np.linalg.norm(a):
        raise ValueError("polygon is a point; it has no projective class")
    return class_from_coefficients(p.n, tail)


def class_distance(a: ProjectiveClass, b: ProjectiveClass) -> float:
    """Distance between classes: min over unit-circle phases of the
    Euclidean distance between unit representatives.

    Equals sqrt(2 - 2*|<a, b>|) in closed form; evaluated by aligning the
    phase and subtracting, which keeps full precision for nearby classes.
    """
    if a.n != b.n:
        raise ValueError(f"size mismatch: {a.n} vs {b.n}")
    ua, ub = a.as_array(), b.as_array()
    ip = complex(np.vdot(ub, ua))  # sum a_i * conj(b_i)
    if ip == 0:
        return math.sqrt(2.0)
    return float(np.linalg.norm(ua - (ip / abs(ip)) * ub))
