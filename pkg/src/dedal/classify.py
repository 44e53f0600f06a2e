"""Regularity and affine-regularity classification via spectral support,
plus the decision procedures relating a polygon to its dedal polygon.

A polygon is regular (in the generalized sense, star-shaped and multiply
traced cases included) when exactly one eigenbasis coefficient with index
in 1..n-1 is nonzero; it is affinely regular when the support lies in a
conjugate index pair {j, n-j}.  Regular polygons are exactly those that are
scalar-similar to their dedal polygon; the affinely regular polygons that
are similar to their dedal polygon (relabeling allowed) form four explicit
families, each with a closed-form similarity witness.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .midpoint import NoDedalError, dedal
from .polygon import (
    DEFAULT_TOL,
    Polygon,
    SimilarityWitness,
    center,
    star_similar,
    vertex_distance,
)
from .spectral import decompose, eigenvalue, unit_root

CASE_ODD_AFFINE = "odd_affinely_regular"
CASE_EVEN_REGULAR = "even_regular"
CASE_EVEN_SHIFT = "even_shift"
CASE_EVEN_REVERSED = "even_reversed"
CASE_NOT_IN_LIST = "not_in_list"


@dataclass(frozen=True)
class RegularityResult:
    kind: str  # "regular" | "affinely_regular" | "none"
    j: Optional[int] = None
    ell: Optional[complex] = None


@dataclass(frozen=True)
class SimilarDedalClass:
    """Which family of the dedal-similarity classification p falls into."""

    case: str
    j: Optional[int] = None
    k: Optional[int] = None
    sign: Optional[int] = None

    @property
    def in_list(self) -> bool:
        return self.case != CASE_NOT_IN_LIST


def _support(p: Polygon, tol: float) -> tuple[list[int], np.ndarray]:
    """Indices in 1..n-1 whose coefficient is nonzero relative to the largest."""
    a = decompose(p).as_array()
    tail = np.abs(a[1:])
    amax = float(tail.max())
    if amax == 0.0:
        raise ValueError("zero polygon has no spectral support")
    support = [i for i in range(1, p.n) if abs(a[i]) > tol * amax]
    return support, a


def is_regular(p: Polygon, tol: float = DEFAULT_TOL) -> Optional[tuple[int, complex]]:
    """Return (j, ell) with center(p) = ell * basis_vector(n, j), else None."""
    support, a = _support(p, tol)
    if len(support) != 1:
        return None
    j = support[0]
    if p.n % 2 == 0 and j == p.n // 2:
        return None  # a segment, not considered a polygon
    return j, complex(a[j])


def is_affinely_regular(p: Polygon, tol: float = DEFAULT_TOL) -> Optional[int]:
    """Return j in 1..floor((n-1)/2) with spectral support inside {j, n-j}."""
    support, _ = _support(p, tol)
    n = p.n
    folds = {min(i, n - i) for i in support}
    if len(folds) != 1:
        return None
    j = folds.pop()
    if n % 2 == 0 and j == n // 2:
        return None
    return j


def regularity(p: Polygon, tol: float = DEFAULT_TOL) -> RegularityResult:
    reg = is_regular(p, tol)
    if reg is not None:
        return RegularityResult("regular", j=reg[0], ell=reg[1])
    aff = is_affinely_regular(p, tol)
    if aff is not None:
        return RegularityResult("affinely_regular", j=aff)
    return RegularityResult("none")


def dedal_is_star_similar(p: Polygon, tol: float = DEFAULT_TOL) -> bool:
    """True iff p has a dedal polygon that is a nonzero scalar multiple of p.

    This holds exactly for the regular polygons; the operation exists so the
    equivalence stays independently testable.  Even n-gons violating the
    existence condition return False.
    """
    pc = center(p)
    try:
        q = dedal(pc, tol if p.n % 2 == 0 else None)
    except NoDedalError:
        return False
    return star_similar(pc, q, tol) is not None


def _half_power(n: int, j: int, k_plus_half: float) -> complex:
    """q^(j * k_plus_half) where the exponent may be a half-integer."""
    return cmath.exp(2j * math.pi * j * k_plus_half / n)


def similar_dedal_class(p: Polygon, tol: float = DEFAULT_TOL) -> SimilarDedalClass:
    """Classify p by whether its dedal polygon is similar to p.

    Odd n: in the list iff affinely regular.  Even n: the regular polygons,
    the affinely regular ones admitting a same-orientation relabeling (the
    divisibility family), and the ones admitting an orientation-reversing
    relabeling (the coefficient-ratio family).  The shift parameter k is
    scanned in ascending order with the divisibility test first, so the
    reported (case, k) is deterministic.
    """
    n = p.n
    if n % 2 == 1:
        aff = is_affinely_regular(p, tol)
        if aff is not None:
            return SimilarDedalClass(CASE_ODD_AFFINE, j=aff)
        return SimilarDedalClass(CASE_NOT_IN_LIST)

    reg = is_regular(p, tol)
    if reg is not None:
        return SimilarDedalClass(CASE_EVEN_REGULAR, j=reg[0])
    aff = is_affinely_regular(p, tol)
    if aff is None:
        return SimilarDedalClass(CASE_NOT_IN_LIST)
    j = aff
    _, a = _support(p, tol)
    ratio = complex(a[j]) / complex(a[n - j])
    half = n // 2
    for k in range(1, n + 1):
        if k != half and (j * (2 * k - 1)) % n == 0:
            return SimilarDedalClass(CASE_EVEN_SHIFT, j=j, k=k)
        target = _half_power(n, j, k + 1.5)
        if abs(ratio - target) <= tol * (1.0 + abs(ratio)):
            return SimilarDedalClass(CASE_EVEN_REVERSED, j=j, k=k, sign=+1)
        if abs(ratio + target) <= tol * (1.0 + abs(ratio)):
            return SimilarDedalClass(CASE_EVEN_REVERSED, j=j, k=k, sign=-1)
    return SimilarDedalClass(CASE_NOT_IN_LIST)


def similarity_witness(p: Polygon, tol: float = DEFAULT_TOL) -> Optional[SimilarityWitness]:
    """Closed-form witness relating p to its dedal polygon, verified.

    Returns None when p is not in the dedal-similarity list.  The witness is
    checked against the actual dedal polygon before being returned; a
    verification failure means a classification bug and raises.
    """
    cls = similar_dedal_class(p, tol)
    if not cls.in_list:
        return None
    n = p.n
    j = cls.j
    if cls.case == CASE_ODD_AFFINE:
        shift = (n + 3) // 2
        ell = (1 + unit_root(n, j)) / (2 * unit_root(n, j * (n + 1) // 2))
        witness = SimilarityWitness(shift_k=shift, orientation="same", scale=ell)
    elif cls.case == CASE_EVEN_REGULAR:
        witness = SimilarityWitness(shift_k=1, orientation="same", scale=eigenvalue(n, j))
    elif cls.case == CASE_EVEN_SHIFT:
        shift = cls.k % n + 1
        ell = (1 + unit_root(n, j)) / (2 * unit_root(n, cls.k * j))
        witness = SimilarityWitness(shift_k=shift, orientation="same", scale=ell)
    else:  # CASE_EVEN_REVERSED
        # The reversed relabeling index runs against the scan index: shifting
        # the reversal start by k is undone by reversing from n - k.
        shift = n - cls.k if cls.k < n else n
        ell = complex(cls.sign * math.cos(math.pi * j / n))
        witness = SimilarityWitness(shift_k=shift, orientation="reversed", scale=ell)

    pc = center(p)
    q = dedal(pc)
    bound = tol * (1.0 + max(abs(v) for v in pc.vertices))
    if vertex_distance(witness.apply(q), pc) > bound:
        raise RuntimeError(
            f"similarity witness {witness} failed verification for case {cls.case}"
        )
    return witness


def classification_report(p: Polygon, tol: float = DEFAULT_TOL) -> dict:
    """JSON-ready classification summary used by the command line front end."""
    result = regularity(p, tol)
    cls = similar_dedal_class(p, tol)
    report: dict = {"kind": result.kind}
    if result.j is not None:
        report["j"] = result.j
    if result.ell is not None:
        report["ell"] = [result.ell.real, result.ell.imag]
    report["case"] = cls.case
    if cls.k is not None:
        report["k"] = cls.k
    return report
