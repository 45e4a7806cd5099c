"""Weighted lattice-point counts of polytope dilations, exactly.

The central object is the polynomial that agrees with

    n  |->  sum of w(a) over the lattice points a of the n-th dilation

for every nonnegative integer n; its degree is at most dim(P) + deg(w).
It is recovered by exact Lagrange interpolation at n = 1..dim+deg+1,
and validated at the reserved points n = 0 and n = dim+deg+2, so a
silent enumeration or degree-bound failure cannot slip through. Lift
constructions give a second, independent route for weights of degree
at most one, and the reciprocity and root-vanishing checks connect the
count of interior points to the polynomial's values at negative
integers.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import ConsistencyError
from .geometry import (
    Graph,
    LatticePolytope,
    bipartite_components,
    interior_lattice_points,
    lattice_points,
    require_nonnegative_vertices,
)
from .polynomials import RationalGF, UniPoly, WeightPoly, gf_of_polynomial, lagrange_interpolate

__all__ = [
    "weighted_sum",
    "weighted_ehrhart_polynomial",
    "ehrhart_polynomial",
    "weighted_series",
    "linear_lift",
    "affine_lift_polytope",
    "weighted_by_affine_lift",
    "predicted_degree",
    "integral_leading",
    "check_negative_root_vanishing",
    "reciprocity_check",
    "VanishingReport",
    "RootEntry",
    "ReciprocityReport",
    "ReciprocityEntry",
]


def _check_space(P: LatticePolytope, w: WeightPoly) -> None:
    if w.nvars != P.ambient_dim:
        raise ValueError(
            f"weight has {w.nvars} variables but the polytope lives in dimension {P.ambient_dim}"
        )


def weighted_sum(P: LatticePolytope, w: WeightPoly, n: int) -> Fraction:
    """Sum of w over the lattice points of the n-th dilation (n >= 0)."""
    _check_space(P, w)
    if not isinstance(n, int) or n < 0:
        raise ValueError("dilation factor must be a nonnegative integer")
    if w.is_zero:
        return Fraction(0)
    return sum((w.eval(a) for a in lattice_points(P, n)), Fraction(0))


@lru_cache(maxsize=None)
def weighted_ehrhart_polynomial(P: LatticePolytope, w: WeightPoly) -> UniPoly:
    """The polynomial matching n -> weighted_sum(P, w, n) on all n >= 0.

    Interpolated at n = 1..dim+deg+1 and cross-checked at n = 0 and
    n = dim+deg+2; a mismatch raises ConsistencyError because it can
    only mean a broken degree bound or a broken enumerator.
    """
    _check_space(P, w)
    if w.is_zero:
        return UniPoly()
    bound = P.dim + w.degree
    samples = [(n, weighted_sum(P, w, n)) for n in range(1, bound + 2)]
    poly = lagrange_interpolate(samples)
    for probe in (0, bound + 2):
        if poly(probe) != weighted_sum(P, w, probe):
            raise ConsistencyError(
                f"interpolated counting polynomial fails at n={probe}; "
                "degree bound or enumeration is wrong"
            )
    return poly


def ehrhart_polynomial(P: LatticePolytope) -> UniPoly:
    """Unweighted counting polynomial (weight identically 1)."""
    return weighted_ehrhart_polynomial(P, WeightPoly.constant(P.ambient_dim, 1))


def weighted_series(P: LatticePolytope, w: WeightPoly) -> RationalGF:
    """Generating function sum_n weighted_sum(P, w, n) x^n in canonical form."""
    return gf_of_polynomial(weighted_ehrhart_polynomial(P, w))


def _lift_polytope(P: LatticePolytope, heights: Sequence[int]) -> LatticePolytope:
    points = []
    for v in P.vertices:
        p = v + (0,)
        if p not in points:
            points.append(p)
    for v, h in zip(P.vertices, heights):
        p = v + (h,)
        if p not in points:
            points.append(p)
    return LatticePolytope(points)


def linear_lift(P: LatticePolytope, w: WeightPoly) -> LatticePolytope:
    """One-dimension-higher polytope whose slab heights realize a linear weight.

    Requires vertices in the nonnegative orthant and a nonzero weight
    that is homogeneous of degree one with nonnegative integer
    coefficients. The weighted count of P is then the difference of the
    plain counts of the lift and of P itself.
    """
    require_nonnegative_vertices(P, "linear_lift")
    _check_space(P, w)
    if w.is_zero:
        raise ValueError("weight must be nonzero")
    if w.degree != 1 or not w.is_homogeneous:
        raise ValueError(
            "weight must be homogeneous of degree one; "
            "use the affine route for a constant offset"
        )
    row, _ = w.affine_parts()
    for i, c in enumerate(row):
        if c.denominator != 1 or c < 0:
            raise ValueError(
                f"coefficient of t{i + 1} must be a nonnegative integer, got {c}"
            )
    heights = [int(w.eval(v)) for v in P.vertices]
    return _lift_polytope(P, heights)


def affine_lift_polytope(P: LatticePolytope, coeffs: Sequence) -> LatticePolytope:
    """Companion lift for an affine weight's linear part (rows of C in N)."""
    require_nonnegative_vertices(P, "affine_lift_polytope")
    if any(isinstance(c, float) for c in coeffs):
        raise TypeError("floating point coefficients are not allowed")
    row = [Fraction(c) for c in coeffs]
    if len(row) != P.ambient_dim:
        raise ValueError("coefficient row length must match the ambient dimension")
    if all(c == 0 for c in row):
        raise ValueError("linear part must be nonzero")
    if any(c.denominator != 1 or c < 0 for c in row):
        raise ValueError("linear coefficients must be nonnegative integers")
    heights = [int(sum(c * x for c, x in zip(row, v))) for v in P.vertices]
    return _lift_polytope(P, heights)


def weighted_by_affine_lift(P: LatticePolytope, coeffs: Sequence, offset) -> UniPoly:
    """Counting polynomial for the affine weight C.x + b via the lift route.

    Computed as count(lift of the linear part) + (b - 1) * count(P),
    entirely without interpolation against w itself, so it can serve as
    an independent check of the interpolation route.
    """
    if isinstance(offset, float):
        raise TypeError(f"floating point offset {offset!r} is not allowed")
    b = Fraction(offset)
    lifted = affine_lift_polytope(P, coeffs)
    return ehrhart_polynomial(lifted) + (b - 1) * ehrhart_polynomial(P)


def predicted_degree(G: Graph, w: WeightPoly) -> int:
    """Degree of the weighted count on the graph's edge polytope.

    For a single-term weight of degree p the counting polynomial has
    degree exactly (vertex count) - (bipartite components) - 1 + p.
    """
    if w.nvars != G.vertex_count:
        raise ValueError("weight variable count must match the graph's vertex count")
    if not w.is_monomial:
        raise ValueError("prediction needs a single-term weight")
    touched = {v for e in G.edges for v in e}
    isolated = sorted(set(range(1, G.vertex_count + 1)) - touched)
    if isolated:
        raise ValueError(
            f"graph has isolated vertices {isolated}; every vertex must meet an edge"
        )
    return G.vertex_count - bipartite_components(G) - 1 + w.degree


def _spot_check_nonnegative(P: LatticePolytope, w: WeightPoly) -> None:
    # hypothesis w >= 0 on P is the caller's responsibility; probe 3P only
    for a in lattice_points(P, 3):
        if w.eval(a) < 0:
            warnings.warn(
                f"weight is negative at {a}; the result assumes w >= 0 on the polytope",
                RuntimeWarning,
                stacklevel=3,
            )
            return


def _check_full_dim_homogeneous(P: LatticePolytope, w: WeightPoly, op: str) -> None:
    if P.dim != P.ambient_dim:
        raise ValueError(f"{op} needs a full-dimensional polytope")
    _check_space(P, w)
    if w.is_zero or not w.is_homogeneous:
        raise ValueError(f"{op} needs a nonzero homogeneous weight")


def integral_leading(P: LatticePolytope, w: WeightPoly, spot_check: bool = True) -> Fraction:
    """Leading coefficient of the weighted count, the normalized integral of w.

    P must be full-dimensional and w nonzero homogeneous; the coefficient
    sits at degree dim + deg w. Nonnegativity of w on P is assumed, not
    enforced (a sample check warns).
    """
    _check_full_dim_homogeneous(P, w, "integral_leading")
    if spot_check:
        _spot_check_nonnegative(P, w)
    poly = weighted_ehrhart_polynomial(P, w)
    top = poly.coefficient(P.dim + w.degree)
    if top == 0:
        warnings.warn(
            "leading coefficient vanished; the weight integrates to zero over the polytope",
            RuntimeWarning,
            stacklevel=2,
        )
    return top


@dataclass(frozen=True)
class RootEntry:
    """Value of the weighted count at one negative root of the plain count."""

    root: int
    value: Fraction

    @property
    def vanishes(self) -> bool:
        return self.value == 0


@dataclass(frozen=True)
class VanishingReport:
    """Negative integer roots of the plain count, probed on the weighted one."""

    plain: UniPoly
    weighted: UniPoly
    entries: tuple[RootEntry, ...]

    @property
    def roots(self) -> tuple[int, ...]:
        return tuple(e.root for e in self.entries)

    @property
    def all_vanish(self) -> bool:
        return all(e.vanishes for e in self.entries)


def check_negative_root_vanishing(
    P: LatticePolytope, w: WeightPoly, spot_check: bool = True
) -> VanishingReport:
    """Probe the weighted count at every negative integer root of the plain count.

    Scans the window -(dim + deg w) .. -1, which contains all negative
    integer roots of the plain counting polynomial. Under the standing
    hypotheses (full-dimensional P, homogeneous w >= 0 on P) every entry
    should vanish; the report records the exact values.
    """
    _check_full_dim_homogeneous(P, w, "check_negative_root_vanishing")
    if spot_check:
        _spot_check_nonnegative(P, w)
    plain = ehrhart_polynomial(P)
    weighted = weighted_ehrhart_polynomial(P, w)
    window = range(-(P.dim + w.degree), 0)
    entries = tuple(RootEntry(r, weighted(r)) for r in window if plain(r) == 0)
    return VanishingReport(plain, weighted, entries)


@dataclass(frozen=True)
class ReciprocityEntry:
    """One dilation's interior weighted sum against the signed negative value."""

    n: int
    interior_sum: Fraction
    signed_value: Fraction

    @property
    def equal(self) -> bool:
        return self.interior_sum == self.signed_value


@dataclass(frozen=True)
class ReciprocityReport:
    """Interior sums versus (-1)^(dim + deg w) times the count at -n."""

    sign: int
    entries: tuple[ReciprocityEntry, ...]

    @property
    def all_equal(self) -> bool:
        return all(e.equal for e in self.entries)


def reciprocity_check(
    P: LatticePolytope, w: WeightPoly, n_max: int = 4, spot_check: bool = True
) -> ReciprocityReport:
    """Compare interior weighted sums with the reflected counting polynomial.

    For full-dimensional P and homogeneous w, the sum of w over the
    interior lattice points of nP equals (-1)^(dim + deg w) times the
    counting polynomial at -n. Interior sums come from the strict
    enumerator, not from the polynomial, so the two sides are
    independent.
    """
    _check_full_dim_homogeneous(P, w, "reciprocity_check")
    if not isinstance(n_max, int) or n_max < 1:
        raise ValueError("n_max must be a positive integer")
    if spot_check:
        _spot_check_nonnegative(P, w)
    sign = (-1) ** (P.dim + w.degree)
    poly = weighted_ehrhart_polynomial(P, w)
    entries = []
    for n in range(1, n_max + 1):
        interior = sum(
            (w.eval(a) for a in interior_lattice_points(P, n)), Fraction(0)
        )
        entries.append(ReciprocityEntry(n, interior, sign * poly(-n)))
    return ReciprocityReport(sign, tuple(entries))
