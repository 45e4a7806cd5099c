"""End-to-end acceptance run.

Each test covers one acceptance criterion and prints a single
PASS/FAIL line on the real stdout, bypassing pytest's capture, so the
summary survives any -q / -v reporting mode. Every comparison below is
exact rational equality; there are no tolerances anywhere.
"""

import random
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction as F

from ehrwt import (
    LatticePolytope,
    LinearWeightTuple,
    RationalGF,
    UniPoly,
    WeightPoly,
    check_negative_root_vanishing,
    cube_series,
    ehrhart_polynomial,
    eulerian,
    expand,
    gf_of_polynomial,
    hilbert_polynomial,
    hilbert_series,
    hilbert_value,
    image_gap_report,
    integral_leading,
    linear_lift,
    parse_weight,
    weighted_by_affine_lift,
    weighted_ehrhart_polynomial,
    weighted_series,
    weighted_sum,
)

from oracles import (
    box_weighted_sum,
    eulerian_row,
    random_monomial_exponents,
    random_vertices,
    random_weight_terms,
)


@contextmanager
def criterion(num, label):
    start = time.monotonic()
    try:
        yield
    except BaseException:
        elapsed = time.monotonic() - start
        print(f"[criterion {num}] {label}: FAIL ({elapsed:.1f}s)",
              file=sys.__stdout__, flush=True)
        raise
    elapsed = time.monotonic() - start
    print(f"[criterion {num}] {label}: PASS ({elapsed:.1f}s)",
          file=sys.__stdout__, flush=True)


def poly(*coeffs):
    """Ascending-coefficient polynomial with exact entries."""
    return UniPoly([F(c) for c in coeffs])


def gf(power, *coeffs):
    """Rational series with ascending numerator and (1-x)^power denominator."""
    return RationalGF(UniPoly([F(c) for c in coeffs]), power)


SQUARE = LatticePolytope([(0, 0), (1, 0), (0, 1), (1, 1)])
STAIR_TRIANGLE = LatticePolytope([(1, 0), (0, 1), (1, 1)])


def test_criterion_1_worked_example_goldens():
    with criterion(1, "worked-example polynomials and series"):
        # Unit square with three linear weights and all their products.
        w1 = parse_weight("t1 + t2", 2)
        w2 = parse_weight("2*t1 + 3*t2", 2)
        w3 = parse_weight("t1", 2)
        E = lambda P, w: weighted_ehrhart_polynomial(P, w)
        assert ehrhart_polynomial(SQUARE) == poly(1, 2, 1)
        assert E(SQUARE, w1) == poly(0, 1, 2, 1)
        assert E(SQUARE, w2) == poly(0, F(5, 2), 5, F(5, 2))
        assert E(SQUARE, w3) == poly(0, F(1, 2), 1, F(1, 2))
        assert E(SQUARE, w1 * w2) == poly(0, F(5, 6), F(55, 12), F(20, 3), F(35, 12))
        # Spot checks pin the two mixed products to their weights: the sums
        # over the n = 1 grid are 3 = 0+1+0+2 and 7 = 0+2+0+5, and the
        # leading coefficients match the integrals 7/12 and 17/12.
        assert E(SQUARE, w1 * w3) == poly(0, F(1, 6), F(11, 12), F(4, 3), F(7, 12))
        assert E(SQUARE, w2 * w3) == poly(0, F(1, 3), F(25, 12), F(19, 6), F(17, 12))
        assert weighted_sum(SQUARE, w1 * w3, 1) == 3
        assert weighted_sum(SQUARE, w2 * w3, 1) == 7
        assert integral_leading(SQUARE, w1 * w3) == F(7, 12)
        assert integral_leading(SQUARE, w2 * w3) == F(17, 12)
        assert E(SQUARE, w1 * w2 * w3) == poly(
            0, 0, F(7, 6), F(25, 6), F(29, 6), F(11, 6))

        # Unit interval against the cubes 1^3 + ... + (n+1)^3.
        interval = LatticePolytope([(0,), (1,)])
        w = parse_weight("(t1 + 1)^3", 1)
        assert E(interval, w) == poly(1, 1) ** 2 * poly(2, 1) ** 2 * F(1, 4)

        # A slanted triangle, including a mixed-sign rational weight.
        crooked = LatticePolytope([(1, 0), (0, 2), (2, 3)])
        assert ehrhart_polynomial(crooked) == poly(1, F(3, 2), F(5, 2))
        assert gf_of_polynomial(ehrhart_polynomial(crooked)) == gf(3, 1, 2, 2)
        t1, t2 = parse_weight("t1", 2), parse_weight("t2", 2)
        assert E(crooked, t1) == poly(0, 1, F(3, 2), F(5, 2))
        assert weighted_series(crooked, t1) == gf(4, 0, 5, 8, 2)
        assert E(crooked, t2) == poly(0, F(4, 3), F(5, 2), F(25, 6))
        assert weighted_series(crooked, t2) == gf(4, 0, 8, 14, 3)
        mixed = parse_weight("2/5*t1 - 6/25*t2", 2)
        assert E(crooked, mixed) == poly(0, F(2, 25))
        assert weighted_series(crooked, mixed) == gf(2, 0, F(2, 25))

        # Unit square with the balanced monomials (t1 t2)^k, k = 0..3.
        k_polys = [
            poly(1, 2, 1),
            poly(0, 0, F(1, 4), F(1, 2), F(1, 4)),
            poly(0, 0, F(1, 36), F(1, 6), F(13, 36), F(1, 3), F(1, 9)),
            poly(0, 0, 0, 0, F(1, 16), F(1, 4), F(3, 8), F(1, 4), F(1, 16)),
        ]
        k_series = [
            gf(3, 1, 1),
            gf(5, 0, 1, 4, 1),
            gf(7, 0, 1, 18, 42, 18, 1),
            gf(9, 0, 1, 72, 603, 1168, 603, 72, 1),
        ]
        for k in range(4):
            g = WeightPoly.monomial((k, k))
            assert E(SQUARE, g) == k_polys[k]
            assert weighted_series(SQUARE, g) == k_series[k]

        # Right triangle above the diagonal: symmetric weights cancel.
        assert ehrhart_polynomial(STAIR_TRIANGLE) == poly(1, F(3, 2), F(1, 2))
        lifted_cube = poly(0, F(2, 3), 1, F(1, 3))
        assert E(STAIR_TRIANGLE, t1) == lifted_cube
        assert E(STAIR_TRIANGLE, t2) == lifted_cube
        assert [weighted_sum(STAIR_TRIANGLE, t1, n) for n in (1, 2, 3, 4)] == \
            [2, 8, 20, 40]
        assert weighted_series(STAIR_TRIANGLE, t1) == gf(4, 0, 2)
        assert E(STAIR_TRIANGLE, t1 - t2) == UniPoly([])

        # Skew tetrahedron: slab construction against direct interpolation.
        spike = LatticePolytope([(1, 1, 0), (0, 1, 1), (1, 0, 1), (1, 1, 7)])
        wsum = parse_weight("t1 + t2 + t3", 3)
        lift = linear_lift(spike, wsum)
        lift_count = ehrhart_polynomial(lift)
        spike_count = ehrhart_polynomial(spike)
        assert lift_count == poly(2, 3, 1) * poly(12, 115, 105) * F(1, 24)
        assert spike_count == poly(2, 3, 1) * poly(3, 7) * F(1, 6)
        direct = E(spike, wsum)
        assert direct == lift_count - spike_count
        assert direct == poly(0, 1) * poly(2, 3, 1) * poly(29, 35) * F(1, 8)
        assert gf_of_polynomial(lift_count) == gf(5, 1, 53, 51)
        assert gf_of_polynomial(spike_count) == gf(4, 1, 6)
        assert weighted_series(spike, wsum) == gf(5, 0, 48, 57)

        # Diagonal segment: linear route, then an affine offset.
        seg = LatticePolytope([(2, 0), (0, 2)])
        wseg = parse_weight("t1 + t2", 2)
        seg_lift_count = ehrhart_polynomial(linear_lift(seg, wseg))
        assert seg_lift_count == poly(1, 4, 4)
        assert E(seg, wseg) == seg_lift_count - ehrhart_polynomial(seg)
        assert E(seg, wseg) == poly(0, 2, 4)
        assert weighted_series(seg, wseg) == gf(3, 0, 6, 2)
        affine = weighted_by_affine_lift(seg, (1, 1), -1)
        assert affine == poly(-1, 0, 4)
        assert affine == E(seg, parse_weight("t1 + t2 - 1", 2))
        assert gf_of_polynomial(affine) == gf(3, -1, 6, 3)

        # Shifted interval [1, 2] with a quadratic weight.
        shifted = LatticePolytope([(1,), (2,)])
        assert E(shifted, parse_weight("t1^2", 1)) == \
            poly(0, 1, 15, 14) * F(1, 6)

        # Triangle handled elsewhere by inequality-based software.
        assert integral_leading(STAIR_TRIANGLE, parse_weight("2*t1 + 3*t2", 2)) \
            == F(5, 3)
        g = parse_weight("t1^2 + t2^2", 2)
        assert integral_leading(STAIR_TRIANGLE, g) == F(1, 2)
        assert E(STAIR_TRIANGLE, g) == poly(0, F(1, 3), F(3, 2), F(5, 3), F(1, 2))
        assert weighted_series(STAIR_TRIANGLE, g) == gf(5, 0, 4, 8)


def test_criterion_2_degree_ten_square_weight():
    with criterion(2, "degree-10 balanced monomial on the unit square"):
        g4 = WeightPoly.monomial((4, 4))
        got = weighted_ehrhart_polynomial(SQUARE, g4)
        assert got == poly(
            0, 0, F(1, 900), 0, F(-1, 45), F(-1, 30), F(22, 225),
            F(1, 3), F(23, 60), F(1, 5), F(1, 25))
        assert weighted_series(SQUARE, g4) == gf(
            11, 0, 1, 278, 6480, 35402, 60830, 35402, 6480, 278, 1)


def test_criterion_3_degree_twelve_in_dimension_seven():
    with criterion(3, "degree-12 count on a 5-dim polytope in 7-space"):
        P = LatticePolytope([
            (1, 1, 0, 0, 0, 0, 0),
            (0, 1, 1, 0, 0, 0, 0),
            (0, 0, 1, 1, 0, 0, 0),
            (1, 0, 0, 1, 0, 0, 0),
            (0, 0, 0, 0, 1, 1, 0),
            (0, 0, 0, 0, 0, 1, 1),
            (0, 0, 0, 0, 1, 0, 1),
        ])
        assert P.dim == 5
        w = WeightPoly.monomial((1,) * 7)

        count = ehrhart_polynomial(P)
        assert count == (poly(1, 1) * poly(2, 1) * poly(3, 1) * poly(4, 1)
                         * poly(5, 2) * F(1, 120))

        got = weighted_ehrhart_polynomial(P, w)
        shifts = [0, -3, -2, -1, 1, 2, 3, 4]
        factors = poly(1)
        for r in shifts:
            factors = factors * poly(r, 1)
        quartic = poly(-810, 122, -143, 40, 35)
        assert got == factors * quartic * F(1, 59875200)

        assert [got(n) for n in range(4)] == [0, 0, 0, 0]
        assert got(4) == 6
        # The small values again, from raw enumeration this time.
        assert [weighted_sum(P, w, n) for n in range(5)] == [0, 0, 0, 0, 6]


def test_criterion_4_image_count_suite():
    with criterion(4, "distinct-image counting suite"):
        wedge = LatticePolytope([(1, 1), (3, 0), (2, 3)])
        W = LinearWeightTuple([(1, 2)])
        assert hilbert_value(wedge, W, 0) == 1
        assert [hilbert_value(wedge, W, n) for n in range(1, 9)] == \
            [5 * n - 1 for n in range(1, 9)]
        fit, onset = hilbert_polynomial(wedge, W)
        assert fit == poly(-1, 5)
        assert onset == 1
        assert hilbert_series(wedge, W) == gf(2, 1, 2, 2)
        gap = image_gap_report(wedge, W, 1)
        assert gap.image_count == 4
        assert gap.dilated_image_lattice_count == 6
        assert gap.strict
        for n in range(9):
            assert image_gap_report(wedge, W, n).dilated_image_lattice_count \
                == 5 * n + 1


def _random_nonneg_polytope(rng, s, coord_max, nondegenerate=False,
                            full_dim=False):
    while True:
        m = rng.randint(1, s + 2)
        P = LatticePolytope(random_vertices(rng, s, m, 0, coord_max))
        if nondegenerate and any(
                all(v[i] == 0 for v in P.vertices) for i in range(s)):
            continue
        if full_dim and P.dim != s:
            continue
        return P


def test_criterion_5_property_suites():
    with criterion(5, "randomized property suites"):
        _suite_basics_and_degree()
        _suite_lift_agreement()
        _suite_reciprocity()
        _suite_root_vanishing()
        _suite_series_algebra()


def _suite_basics_and_degree():
    rng = random.Random(20260814)
    for case in range(55):
        s = rng.randint(1, 3)
        coord_max = 4 if s < 3 else 3
        P = LatticePolytope(
            random_vertices(rng, s, rng.randint(1, s + 2), -coord_max, coord_max))
        w = WeightPoly(s, random_weight_terms(rng, s, 3, rng.randint(1, 3)))
        u = WeightPoly(s, random_weight_terms(rng, s, 3, rng.randint(1, 3)))
        a = F(rng.randint(-3, 3), rng.randint(1, 3))
        b = F(rng.randint(-3, 3), rng.randint(1, 3))
        Ew = weighted_ehrhart_polynomial(P, w)
        Eu = weighted_ehrhart_polynomial(P, u)
        assert Ew(0) == w.constant_term
        combo = weighted_ehrhart_polynomial(P, a * w + b * u)
        assert combo == a * Ew + b * Eu
        assert Ew.degree <= P.dim + w.degree

    for case in range(55):
        s = rng.randint(1, 3)
        coord_max = 4 if s < 3 else 3
        P = _random_nonneg_polytope(rng, s, coord_max, nondegenerate=True)
        exps = random_monomial_exponents(rng, s, 3)
        coeff = F(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
        mono = WeightPoly.monomial(exps, coeff)
        got = weighted_ehrhart_polynomial(P, mono)
        assert got.degree == P.dim + sum(exps)


def _suite_lift_agreement():
    rng = random.Random(8191)
    for case in range(55):
        s = rng.randint(1, 3)
        P = _random_nonneg_polytope(rng, s, 4 if s < 3 else 3)
        row = [rng.randint(0, 3) for _ in range(s)]
        if not any(row):
            row[rng.randrange(s)] = rng.randint(1, 3)
        w = WeightPoly(s, {tuple(int(i == j) for j in range(s)): c
                           for i, c in enumerate(row) if c})
        direct = weighted_ehrhart_polynomial(P, w)
        lifted = ehrhart_polynomial(linear_lift(P, w)) - ehrhart_polynomial(P)
        assert direct == lifted

        offset = F(rng.randint(-8, 8), rng.randint(1, 4))
        shifted = w + WeightPoly.constant(s, offset)
        assert weighted_by_affine_lift(P, row, offset) == \
            weighted_ehrhart_polynomial(P, shifted)


def _suite_reciprocity():
    rng = random.Random(605)
    cases = [(rng.randint(1, 2), 4) for _ in range(44)] + [(3, 2)] * 8
    for s, coord_max in cases:
        P = _random_nonneg_polytope(rng, s, coord_max, full_dim=True)
        exps = random_monomial_exponents(rng, s, 3)
        mono = WeightPoly.monomial(exps, 1)
        got = weighted_ehrhart_polynomial(P, mono)
        sign = (-1) ** (s + sum(exps))
        for n in range(1, 5):
            inside = box_weighted_sum(P.vertices, mono, n, interior=True)
            assert inside == sign * got(-n)


def _suite_root_vanishing():
    rng = random.Random(1729)
    roots_seen = 0
    for case in range(55):
        s = rng.randint(1, 3)
        P = _random_nonneg_polytope(rng, s, 4 if s < 3 else 3, full_dim=True)
        degree = rng.randint(1, 3)
        terms = {}
        for _ in range(rng.randint(1, 3)):
            exps = random_monomial_exponents(rng, s, 3, total=degree)
            terms[exps] = F(rng.randint(1, 3), rng.randint(1, 3))
        w = WeightPoly(s, terms)
        report = check_negative_root_vanishing(P, w, spot_check=False)
        assert report.all_vanish
        roots_seen += len(report.entries)
    assert roots_seen >= 5


def _suite_series_algebra():
    rng = random.Random(2357)
    for case in range(55):
        degree = rng.randint(0, 6)
        coeffs = [F(rng.randint(-9, 9), rng.randint(1, 4))
                  for _ in range(degree + 1)]
        g = UniPoly(coeffs)
        series = gf_of_polynomial(g)
        assert expand(series, 12) == [g(n) for n in range(13)]

    for d in range(9):
        recurrence = eulerian_row(d)
        for k in range(d + 1):
            assert eulerian(d, k) == recurrence[k]
    for _ in range(55):
        d = rng.randint(0, 8)
        k = rng.randint(0, d)
        assert eulerian(d, k) == eulerian_row(d)[k]

    for d in range(1, 13):
        series = cube_series(d)
        assert series.numerator.degree == d - 1
        assert series.denom_power == d + 1
        assert series.numerator.degree - series.denom_power == -2

    for case in range(55):
        s = rng.randint(1, 3)
        coord_max = 4 if s < 3 else 3
        P = LatticePolytope(
            random_vertices(rng, s, rng.randint(1, s + 2), -coord_max, coord_max))
        series = gf_of_polynomial(ehrhart_polynomial(P))
        assert all(c >= 0 for c in series.numerator.coeffs)


def test_criterion_6_cli_contract(tmp_path):
    with criterion(6, "command-line lift contract"):
        source = tmp_path / "segment.in"
        source.write_text("amb_space 3\npolytope 2\n2 0\n0 2\n")
        proc = subprocess.run(
            [sys.executable, "-m", "ehrwt.cli", "lift",
             "--file", str(source), "--weight", "t1+t2"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        lines = proc.stdout.splitlines()
        assert "polynomial: 4*n^2 + 2*n" in lines
        assert "series: (2*x^2+6*x)/(1-x)^3" in lines
