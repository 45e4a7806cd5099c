"""Distinct-image counting layer: values, eventual polynomial with onset,
series, and the gap between images and the dilated image hull."""

import random

import pytest

from ehrwt import (
    LatticePolytope,
    LinearWeightTuple,
    RationalGF,
    UniPoly,
    ehrhart_polynomial,
    expand,
    hilbert_polynomial,
    hilbert_series,
    hilbert_value,
    image_gap_report,
    image_polytope,
    lattice_points,
)
from ehrwt.errors import UndeterminedFitError

from oracles import box_points, random_vertices

WEDGE = LatticePolytope([(1, 1), (3, 0), (2, 3)])
FORM = LinearWeightTuple([[1, 2]])
UNIT_SQUARE = LatticePolytope([(0, 0), (1, 0), (0, 1), (1, 1)])
IDENTITY2 = LinearWeightTuple([[1, 0], [0, 1]])
UNIT_INTERVAL = LatticePolytope([(0,), (1,)])
DOUBLER = LinearWeightTuple([[2]])


# ---------------------------------------------------------------- tuples

def test_tuple_validation():
    with pytest.raises(ValueError):
        LinearWeightTuple([])
    with pytest.raises(ValueError):
        LinearWeightTuple([[1, -1]])
    with pytest.raises(ValueError):
        LinearWeightTuple([[1, 2], [3]])
    with pytest.raises((TypeError, ValueError)):
        LinearWeightTuple([[1.5]])


def test_tuple_apply():
    assert FORM.apply((2, 3)) == (8,)
    assert IDENTITY2.apply((4, 7)) == (4, 7)
    with pytest.raises(ValueError):
        FORM.apply((1, 2, 3))
    assert FORM == LinearWeightTuple([(1, 2)])
    assert hash(FORM) == hash(LinearWeightTuple([[1, 2]]))


# ---------------------------------------------------------------- values

def test_hilbert_value_fixtures():
    assert hilbert_value(WEDGE, FORM, 0) == 1
    assert hilbert_value(WEDGE, FORM, 1) == 4
    assert hilbert_value(WEDGE, FORM, 2) == 9
    for n in range(1, 9):
        assert hilbert_value(WEDGE, FORM, n) == 5 * n - 1


def test_hilbert_value_validation():
    with pytest.raises(ValueError):
        hilbert_value(WEDGE, FORM, -1)
    with pytest.raises(ValueError):
        hilbert_value(WEDGE, LinearWeightTuple([[1]]), 1)
    shifted = LatticePolytope([(-1, 0), (1, 0)])
    with pytest.raises(ValueError):
        hilbert_value(shifted, FORM, 1)


def test_hilbert_value_against_box_oracle():
    rng = random.Random(8152)
    for case in range(30):
        s = rng.randint(1, 2)
        verts = random_vertices(rng, s, rng.randint(1, 4), 0, 3)
        P = LatticePolytope(verts)
        p = rng.randint(1, 2)
        W = LinearWeightTuple(
            [[rng.randint(0, 2) for _ in range(s)] for _ in range(p)]
        )
        n = rng.randint(0, 3)
        images = {W.apply(a) for a in box_points(verts, n)}
        assert hilbert_value(P, W, n) == len(images)


def test_image_polytope():
    img = image_polytope(WEDGE, FORM)
    assert set(img.vertices) == {(3,), (8,)}
    assert img.dim == 1


# ---------------------------------------------------------------- fits

def test_fit_fixture_wedge():
    fit, onset = hilbert_polynomial(WEDGE, FORM)
    assert fit == UniPoly([-1, 5])
    assert onset == 1


def test_fit_identity_tuple_recovers_counting_polynomial():
    fit, onset = hilbert_polynomial(UNIT_SQUARE, IDENTITY2)
    assert fit == ehrhart_polynomial(UNIT_SQUARE) == UniPoly([1, 2, 1])
    assert onset == 0


def test_fit_even_numbers():
    # images of [0,n] under multiplication by two: 0, 2, ..., 2n
    fit, onset = hilbert_polynomial(UNIT_INTERVAL, DOUBLER)
    assert fit == UniPoly([1, 1])
    assert onset == 0


def test_fit_parameter_validation():
    with pytest.raises(ValueError):
        hilbert_polynomial(WEDGE, FORM, max_onset=-1)
    with pytest.raises(ValueError):
        hilbert_polynomial(WEDGE, FORM, margin=0)


def test_fit_undetermined_carries_samples():
    with pytest.raises(UndeterminedFitError) as info:
        hilbert_polynomial(WEDGE, FORM, max_onset=0)
    assert isinstance(info.value.samples, dict)


# ---------------------------------------------------------------- series

def test_series_fixtures():
    assert hilbert_series(WEDGE, FORM) == RationalGF(UniPoly([1, 2, 2]), 2)
    assert hilbert_series(UNIT_SQUARE, IDENTITY2) == RationalGF(UniPoly([1, 1]), 3)
    assert hilbert_series(UNIT_INTERVAL, DOUBLER) == RationalGF(UniPoly([1]), 2)


def test_series_expansion_reproduces_values():
    for P, W in ((WEDGE, FORM), (UNIT_SQUARE, IDENTITY2), (UNIT_INTERVAL, DOUBLER)):
        coeffs = expand(hilbert_series(P, W), 15)
        assert coeffs == [hilbert_value(P, W, n) for n in range(16)]


# ---------------------------------------------------------------- image gap

def test_gap_fixture_wedge():
    report = image_gap_report(WEDGE, FORM, 1)
    assert report.image_count == 4
    assert report.dilated_image_lattice_count == 6
    assert report.strict


def test_gap_lattice_counts_grow_linearly():
    for n in range(9):
        report = image_gap_report(WEDGE, FORM, n)
        assert report.dilated_image_lattice_count == 5 * n + 1


def test_gap_identity_tuple_never_strict():
    for n in range(4):
        report = image_gap_report(UNIT_SQUARE, IDENTITY2, n)
        assert report.image_count == report.dilated_image_lattice_count
        assert not report.strict


# ---------------------------------------------------------------- invariants

def test_invariants_on_random_inputs():
    rng = random.Random(424242)
    for case in range(25):
        s = rng.randint(1, 2)
        verts = random_vertices(rng, s, rng.randint(1, 4), 0, 3)
        P = LatticePolytope(verts)
        p = rng.randint(1, 2)
        W = LinearWeightTuple(
            [[rng.randint(0, 2) for _ in range(s)] for _ in range(p)]
        )
        counting = ehrhart_polynomial(P)
        values = [hilbert_value(P, W, n) for n in range(9)]
        for n, h in enumerate(values):
            assert 1 <= h <= counting(n)
            assert h <= image_gap_report(P, W, n).dilated_image_lattice_count
        assert all(a <= b for a, b in zip(values, values[1:]))
        coeffs = expand(hilbert_series(P, W), 15)
        assert coeffs == [hilbert_value(P, W, n) for n in range(16)]
