from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from siegel_domains.catalog import CONE_CATALOG, boundary_stabilizer_family
from siegel_domains.cones import (
    BOUNDARY,
    INTERIOR,
    OUTSIDE,
    ConeError,
    automorphism_algebra_basis,
    canonical_interior_point,
    contains,
    dimension_bound,
    halfline,
    infinitesimal_transitivity,
    is_closed_under_bracket,
    is_linearly_independent,
    lorentz,
    orthant,
    product,
    sample_interior_points,
)
from siegel_domains.linalg import Matrix

ALL_CONES = [halfline(), *CONE_CATALOG.values(), product(lorentz(3), lorentz(3)), lorentz(5)]


@pytest.mark.parametrize("cone, dim", [
    (orthant(2), 2), (orthant(3), 3), (lorentz(3), 4), (orthant(4), 4),
    (product(lorentz(3), halfline()), 5), (lorentz(4), 7), (halfline(), 1),
])
def test_algebra_dimensions(cone, dim):
    assert len(automorphism_algebra_basis(cone)) == dim


def test_orthant_flattens_to_halflines():
    assert orthant(3) == product(halfline(), orthant(2))
    assert orthant(3).k == 3


def test_lorentz_needs_three_dimensions():
    with pytest.raises(ConeError):
        lorentz(2)


@pytest.mark.parametrize("k, bound", [(1, 1), (2, 2), (3, 4), (4, 7), (5, 11)])
def test_dimension_bound(k, bound):
    assert dimension_bound(k) == bound


@pytest.mark.parametrize("cone", ALL_CONES, ids=str)
def test_basis_is_a_lie_algebra(cone):
    basis = automorphism_algebra_basis(cone).basis
    assert is_linearly_independent(basis)
    assert is_closed_under_bracket(basis)
    assert len(basis) <= dimension_bound(cone.k)


@pytest.mark.parametrize("cone", ALL_CONES, ids=str)
def test_flow_keeps_interior_points_inside(cone):
    t = Fraction(1, 1000)
    for x in [canonical_interior_point(cone)] + sample_interior_points(cone, 4, seed=3):
        for a in automorphism_algebra_basis(cone).basis:
            ax = [v.re for v in a @ list(x)]
            for sign in (1, -1):
                y = [xi + sign * t * d for xi, d in zip(x, ax)]
                assert contains(cone, y) == INTERIOR


@pytest.mark.parametrize("cone, x, status", [
    (lorentz(3), (1, 0, 0), INTERIOR),
    (lorentz(3), (1, 1, 0), BOUNDARY),
    (orthant(3), (1, -1, 1), OUTSIDE),
    (orthant(2), (0, 0), BOUNDARY),
    (lorentz(4), (-2, 0, 0, 0), OUTSIDE),
    (product(lorentz(3), halfline()), (2, 1, 1, 1), INTERIOR),
])
def test_contains(cone, x, status):
    assert contains(cone, x) == status


def test_contains_dimension_mismatch():
    with pytest.raises(ConeError):
        contains(lorentz(3), (1, 0))


@given(st.sampled_from(ALL_CONES), st.data())
def test_contains_scale_invariant(cone, data):
    x = data.draw(st.lists(st.integers(-5, 5), min_size=cone.k, max_size=cone.k))
    c = data.draw(st.fractions(min_value=Fraction(1, 7), max_value=9))
    assert contains(cone, x) == contains(cone, [c * t for t in x])


def test_sampled_points_are_interior_and_seeded():
    for cone in ALL_CONES:
        pts = sample_interior_points(cone, 8, seed=11)
        assert pts == sample_interior_points(cone, 8, seed=11)
        assert all(contains(cone, p) == INTERIOR for p in pts)


def test_transitivity_of_full_algebra():
    h = automorphism_algebra_basis(orthant(3)).basis
    v = infinitesimal_transitivity(h, orthant(3), base_points=[(1, 2, 3)])
    assert v.verdict == "transitive-certified"


def test_scalars_not_transitive_on_quadrant():
    v = infinitesimal_transitivity([Matrix.identity(2)], orthant(2))
    assert v.verdict == "not-transitive"


def test_stabilizer_family_spans_at_axis_point():
    v = infinitesimal_transitivity(boundary_stabilizer_family(), lorentz(3), base_points=[(1, 0, 0)])
    assert v.transitive and v.ranks == (3,)


def test_mixed_ranks_are_inconclusive():
    # both images lie on the first axis: deficient everywhere
    h = [Matrix.from_rows([[1, 0], [0, 0]]), Matrix.from_rows([[0, 1], [0, 0]])]
    v = infinitesimal_transitivity(h, orthant(2), base_points=[(1, 1), (2, 3)])
    assert v.verdict == "not-transitive"
    h2 = [Matrix.from_rows([[1, 0], [0, 0]]), Matrix.from_rows([[0, 0], [1, -1]])]
    # A2 x = (0, x1 - x2) vanishes on the diagonal
    v2 = infinitesimal_transitivity(h2, orthant(2), base_points=[(1, 1), (1, 2)])
    assert v2.verdict == "inconclusive"


def test_non_interior_base_point_rejected():
    with pytest.raises(ConeError):
        infinitesimal_transitivity([Matrix.identity(3)], lorentz(3), base_points=[(1, 1, 0)])
