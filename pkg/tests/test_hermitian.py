from fractions import Fraction
from itertools import product as cartesian

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from siegel_domains.cones import lorentz, orthant
from siegel_domains.hermitian import (
    HermitianError,
    HermitianTuple,
    is_positive_definite,
    is_positive_semidefinite,
    pair_normal_form,
    positive_combination,
    proportionality_factors,
    skew_space,
    validate_omega_hermitian,
)
from siegel_domains.linalg import I, GaussianRational, Matrix

ONE_BY_ONE = Matrix.identity(1)


def test_component_must_be_hermitian():
    with pytest.raises(HermitianError):
        HermitianTuple.of([Matrix.from_rows([[1, I], [I, 1]])])


def test_form_convention_is_antilinear_in_first_slot():
    h = HermitianTuple.of([ONE_BY_ONE])
    assert h.value([I], [1]) == (-I,)
    assert h.value([1], [I]) == (I,)


@pytest.mark.parametrize("rows, pd, psd", [
    ([[2, 1], [1, 2]], True, True),
    ([[1, 1], [1, 1]], False, True),
    ([[0, 0], [0, 1]], False, True),
    ([[1, 2], [2, 1]], False, False),
    ([[0, 1], [1, 0]], False, False),
    ([[2, I], [-I, 1]], True, True),
])
def test_definiteness(rows, pd, psd):
    m = Matrix.from_rows(rows)
    assert is_positive_definite(m) is pd
    assert is_positive_semidefinite(m) is psd


@settings(max_examples=50)
@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_gram_matrices_are_psd(entries):
    a = Matrix.from_rows([entries[:2], entries[2:]])
    g = a.H @ a
    assert is_positive_semidefinite(g)
    assert is_positive_definite(g) == (entries[0] * entries[3] != entries[1] * entries[2])


def test_boundary_direction_is_valid():
    v = validate_omega_hermitian(lorentz(3), HermitianTuple.scaled((1, 1, 0), ONE_BY_ONE))
    assert v.valid and v.certification == "exact"


def test_direction_outside_lorentz_cone_is_invalid():
    v = validate_omega_hermitian(lorentz(3), HermitianTuple.scaled((1, 2, 0), ONE_BY_ONE))
    assert not v.valid


def test_vanishing_form_is_invalid():
    v = validate_omega_hermitian(orthant(2), HermitianTuple.of([Matrix.zeros(1), Matrix.zeros(1)]))
    assert not v.valid


def test_non_proportional_lorentz_block_is_sampled_only():
    # H(w,w) = (|w1|^2 + |w2|^2, |w1|^2 - |w2|^2, 0) lies on the boundary circle direction
    h = HermitianTuple.of([Matrix.diag([1, 1]), Matrix.diag([1, -1]), Matrix.zeros(2)])
    v = validate_omega_hermitian(lorentz(3), h)
    assert v.valid and v.certification == "sampled-only" and v.samples > 0


def test_indefinite_orthant_component_rejected():
    h = HermitianTuple.of([Matrix.identity(2), Matrix.diag([1, -1])])
    assert not validate_omega_hermitian(orthant(2), h).valid


def test_dimension_mismatch():
    with pytest.raises(HermitianError):
        validate_omega_hermitian(orthant(3), HermitianTuple.of([ONE_BY_ONE, ONE_BY_ONE]))


@pytest.mark.parametrize("cone, comps, expected", [
    (orthant(2), [Matrix.identity(2), Matrix.diag([2, 3])], (1, 0)),
    (lorentz(3), [ONE_BY_ONE, ONE_BY_ONE, Matrix.zeros(1)], (1, 0, 0)),
    (orthant(2), [Matrix.diag([1, 0]), Matrix.diag([0, 1])], (1, 1)),
])
def test_positive_combination(cone, comps, expected):
    assert positive_combination(cone, HermitianTuple.of(comps)) == tuple(map(Fraction, expected))


@pytest.mark.parametrize("comps, s", [
    ([Matrix.identity(2), Matrix.diag([2, 3])], 2),
    ([Matrix.identity(3), Matrix.diag([2, 3, 3])], 5),
    ([ONE_BY_ONE, ONE_BY_ONE, Matrix.zeros(1)], 1),
    ([Matrix.identity(2), Matrix.identity(2), Matrix.zeros(2)], 4),
])
def test_skew_space_dimension(comps, s):
    basis = skew_space(HermitianTuple.of(comps))
    assert basis.s == s
    for b in basis.basis:
        for hj in comps:
            assert (hj @ b + b.H @ hj).is_zero()


def test_full_skew_space_is_unitary_algebra():
    basis = skew_space(HermitianTuple.of([Matrix.identity(2), Matrix.identity(2), Matrix.zeros(2)])).basis
    assert all((b + b.H).is_zero() for b in basis)


@pytest.mark.parametrize("lam", list(cartesian([1, 2, 3], repeat=3)))
def test_diagonal_pair_skew_count(lam):
    h = HermitianTuple.of([Matrix.identity(3), Matrix.diag(lam)])
    equal = sum(1 for i in range(3) for j in range(i + 1, 3) if lam[i] == lam[j])
    assert skew_space(h).s == 2 * equal + 3


def test_commutant_forces_proportional_components():
    for comps in ([Matrix.identity(2), Matrix.identity(2), Matrix.zeros(2)],
                  [Matrix.diag([2, 2]), Matrix.diag([1, 1]), Matrix.diag([1, 1])]):
        h = HermitianTuple.of(comps)
        assert skew_space(h).s == h.m ** 2
        assert proportionality_factors(comps) is not None
    h = HermitianTuple.of([Matrix.diag([2, 1]), Matrix.diag([1, 0]), Matrix.zeros(2)])
    assert skew_space(h).s < 4
    assert proportionality_factors(h.components) is None


@pytest.mark.parametrize("h1, h2, lam, distinct, equal", [
    (Matrix.identity(2), Matrix.diag([2, 3]), (3, 2), 1, 0),
    (Matrix.identity(2), Matrix.identity(2), (1, 1), 0, 1),
    (Matrix.diag([1, 4]), Matrix.diag([1, 8]), (2, 1), 1, 0),
])
def test_pair_normal_form(h1, h2, lam, distinct, equal):
    nf = pair_normal_form(h1, h2)
    assert nf.eigenvalues == tuple(map(Fraction, lam))
    assert nf.distinct_pairs == distinct and nf.equal_pairs == equal
    p = nf.basis
    d1 = p.H @ h1 @ p
    d2 = p.H @ h2 @ p
    assert d1 == Matrix.diag(nf.h1_diagonal)
    assert d2 == Matrix.diag([a * b for a, b in zip(nf.h1_diagonal, nf.eigenvalues)])


def test_pair_normal_form_non_diagonal_input():
    p = Matrix.from_rows([[1, I], [0, 2]])
    h1 = p.H @ p
    h2 = p.H @ Matrix.diag([5, -1]) @ p
    nf = pair_normal_form(h1, h2)
    assert nf.eigenvalues == (Fraction(5), Fraction(-1))


def test_irrational_eigenvalues_rejected():
    with pytest.raises(HermitianError, match="not representable over Q"):
        pair_normal_form(Matrix.identity(2), Matrix.from_rows([[1, 1], [1, 2]]))


def test_pair_normal_form_needs_definite_first_form():
    with pytest.raises(HermitianError):
        pair_normal_form(Matrix.diag([1, 0]), Matrix.identity(2))


def test_direct_sum_blocks():
    a = HermitianTuple.of([ONE_BY_ONE])
    b = HermitianTuple.of([Matrix.identity(2), Matrix.zeros(2)])
    s = a.direct_sum(b)
    assert (s.k, s.m) == (3, 3)
    assert s.value([0, 1, 0]) == (GaussianRational(0), GaussianRational(1), GaussianRational(0))
