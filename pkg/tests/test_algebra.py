from fractions import Fraction

import pytest

from siegel_domains.algebra import (
    DomainError,
    bound_rhs,
    g_half,
    g_one,
    g_zero,
    make_domain,
    polarization_set,
    real_basis,
    report,
    stabilizer_algebra,
)
from siegel_domains.catalog import CONE_CATALOG, boundary_stabilizer_family, named_domain
from siegel_domains.cones import automorphism_algebra_basis, span_contains
from siegel_domains.hermitian import HermitianTuple
from siegel_domains.linalg import Matrix


def spec(name, *params):
    return named_domain(name, params).spec


def test_polarization_sets():
    assert len(real_basis(2)) == 4
    assert len(polarization_set(2)) == 2 + 2 * 1
    assert len(polarization_set(3)) == 3 + 2 * 3


def test_invalid_form_rejected():
    with pytest.raises(DomainError, match="Omega-Hermitian"):
        make_domain(CONE_CATALOG["Omega3"], HermitianTuple.scaled((1, 2, 0), Matrix.identity(1)))


def test_unvalidated_domain_is_flagged():
    d = make_domain(CONE_CATALOG["Omega1"], HermitianTuple.of([Matrix.identity(1)] * 2), validate=False)
    assert not d.validated
    assert report(d).validation == "unvalidated"


@pytest.mark.parametrize("domain, g0, stab", [
    (spec("D6", 1, 1, 0), 4, 3),
    (spec("D8", 1, 1, 0), 7, 3),
    (spec("tube", "orthant:4"), 4, 4),
])
def test_degree_zero(domain, g0, stab):
    pairs = g_zero(domain)
    assert len(pairs) == g0
    assert len(stabilizer_algebra(domain, pairs)) == stab


@pytest.mark.parametrize("domain", [spec("D6", 1, 1, 0), spec("D3", 1, 1, 0, 1), spec("ball", 3),
                                    spec("D7"), spec("D8", 1, 1, 0)])
def test_associated_pairs_satisfy_defining_identity(domain):
    h = domain.form.components
    cone_alg = automorphism_algebra_basis(domain.cone).basis
    for p in g_zero(domain):
        assert span_contains(cone_alg, [p.A])
        for j in range(domain.k):
            lhs = Matrix.zeros(domain.m)
            for r in range(domain.k):
                lhs = lhs + h[r].scale(p.A[j, r])
            assert lhs == h[j] @ p.B + p.B.H @ h[j]


def test_stabilizer_matches_displayed_family():
    stab = stabilizer_algebra(spec("D6", 1, 1, 0))
    family = boundary_stabilizer_family()
    assert span_contains(stab, family) and span_contains(family, stab)


@pytest.mark.parametrize("domain", [spec("D2", 4), spec("D5", 1, 2, 3)])
def test_stabilizer_is_scalars(domain):
    stab = stabilizer_algebra(domain)
    assert len(stab) == 1
    assert span_contains(stab, [Matrix.identity(domain.k)])


@pytest.mark.parametrize("domain, half, one", [
    (spec("D3", 1, 1, 0, 1), 0, 0),
    (spec("D6", 1, 1, 0), 0, 1),
    (spec("ball", 4), 6, 1),
    (spec("T4"), 0, 4),
])
def test_positive_grades(domain, half, one):
    assert len(g_half(domain)) == half
    assert len(g_one(domain)) == one


def test_half_generators_have_symmetric_c():
    for gen in g_half(spec("ball", 3)):
        assert all(c == c.T for c in gen.c)


def test_one_generators_have_symmetric_a():
    for gen in g_one(spec("T3")):
        assert all(a == a.T for a in gen.a)


@pytest.mark.parametrize("domain, d", [
    (spec("tube", "lorentz:3", "halfline"), 13),
    (spec("T4"), 15),
    (spec("polydisc", 4), 12),
    (spec("ball", 4), 24),
])
def test_report_totals(domain, d):
    r = report(domain)
    assert r.d == d == sum(r.dims)
    assert r.bounds_hold


def test_d6_report():
    r = report(spec("D6", 1, 1, 0))
    assert r.dims == (3, 2, 4, 0, 1)
    assert r.homogeneity.verdict == "transitive-certified"


@pytest.mark.parametrize("n, k, rhs", [(5, 4, 20), (6, 3, 31), (5, 3, 22), (4, 3, 15), (4, 4, 15)])
def test_bound_rhs(n, k, rhs):
    assert bound_rhs(n, k) == rhs


def test_bound_rhs_range():
    with pytest.raises(ValueError):
        bound_rhs(3, 4)


def test_bound_labels_are_descriptive():
    labels = [b.label for b in report(spec("ball", 2)).bound_checks]
    assert labels == ["cone-dimension", "half-dimension", "one-dimension", "degree-zero-split", "stabilizer",
                      "graded-sum", "affine-sum", "skew-dimension", "fiber-sum", "quadratic"]


def test_fields_respect_shapes():
    f = report(spec("D6", 1, 1, 0)).algebra.fields()
    assert [len(f[Fraction(g)]) for g in (-1, Fraction(-1, 2), 0, Fraction(1, 2), 1)] == [3, 2, 4, 0, 1]
    for grade, gens in f.items():
        for x in gens:
            assert x.weights() == {grade}
