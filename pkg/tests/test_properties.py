"""Structural invariants over every catalog spec and 50 seeded random specs."""

from fractions import Fraction

import pytest

from helpers import (
    CATALOG_ENTRIES,
    RANDOM_SEEDS,
    algebra_of,
    catalog_id,
    catalog_spec,
    random_case,
    report_of,
)
from siegel_domains.algebra import euler_defects, grading_defects, report
from siegel_domains.cones import automorphism_algebra_basis
from siegel_domains.serialize import ReportDocument, dumps

SPECS = [pytest.param(("catalog", e), id=catalog_id(e)) for e in CATALOG_ENTRIES]
SPECS += [pytest.param(("random", s), id=f"random-{s}") for s in RANDOM_SEEDS]


def _spec(key):
    kind, arg = key
    return catalog_spec(arg) if kind == "catalog" else random_case(arg)


@pytest.mark.parametrize("key", SPECS)
def test_grading_closure(key):
    assert grading_defects(algebra_of(_spec(key))) == []


@pytest.mark.parametrize("key", SPECS)
def test_euler_eigenvalues(key):
    assert euler_defects(algebra_of(_spec(key))) == []


@pytest.mark.parametrize("key", SPECS)
def test_dimension_invariants(key):
    spec = _spec(key)
    r = report_of(spec)
    d_m1, d_mh, d0, dh, d1 = r.dims
    assert (d_m1, d_mh) == (spec.k, 2 * spec.m)
    assert dh <= 2 * spec.m and d1 <= spec.k
    assert d0 == r.s + r.stabilizer_dim
    assert r.d == sum(r.dims)
    if spec.m == 0:
        assert dh == 0 and d0 == len(automorphism_algebra_basis(spec.cone))


@pytest.mark.parametrize("key", SPECS)
def test_inequality_chain(key):
    r = report_of(_spec(key))
    failed = [b.label for b in r.bound_checks if not b.holds]
    assert failed == []
    by_label = {b.label: b for b in r.bound_checks}
    # graded sum <= affine sum <= fiber sum <= quadratic bound
    assert by_label["graded-sum"].rhs <= by_label["affine-sum"].rhs <= by_label["fiber-sum"].rhs
    assert by_label["fiber-sum"].rhs <= by_label["quadratic"].rhs


@pytest.mark.parametrize("key", SPECS)
def test_kernel_vectors_are_exact(key):
    spec = _spec(key)
    ga = algebra_of(spec)
    h = spec.form.components
    for b in ga.skew:
        assert all((hj @ b + b.H @ hj).is_zero() for hj in h)
    for p in ga.zero:
        for j in range(spec.k):
            lhs = sum((h[r].scale(p.A[j, r]) for r in range(spec.k)), start=h[j].scale(0))
            assert lhs == h[j] @ p.B + p.B.H @ h[j]


@pytest.mark.parametrize("key", SPECS[::4])
def test_reports_are_deterministic(key):
    spec = _spec(key)
    first = dumps(ReportDocument.from_report(report(spec), spec.cone, generators=True).to_json())
    second = dumps(ReportDocument.from_report(report(spec), spec.cone, generators=True).to_json())
    assert first == second


def test_random_specs_are_certified():
    for seed in RANDOM_SEEDS:
        spec = random_case(seed)
        assert spec.k <= 3 and spec.m <= 2
        assert spec.validation.valid and spec.validation.certification == "exact"


def test_grades_are_the_five_expected():
    spec = catalog_spec(("ball", (2,)))
    assert sorted(algebra_of(spec).fields()) == [Fraction(-1), Fraction(-1, 2), 0, Fraction(1, 2), 1]
