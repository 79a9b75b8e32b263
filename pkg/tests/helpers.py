"""Shared fixtures data: catalog specs and seeded random valid specs."""

from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import lru_cache

from siegel_domains.algebra import graded_algebra, make_domain, report
from siegel_domains.catalog import named_domain
from siegel_domains.cones import halfline, lorentz, product
from siegel_domains.hermitian import HermitianTuple
from siegel_domains.linalg import GaussianRational, Matrix

CATALOG_ENTRIES = [
    ("ball", (1,)), ("ball", (2,)), ("ball", (3,)), ("ball", (4,)),
    ("polydisc", (2,)), ("polydisc", (3,)),
    ("D1", (3,)), ("D1", (4,)), ("D2", (3,)), ("D2", (4,)),
    ("D3", (1, 1, 0, 1)), ("D3", (1, 0, 0, 1)), ("D3", (2, 1, 1, 3)),
    ("D4", (1, 1, 0, 1)),
    ("D5", (1, 0, 0)), ("D5", (1, 1, 0)), ("D5", (1, 2, 3)),
    ("D6", (1, 1, 0)), ("D6", (2, 1, 0)),
    ("D7", ()),
    ("D8", (1, 1, 0)), ("D8", (2, 1, 0)),
    ("T3", ()), ("T4", ()),
    ("tube", ("lorentz:3", "halfline")),
    ("product", ("ball:1", "T3")), ("product", ("ball:2", "ball:2")),
    ("product", ("ball:2", "ball:1", "ball:1")),
]


def catalog_id(entry) -> str:
    name, params = entry
    return f"{name}({','.join(map(str, params))})" if params else name


@lru_cache(maxsize=None)
def catalog_spec(entry):
    name, params = entry
    return named_domain(name, params).spec


def _random_matrix(rng: random.Random, m: int) -> Matrix:
    return Matrix.from_rows([[GaussianRational(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(m)]
                             for _ in range(m)])


def _psd(rng: random.Random, m: int, definite: bool) -> Matrix:
    a = _random_matrix(rng, m)
    h = a.H @ a
    if definite:
        h = h + Matrix.identity(m)
    return h


def random_spec(seed: int):
    """A valid Siegel domain with k <= 3 and m <= 2, built to be certifiably Omega-Hermitian."""
    rng = random.Random(seed)
    shape = rng.choice(["R+", "R+^2", "R+^3", "L3"])
    m = rng.randint(0, 2)
    if shape == "L3":
        cone = lorentz(3)
    else:
        cone = product(*[halfline()] * {"R+": 1, "R+^2": 2, "R+^3": 3}[shape])
    if m == 0:
        return make_domain(cone, HermitianTuple.zero(cone.k))
    if shape == "L3":
        v2, v3 = rng.randint(-3, 3), rng.randint(-3, 3)
        v1 = max(1, math.isqrt(v2 * v2 + v3 * v3 - 1) + 1) + rng.randint(0, 1)
        q = _psd(rng, m, True)
        form = HermitianTuple.scaled((Fraction(v1), Fraction(v2), Fraction(v3)), q)
    else:
        comps = [_psd(rng, m, True)]
        for _ in range(cone.k - 1):
            kind = rng.choice(["zero", "diag", "psd"])
            if kind == "zero":
                comps.append(Matrix.zeros(m))
            elif kind == "diag":
                comps.append(Matrix.diag([rng.randint(0, 2) for _ in range(m)]))
            else:
                comps.append(_psd(rng, m, False))
        form = HermitianTuple.of(comps)
    return make_domain(cone, form)


RANDOM_SEEDS = list(range(50))


@lru_cache(maxsize=None)
def random_case(seed: int):
    return random_spec(seed)


@lru_cache(maxsize=None)
def algebra_of(spec):
    return graded_algebra(spec)


@lru_cache(maxsize=None)
def report_of(spec):
    return report(spec)
