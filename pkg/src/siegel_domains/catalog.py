"""Named domains and end-to-end verification of the classification values.

Named families:

``ball(n)``            unbounded ball realization, cone R+, H = |w|^2 on C^(n-1)
``polydisc(n)``        tube over the orthant of R^n
``D1(n)``, ``D2(n)``   orthant R^2, H = (|w|^2, 0) and (|w|^2, |w|^2) on C^(n-2)
``D3(a,b,c,d)``        orthant R^2, H = (a|w1|^2 + b|w2|^2, c|w1|^2 + d|w2|^2)
``D4(a,b,c,d)``        as D3 on C^3 with the second eigenvalue doubled
``D5(v)``, ``D6(v)``   H = v|w|^2 on C over the orthant of R^3 / Lorentz(3)
``D7(...)``            diagonal orthant-Hermitian triple on C^2
``D8(v)``              H = v|w|^2 on C^2 over Lorentz(3)
``T3``, ``T4``         tubes over Lorentz(3), Lorentz(4)
``tube(cone...)``      tube over a product of atoms
``product(...)``       direct product of named domains
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .algebra import (
    DomainError,
    GradedReport,
    SiegelDomain,
    bound_rhs,
    make_domain,
    report,
)
from .cones import (
    Cone,
    automorphism_algebra_basis,
    dimension_bound,
    halfline,
    infinitesimal_transitivity,
    lorentz,
    orthant,
    product,
)
from .hermitian import HermitianTuple, proportionality_factors, skew_space
from .linalg import Matrix, RowSpace

__all__ = [
    "NamedDomain",
    "named_domain",
    "parse_cone_token",
    "VerificationRow",
    "verify_paper",
    "BoundRow",
    "bound_scan",
    "elimination_pattern_holds",
    "CaseStep",
    "CaseAnalysis",
    "case_analysis",
    "CONE_CATALOG",
    "domain_report",
    "boundary_stabilizer_family",
]

# the six homogeneous cones of dimension 2, 3, 4
CONE_CATALOG: dict[str, Cone] = {
    "Omega1": orthant(2),
    "Omega2": orthant(3),
    "Omega3": lorentz(3),
    "Omega4": orthant(4),
    "Omega5": product(lorentz(3), halfline()),
    "Omega6": lorentz(4),
}


@dataclass(frozen=True)
class NamedDomain:
    name: str
    params: tuple
    spec: SiegelDomain
    expected_d: int | None = None
    note: str = ""

    @property
    def label(self) -> str:
        if not self.params:
            return self.name
        return f"{self.name}({', '.join(str(p) for p in self.params)})"


def _q(x) -> Fraction:
    try:
        return Fraction(x)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"parameter {x!r} is not an exact rational") from exc


def _nat(params, name, lo):
    if len(params) != 1:
        raise DomainError(f"{name} takes exactly one integer parameter n")
    try:
        n = int(params[0])
    except (TypeError, ValueError) as exc:
        raise DomainError(f"{name}: n must be an integer") from exc
    if str(n) != str(params[0]).strip() and not isinstance(params[0], int):
        raise DomainError(f"{name}: n must be an integer")
    if n < lo:
        raise DomainError(f"{name}: need n >= {lo}")
    return n


def parse_cone_token(token: str) -> Cone:
    """``halfline``, ``orthant:K`` or ``lorentz:K``."""
    kind, _, arg = token.partition(":")
    kind = kind.strip().lower()
    if kind == "halfline" and not arg:
        return halfline()
    try:
        k = int(arg)
    except ValueError as exc:
        raise DomainError(f"bad cone token {token!r}") from exc
    if kind == "orthant":
        return orthant(k)
    if kind == "lorentz":
        return lorentz(k)
    raise DomainError(f"bad cone token {token!r}")


def _ball(n: int) -> SiegelDomain:
    if n == 1:
        return make_domain(halfline(), HermitianTuple.zero(1))
    return make_domain(halfline(), HermitianTuple.of([Matrix.identity(n - 1)]))


def _tube(cone: Cone) -> SiegelDomain:
    return make_domain(cone, HermitianTuple.zero(cone.k))


def _d34(name: str, params, repeat: int, validate: bool) -> SiegelDomain:
    if len(params) != 4:
        raise DomainError(f"{name} takes four parameters alpha, beta, gamma, delta")
    a, b, c, d = (_q(p) for p in params)
    if min(a, b, c, d) < 0:
        raise DomainError(f"{name}: need alpha, beta, gamma, delta >= 0")
    if a * d - b * c == 0:
        raise DomainError(f"{name}: need det((alpha, beta), (gamma, delta)) != 0")
    h1 = Matrix.diag([a] + [b] * repeat)
    h2 = Matrix.diag([c] + [d] * repeat)
    return make_domain(orthant(2), HermitianTuple.of([h1, h2]), validate=validate)


def _vector3(name, params):
    if len(params) != 3:
        raise DomainError(f"{name} takes a vector v = (v1, v2, v3)")
    return tuple(_q(p) for p in params)


def named_domain(name: str, params: Sequence = (), validate: bool = True) -> NamedDomain:
    """Construct one of the named domains, checking its parameter constraints."""
    key = name.strip()
    low = key.lower()
    params = tuple(params)
    if low == "ball":
        n = _nat(params, "ball", 1)
        return NamedDomain("ball", (n,), _ball(n), n * n + 2 * n)
    if low == "polydisc":
        n = _nat(params, "polydisc", 1)
        return NamedDomain("polydisc", (n,), _tube(orthant(n)), 3 * n)
    if low in ("d1", "d2"):
        n = _nat(params, key.upper(), 3)
        ident = Matrix.identity(n - 2)
        second = Matrix.zeros(n - 2) if low == "d1" else ident
        spec = make_domain(orthant(2), HermitianTuple.of([ident, second]), validate=validate)
        return NamedDomain(key.upper(), (n,), spec, n * n + 2 if low == "d1" else None)
    if low == "d3":
        return NamedDomain("D3", params, _d34("D3", params, 1, validate))
    if low == "d4":
        return NamedDomain("D4", params, _d34("D4", params, 2, validate))
    if low == "d5":
        v = _vector3("D5", params) if params else (Fraction(1), Fraction(1), Fraction(1))
        if any(t < 0 for t in v) or not any(v):
            raise DomainError("D5: v must be a nonzero vector with non-negative entries")
        spec = make_domain(orthant(3), HermitianTuple.scaled(v, Matrix.identity(1)), validate=validate)
        return NamedDomain("D5", v, spec)
    if low in ("d6", "d8"):
        v = _vector3(key.upper(), params) if params else (Fraction(1), Fraction(1), Fraction(0))
        if not (v[0] > 0 and v[0] ** 2 >= v[1] ** 2 + v[2] ** 2):
            raise DomainError(f"{key.upper()}: need v1 > 0 and v1^2 >= v2^2 + v3^2")
        m = 1 if low == "d6" else 2
        spec = make_domain(lorentz(3), HermitianTuple.scaled(v, Matrix.identity(m)), validate=validate)
        return NamedDomain(key.upper(), v, spec)
    if low == "d7":
        diag = tuple(_q(p) for p in params) if params else tuple(map(Fraction, (1, 0, 0, 1, 1, 1)))
        if len(diag) != 6:
            raise DomainError("D7 takes six diagonal entries (two per component)")
        comps = [Matrix.diag(diag[2 * j:2 * j + 2]) for j in range(3)]
        spec = make_domain(orthant(3), HermitianTuple.of(comps), validate=validate)
        return NamedDomain("D7", diag, spec)
    if low == "t3":
        return NamedDomain("T3", (), _tube(lorentz(3)), 10)
    if low == "t4":
        return NamedDomain("T4", (), _tube(lorentz(4)), 15)
    if low == "tube":
        if not params:
            raise DomainError("tube needs at least one cone token (halfline, orthant:K, lorentz:K)")
        cones = [p if isinstance(p, Cone) else parse_cone_token(str(p)) for p in params]
        cone = product(*cones)
        return NamedDomain("tube", (cone.describe(),), _tube(cone))
    if low == "product":
        if not params:
            raise DomainError("product needs at least one factor")
        factors = [p if isinstance(p, NamedDomain) else _factor_token(str(p), validate) for p in params]
        spec = factors[0].spec
        for f in factors[1:]:
            spec = spec.product(f.spec)
        exp = None
        if all(f.expected_d is not None for f in factors):
            exp = sum(f.expected_d for f in factors)
        return NamedDomain("product", tuple(f.label for f in factors), spec, exp)
    raise DomainError(f"unknown domain name {name!r}")


def _factor_token(token: str, validate: bool) -> NamedDomain:
    """``ball:3``, ``T3``, ``D6:1,1,0`` style factor descriptions."""
    name, _, arg = token.partition(":")
    params = [p for p in arg.split(",") if p] if arg else []
    return named_domain(name, params, validate=validate)


@lru_cache(maxsize=None)
def _cached_report(spec: SiegelDomain) -> GradedReport:
    return report(spec)


def domain_report(nd: NamedDomain | SiegelDomain) -> GradedReport:
    spec = nd.spec if isinstance(nd, NamedDomain) else nd
    return _cached_report(spec)


# ---------------------------------------------------------------------------
# Verification table
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VerificationRow:
    group: str
    label: str
    quantity: str
    relation: str  # "=" or "<=" or "is"
    expected: object
    computed: object

    @property
    def passed(self) -> bool:
        if self.relation == "<=":
            return self.computed <= self.expected
        return self.computed == self.expected


def _ball_product(*ns: int) -> NamedDomain:
    if len(ns) == 1:
        return named_domain("ball", [ns[0]])
    return named_domain("product", [named_domain("ball", [n]) for n in ns])


def _bname(*ns: int) -> str:
    return "x".join(f"B{n}" for n in ns)


def boundary_stabilizer_family() -> list[Matrix]:
    """Matrices [[l, p, q], [p, l, q], [q, -q, l]], the stabilizer of (1, 1, 0) in g(Lorentz(3))."""
    out = []
    for lam, p, q in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        out.append(Matrix.from_rows([[lam, p, q], [p, lam, q], [q, -q, lam]]))
    return out


def _same_span(a: Sequence[Matrix], b: Sequence[Matrix]) -> bool:
    size = len(a[0].entries) if a else (len(b[0].entries) if b else 0)
    sa = RowSpace([[e.re for e in x.entries] for x in a], size)
    sb = RowSpace([[e.re for e in x.entries] for x in b], size)
    return (len(sa) == len(sb)
            and all([e.re for e in x.entries] in sa for x in b))


def verify_paper() -> list[VerificationRow]:
    """Recompute every concrete dimension value of the classification."""
    rows: list[VerificationRow] = []

    def d_row(group, label, nd, expected):
        rows.append(VerificationRow(group, label, "d", "=", expected, domain_report(nd).d))

    # cone algebras
    for name, expected in zip(CONE_CATALOG, (2, 3, 4, 4, 5, 7)):
        cone = CONE_CATALOG[name]
        dim = len(automorphism_algebra_basis(cone))
        rows.append(VerificationRow("cone algebras", f"{name} = {cone}", "dim g", "=", expected, dim))
        rows.append(VerificationRow("cone algebras", f"{name} = {cone}", "dim g <= bound", "<=",
                                    dimension_bound(cone.k), Fraction(dim)))

    # products of balls and type IV tubes with n^2 - 3 <= d <= n^2 + 2n
    g = "homogeneous, d >= n^2-3"
    for n in range(2, 7):
        d_row(g, _bname(n), _ball_product(n), n * n + 2 * n)
    for n in range(3, 6):
        d_row(g, _bname(n - 1, 1), _ball_product(n - 1, 1), n * n + 2)
    d_row(g, _bname(1, 1, 1), _ball_product(1, 1, 1), 9)
    d_row(g, _bname(2, 2), _ball_product(2, 2), 16)
    d_row(g, _bname(2, 1, 1), _ball_product(2, 1, 1), 14)
    d_row(g, _bname(3, 2), _ball_product(3, 2), 23)
    d_row(g, "T3", named_domain("T3"), 10)
    d_row(g, "T4", named_domain("T4"), 15)
    b1t3 = named_domain("product", [named_domain("ball", [1]), named_domain("T3")])
    d_row(g, "B1xT3", b1t3, 13)

    # dimensions 2 and 3
    g = "dimension 2 and 3"
    for ns, exp in (((2,), 8), ((1, 1), 6), ((3,), 15), ((2, 1), 11), ((1, 1, 1), 9)):
        d_row(g, _bname(*ns), _ball_product(*ns), exp)
    d_row(g, "T3", named_domain("T3"), 10)

    # case analysis values
    g = "case values"
    d6 = domain_report(named_domain("D6", [1, 1, 0]))
    rows.append(VerificationRow(g, "D6(1,1,0)", "dims", "=", (3, 2, 4, 0, 1), d6.dims))
    rows.append(VerificationRow(g, "D6(1,1,0)", "d", "=", 10, d6.d))
    for name, n_bound in (("D3", 10), ("D4", 15)):
        r = domain_report(named_domain(name, [1, 1, 0, 1]))
        rows.append(VerificationRow(g, f"{name}(1,1,0,1)", "dim g_1/2", "=", 0, r.dims[3]))
        rows.append(VerificationRow(g, f"{name}(1,1,0,1)", "dim g_1", "=", 0, r.dims[4]))
        rows.append(VerificationRow(g, f"{name}(1,1,0,1)", "d", "<=", n_bound, r.d))
    d8 = domain_report(named_domain("D8", [1, 1, 0]))
    rows.append(VerificationRow(g, "D8(1,1,0)", "s", "=", 4, d8.s))
    rows.append(VerificationRow(g, "D8(1,1,0)", "dim g_0", "=", 7, d8.dims[2]))
    rows.append(VerificationRow(g, "D8(1,1,0)", "d", "<=", 21, d8.d))
    rows.append(VerificationRow(g, "D6(1,1,0)", "dim G(Omega,H)", "=", 3, d6.stabilizer_dim))
    rows.append(VerificationRow(g, "D6(1,1,0)", "G(Omega,H) algebra = lambda,p,q family", "is", True,
                                _same_span(d6.algebra.stabilizer, boundary_stabilizer_family())))
    d2 = domain_report(named_domain("D2", [4]))
    rows.append(VerificationRow(g, "D2(4)", "dim G(Omega,H)", "=", 1, d2.stabilizer_dim))
    rows.append(VerificationRow(g, "D2(4)", "homogeneity", "is", "not-transitive", d2.homogeneity.verdict))
    d5 = domain_report(named_domain("D5", [1, 2, 3]))
    rows.append(VerificationRow(g, "D5(1,2,3)", "dim G(Omega,H)", "=", 1, d5.stabilizer_dim))
    rows.append(VerificationRow(g, "D5(1,2,3)", "homogeneity", "is", "not-transitive", d5.homogeneity.verdict))
    for label, nd, exp in (
        ("D3(1,1,0,1)", named_domain("D3", [1, 1, 0, 1]), 2),
        ("D4(1,1,0,1)", named_domain("D4", [1, 1, 0, 1]), 5),
        ("D6(1,1,0)", named_domain("D6", [1, 1, 0]), 1),
        ("D8(1,1,0)", named_domain("D8", [1, 1, 0]), 4),
    ):
        rows.append(VerificationRow(g, label, "s", "=", exp, domain_report(nd).s))
    for label, cone, exp in (("tube Omega4", "Omega4", 12), ("tube Omega5", "Omega5", 13),
                             ("tube Omega6", "Omega6", 15)):
        d_row(g, label, named_domain("tube", [CONE_CATALOG[cone]]), exp)
    for n in (4, 5):
        d_row(g, f"D1({n})", named_domain("D1", [n]), n * n + 2)
    d_row(g, "D3(1,0,0,1) = B2xB2", named_domain("D3", [1, 0, 0, 1]), 16)
    d_row(g, "D4(1,0,0,1) = B3xB2", named_domain("D4", [1, 0, 0, 1]), 23)
    d_row(g, "D5(1,0,0) = B2xB1xB1", named_domain("D5", [1, 0, 0]), 14)

    # product additivity
    g = "product additivity"
    for factors in (
        [named_domain("ball", [1]), named_domain("T3")],
        [named_domain("ball", [2]), named_domain("ball", [2])],
        [named_domain("ball", [3]), named_domain("ball", [2])],
        [named_domain("ball", [2]), named_domain("ball", [1]), named_domain("ball", [1])],
        [named_domain("ball", [1]), named_domain("ball", [1]), named_domain("ball", [1])],
    ):
        prod = named_domain("product", factors)
        rows.append(VerificationRow(g, " x ".join(f.label for f in factors), "d = sum of factors", "=",
                                    sum(domain_report(f).d for f in factors), domain_report(prod).d))
    return rows


# ---------------------------------------------------------------------------
# Bound scan
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundRow:
    n: int
    k: int
    rhs: Fraction
    target: int

    @property
    def eliminated(self) -> bool:
        return self.rhs < self.target


def bound_scan(n_min: int, n_max: int) -> list[BoundRow]:
    """For each (n, k) with 2 <= k <= n, compare the quadratic bound to n^2 - 3."""
    if n_min < 4:
        raise ValueError("the scan starts at n >= 4")
    return [BoundRow(n, k, bound_rhs(n, k), n * n - 3)
            for n in range(n_min, n_max + 1) for k in range(2, n + 1)]


def elimination_pattern_holds(rows: Sequence[BoundRow]) -> bool:
    """k >= 4 is excluded once n >= 5, and k = 3 once n >= 6."""
    for r in rows:
        if r.n >= 5 and r.k >= 4 and not r.eliminated:
            return False
        if r.n >= 6 and r.k == 3 and not r.eliminated:
            return False
    return True


# ---------------------------------------------------------------------------
# Case analysis
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CaseStep:
    case: str
    subject: str
    finding: str
    excluded: bool
    value: object = None


@dataclass
class CaseAnalysis:
    n: int
    steps: list[CaseStep] = field(default_factory=list)
    survivors: list[tuple[str, int]] = field(default_factory=list)

    def add(self, *args, **kw):
        self.steps.append(CaseStep(*args, **kw))


def _eigen_patterns(size: int) -> list[tuple[int, ...]]:
    """Eigenvalue multiplicity patterns: partitions of ``size``, largest part first."""
    def parts(rest, cap):
        if rest == 0:
            yield ()
            return
        for p in range(min(rest, cap), 0, -1):
            for tail in parts(rest - p, p):
                yield (p,) + tail
    return list(parts(size, size))


def _dimension_step(ca: CaseAnalysis, case: str, nd: NamedDomain, target: int, why: str = ""):
    r = domain_report(nd)
    ca.add(case, nd.label, f"d = {r.d}{why}", r.d != target, r.d)
    return r


def _transitivity_step(ca: CaseAnalysis, case: str, nd: NamedDomain):
    r = domain_report(nd)
    verdict = r.homogeneity.verdict
    ca.add(case, nd.label, f"G(Omega,H) of dimension {r.stabilizer_dim}: {verdict}",
           verdict == "not-transitive", verdict)
    return r


def case_analysis(n: int) -> CaseAnalysis:
    """Replay the exclusion argument for homogeneous domains with d = n^2 - 3."""
    if n not in (4, 5):
        raise ValueError("case analysis is available for n = 4 and n = 5")
    target = n * n - 3
    ca = CaseAnalysis(n)

    # k = 1 is the ball
    _dimension_step(ca, "k=1", named_domain("ball", [n]), target)

    for row in bound_scan(n, n):
        if row.eliminated:
            ca.add(f"k={row.k}", "quadratic bound", f"d <= {row.rhs} < {target}", True, row.rhs)

    # k = 2
    case = "k=2"
    m = n - 2
    _dimension_step(ca, case, named_domain("D1", [n]), target, " (ball x disc)")
    _transitivity_step(ca, case, named_domain("D2", [n]))
    cone_dim = len(automorphism_algebra_basis(orthant(2)))
    for pattern in _eigen_patterns(m):
        if len(pattern) == 1:
            continue
        lam = [Fraction(i + 1) for i, mult in enumerate(pattern) for _ in range(mult)]
        s = skew_space(HermitianTuple.of([Matrix.identity(m), Matrix.diag(lam)])).s
        bound = 2 * 2 + 4 * m + s + cone_dim
        ca.add(case, f"eigenvalue multiplicities {pattern}", f"s = {s}, d <= {bound}", bound < target, s)
    if n == 4:
        _dimension_step(ca, case, named_domain("D3", [1, 0, 0, 1]), target, " (B2xB2)")
        _dimension_step(ca, case, named_domain("D3", [1, 1, 0, 1]), target, " (g_1/2 = g_1 = 0)")
    else:
        _dimension_step(ca, case, named_domain("D4", [1, 0, 0, 1]), target, " (B3xB2)")
        _dimension_step(ca, case, named_domain("D4", [1, 1, 0, 1]), target, " (g_1/2 = g_1 = 0)")

    # k = 3
    case = "k=3"
    if n == 4:
        _dimension_step(ca, case, named_domain("D5", [1, 0, 0]), target, " (B2xB1xB1)")
        _transitivity_step(ca, case, named_domain("D5", [1, 1, 0]))
        _transitivity_step(ca, case, named_domain("D5", [1, 1, 1]))
        _transitivity_step(ca, case, named_domain("D6", [2, 1, 0]))
        _dimension_step(ca, case, named_domain("D6", [1, 1, 0]), target)
    else:
        fiber = 2
        for cone_name, cone in (("orthant(3)", orthant(3)), ("Lorentz(3)", lorentz(3))):
            cdim = len(automorphism_algebra_basis(cone))
            full = 2 * 3 + 4 * fiber + fiber * fiber + cdim
            ca.add(case, f"{cone_name}, s <= 4", f"d <= {full}", full < target, full)
            below = 2 * 3 + 4 * fiber + 3 + cdim
            ca.add(case, f"{cone_name}, s <= 3", f"d <= {below}", below < target, below)
        d7 = named_domain("D7")
        _dimension_step(ca, case, d7, target)
        # s = 4 forces every component to be a multiple of one form
        d8 = named_domain("D8", [1, 1, 0])
        comps = d8.spec.form.components
        fac = proportionality_factors(comps)
        ca.add(case, d8.label, f"s = {skew_space(d8.spec.form).s} = m^2 and H = v Q with v = "
               f"({', '.join(str(x) for x in fac[1])})", False, fac[1])
        _transitivity_step(ca, case, named_domain("D8", [2, 1, 0]))
        _dimension_step(ca, case, d8, target)

    # k = 4
    if n == 4:
        case = "k=4"
        for name in ("Omega4", "Omega5", "Omega6"):
            nd = named_domain("tube", [CONE_CATALOG[name]])
            r = _dimension_step(ca, case, nd, target)
            if r.d == target:
                homog = infinitesimal_transitivity(r.algebra.stabilizer, nd.spec.cone)
                if homog.transitive:
                    ca.survivors.append((f"tube over {nd.spec.cone} = B1xT3", r.d))
    return ca
