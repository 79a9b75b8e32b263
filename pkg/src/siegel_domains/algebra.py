"""Graded Lie algebra of the automorphism group of a Siegel domain S(Omega, H).

The algebra splits into five pieces, the eigenspaces of ad(Euler field) for
the eigenvalues -1, -1/2, 0, 1/2, 1.  The first two are fixed by the data
(dimensions k and 2m).  The other three are the real solution spaces of
linear systems assembled here and solved exactly.

Quadratic and sesquilinear identities in ``w`` are turned into linear rows by
evaluating them on a fixed set of vectors: the real basis ``{e_i, i e_i}``
for real-linear conditions, and ``{e_i, e_i + e_j, e_i + i e_j}`` for the
holomorphic-quadratic slot.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

from .cones import (
    Cone,
    ConeAlgebraBasis,
    TransitivityVerdict,
    automorphism_algebra_basis,
    dimension_bound,
    infinitesimal_transitivity,
    membership_rows,
)
from .fields import (
    PolyVectorField,
    euler_field,
    half_field,
    lie_bracket,
    minus_half_field,
    minus_one_field,
    one_field,
    zero_field,
)
from .hermitian import (
    HermitianTuple,
    OmegaHermitianVerdict,
    hermitian_defect,
    matrix_unknowns,
    skew_space,
    validate_omega_hermitian,
)
from .linalg import I, ONE, ZERO, GaussianRational, Matrix, RowSpace
from .linear import Expr, System, Unknowns, lin_sum

__all__ = [
    "DomainError",
    "SiegelDomain",
    "AssociatedPair",
    "HalfPlusGenerator",
    "OnePlusGenerator",
    "BoundCheck",
    "GradedAlgebra",
    "GradedReport",
    "make_domain",
    "g_zero",
    "stabilizer_algebra",
    "g_half",
    "g_one",
    "graded_algebra",
    "report",
    "bound_rhs",
    "real_basis",
    "polarization_set",
    "euler_defects",
    "grading_defects",
]


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class SiegelDomain:
    cone: Cone
    form: HermitianTuple
    validation: OmegaHermitianVerdict | None = None

    @property
    def k(self) -> int:
        return self.cone.k

    @property
    def m(self) -> int:
        return self.form.m

    @property
    def n(self) -> int:
        return self.k + self.m

    @property
    def validated(self) -> bool:
        return self.validation is not None

    def product(self, other: "SiegelDomain") -> "SiegelDomain":
        from .cones import product

        cone = product(self.cone, other.cone)
        form = self.form.direct_sum(other.form)
        validation = None
        if self.validated and other.validated:
            validation = validate_omega_hermitian(cone, form)
        return SiegelDomain(cone, form, validation)


def make_domain(cone: Cone, form: HermitianTuple, validate: bool = True,
                samples: int = 256, seed: int = 0) -> SiegelDomain:
    """Build a domain, raising :class:`DomainError` when H is not Omega-Hermitian."""
    if form.k != cone.k:
        raise DomainError(f"form has {form.k} components but the cone lives in R^{cone.k}")
    if not validate:
        return SiegelDomain(cone, form, None)
    verdict = validate_omega_hermitian(cone, form, samples=samples, seed=seed)
    if not verdict.valid:
        raise DomainError(f"H is not Omega-Hermitian (H(w,w) must lie in the closed cone minus 0): {verdict.reason}")
    return SiegelDomain(cone, form, verdict)


# ---------------------------------------------------------------------------
# Polarization sets
# ---------------------------------------------------------------------------

def _unit(m: int, i: int, c=ONE) -> tuple[GaussianRational, ...]:
    return tuple(c if t == i else ZERO for t in range(m))


def real_basis(m: int) -> list[tuple[GaussianRational, ...]]:
    """``e_1, i e_1, ..., e_m, i e_m``: a real basis of C^m."""
    out = []
    for i in range(m):
        out.append(_unit(m, i))
        out.append(_unit(m, i, I))
    return out


def polarization_set(m: int) -> list[tuple[GaussianRational, ...]]:
    """``e_i``, then ``e_i + e_j`` and ``e_i + i e_j`` for ``i < j``."""
    out = [_unit(m, i) for i in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            out.append(tuple(ONE if t in (i, j) else ZERO for t in range(m)))
            out.append(tuple(ONE if t == i else (I if t == j else ZERO) for t in range(m)))
    return out


def _conj_dot(u: Sequence[GaussianRational], h: Matrix, v: Sequence[GaussianRational]) -> GaussianRational:
    """``u^* h v`` for constant vectors."""
    total = ZERO
    for a, ua in enumerate(u):
        if not ua:
            continue
        uc = ua.conjugate()
        for b, vb in enumerate(v):
            if vb and h[a, b]:
                total = total + uc * h[a, b] * vb
    return total


def _membership(sys: System, rows, matrix: list[list[Expr]]):
    k = len(matrix)
    for y in rows:
        terms = []
        for idx, coef in enumerate(y):
            if coef:
                terms.append(matrix[idx // k][idx % k] * coef)
        sys.equate_real(lin_sum(terms))


# ---------------------------------------------------------------------------
# Degree zero
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AssociatedPair:
    A: Matrix
    B: Matrix


def _g_zero_system(domain: SiegelDomain, algebra: ConeAlgebraBasis, fix_a_zero: bool = False):
    k, m = domain.k, domain.m
    unk = Unknowns()
    t = [] if fix_a_zero else [unk.real(f"t{r}") for r in range(len(algebra))]
    b = matrix_unknowns(unk, "B", m, m)
    sys = System(unk)
    comps = domain.form.components
    for j in range(k):
        defect = hermitian_defect(comps[j], b)
        for p in range(m):
            for q in range(m):
                terms = [defect[p][q] * -1]
                for r, g in enumerate(algebra.basis if t else ()):
                    for l in range(k):
                        coef = g[j, l] * comps[l][p, q]
                        if coef:
                            terms.append(t[r] * coef)
                sys.equate(lin_sum(terms))
    return sys, len(t)


def g_zero(domain: SiegelDomain) -> list[AssociatedPair]:
    """Basis of pairs (A, B) with A in g(Omega) and B associated to A."""
    algebra = automorphism_algebra_basis(domain.cone)
    k, m = domain.k, domain.m
    sys, nt = _g_zero_system(domain, algebra)
    out = []
    for v in sys.solve():
        a = Matrix.zeros(k)
        for r, g in enumerate(algebra.basis):
            if v[r]:
                a = a + g.scale(v[r])
        out.append(AssociatedPair(a, _matrix_from(v, nt, m, m)))
    return out


def _matrix_from(vec, offset: int, rows: int, cols: int) -> Matrix:
    return Matrix(rows, cols, (GaussianRational(vec[offset + 2 * i], vec[offset + 2 * i + 1])
                               for i in range(rows * cols)))


def _span_basis(mats: Sequence[Matrix], size: int) -> list[Matrix]:
    """Reduced echelon basis of the real span of real square matrices."""
    space = RowSpace([[e.re for e in a.entries] for a in mats], size * size)
    rows = sorted(zip(space._pivots, space._rows))
    return [Matrix(size, size, r) for _, r in rows]


def stabilizer_algebra(domain: SiegelDomain, pairs: Sequence[AssociatedPair] | None = None) -> list[Matrix]:
    """Lie algebra of G(Omega, H): the A-parts of degree-zero pairs."""
    if pairs is None:
        pairs = g_zero(domain)
    return _span_basis([p.A for p in pairs], domain.k)


# ---------------------------------------------------------------------------
# Degree one half
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HalfPlusGenerator:
    phi: Matrix  # m x k, complex-linear C^k -> C^m
    c: tuple[Matrix, ...]  # c[l] symmetric m x m: l-th output of c(w, w)


def _sym_pairs(n: int):
    return list(combinations_with_replacement(range(n), 2))


def g_half(domain: SiegelDomain, algebra: ConeAlgebraBasis | None = None) -> list[HalfPlusGenerator]:
    k, m = domain.k, domain.m
    if m == 0:
        return []
    algebra = algebra or automorphism_algebra_basis(domain.cone)
    comps = domain.form.components
    unk = Unknowns()
    phi = matrix_unknowns(unk, "Phi", m, k)
    pairs = _sym_pairs(m)
    c = [{(i, j): unk.complex(f"c{l}[{i},{j}]") for i, j in pairs} for l in range(m)]
    sys = System(unk)
    rows = membership_rows(algebra)

    # x -> Im H(w, Phi x) lies in g(Omega)
    if rows:
        for w in real_basis(m):
            mat = []
            for j in range(k):
                hj = comps[j]
                row = []
                for r in range(k):
                    terms = []
                    for a in range(m):
                        if not w[a]:
                            continue
                        wc = w[a].conjugate()
                        for bb in range(m):
                            if hj[a, bb]:
                                terms.append(phi[bb][r] * (wc * hj[a, bb]))
                    row.append(lin_sum(terms).imag())
                mat.append(row)
            _membership(sys, rows, mat)

    # H(w, c(w', w')) = 2i H(Phi(H(w', w)), w')
    for l0 in range(m):
        for wp in polarization_set(m):
            cw = []
            for b in range(m):
                terms = []
                for (i, j) in pairs:
                    coef = wp[i] * wp[j] * (1 if i == j else 2)
                    if coef:
                        terms.append(c[b][(i, j)] * coef)
                cw.append(lin_sum(terms))
            u = [sum((wp[a].conjugate() * comps[r][a, l0] for a in range(m)), ZERO) for r in range(k)]
            x = [lin_sum([phi[a][r] * u[r] for r in range(k) if u[r]]) for a in range(m)]
            for j in range(k):
                hj = comps[j]
                lhs = lin_sum([cw[b] * hj[l0, b] for b in range(m) if hj[l0, b]])
                rhs_terms = []
                for a in range(m):
                    coef = sum((hj[a, bb] * wp[bb] for bb in range(m)), ZERO)
                    if coef:
                        rhs_terms.append(x[a].conj() * coef)
                rhs = lin_sum(rhs_terms) * (I * 2)
                sys.equate(lhs - rhs)

    out = []
    for v in sys.solve():
        phim = _matrix_from(v, 0, m, k)
        off = 2 * m * k
        cm = []
        for l in range(m):
            ent = [[ZERO] * m for _ in range(m)]
            for idx, (i, j) in enumerate(pairs):
                val = GaussianRational(v[off + 2 * idx], v[off + 2 * idx + 1])
                ent[i][j] = ent[j][i] = val
            off += 2 * len(pairs)
            cm.append(Matrix.from_rows(ent))
        out.append(HalfPlusGenerator(phim, tuple(cm)))
    return out


# ---------------------------------------------------------------------------
# Degree one
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OnePlusGenerator:
    a: tuple[Matrix, ...]  # a[l] symmetric k x k: l-th output of a(x, y)
    b: tuple[Matrix, ...]  # b[r] m x m: w -> b(e_r, w)


def g_one(domain: SiegelDomain, algebra: ConeAlgebraBasis | None = None) -> list[OnePlusGenerator]:
    k, m = domain.k, domain.m
    algebra = algebra or automorphism_algebra_basis(domain.cone)
    comps = domain.form.components
    unk = Unknowns()
    kpairs = _sym_pairs(k)
    a_var = [{(r, s): unk.real(f"a{l}[{r},{s}]") for r, s in kpairs} for l in range(k)]
    b = [matrix_unknowns(unk, f"b{r}", m, m) for r in range(k)]
    sys = System(unk)
    rows = membership_rows(algebra)

    def a(l, r, s):
        return a_var[l][(r, s) if r <= s else (s, r)]

    # A_x = a(x, .) lies in g(Omega)
    if rows:
        for r in range(k):
            _membership(sys, rows, [[a(l, r, s) for s in range(k)] for l in range(k)])

    if m:
        half = Fraction(1, 2)
        for r in range(k):
            # B_x = b(x, .)/2 is associated to A_x
            for j in range(k):
                defect = hermitian_defect(comps[j], b[r])
                for p in range(m):
                    for q in range(m):
                        terms = [defect[p][q] * -half]
                        for l in range(k):
                            if comps[l][p, q]:
                                terms.append(a(j, r, l) * comps[l][p, q])
                        sys.equate(lin_sum(terms))
            # Im tr B_x = 0
            sys.equate_real(lin_sum([b[r][i][i] for i in range(m)]).imag())

        # x -> Im H(w', b(x, w)) lies in g(Omega)
        if rows:
            for w in real_basis(m):
                for wp in real_basis(m):
                    mat = []
                    for j in range(k):
                        hj = comps[j]
                        coefs = [sum((wp[aa].conjugate() * hj[aa, bb] for aa in range(m)), ZERO)
                                 for bb in range(m)]
                        row = []
                        for r in range(k):
                            terms = []
                            for bb in range(m):
                                if not coefs[bb]:
                                    continue
                                for i in range(m):
                                    if w[i]:
                                        terms.append(b[r][bb][i] * (coefs[bb] * w[i]))
                            row.append(lin_sum(terms).imag())
                        mat.append(row)
                    _membership(sys, rows, mat)

        # H(w, b(H(w', w''), w'')) = H(b(H(w'', w), w'), w'')
        units = [_unit(m, i) for i in range(m)]
        for ws in polarization_set(m):
            for p in range(m):
                up = [_conj_dot(ws, comps[r], units[p]) for r in range(k)]
                for q in range(m):
                    u = [_conj_dot(units[q], comps[r], ws) for r in range(k)]
                    y = []
                    for l in range(m):
                        terms = []
                        for r in range(k):
                            if not u[r]:
                                continue
                            for i in range(m):
                                if ws[i]:
                                    terms.append(b[r][l][i] * (u[r] * ws[i]))
                        y.append(lin_sum(terms))
                    x = [lin_sum([b[r][l][q] * up[r] for r in range(k) if up[r]]) for l in range(m)]
                    for j in range(k):
                        hj = comps[j]
                        lhs = lin_sum([y[l] * hj[p, l] for l in range(m) if hj[p, l]])
                        rhs_terms = []
                        for aa in range(m):
                            coef = sum((hj[aa, bb] * ws[bb] for bb in range(m)), ZERO)
                            if coef:
                                rhs_terms.append(x[aa].conj() * coef)
                        sys.equate(lhs - lin_sum(rhs_terms))

    out = []
    na = k * len(kpairs)
    for v in sys.solve():
        amats = []
        for l in range(k):
            ent = [[Fraction(0)] * k for _ in range(k)]
            for idx, (r, s) in enumerate(kpairs):
                ent[r][s] = ent[s][r] = v[l * len(kpairs) + idx]
            amats.append(Matrix.from_rows(ent))
        bmats = tuple(_matrix_from(v, na + 2 * m * m * r, m, m) for r in range(k))
        out.append(OnePlusGenerator(tuple(amats), bmats))
    return out


# ---------------------------------------------------------------------------
# Assembly
# ---------------------------------------------------------------------------

def bound_rhs(n: int, k: int) -> Fraction:
    """``3k^2/2 - (2n + 5/2) k + n^2 + 4n + 1``, the closed-form bound on d."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    return Fraction(3 * k * k, 2) - (2 * n + Fraction(5, 2)) * k + n * n + 4 * n + 1


@dataclass(frozen=True)
class BoundCheck:
    label: str
    statement: str
    lhs: Fraction
    relation: str  # "<=" or "="
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs if self.relation == "=" else self.lhs <= self.rhs


@dataclass(frozen=True)
class GradedAlgebra:
    """All generator bases for one domain."""

    domain: SiegelDomain
    cone_algebra: tuple[Matrix, ...]
    skew: tuple[Matrix, ...]
    zero: tuple[AssociatedPair, ...]
    stabilizer: tuple[Matrix, ...]
    half: tuple[HalfPlusGenerator, ...]
    one: tuple[OnePlusGenerator, ...]

    @property
    def dims(self) -> tuple[int, int, int, int, int]:
        return (self.domain.k, 2 * self.domain.m, len(self.zero), len(self.half), len(self.one))

    def fields(self) -> dict[Fraction, list[PolyVectorField]]:
        """Generators as polynomial vector fields, keyed by grade."""
        k, m, h = self.domain.k, self.domain.m, self.domain.form
        minus_one = [minus_one_field(_unit(k, r), m) for r in range(k)]
        minus_half = [minus_half_field(b, h) for b in real_basis(m)]
        zero = [zero_field(p.A, p.B) for p in self.zero]
        half = [half_field(g.phi, g.c, h) for g in self.half]
        one = [one_field(g.a, g.b, m) for g in self.one]
        return {
            Fraction(-1): minus_one,
            Fraction(-1, 2): minus_half,
            Fraction(0): zero,
            Fraction(1, 2): half,
            Fraction(1): one,
        }


def graded_algebra(domain: SiegelDomain) -> GradedAlgebra:
    algebra = automorphism_algebra_basis(domain.cone)
    zero = g_zero(domain)
    return GradedAlgebra(
        domain=domain,
        cone_algebra=algebra.basis,
        skew=skew_space(domain.form).basis,
        zero=tuple(zero),
        stabilizer=tuple(stabilizer_algebra(domain, zero)),
        half=tuple(g_half(domain, algebra)),
        one=tuple(g_one(domain, algebra)),
    )


@dataclass(frozen=True)
class GradedReport:
    n: int
    k: int
    m: int
    cone: str
    dims: tuple[int, int, int, int, int]
    s: int
    cone_algebra_dim: int
    stabilizer_dim: int
    d: int
    bound_checks: tuple[BoundCheck, ...]
    homogeneity: TransitivityVerdict
    validation: str
    algebra: GradedAlgebra | None = field(default=None, compare=False, repr=False)

    @property
    def bounds_hold(self) -> bool:
        return all(b.holds for b in self.bound_checks)


def bound_checks(n: int, k: int, dims, s: int, cone_dim: int, stab: int) -> tuple[BoundCheck, ...]:
    m = n - k
    d = sum(dims)
    F = Fraction
    return (
        BoundCheck("cone-dimension", "dim g(Omega) <= k^2/2 - k/2 + 1",
                   F(cone_dim), "<=", dimension_bound(k)),
        BoundCheck("half-dimension", "dim g_1/2 <= 2(n-k)", F(dims[3]), "<=", F(2 * m)),
        BoundCheck("one-dimension", "dim g_1 <= k", F(dims[4]), "<=", F(k)),
        BoundCheck("degree-zero-split", "dim g_0 = s + dim G(Omega,H)", F(dims[2]), "=", F(s + stab)),
        BoundCheck("stabilizer", "dim G(Omega,H) <= dim g(Omega)", F(stab), "<=", F(cone_dim)),
        BoundCheck("graded-sum", "d <= k + 2(n-k) + s + dim g(Omega) + dim g_1/2 + dim g_1",
                   F(d), "<=", F(k + 2 * m + s + cone_dim + dims[3] + dims[4])),
        BoundCheck("affine-sum", "d <= 2k + 4(n-k) + s + dim g(Omega)",
                   F(d), "<=", F(2 * k + 4 * m + s + cone_dim)),
        BoundCheck("skew-dimension", "s <= (n-k)^2", F(s), "<=", F(m * m)),
        BoundCheck("fiber-sum", "d <= 2k + 4(n-k) + (n-k)^2 + dim g(Omega)",
                   F(d), "<=", F(2 * k + 4 * m + m * m + cone_dim)),
        BoundCheck("quadratic", "d <= 3k^2/2 - (2n+5/2)k + n^2 + 4n + 1",
                   F(d), "<=", bound_rhs(n, k)),
    )


def report(domain: SiegelDomain, samples: int = 8, seed: int = 0) -> GradedReport:
    ga = graded_algebra(domain)
    dims = ga.dims
    s = len(ga.skew)
    stab = len(ga.stabilizer)
    checks = bound_checks(domain.n, domain.k, dims, s, len(ga.cone_algebra), stab)
    homog = infinitesimal_transitivity(ga.stabilizer, domain.cone, samples=samples, seed=seed)
    if domain.validation is None:
        validation = "unvalidated"
    else:
        validation = "valid" if domain.validation.certification == "exact" else "valid (sampled-only)"
    return GradedReport(
        n=domain.n, k=domain.k, m=domain.m, cone=domain.cone.describe(),
        dims=dims, s=s, cone_algebra_dim=len(ga.cone_algebra), stabilizer_dim=stab,
        d=sum(dims), bound_checks=checks, homogeneity=homog, validation=validation,
        algebra=ga,
    )



# ---------------------------------------------------------------------------
# Structural checks on the generator fields
# ---------------------------------------------------------------------------

def _coefficient_vector(f: PolyVectorField, keys) -> list[Fraction]:
    coeffs = dict(f.coefficient_items())
    out: list[Fraction] = []
    for key in keys:
        c = coeffs.get(key)
        out += [c.re, c.im] if c is not None else [Fraction(0), Fraction(0)]
    return out


def _in_real_span(z: PolyVectorField, gens: Sequence[PolyVectorField]) -> bool:
    keys = sorted({key for g in list(gens) + [z] for key, _ in g.coefficient_items()})
    space = RowSpace([_coefficient_vector(g, keys) for g in gens], 2 * len(keys))
    return _coefficient_vector(z, keys) in space


def euler_defects(ga: GradedAlgebra) -> list[tuple[Fraction, int]]:
    """Generators X of grade nu with ``[E, X] != nu X``, as (nu, index) pairs."""
    e = euler_field(ga.domain.k, ga.domain.m)
    return [(nu, i) for nu, gens in ga.fields().items()
            for i, x in enumerate(gens) if lie_bracket(e, x) != x.scale(nu)]


def grading_defects(ga: GradedAlgebra) -> list[tuple[Fraction, int, Fraction, int]]:
    """Pairs whose bracket leaves the real span of the grade mu + nu generators."""
    fields = ga.fields()
    grades = sorted(fields)
    bad = []
    for a, mu in enumerate(grades):
        for nu in grades[a:]:
            target = fields.get(mu + nu, [])
            for i, x in enumerate(fields[mu]):
                for j, y in enumerate(fields[nu]):
                    z = lie_bracket(x, y)
                    if z.is_zero():
                        continue
                    if not target or not _in_real_span(z, target):
                        bad.append((mu, i, nu, j))
    return bad
