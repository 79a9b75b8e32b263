"""C^k-valued Hermitian forms on C^m.

``H(w, w') = (w^* H_1 w', ..., w^* H_k w')`` is anti-linear in ``w`` and linear
in ``w'``.  The tuple is stored as k Hermitian m x m matrices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from math import isqrt, lcm
from typing import Sequence

from .cones import OUTSIDE, Cone, atom_status
from .linalg import ZERO, GaussianRational, Matrix, inverse, kernel_basis
from .linear import Expr, System, Unknowns, lin_sum

__all__ = [
    "HermitianError",
    "HermitianTuple",
    "OmegaHermitianVerdict",
    "PairNormalForm",
    "SkewSpaceBasis",
    "is_positive_definite",
    "is_positive_semidefinite",
    "pair_normal_form",
    "positive_combination",
    "proportionality_factors",
    "skew_space",
    "validate_omega_hermitian",
]


class HermitianError(ValueError):
    pass


@dataclass(frozen=True)
class HermitianTuple:
    k: int
    m: int
    components: tuple[Matrix, ...]

    def __post_init__(self):
        if len(self.components) != self.k:
            raise HermitianError(f"expected {self.k} components, got {len(self.components)}")
        for j, h in enumerate(self.components):
            if h.shape != (self.m, self.m):
                raise HermitianError(f"component {j + 1} has shape {h.shape}, expected {(self.m, self.m)}")
            if not h.is_hermitian():
                raise HermitianError(f"component {j + 1} is not Hermitian")

    @classmethod
    def of(cls, components: Sequence, m: int | None = None) -> "HermitianTuple":
        mats = tuple(c if isinstance(c, Matrix) else Matrix.from_rows(c) for c in components)
        if m is None:
            m = mats[0].rows if mats else 0
        return cls(len(mats), m, mats)

    @classmethod
    def zero(cls, k: int) -> "HermitianTuple":
        return cls(k, 0, tuple(Matrix.zeros(0) for _ in range(k)))

    @classmethod
    def scaled(cls, v: Sequence, q: Matrix) -> "HermitianTuple":
        """The tuple ``(v_1 Q, ..., v_k Q)``."""
        return cls(len(v), q.rows, tuple(q.scale(x) for x in v))

    def value(self, w: Sequence, w2: Sequence | None = None) -> tuple[GaussianRational, ...]:
        """``H(w, w2)`` (``w2`` defaults to ``w``)."""
        w = [x if isinstance(x, GaussianRational) else GaussianRational(x) for x in w]
        w2 = w if w2 is None else [x if isinstance(x, GaussianRational) else GaussianRational(x) for x in w2]
        wc = [x.conjugate() for x in w]
        out = []
        for h in self.components:
            hv = h @ w2
            out.append(sum((a * b for a, b in zip(wc, hv)), ZERO))
        return tuple(out)

    def combination(self, c: Sequence) -> Matrix:
        acc = Matrix.zeros(self.m)
        for cj, h in zip(c, self.components):
            if cj:
                acc = acc + h.scale(cj)
        return acc

    def direct_sum(self, other: "HermitianTuple") -> "HermitianTuple":
        """Tuple for a product domain: components act on disjoint fiber blocks."""
        m = self.m + other.m
        comps = [Matrix.block_diag([h, Matrix.zeros(other.m)]) for h in self.components]
        comps += [Matrix.block_diag([Matrix.zeros(self.m), h]) for h in other.components]
        return HermitianTuple(self.k + other.k, m, tuple(comps))


# ---------------------------------------------------------------------------
# Definiteness
# ---------------------------------------------------------------------------

def is_positive_definite(h: Matrix) -> bool:
    """Exact test: every leading pivot of the Hermitian elimination is positive."""
    n = h.rows
    a = h.tolist()
    for i in range(n):
        p = a[i][i]
        if p.re <= 0:
            return False
        for r in range(i + 1, n):
            f = a[r][i] / p
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[i])]
    return True


def is_positive_semidefinite(h: Matrix) -> bool:
    """Exact test by symmetric diagonal pivoting and Schur complements."""
    a = h.tolist()
    while a:
        diag = [a[i][i].re for i in range(len(a))]
        if any(d < 0 for d in diag):
            return False
        p = next((i for i, d in enumerate(diag) if d > 0), None)
        if p is None:
            # zero diagonal forces a zero matrix
            return all(not x for row in a for x in row)
        pv = a[p][p]
        col = [a[r][p] for r in range(len(a))]
        rest = [i for i in range(len(a)) if i != p]
        a = [[a[r][c] - col[r] * a[p][c] / pv for c in rest] for r in rest]
    return True


# ---------------------------------------------------------------------------
# Omega-Hermitian validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OmegaHermitianVerdict:
    valid: bool
    certification: str  # "exact" or "sampled-only"
    reason: str
    combination: tuple[Fraction, ...] | None = None
    samples: int = 0

    def __bool__(self):
        return self.valid


def _dual_contains(cone: Cone, c: Sequence[int]) -> bool:
    for atom, s in cone.blocks():
        block = c[s:s + atom.dim]
        if atom.kind == "halfline":
            if block[0] < 0:
                return False
        elif block[0] < 0 or block[0] ** 2 < sum(t * t for t in block[1:]):
            return False
    return True


def _dual_grid(cone: Cone, budget: int):
    ranges = []
    for atom in cone.atoms:
        ranges.append(range(0, budget + 1))
        ranges.extend(range(-budget, budget + 1) for _ in range(atom.dim - 1))
    cands = [c for c in cartesian(*ranges) if any(c) and _dual_contains(cone, c)]
    cands.sort(key=lambda c: (sum(abs(t) for t in c), tuple(-t for t in c)))
    return cands


def positive_combination(cone: Cone, h: HermitianTuple, budget: int = 3) -> tuple[Fraction, ...]:
    """Smallest integer ``c`` in the closed dual grid with ``sum c_j H_j`` positive definite.

    Candidates have entries bounded by ``budget`` and are ordered by l1 norm,
    then lexicographically from the largest.  Raises :class:`HermitianError`
    when no candidate works.
    """
    if h.k != cone.k:
        raise HermitianError(f"form has {h.k} components but the cone lives in R^{cone.k}")
    if h.m == 0:
        return tuple(Fraction(1) if i == 0 else Fraction(0) for i in range(h.k))
    for c in _dual_grid(cone, budget):
        if is_positive_definite(h.combination(c)):
            return tuple(Fraction(t) for t in c)
    raise HermitianError(f"no positive-definite combination with entries bounded by {budget}")


def proportionality_factors(components: Sequence[Matrix]) -> tuple[Matrix, tuple[Fraction, ...]] | None:
    """Write every component as ``v_j * Q`` for one Hermitian ``Q``, if possible.

    ``Q`` is the first nonzero component.  Returns ``None`` when the
    components are not all real multiples of it.
    """
    base = next((c for c in components if not c.is_zero()), None)
    if base is None:
        return None
    idx = next(i for i, e in enumerate(base.entries) if e)
    pivot = base.entries[idx]
    factors = []
    for c in components:
        f = c.entries[idx] / pivot
        if not f.is_real() or c != base.scale(f):
            return None
        factors.append(f.re)
    return base, tuple(factors)


def _sample_vectors(m: int, count: int, seed: int):
    rng = random.Random(seed)
    for _ in range(count):
        yield [GaussianRational(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(m)]


def validate_omega_hermitian(
    cone: Cone,
    h: HermitianTuple,
    samples: int = 256,
    seed: int = 0,
) -> OmegaHermitianVerdict:
    """Decide whether ``H(w, w)`` lies in the closed cone minus the origin for all ``w != 0``."""
    if h.k != cone.k:
        raise HermitianError(f"form has {h.k} components but the cone lives in R^{cone.k}")
    if h.m == 0:
        return OmegaHermitianVerdict(True, "exact", "tube domain: empty fiber", None)
    certification = "exact"
    used = 0
    for atom, s in cone.blocks():
        comps = h.components[s:s + atom.dim]
        if atom.kind == "halfline":
            if not is_positive_semidefinite(comps[0]):
                return OmegaHermitianVerdict(
                    False, "exact", f"component {s + 1} is not positive semidefinite")
            continue
        if all(c.is_zero() for c in comps):
            continue
        fac = proportionality_factors(comps)
        if fac is not None:
            q, v = fac
            if not is_positive_semidefinite(q):
                q, v = -q, tuple(-t for t in v)
                if not is_positive_semidefinite(q):
                    return OmegaHermitianVerdict(
                        False, "exact",
                        f"components {s + 1}..{s + atom.dim} are multiples of an indefinite form")
            if atom_status(atom, v) == OUTSIDE:
                return OmegaHermitianVerdict(
                    False, "exact",
                    f"H(w,w) = v Q(w,w) with v = ({', '.join(map(str, v))}) outside the closed Lorentz cone")
            continue
        certification = "sampled-only"
        for w in _sample_vectors(h.m, samples, seed + s):
            used += 1
            val = [x.re for x in h.value(w)[s:s + atom.dim]]
            if atom_status(atom, val) == OUTSIDE:
                return OmegaHermitianVerdict(
                    False, "exact", f"sample w gives H(w,w) outside the closed Lorentz block at {s + 1}",
                    samples=used)
    try:
        c = positive_combination(cone, h)
    except HermitianError as exc:
        return OmegaHermitianVerdict(False, certification, f"H(w,w) may vanish: {exc}", samples=used)
    return OmegaHermitianVerdict(True, certification, "ok", c, samples=used)


# ---------------------------------------------------------------------------
# Skew space L
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SkewSpaceBasis:
    basis: tuple[Matrix, ...]

    @property
    def s(self) -> int:
        return len(self.basis)


def matrix_unknowns(unk: Unknowns, name: str, rows: int, cols: int) -> list[list[Expr]]:
    return [[unk.complex(f"{name}[{i},{j}]") for j in range(cols)] for i in range(rows)]


def hermitian_defect(hj: Matrix, b: list[list[Expr]]) -> list[list[Expr]]:
    """Entries of ``H_j B + B^* H_j`` as expressions in the unknown ``B``."""
    m = hj.rows
    out = []
    for p in range(m):
        row = []
        for q in range(m):
            terms = []
            for a in range(m):
                if hj[p, a]:
                    terms.append(b[a][q] * hj[p, a])
                if hj[a, q]:
                    terms.append(b[a][p].conj() * hj[a, q])
            row.append(lin_sum(terms))
        out.append(row)
    return out


def vector_to_matrix(vec: Sequence[Fraction], offset: int, rows: int, cols: int) -> Matrix:
    ent = []
    for i in range(rows * cols):
        ent.append(GaussianRational(vec[offset + 2 * i], vec[offset + 2 * i + 1]))
    return Matrix(rows, cols, ent)


def skew_space(h: HermitianTuple) -> SkewSpaceBasis:
    """Matrices ``B`` with ``H_j B + B^* H_j = 0`` for every component."""
    m = h.m
    unk = Unknowns()
    b = matrix_unknowns(unk, "B", m, m)
    sys = System(unk)
    for hj in h.components:
        for row in hermitian_defect(hj, b):
            for e in row:
                sys.equate(e)
    basis = tuple(vector_to_matrix(v, 0, m, m) for v in sys.solve())
    return SkewSpaceBasis(basis)


# ---------------------------------------------------------------------------
# Pair normal form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairNormalForm:
    eigenvalues: tuple[Fraction, ...]  # descending
    basis: Matrix  # columns P with P^* H1 P diagonal positive, P^* H2 P = that * diag(eigenvalues)
    h1_diagonal: tuple[Fraction, ...]
    distinct_pairs: int
    equal_pairs: int = field(default=0)


def _charpoly(a: Matrix) -> list[GaussianRational]:
    """Coefficients c_0..c_n of det(t I - a), Faddeev-LeVerrier."""
    n = a.rows
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = GaussianRational(1)
    mk = Matrix.zeros(n)
    ident = Matrix.identity(n)
    for k in range(1, n + 1):
        mk = a @ mk + ident.scale(coeffs[n - k + 1])
        coeffs[n - k] = (a @ mk).trace() * Fraction(-1, k)
    return coeffs


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = set()
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            out.add(d)
            out.add(n // d)
    return sorted(out)


def _rational_roots(coeffs: list[Fraction]) -> list[Fraction]:
    """All rational roots with multiplicity; raises if some root is irrational."""
    roots: list[Fraction] = []
    poly = list(coeffs)
    while len(poly) > 1 and poly[0] == 0:
        roots.append(Fraction(0))
        poly = poly[1:]
    while len(poly) > 1:
        den = 1
        for c in poly:
            den = lcm(den, c.denominator)
        ints = [int(c * den) for c in poly]
        found = None
        for p in _divisors(ints[0]):
            for q in _divisors(ints[-1]):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if sum(c * cand ** i for i, c in enumerate(poly)) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            raise HermitianError("generalized eigenvalues are not representable over Q")
        roots.append(found)
        # synthetic division by (t - found), highest degree first
        hi = poly[::-1]
        out = [hi[0]]
        for c in hi[1:-1]:
            out.append(c + out[-1] * found)
        poly = out[::-1]
    return roots


def pair_normal_form(h1: Matrix, h2: Matrix) -> PairNormalForm:
    """Simultaneous diagonalization of a positive-definite ``h1`` and a Hermitian ``h2``."""
    if not (h1.is_hermitian() and h2.is_hermitian()) or h1.shape != h2.shape:
        raise HermitianError("need two Hermitian matrices of the same size")
    if not is_positive_definite(h1):
        raise HermitianError("first form must be positive definite")
    n = h1.rows
    a = inverse(h1) @ h2
    cp = _charpoly(a)
    if any(not c.is_real() for c in cp):
        raise HermitianError("characteristic polynomial is not real")
    roots = _rational_roots([c.re for c in cp])
    eig = tuple(sorted(roots, reverse=True))
    cols: list[tuple[GaussianRational, ...]] = []
    for lam in sorted(set(eig), reverse=True):
        vecs = kernel_basis(h2 - h1.scale(lam))
        ortho = []
        for v in vecs:
            for u in ortho:
                hu = h1 @ u
                num = sum((x.conjugate() * y for x, y in zip(hu, v)), ZERO)
                den = sum((x.conjugate() * y for x, y in zip(u, hu)), ZERO)
                v = tuple(x - u_i * (num / den) for x, u_i in zip(v, u))
            ortho.append(v)
        cols.extend(ortho)
    p = Matrix(n, n, (cols[j][i] for i in range(n) for j in range(n)))
    d = p.H @ h1 @ p
    h1_diag = tuple(d[i, i].re for i in range(n))
    distinct = sum(1 for i in range(n) for j in range(i + 1, n) if eig[i] != eig[j])
    equal = n * (n - 1) // 2 - distinct
    return PairNormalForm(eig, p, h1_diag, distinct, equal)
