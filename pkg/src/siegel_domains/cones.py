"""Catalog cones: half-lines, orthants, Lorentz cones and their products.

A :class:`Cone` is stored flattened as a tuple of atoms.  An orthant of
dimension k is k half-lines, so ``orthant(2)`` and ``product(halfline(),
halfline())`` are the same object.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .linalg import Matrix, RowSpace, rational_kernel, rational_rank

__all__ = [
    "Atom",
    "Cone",
    "ConeAlgebraBasis",
    "ConeError",
    "halfline",
    "orthant",
    "lorentz",
    "product",
    "automorphism_algebra_basis",
    "contains",
    "dimension_bound",
    "infinitesimal_transitivity",
    "TransitivityVerdict",
    "canonical_interior_point",
    "sample_interior_points",
    "membership_rows",
]

INTERIOR = "interior"
BOUNDARY = "boundary"
OUTSIDE = "outside"


class ConeError(ValueError):
    pass


@dataclass(frozen=True)
class Atom:
    kind: str  # "halfline" or "lorentz"
    dim: int

    def __post_init__(self):
        if self.kind == "halfline" and self.dim != 1:
            raise ConeError("a half-line has dimension 1")
        if self.kind == "lorentz" and self.dim < 3:
            raise ConeError("Lorentz cones need dimension >= 3 (dimension 2 is an orthant)")
        if self.kind not in ("halfline", "lorentz"):
            raise ConeError(f"unknown atom kind {self.kind!r}")


@dataclass(frozen=True)
class Cone:
    atoms: tuple[Atom, ...]

    def __post_init__(self):
        if not self.atoms:
            raise ConeError("a cone needs at least one atom")

    @property
    def k(self) -> int:
        return sum(a.dim for a in self.atoms)

    def blocks(self) -> list[tuple[Atom, int]]:
        """Atoms with their starting coordinate."""
        out, start = [], 0
        for a in self.atoms:
            out.append((a, start))
            start += a.dim
        return out

    def describe(self) -> str:
        parts, run = [], 0
        for a in self.atoms + (None,):
            if a is not None and a.kind == "halfline":
                run += 1
                continue
            if run:
                parts.append("R+" if run == 1 else f"Orthant({run})")
                run = 0
            if a is not None:
                parts.append(f"Lorentz({a.dim})")
        return parts[0] if len(parts) == 1 else " x ".join(parts)

    def __str__(self):
        return self.describe()


def halfline() -> Cone:
    return Cone((Atom("halfline", 1),))


def orthant(k: int) -> Cone:
    if k < 1:
        raise ConeError("orthant dimension must be positive")
    return Cone(tuple(Atom("halfline", 1) for _ in range(k)))


def lorentz(k: int) -> Cone:
    return Cone((Atom("lorentz", k),))


def product(*factors: Cone) -> Cone:
    return Cone(tuple(a for f in factors for a in f.atoms))


# ---------------------------------------------------------------------------
# Lie algebras g(Omega)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConeAlgebraBasis:
    cone: Cone
    basis: tuple[Matrix, ...]

    def __len__(self):
        return len(self.basis)


def _atom_algebra(atom: Atom) -> list[Matrix]:
    k = atom.dim
    if atom.kind == "halfline":
        return [Matrix.identity(1)]
    # scalars, then boosts mixing x1 with xr, then rotations among x2..xk
    out = [Matrix.identity(k)]
    for r in range(1, k):
        out.append(Matrix.unit(k, k, 0, r) + Matrix.unit(k, k, r, 0))
    for r, s in combinations(range(1, k), 2):
        out.append(Matrix.unit(k, k, r, s) - Matrix.unit(k, k, s, r))
    return out


def automorphism_algebra_basis(cone: Cone) -> ConeAlgebraBasis:
    """Basis of the Lie algebra of linear automorphisms of ``cone``."""
    k = cone.k
    out = []
    for atom, start in cone.blocks():
        for g in _atom_algebra(atom):
            blocks = []
            if start:
                blocks.append(Matrix.zeros(start))
            blocks.append(g)
            if k - start - atom.dim:
                blocks.append(Matrix.zeros(k - start - atom.dim))
            out.append(Matrix.block_diag(blocks))
    return ConeAlgebraBasis(cone, tuple(out))


def dimension_bound(k: int) -> Fraction:
    """Upper bound k^2/2 - k/2 + 1 on dim g(Omega) for a line-free cone in R^k."""
    if k < 1:
        raise ValueError("k must be positive")
    return Fraction(k * k, 2) - Fraction(k, 2) + 1


def membership_rows(algebra: ConeAlgebraBasis) -> list[tuple[Fraction, ...]]:
    """Linear functionals on gl_k(R) (row-major) cutting out span g(Omega).

    A real k x k matrix X lies in the span iff every returned row y satisfies
    sum(y[i] * vec(X)[i]) == 0.
    """
    k = algebra.cone.k
    rows = [[e.re for e in g.entries] for g in algebra.basis]
    return rational_kernel(rows, k * k)


# ---------------------------------------------------------------------------
# Membership
# ---------------------------------------------------------------------------

def atom_status(atom: Atom, x: Sequence[Fraction]) -> str:
    if atom.kind == "halfline":
        if x[0] > 0:
            return INTERIOR
        return BOUNDARY if x[0] == 0 else OUTSIDE
    q = x[0] * x[0] - sum(t * t for t in x[1:])
    if q > 0 and x[0] > 0:
        return INTERIOR
    if q >= 0 and x[0] >= 0:
        return BOUNDARY
    return OUTSIDE


def contains(cone: Cone, x: Sequence) -> str:
    """Classify ``x`` as ``"interior"``, ``"boundary"`` or ``"outside"``."""
    x = [Fraction(t) for t in x]
    if len(x) != cone.k:
        raise ConeError(f"point has {len(x)} coordinates, cone lives in R^{cone.k}")
    statuses = [atom_status(a, x[s:s + a.dim]) for a, s in cone.blocks()]
    if OUTSIDE in statuses:
        return OUTSIDE
    if all(s == INTERIOR for s in statuses):
        return INTERIOR
    return BOUNDARY


# ---------------------------------------------------------------------------
# Transitivity
# ---------------------------------------------------------------------------

def canonical_interior_point(cone: Cone) -> tuple[Fraction, ...]:
    pt = []
    for a in cone.atoms:
        pt.append(Fraction(1))
        pt.extend(Fraction(0) for _ in range(a.dim - 1))
    return tuple(pt)


def sample_interior_points(cone: Cone, count: int, seed: int) -> list[tuple[Fraction, ...]]:
    rng = random.Random(seed)
    pts = []
    for _ in range(count):
        pt = []
        for a in cone.atoms:
            if a.kind == "halfline":
                pt.append(Fraction(rng.randint(1, 9), rng.randint(1, 9)))
            else:
                rest = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(a.dim - 1)]
                head = sum(abs(t) for t in rest) + Fraction(rng.randint(1, 9), rng.randint(1, 9))
                pt.append(head)
                pt.extend(rest)
        pts.append(tuple(pt))
    return pts


@dataclass(frozen=True)
class TransitivityVerdict:
    verdict: str  # "transitive-certified" | "inconclusive" | "not-transitive"
    ranks: tuple[int, ...]
    points: tuple[tuple[Fraction, ...], ...]
    caveat: str = "sample-based: full orbit rank checked at the listed interior points only"

    @property
    def transitive(self) -> bool:
        return self.verdict == "transitive-certified"


def orbit_rank(h: Sequence[Matrix], x: Sequence[Fraction]) -> int:
    images = [[v.re for v in (A @ x)] for A in h]
    if not images:
        return 0
    return rational_rank(images, len(x))


def infinitesimal_transitivity(
    h: Sequence[Matrix],
    cone: Cone,
    base_points: Sequence[Sequence] | None = None,
    samples: int = 8,
    seed: int = 0,
) -> TransitivityVerdict:
    """Check that ``{A x : A in h}`` spans R^k at each supplied interior point.

    With no ``base_points`` the canonical point plus ``samples`` seeded random
    interior points are used.  Full rank everywhere gives
    ``"transitive-certified"``; deficiency everywhere gives ``"not-transitive"``;
    anything mixed is ``"inconclusive"``.
    """
    if base_points is None:
        pts = [canonical_interior_point(cone)] + sample_interior_points(cone, samples, seed)
    else:
        pts = [tuple(Fraction(t) for t in p) for p in base_points]
    for p in pts:
        if contains(cone, p) != INTERIOR:
            raise ConeError(f"base point {tuple(str(t) for t in p)} is not interior to {cone}")
    for A in h:
        if A.shape != (cone.k, cone.k):
            raise ConeError("algebra element has the wrong size")
    k = cone.k
    ranks = tuple(orbit_rank(h, p) for p in pts)
    if all(r == k for r in ranks):
        verdict = "transitive-certified"
    elif all(r < k for r in ranks):
        verdict = "not-transitive"
    else:
        verdict = "inconclusive"
    return TransitivityVerdict(verdict, ranks, tuple(pts))


def span_contains(basis: Sequence[Matrix], candidates: Sequence[Matrix]) -> bool:
    """True when every candidate lies in the real span of ``basis``."""
    if not candidates:
        return True
    n = len(candidates[0].entries)
    space = RowSpace(([e.re for e in b.entries] for b in basis), n)
    return all([e.re for e in c.entries] in space for c in candidates)


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a @ b - b @ a


def is_closed_under_bracket(basis: Sequence[Matrix]) -> bool:
    brackets = [commutator(a, b) for i, a in enumerate(basis) for b in basis[i + 1:]]
    return span_contains(basis, brackets)


def is_linearly_independent(basis: Sequence[Matrix]) -> bool:
    if not basis:
        return True
    return rational_rank([[e.re for e in b.entries] for b in basis], len(basis[0].entries)) == len(basis)
