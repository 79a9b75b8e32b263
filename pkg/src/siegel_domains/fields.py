"""Holomorphic polynomial vector fields on C^k x C^m.

Coordinates are ``z_1..z_k`` followed by ``w_1..w_m``.  A field is a tuple of
k + m polynomials (the coefficients of d/dz_j and d/dw_l); a polynomial is a
mapping from exponent tuples to Gaussian rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .hermitian import HermitianTuple
from .linalg import I, GaussianRational, Matrix, as_scalar

__all__ = [
    "PolyVectorField",
    "FieldDegreeError",
    "euler_field",
    "lie_bracket",
    "minus_one_field",
    "minus_half_field",
    "zero_field",
    "half_field",
    "one_field",
]

MAX_DEGREE = 2

Poly = Mapping[tuple, GaussianRational]


class FieldDegreeError(ArithmeticError):
    pass


def _clean(poly: dict) -> tuple:
    return tuple(sorted((e, c) for e, c in poly.items() if c))


def _padd(acc: dict, e: tuple, c: GaussianRational):
    v = acc.get(e)
    acc[e] = c if v is None else v + c


@dataclass(frozen=True)
class PolyVectorField:
    k: int
    m: int
    components: tuple[tuple[tuple[tuple, GaussianRational], ...], ...]

    @classmethod
    def from_polys(cls, k: int, m: int, polys: Sequence[Poly]) -> "PolyVectorField":
        if len(polys) != k + m:
            raise ValueError("need one polynomial per coordinate")
        comps = []
        for p in polys:
            for e in p:
                if len(e) != k + m:
                    raise ValueError("exponent tuple of wrong length")
            comps.append(_clean(dict(p)))
        return cls(k, m, tuple(comps))

    @classmethod
    def zero(cls, k: int, m: int) -> "PolyVectorField":
        return cls(k, m, tuple(() for _ in range(k + m)))

    @property
    def n(self) -> int:
        return self.k + self.m

    def poly(self, i: int) -> dict:
        return dict(self.components[i])

    def is_zero(self) -> bool:
        return not any(self.components)

    def degree(self) -> int:
        return max((sum(e) for comp in self.components for e, _ in comp), default=-1)

    def _combine(self, other: "PolyVectorField", sign: int) -> "PolyVectorField":
        if (self.k, self.m) != (other.k, other.m):
            raise ValueError("fields live on different spaces")
        out = []
        for a, b in zip(self.components, other.components):
            acc = dict(a)
            for e, c in b:
                _padd(acc, e, c * sign)
            out.append(_clean(acc))
        return PolyVectorField(self.k, self.m, tuple(out))

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, c) -> "PolyVectorField":
        c = as_scalar(c)
        return PolyVectorField(
            self.k, self.m,
            tuple(_clean({e: v * c for e, v in comp}) for comp in self.components),
        )

    def weights(self) -> set[Fraction]:
        """Eigenvalues of ad(Euler field) carried by the monomial terms."""
        out = set()
        for i, comp in enumerate(self.components):
            shift = Fraction(1) if i < self.k else Fraction(1, 2)
            for e, _ in comp:
                w = sum(e[:self.k]) + Fraction(sum(e[self.k:]), 2)
                out.add(w - shift)
        return out

    def coefficient_items(self):
        for i, comp in enumerate(self.components):
            for e, c in comp:
                yield (i, e), c

    def __str__(self):
        names = [f"z{j + 1}" for j in range(self.k)] + [f"w{j + 1}" for j in range(self.m)]
        parts = []
        for i, comp in enumerate(self.components):
            if not comp:
                continue
            terms = []
            for e, c in comp:
                mono = "*".join(
                    names[v] if p == 1 else f"{names[v]}^{p}" for v, p in enumerate(e) if p)
                terms.append(f"({c})" + (f"*{mono}" if mono else ""))
            parts.append(f"[{' + '.join(terms)}] d/d{names[i]}")
        return " + ".join(parts) if parts else "0"


def _derivative(comp, var: int) -> dict:
    out = {}
    for e, c in comp:
        p = e[var]
        if p:
            e2 = e[:var] + (p - 1,) + e[var + 1:]
            _padd(out, e2, c * p)
    return out


def _mul(p1: dict, p2, acc: dict):
    for e1, c1 in p1.items():
        for e2, c2 in p2:
            _padd(acc, tuple(a + b for a, b in zip(e1, e2)), c1 * c2)


def _apply(x: PolyVectorField, y: PolyVectorField) -> list[dict]:
    """``(X . grad) Y`` componentwise."""
    out = []
    for comp in y.components:
        acc: dict = {}
        for v in range(x.n):
            if not x.components[v]:
                continue
            d = _derivative(comp, v)
            if d:
                _mul(d, x.components[v], acc)
        out.append(acc)
    return out


def lie_bracket(x: PolyVectorField, y: PolyVectorField, max_degree: int | None = MAX_DEGREE) -> PolyVectorField:
    """``[X, Y] = (X . grad) Y - (Y . grad) X``."""
    if (x.k, x.m) != (y.k, y.m):
        raise ValueError("fields live on different spaces")
    xy = _apply(x, y)
    yx = _apply(y, x)
    comps = []
    for a, b in zip(xy, yx):
        for e, c in b.items():
            _padd(a, e, -c)
        comps.append(_clean(a))
    out = PolyVectorField(x.k, x.m, tuple(comps))
    if max_degree is not None and out.degree() > max_degree:
        raise FieldDegreeError(f"bracket has degree {out.degree()} > {max_degree}")
    return out


# ---------------------------------------------------------------------------
# Graded shapes
# ---------------------------------------------------------------------------

def _mono(n: int, *vars_: int) -> tuple:
    e = [0] * n
    for v in vars_:
        e[v] += 1
    return tuple(e)


def euler_field(k: int, m: int) -> PolyVectorField:
    """``z . d/dz + 1/2 w . d/dw``."""
    n = k + m
    polys = [{_mono(n, j): GaussianRational(1)} for j in range(k)]
    polys += [{_mono(n, k + l): GaussianRational(Fraction(1, 2))} for l in range(m)]
    return PolyVectorField.from_polys(k, m, polys)


def minus_one_field(a: Sequence, m: int) -> PolyVectorField:
    """``a . d/dz`` for a real vector ``a``."""
    k = len(a)
    n = k + m
    polys = [{_mono(n): as_scalar(x)} for x in a] + [{} for _ in range(m)]
    return PolyVectorField.from_polys(k, m, polys)


def minus_half_field(b: Sequence, h: HermitianTuple) -> PolyVectorField:
    """``2i H(b, w) . d/dz + b . d/dw``."""
    k, m = h.k, h.m
    n = k + m
    b = [as_scalar(x) for x in b]
    polys = []
    for hj in h.components:
        p: dict = {}
        for a in range(m):
            for c in range(m):
                coef = b[a].conjugate() * hj[a, c]
                if coef:
                    _padd(p, _mono(n, k + c), coef * I * 2)
        polys.append(p)
    polys += [{_mono(n): x} for x in b]
    return PolyVectorField.from_polys(k, m, polys)


def zero_field(a_mat: Matrix, b_mat: Matrix) -> PolyVectorField:
    """``(A z) . d/dz + (B w) . d/dw``."""
    k, m = a_mat.rows, b_mat.rows
    n = k + m
    polys = []
    for j in range(k):
        polys.append({_mono(n, r): a_mat[j, r] for r in range(k)})
    for l in range(m):
        polys.append({_mono(n, k + i): b_mat[l, i] for i in range(m)})
    return PolyVectorField.from_polys(k, m, polys)


def half_field(phi: Matrix, c: Sequence[Matrix], h: HermitianTuple) -> PolyVectorField:
    """``2i H(Phi(conj z), w) . d/dz + (Phi(z) + c(w, w)) . d/dw``.

    ``phi`` is m x k; ``c[l]`` is the symmetric m x m matrix of the l-th output
    coordinate of the bilinear map ``c``.
    """
    k, m = h.k, h.m
    n = k + m
    polys = []
    for hj in h.components:
        p: dict = {}
        # H_j(Phi conj(z), w) = sum conj(Phi[a, r]) z_r H_j[a, b] w_b
        for a in range(m):
            for r in range(k):
                ph = phi[a, r]
                if not ph:
                    continue
                for bb in range(m):
                    if hj[a, bb]:
                        _padd(p, _mono(n, r, k + bb), ph.conjugate() * hj[a, bb] * I * 2)
        polys.append(p)
    for l in range(m):
        p = {}
        for r in range(k):
            if phi[l, r]:
                _padd(p, _mono(n, r), phi[l, r])
        for i in range(m):
            for j in range(m):
                if c[l][i, j]:
                    _padd(p, _mono(n, k + i, k + j), c[l][i, j])
        polys.append(p)
    return PolyVectorField.from_polys(k, m, polys)


def one_field(a: Sequence[Matrix], b: Sequence[Matrix], m: int) -> PolyVectorField:
    """``a(z, z) . d/dz + b(z, w) . d/dw``.

    ``a[l]`` is the symmetric k x k matrix of the l-th output of ``a``;
    ``b[r]`` is the m x m matrix of ``w -> b(e_r, w)``.
    """
    k = len(a)
    n = k + m
    polys = []
    for l in range(k):
        p: dict = {}
        for r in range(k):
            for s in range(k):
                if a[l][r, s]:
                    _padd(p, _mono(n, r, s), a[l][r, s])
        polys.append(p)
    for l in range(m):
        p = {}
        for r in range(k):
            for i in range(m):
                if b[r][l, i]:
                    _padd(p, _mono(n, r, k + i), b[r][l, i])
        polys.append(p)
    return PolyVectorField.from_polys(k, m, polys)

