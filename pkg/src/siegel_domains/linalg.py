"""Exact scalars and dense matrices over Q and Q(i).

Everything here is exact.  Rationals are :class:`fractions.Fraction`; Gaussian
rationals are :class:`GaussianRational`.  Elimination is fraction-free
(Bareiss) on integer-scaled rows, and kernel bases come out in reduced
echelon form, so equal inputs always give identical bases.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence, Union

__all__ = [
    "GaussianRational",
    "Matrix",
    "I",
    "ONE",
    "ZERO",
    "as_scalar",
    "rank",
    "kernel_basis",
    "realify",
    "rational_rank",
    "rational_kernel",
    "RowSpace",
    "inverse",
]


class GaussianRational:
    """An element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, float) or isinstance(im, float):
            raise TypeError("floats are not exact; use Fraction or a 'p/q' string")
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse ``"p/q"`` or ``"a+bi"`` style strings (``i`` may be written ``j``)."""
        t = text.strip().replace(" ", "").replace("j", "i")
        if not t.endswith("i"):
            return cls(Fraction(t))
        body = t[:-1]
        # split at the last sign that is not the leading one or part of an exponent
        cut = max(body.rfind("+", 1), body.rfind("-", 1))
        if cut <= 0:
            im = body if body not in ("", "+", "-") else body + "1"
            return cls(0, Fraction(im))
        re, im = body[:cut], body[cut:]
        if im in ("+", "-"):
            im += "1"
        return cls(Fraction(re), Fraction(im))

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        num = self * other.conjugate()
        return GaussianRational(num.re / n, num.im / n)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


Scalar = Union[int, Fraction, GaussianRational, str]

ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    return None


def as_scalar(x: Scalar) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, str):
        return GaussianRational.parse(x)
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    if isinstance(x, complex):
        raise TypeError("floating-point complex values are not exact; use GaussianRational")
    if isinstance(x, float):
        raise TypeError("floats are not exact; use Fraction or a 'p/q' string")
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


class Matrix:
    """Immutable dense matrix with Gaussian-rational entries, stored row-major."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable[Scalar]):
        ent = tuple(as_scalar(e) for e in entries)
        if len(ent) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(ent)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", ent)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if not rows:
            return cls(0, cols or 0, ())
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, (e for r in rows for e in r))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, (ONE if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def diag(cls, values: Sequence[Scalar]) -> "Matrix":
        n = len(values)
        vals = [as_scalar(v) for v in values]
        return cls(n, n, (vals[i] if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def unit(cls, rows: int, cols: int, i: int, j: int, value: Scalar = 1) -> "Matrix":
        ent = [ZERO] * (rows * cols)
        ent[i * cols + j] = as_scalar(value)
        return cls(rows, cols, ent)

    @classmethod
    def block_diag(cls, blocks: Sequence["Matrix"]) -> "Matrix":
        r = sum(b.rows for b in blocks)
        c = sum(b.cols for b in blocks)
        ent = [ZERO] * (r * c)
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    ent[(r0 + i) * c + c0 + j] = b[i, j]
            r0 += b.rows
            c0 += b.cols
        return cls(r, c, ent)

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> list[list[GaussianRational]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_real(self) -> bool:
        return all(e.im == 0 for e in self.entries)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_hermitian(self) -> bool:
        return self.is_square() and self == self.H

    @property
    def T(self) -> "Matrix":
        return Matrix(self.cols, self.rows, (self[i, j] for j in range(self.cols) for i in range(self.rows)))

    @property
    def H(self) -> "Matrix":
        """Conjugate transpose."""
        return Matrix(
            self.cols, self.rows,
            (self[i, j].conjugate() for j in range(self.cols) for i in range(self.rows)),
        )

    def conjugate(self) -> "Matrix":
        return Matrix(self.rows, self.cols, (e.conjugate() for e in self.entries))

    def trace(self) -> GaussianRational:
        return sum((self[i, i] for i in range(min(self.rows, self.cols))), ZERO)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.rows, self.cols, self.entries))
            object.__setattr__(self, "_hash", h)
        return h

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix(self.rows, self.cols, (a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix(self.rows, self.cols, (a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self):
        return Matrix(self.rows, self.cols, (-a for a in self.entries))

    def scale(self, c: Scalar) -> "Matrix":
        c = as_scalar(c)
        return Matrix(self.rows, self.cols, (c * a for a in self.entries))

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction, GaussianRational)):
            return self.scale(c)
        return NotImplemented

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            cols = [other.column(j) for j in range(other.cols)]
            out = []
            for i in range(self.rows):
                r = self.row(i)
                for col in cols:
                    out.append(sum((a * b for a, b in zip(r, col) if a and b), ZERO))
            return Matrix(self.rows, other.cols, out)
        vec = [as_scalar(x) for x in other]
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(
            sum((a * b for a, b in zip(self.row(i), vec) if a and b), ZERO) for i in range(self.rows)
        )

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in self.row(i)) for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


# ---------------------------------------------------------------------------
# Fraction-free elimination
# ---------------------------------------------------------------------------

def _scale_to_integers(row: Sequence[Fraction]) -> list[int]:
    den = reduce(lcm, (x.denominator for x in row), 1)
    return [int(x * den) for x in row]


def _gaussian_exact_div(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    # (a0 + a1 i) / (b0 + b1 i), known to lie in Z[i]
    n = b[0] * b[0] + b[1] * b[1]
    re = a[0] * b[0] + a[1] * b[1]
    im = a[1] * b[0] - a[0] * b[1]
    q0, r0 = divmod(re, n)
    q1, r1 = divmod(im, n)
    if r0 or r1:
        raise ArithmeticError("inexact Gaussian integer division in Bareiss step")
    return (q0, q1)


def _bareiss_int(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Fraction-free echelon form of an integer matrix.

    Pivots are chosen as the first row (in current order) with a nonzero entry in
    the column.  Rows that become zero are dropped as they appear.
    """
    rows = [r for r in rows if any(r)]
    echelon: list[list[int]] = []
    pivots: list[int] = []
    prev = 1
    for col in range(ncols):
        if not rows:
            break
        p = next((i for i, r in enumerate(rows) if r[col]), None)
        if p is None:
            continue
        prow = rows.pop(p)
        pv = prow[col]
        nxt = []
        for r in rows:
            f = r[col]
            if f:
                nr = [(pv * x - f * y) // prev for x, y in zip(r, prow)]
            elif pv == prev:
                nr = r
            else:
                nr = [(pv * x) // prev for x in r]
            if any(nr):
                nxt.append(nr)
        rows = nxt
        echelon.append(prow)
        pivots.append(col)
        prev = pv
    return echelon, pivots


def _bareiss_gauss(rows: list[list[tuple[int, int]]], ncols: int):
    """Same as :func:`_bareiss_int` over the Gaussian integers (pairs re, im)."""

    def nz(x):
        return x[0] or x[1]

    def mul(a, b):
        return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])

    rows = [r for r in rows if any(nz(x) for x in r)]
    echelon, pivots = [], []
    prev = (1, 0)
    for col in range(ncols):
        if not rows:
            break
        p = next((i for i, r in enumerate(rows) if nz(r[col])), None)
        if p is None:
            continue
        prow = rows.pop(p)
        pv = prow[col]
        nxt = []
        for r in rows:
            f = r[col]
            nr = []
            for x, y in zip(r, prow):
                a = mul(pv, x)
                b = mul(f, y)
                nr.append(_gaussian_exact_div((a[0] - b[0], a[1] - b[1]), prev))
            if any(nz(x) for x in nr):
                nxt.append(nr)
        rows = nxt
        echelon.append(prow)
        pivots.append(col)
        prev = pv
    return echelon, pivots


def _gauss_int_rows(m: Matrix) -> list[list[tuple[int, int]]]:
    out = []
    for i in range(m.rows):
        r = m.row(i)
        den = reduce(lcm, (x.re.denominator for x in r), 1)
        den = reduce(lcm, (x.im.denominator for x in r), den)
        out.append([(int(x.re * den), int(x.im * den)) for x in r])
    return out


def rational_rank(rows: Sequence[Sequence[Fraction]], ncols: int) -> int:
    """Rank of a rational matrix given as a list of rows."""
    _, piv = _bareiss_int([_scale_to_integers(r) for r in rows], ncols)
    return len(piv)


def _back_substitute(echelon, pivots, ncols, to_field, zero, one):
    """Canonical kernel basis from an echelon form (RREF semantics)."""
    piv_set = set(pivots)
    free = [c for c in range(ncols) if c not in piv_set]
    erows = [[to_field(x) for x in r] for r in echelon]
    basis = []
    for f in free:
        x = [zero] * ncols
        x[f] = one
        for r, pc in zip(reversed(erows), reversed(pivots)):
            s = zero
            for c in range(pc + 1, ncols):
                if x[c] and r[c]:
                    s = s + r[c] * x[c]
            x[pc] = -s / r[pc]
        basis.append(tuple(x))
    return basis


def rational_kernel(rows: Sequence[Sequence[Fraction]], ncols: int) -> list[tuple[Fraction, ...]]:
    """Right null space of a rational matrix in reduced-echelon canonical form.

    One vector per free column (ascending); the free entry is 1, the other free
    entries are 0.
    """
    echelon, pivots = _bareiss_int([_scale_to_integers(r) for r in rows], ncols)
    return _back_substitute(echelon, pivots, ncols, Fraction, Fraction(0), Fraction(1))


def rank(m: Matrix) -> int:
    """Rank of ``m`` over Q (real input) or Q(i)."""
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.is_real():
        return rational_rank([[x.re for x in m.row(i)] for i in range(m.rows)], m.cols)
    _, piv = _bareiss_gauss(_gauss_int_rows(m), m.cols)
    return len(piv)


def kernel_basis(m: Matrix) -> list[tuple[GaussianRational, ...]]:
    """Canonical basis of the right null space of ``m``; ``cols - rank`` vectors."""
    if m.cols == 0:
        return []
    if m.is_real():
        vecs = rational_kernel([[x.re for x in m.row(i)] for i in range(m.rows)], m.cols)
        return [tuple(GaussianRational(x) for x in v) for v in vecs]
    echelon, pivots = _bareiss_gauss(_gauss_int_rows(m), m.cols)
    return _back_substitute(
        echelon, pivots, m.cols, lambda p: GaussianRational(p[0], p[1]), ZERO, ONE
    )


def realify(
    m: Matrix,
    kinds: Sequence[str],
    conjugate: Matrix | None = None,
) -> Matrix:
    """Real system equivalent to ``m @ x + conjugate @ conj(x) = 0``.

    ``kinds[j]`` is ``"complex"`` (two real slots, real part first) or ``"real"``
    (one slot) for unknown ``j``.  Each complex equation becomes two real rows
    (real part, then imaginary part).
    """
    if len(kinds) != m.cols:
        raise ValueError("one kind per unknown column is required")
    if conjugate is not None and conjugate.shape != m.shape:
        raise ValueError("conjugate coefficient matrix must match shape")
    for kd in kinds:
        if kd not in ("real", "complex"):
            raise ValueError(f"unknown kind {kd!r}")
    re_rows, im_rows = [], []
    for i in range(m.rows):
        re_row, im_row = [], []
        for j, kd in enumerate(kinds):
            a = m[i, j]
            b = conjugate[i, j] if conjugate is not None else ZERO
            # a*(u+iv) + b*(u-iv) = (a+b) u + i(a-b) v
            cu = a + b
            re_row.append(cu.re)
            im_row.append(cu.im)
            if kd == "complex":
                cv = (a - b) * I
                re_row.append(cv.re)
                im_row.append(cv.im)
        re_rows.append(re_row)
        im_rows.append(im_row)
    ncols = sum(2 if kd == "complex" else 1 for kd in kinds)
    out = []
    for r1, r2 in zip(re_rows, im_rows):
        out.append(r1)
        out.append(r2)
    return Matrix(len(out), ncols, (x for r in out for x in r))


class RowSpace:
    """Span of rational vectors kept in reduced echelon form, for membership tests."""

    def __init__(self, vectors: Iterable[Sequence[Fraction]], dim: int):
        self.dim = dim
        self._rows: list[list[Fraction]] = []
        self._pivots: list[int] = []
        for v in vectors:
            self.add(v)

    def _reduce(self, v: Sequence[Fraction]) -> list[Fraction]:
        v = [Fraction(x) for x in v]
        if len(v) != self.dim:
            raise ValueError("vector length mismatch")
        for r, p in zip(self._rows, self._pivots):
            f = v[p]
            if f:
                v = [x - f * y for x, y in zip(v, r)]
        return v

    def add(self, v: Sequence[Fraction]) -> bool:
        v = self._reduce(v)
        p = next((i for i, x in enumerate(v) if x), None)
        if p is None:
            return False
        inv = 1 / v[p]
        v = [x * inv for x in v]
        for k, r in enumerate(self._rows):
            f = r[p]
            if f:
                self._rows[k] = [x - f * y for x, y in zip(r, v)]
        self._rows.append(v)
        self._pivots.append(p)
        return True

    def __contains__(self, v) -> bool:
        return not any(self._reduce(v))

    def __len__(self):
        return len(self._rows)


def gcd_normalize(v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Scale a nonzero rational vector to primitive integers with positive lead."""
    ints = _scale_to_integers(v)
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(Fraction(0) for _ in v)
    lead = next(x for x in ints if x)
    if lead < 0:
        g = -g
    return tuple(Fraction(x // g) for x in ints)


def inverse(m: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan elimination over Q(i)."""
    n = m.rows
    if m.cols != n:
        raise ValueError("only square matrices are invertible")
    a = [list(m.row(i)) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    for col in range(n):
        p = next((r for r in range(col, n) if a[r][col]), None)
        if p is None:
            raise ZeroDivisionError("matrix is singular")
        a[col], a[p] = a[p], a[col]
        inv = ONE / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            f = a[r][col]
            if r != col and f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return Matrix(n, n, (x for r in a for x in r[n:]))
