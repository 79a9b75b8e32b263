"""Real-linear constraint systems over complex-valued expressions.

Unknowns are real slots.  A complex unknown occupies two consecutive slots
(real part, imaginary part).  An :class:`Expr` is a real-linear form in the
slots with Gaussian-rational coefficients, which is exactly what is needed to
write complex-linear and conjugate-linear constraints side by side.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import I, ONE, GaussianRational, as_scalar, rational_kernel

__all__ = ["Expr", "Unknowns", "System"]


class Expr:
    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, GaussianRational] | None = None):
        self.terms = terms if terms is not None else {}

    @classmethod
    def zero(cls) -> "Expr":
        return cls()

    def __add__(self, other: "Expr") -> "Expr":
        out = dict(self.terms)
        for k, v in other.terms.items():
            w = out.get(k)
            w = v if w is None else w + v
            if w:
                out[k] = w
            else:
                out.pop(k, None)
        return Expr(out)

    def __sub__(self, other: "Expr") -> "Expr":
        return self + other * -1

    def __neg__(self):
        return self * -1

    def __mul__(self, c) -> "Expr":
        c = as_scalar(c)
        if not c:
            return Expr()
        return Expr({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def conj(self) -> "Expr":
        return Expr({k: v.conjugate() for k, v in self.terms.items()})

    def real(self) -> "Expr":
        return Expr({k: GaussianRational(v.re) for k, v in self.terms.items() if v.re})

    def imag(self) -> "Expr":
        return Expr({k: GaussianRational(v.im) for k, v in self.terms.items() if v.im})

    def __bool__(self):
        return bool(self.terms)

    def evaluate(self, values: Sequence[Fraction]) -> GaussianRational:
        total = GaussianRational(0)
        for k, v in self.terms.items():
            total = total + v * values[k]
        return total


def lin_sum(exprs: Iterable[Expr]) -> Expr:
    acc: dict[int, GaussianRational] = {}
    for e in exprs:
        for k, v in e.terms.items():
            w = acc.get(k)
            acc[k] = v if w is None else w + v
    return Expr({k: v for k, v in acc.items() if v})


class Unknowns:
    """Allocator of real slots with human-readable labels."""

    def __init__(self):
        self.labels: list[str] = []

    def __len__(self):
        return len(self.labels)

    def real(self, label: str) -> Expr:
        self.labels.append(label)
        return Expr({len(self.labels) - 1: ONE})

    def complex(self, label: str) -> Expr:
        n = len(self.labels)
        self.labels.append(f"Re {label}")
        self.labels.append(f"Im {label}")
        return Expr({n: ONE, n + 1: I})


class System:
    """Homogeneous real-linear system built from complex equations."""

    def __init__(self, unknowns: Unknowns):
        self.unknowns = unknowns
        self._rows: dict[tuple, None] = {}

    def _add_row(self, coeffs: dict[int, Fraction]):
        if not coeffs:
            return
        n = len(self.unknowns)
        # canonical sign and scale so duplicate rows collapse
        lead = coeffs[min(coeffs)]
        key = tuple(sorted((k, v / lead) for k, v in coeffs.items()))
        if n and key not in self._rows:
            self._rows[key] = None

    def equate_real(self, expr: Expr):
        """Constrain the real-valued form ``Re(expr)`` to vanish."""
        self._add_row({k: v.re for k, v in expr.terms.items() if v.re})

    def equate(self, expr: Expr):
        """Constrain a complex expression to vanish (two real rows)."""
        self._add_row({k: v.re for k, v in expr.terms.items() if v.re})
        self._add_row({k: v.im for k, v in expr.terms.items() if v.im})

    @property
    def n_rows(self) -> int:
        return len(self._rows)

    def dense_rows(self) -> list[list[Fraction]]:
        n = len(self.unknowns)
        out = []
        for key in self._rows:
            row = [Fraction(0)] * n
            for k, v in key:
                row[k] = v
            out.append(row)
        return out

    def solve(self) -> list[tuple[Fraction, ...]]:
        """Canonical basis of the real solution space."""
        return rational_kernel(self.dense_rows(), len(self.unknowns))
