"""Matrices of rational functions as linear maps over the Laurent field.

A TransferMatrix is the computational stand-in for a time-invariant linear
map between extended signal spaces.  This module supplies its Markov
coefficients, order, the causality classification, exact inversion, and
the static/strictly-causal decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .rational import ORD_INF, Poly, RatFun


class SingularMatrixError(ValueError):
    """Raised when inverting a singular matrix; carries a kernel vector."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"singular matrix; kernel vector {_fmt_vec(witness)}")


def _fmt_vec(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _entry(x) -> RatFun:
    if isinstance(x, RatFun):
        return x
    if isinstance(x, Poly):
        return RatFun(x)
    if isinstance(x, (int, Fraction)):
        return RatFun.const(x)
    raise TypeError(f"not a matrix entry: {x!r}")


@dataclass(frozen=True)
class CausalityReport:
    map_order: object  # int or ORD_INF
    causal: bool
    strictly_causal: bool
    order_consistent: bool
    instantaneous: bool
    nonlatent: bool
    bicausal: bool

    def as_dict(self) -> dict:
        return {
            "map_order": "inf" if self.map_order == ORD_INF else self.map_order,
            "causal": self.causal,
            "strictly_causal": self.strictly_causal,
            "order_consistent": self.order_consistent,
            "instantaneous": self.instantaneous,
            "nonlatent": self.nonlatent,
            "bicausal": self.bicausal,
        }


class TransferMatrix:
    """Rectangular grid of RatFun entries; immutable."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        rows = tuple(tuple(_entry(x) for x in row) for row in entries)
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("TransferMatrix is immutable")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @classmethod
    def identity(cls, n: int) -> TransferMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, p: int, m: int) -> TransferMatrix:
        return cls([[0] * m for _ in range(p)])

    @classmethod
    def diag(cls, scalars) -> TransferMatrix:
        scalars = list(scalars)
        n = len(scalars)
        return cls([[scalars[i] if i == j else 0 for j in range(n)]
                    for i in range(n)])

    @classmethod
    def scalar(cls, r) -> TransferMatrix:
        return cls([[r]])

    @classmethod
    def from_constant(cls, a) -> TransferMatrix:
        return cls([[RatFun.const(c) for c in row] for row in a])

    @classmethod
    def from_columns(cls, columns) -> TransferMatrix:
        cols = [list(c) for c in columns]
        n = len(cols[0])
        if any(len(c) != n for c in cols):
            raise ValueError("ragged column list")
        return cls([[cols[j][i] for j in range(len(cols))] for i in range(n)])

    def entry(self, i: int, j: int) -> RatFun:
        return self.entries[i][j]

    def column(self, j: int) -> tuple[RatFun, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> TransferMatrix:
        return TransferMatrix([[self.entries[i][j] for i in range(self.rows)]
                               for j in range(self.cols)])

    def hstack(self, other: TransferMatrix) -> TransferMatrix:
        if self.rows != other.rows:
            raise ValueError("row count mismatch in hstack")
        return TransferMatrix([list(a) + list(b)
                               for a, b in zip(self.entries, other.entries)])

    def vstack(self, other: TransferMatrix) -> TransferMatrix:
        if self.cols != other.cols:
            raise ValueError("column count mismatch in vstack")
        return TransferMatrix(list(self.entries) + list(other.entries))

    def __add__(self, other: TransferMatrix) -> TransferMatrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")
        return TransferMatrix([[a + b for a, b in zip(r1, r2)]
                               for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other: TransferMatrix) -> TransferMatrix:
        return self + (-other)

    def __neg__(self) -> TransferMatrix:
        return TransferMatrix([[-a for a in row] for row in self.entries])

    def __mul__(self, other):
        if isinstance(other, TransferMatrix):
            if self.cols != other.rows:
                raise ValueError("dimension mismatch")
            n = self.cols
            return TransferMatrix(
                [[sum((self.entries[i][k] * other.entries[k][j]
                       for k in range(n)), RatFun.const(0))
                  for j in range(other.cols)] for i in range(self.rows)])
        other = _entry(other)
        return TransferMatrix([[a * other for a in row] for row in self.entries])

    def __rmul__(self, other):
        other = _entry(other)
        return TransferMatrix([[other * a for a in row] for row in self.entries])

    def __eq__(self, other) -> bool:
        return (isinstance(other, TransferMatrix)
                and self.entries == other.entries)

    def __hash__(self):
        return hash(self.entries)

    def apply(self, u) -> tuple[RatFun, ...]:
        """Exact image of the input vector u (length = cols)."""
        u = [_entry(x) for x in u]
        if len(u) != self.cols:
            raise ValueError(f"input length {len(u)} != {self.cols} columns")
        return tuple(sum((row[k] * u[k] for k in range(self.cols)),
                         RatFun.const(0)) for row in self.entries)

    @property
    def is_zero(self) -> bool:
        return all(e.is_zero for row in self.entries for e in row)

    def order(self):
        """Minimum entry order; ORD_INF for the zero matrix."""
        orders = [e.order() for row in self.entries for e in row
                  if not e.is_zero]
        return min(orders) if orders else ORD_INF

    def markov(self, k: int):
        """Constant coefficient matrix of z^-k in the entrywise expansion."""
        return tuple(tuple(e.laurent_coeff(k) for e in row)
                     for row in self.entries)

    def classify(self) -> CausalityReport:
        k0 = self.order()
        if k0 == ORD_INF:
            # Zero map: the order-consistency identity holds vacuously.
            return CausalityReport(ORD_INF, True, True, True, False, False, False)
        causal = k0 >= 0
        strictly = k0 >= 1
        lead = self.markov(k0)
        consistent = linalg.rank(lead) == self.cols
        bicausal = (self.is_square and causal
                    and linalg.rank(self.markov(0)) == self.rows)
        return CausalityReport(
            map_order=k0,
            causal=causal,
            strictly_causal=strictly,
            order_consistent=consistent,
            instantaneous=consistent and k0 == 0,
            nonlatent=consistent and k0 == 1,
            bicausal=bicausal,
        )

    def rank(self) -> int:
        """Rank over the rational function field."""
        work = [list(row) for row in self.entries]
        return len(_pivot_columns(work))

    def kernel_vector(self):
        """A vector of RatFun spanning part of the right kernel, or None.

        Normalized so its first nonzero entry is 1.
        """
        work = [list(row) for row in self.entries]
        pivots = _pivot_columns(work)
        pivot_set = set(pivots)
        free = next((c for c in range(self.cols) if c not in pivot_set), None)
        if free is None:
            return None
        x = [RatFun.const(0)] * self.cols
        x[free] = RatFun.const(1)
        for r, c in enumerate(pivots):
            x[c] = -work[r][free]
        lead = next(v for v in x if not v.is_zero)
        inv = lead.inverse()
        return tuple(v * inv for v in x)

    def det(self) -> RatFun:
        if not self.is_square:
            raise ValueError("determinant of a nonsquare matrix")
        work = [list(row) for row in self.entries]
        n = self.rows
        det = RatFun.const(1)
        for c in range(n):
            piv = _select_pivot(work, c, c)
            if piv is None:
                return RatFun.const(0)
            if piv != c:
                work[c], work[piv] = work[piv], work[c]
                det = -det
            det = det * work[c][c]
            inv = work[c][c].inverse()
            for i in range(c + 1, n):
                if not work[i][c].is_zero:
                    f = work[i][c] * inv
                    work[i] = [a - f * b for a, b in zip(work[i], work[c])]
        return det

    def inverse(self) -> TransferMatrix:
        """Exact inverse; raises SingularMatrixError with a kernel witness."""
        if not self.is_square:
            raise ValueError("inverse of a nonsquare matrix")
        n = self.rows
        work = [list(row) + [RatFun.const(1 if i == j else 0) for j in range(n)]
                for i, row in enumerate(self.entries)]
        for c in range(n):
            piv = _select_pivot(work, c, c)
            if piv is None:
                witness = self.kernel_vector()
                raise SingularMatrixError(witness)
            work[c], work[piv] = work[piv], work[c]
            inv = work[c][c].inverse()
            work[c] = [a * inv for a in work[c]]
            for i in range(n):
                if i != c and not work[i][c].is_zero:
                    f = work[i][c]
                    work[i] = [a - f * b for a, b in zip(work[i], work[c])]
        return TransferMatrix([row[n:] for row in work])

    def static_strict_split(self):
        """(A0, strictly causal remainder); requires a causal matrix."""
        report = self.classify()
        if not report.causal:
            raise ValueError("static/strict split of a non-causal matrix")
        a0 = self.markov(0)
        rest = self - TransferMatrix.from_constant(a0)
        return a0, rest

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(e) for e in row)
                               for row in self.entries) + "]"

    def __repr__(self) -> str:
        return f"TransferMatrix({self.rows}x{self.cols})"


def _total_degree(r: RatFun) -> int:
    return r.num.degree + r.den.degree


def _select_pivot(work, row_start: int, col: int):
    """Row index of the nonzero pivot of minimal total degree, or None."""
    best = None
    best_deg = None
    for i in range(row_start, len(work)):
        e = work[i][col]
        if e.is_zero:
            continue
        d = _total_degree(e)
        if best is None or d < best_deg:
            best, best_deg = i, d
    return best


def _pivot_columns(work) -> list[int]:
    """Forward elimination in place; returns pivot column indices."""
    nrows = len(work)
    ncols = len(work[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = _select_pivot(work, r, c)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = work[r][c].inverse()
        work[r] = [a * inv for a in work[r]]
        for i in range(nrows):
            if i != r and not work[i][c].is_zero:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


# Operation-style aliases mirroring the public surface.

def markov_coefficient(f: TransferMatrix, k: int):
    return f.markov(k)


def map_order(f: TransferMatrix):
    return f.order()


def classify(f: TransferMatrix) -> CausalityReport:
    return f.classify()


def invert(f: TransferMatrix) -> TransferMatrix:
    return f.inverse()


def static_strict_split(f: TransferMatrix):
    return f.static_strict_split()


def apply(f: TransferMatrix, u):
    return f.apply(u)


def transpose_rank(f: TransferMatrix):
    return f.transpose(), f.rank()
