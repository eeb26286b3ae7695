"""Polynomial matrices over K[z]: Hermite elimination, GCRD, column
reduction, and right coprime fractions.

A right coprime fraction v = N * P^-1 with P column-reduced exposes the
reachability structure of a rational map: the column degrees of P are its
reachability indices and deg det P the minimal state dimension.  P also
generates the module of polynomial inputs with polynomial response.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .rational import Poly, RatFun, poly_lcm
from .transfer import TransferMatrix


class PolyMatrix:
    """Rectangular grid of Poly entries; immutable."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        rows = tuple(tuple(_poly(x) for x in row) for row in entries)
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrix is immutable")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @classmethod
    def identity(cls, n: int) -> PolyMatrix:
        return cls([[Poly.one() if i == j else Poly.zero() for j in range(n)]
                    for i in range(n)])

    @classmethod
    def scalar_diag(cls, d: Poly, n: int) -> PolyMatrix:
        return cls([[d if i == j else Poly.zero() for j in range(n)]
                    for i in range(n)])

    @classmethod
    def from_transfer(cls, t: TransferMatrix) -> PolyMatrix:
        out = []
        for row in t.entries:
            new_row = []
            for e in row:
                if not e.is_polynomial:
                    raise ValueError(f"entry {e} is not polynomial")
                new_row.append(e.num)
            out.append(new_row)
        return cls(out)

    def to_transfer(self) -> TransferMatrix:
        return TransferMatrix([[RatFun(e) for e in row] for row in self.entries])

    def entry(self, i: int, j: int) -> Poly:
        return self.entries[i][j]

    def column_degree(self, j: int) -> int:
        """Maximum entry degree in column j; -1 for a zero column."""
        return max(e.degree for e in (row[j] for row in self.entries))

    def column_degrees(self) -> tuple[int, ...]:
        return tuple(self.column_degree(j) for j in range(self.cols))

    def high_coefficient_matrix(self):
        """Coefficient of z^(column degree) entrywise, per column."""
        degs = self.column_degrees()
        return tuple(tuple(row[j].coeff(degs[j]) if degs[j] >= 0 else Fraction(0)
                           for j in range(self.cols))
                     for row in self.entries)

    def det(self) -> Poly:
        d = self.to_transfer().det()
        if not d.is_polynomial:
            raise AssertionError("determinant of a polynomial matrix "
                                 "came out non-polynomial")
        return d.num

    def __mul__(self, other: PolyMatrix) -> PolyMatrix:
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        n = self.cols
        return PolyMatrix(
            [[sum((self.entries[i][k] * other.entries[k][j] for k in range(n)),
                  Poly.zero())
              for j in range(other.cols)] for i in range(self.rows)])

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(e) for e in row)
                               for row in self.entries) + "]"

    def __repr__(self) -> str:
        return f"PolyMatrix({self.rows}x{self.cols})"


def _poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    raise TypeError(f"not a polynomial entry: {x!r}")


def is_unimodular(u: PolyMatrix) -> bool:
    d = u.det()
    return d.degree == 0


def hermite_gcrd(a: PolyMatrix, b: PolyMatrix):
    """Greatest common right divisor of (a, b) with unimodular certificate.

    Returns (r, u) with u * [a; b] = [r; 0], u unimodular and r in Hermite
    form: upper triangular, monic diagonal, entries above each pivot of
    lower degree.  Requires the stacked matrix to have full column rank.
    Pivot at each step is the minimum-degree nonzero entry (ties: lowest
    row), reduced by polynomial division until the column is cleared.
    """
    if a.cols != b.cols:
        raise ValueError("stacked matrices need matching column counts")
    c = a.cols
    work = [list(row) for row in a.entries] + [list(row) for row in b.entries]
    nrows = len(work)
    if nrows < c:
        raise ValueError("stacked matrix cannot have full column rank")
    u = [[Poly.one() if i == j else Poly.zero() for j in range(nrows)]
         for i in range(nrows)]

    def swap(i, j):
        if i != j:
            work[i], work[j] = work[j], work[i]
            u[i], u[j] = u[j], u[i]

    def combine(i, j, q):
        # row i -= q * row j
        work[i] = [x - q * y for x, y in zip(work[i], work[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    for col in range(c):
        while True:
            nz = [i for i in range(col, nrows) if not work[i][col].is_zero]
            if not nz:
                raise ValueError("stacked matrix is column rank deficient")
            piv = min(nz, key=lambda i: (work[i][col].degree, i))
            swap(col, piv)
            others = [i for i in range(col + 1, nrows)
                      if not work[i][col].is_zero]
            if not others:
                break
            for i in others:
                q = work[i][col] // work[col][col]
                combine(i, col, q)
        lead = work[col][col].lead
        if lead != 1:
            inv = Fraction(1) / lead
            work[col] = [x * inv for x in work[col]]
            u[col] = [x * inv for x in u[col]]
        for i in range(col)[::-1]:
            if work[i][col].degree >= work[col][col].degree:
                combine(i, col, work[i][col] // work[col][col])

    r = PolyMatrix([work[i][:c] for i in range(c)])
    cert = PolyMatrix(u)
    if any(not work[i][j].is_zero for i in range(c, nrows) for j in range(c)):
        raise AssertionError("elimination left residue below the divisor")
    if not is_unimodular(cert):
        raise AssertionError("row transformation is not unimodular")
    return r, cert


def column_reduce_poly(p: PolyMatrix):
    """Column-reduced form of a nonsingular polynomial matrix.

    Returns (p', v) with p' = p * v, v unimodular, and the matrix of
    highest-column-degree coefficients of p' nonsingular; the sum of
    column degrees then equals deg det p.
    """
    if p.rows != p.cols:
        raise ValueError("column reduction here expects a square matrix")
    if p.det().is_zero:
        raise ValueError("column reduction of a singular matrix")
    n = p.cols
    cols = [[p.entries[i][j] for i in range(n)] for j in range(n)]
    v = [[Poly.one() if i == j else Poly.zero() for j in range(n)]
         for i in range(n)]
    while True:
        degs = [max(e.degree for e in col) for col in cols]
        high = tuple(tuple(cols[j][i].coeff(degs[j]) for j in range(n))
                     for i in range(n))
        alpha = linalg.nullspace_vector(high)
        if alpha is None:
            break
        support = [i for i, x in enumerate(alpha) if x != 0]
        j = max(support, key=lambda i: (degs[i], -i))
        new_col = [Poly.zero()] * n
        new_vcol = [Poly.zero()] * n
        for i in support:
            factor = Poly.const(alpha[i]).shift(degs[j] - degs[i])
            new_col = [acc + factor * e for acc, e in zip(new_col, cols[i])]
            new_vcol = [acc + factor * e
                        for acc, e in zip(new_vcol, (row[i] for row in v))]
        assert max(e.degree for e in new_col) < degs[j]
        cols[j] = new_col
        for i in range(n):
            v[i][j] = new_vcol[i]
    reduced = PolyMatrix([[cols[j][i] for j in range(n)] for i in range(n)])
    cert = PolyMatrix(v)
    return reduced, cert


@dataclass(frozen=True)
class CoprimeFraction:
    """v = num * den^-1 with right coprime factors and column-reduced den."""

    num: PolyMatrix
    den: PolyMatrix
    column_degrees: tuple

    @property
    def state_dimension(self) -> int:
        return sum(self.column_degrees)


def right_coprime_fraction(v: TransferMatrix) -> CoprimeFraction:
    """Right coprime fraction of a rational matrix.

    Starts from the common-denominator fraction v = A * (d I)^-1, divides
    out the GCRD of (A, d I), and column-reduces the denominator.  The
    denominator generates the module of polynomial inputs whose image
    under v is polynomial.
    """
    d = Poly.one()
    for row in v.entries:
        for e in row:
            d = poly_lcm(d, e.den)
    m = v.cols
    abar = PolyMatrix([[e.num * (d // e.den) for e in row] for row in v.entries])
    dmat = PolyMatrix.scalar_diag(d, m)
    r, _ = hermite_gcrd(abar, dmat)
    r_inv = r.to_transfer().inverse()
    num = PolyMatrix.from_transfer(abar.to_transfer() * r_inv)
    den = PolyMatrix.from_transfer(dmat.to_transfer() * r_inv)
    den, cert = column_reduce_poly(den)
    num = num * cert
    degrees = den.column_degrees()
    if den.det().degree != sum(degrees):
        raise AssertionError("column-reduced denominator degree mismatch")
    if num.to_transfer() * den.to_transfer().inverse() != v:
        raise AssertionError("coprime fraction does not reproduce the map")
    gc, _ = hermite_gcrd(num, den)
    if not is_unimodular(gc):
        raise AssertionError("extracted fraction is not coprime")
    return CoprimeFraction(num, den, degrees)


def reachability_indices(v: TransferMatrix):
    """(indices sorted nonincreasing, minimal state dimension)."""
    frac = right_coprime_fraction(v)
    indices = tuple(sorted(frac.column_degrees, reverse=True))
    return indices, frac.state_dimension


def polynomial_kernel_module(f: TransferMatrix) -> PolyMatrix:
    """Generator P of the polynomial inputs with polynomial image under f.

    A polynomial u has f*u polynomial exactly when P^-1 u is polynomial.
    Requires f injective.
    """
    if f.rank() != f.cols:
        raise ValueError("polynomial kernel module needs an injective map")
    return right_coprime_fraction(f).den


def poly_module_contains(p1: PolyMatrix, p2: PolyMatrix) -> bool:
    """Whether p2's polynomial column module sits inside p1's."""
    ratio = p1.to_transfer().inverse() * p2.to_transfer()
    return all(e.is_polynomial for row in ratio.entries for e in row)
