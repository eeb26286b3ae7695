"""Causal and static factorization of one map over another.

The causal factorization decision h = g*f with g causal reduces to a
containment of latency kernels; the constructive yes-branch builds g by
extending a proper basis of the image of f and zero-padding on the
complement.  The static variant solves an exact finite linear system over
the ground field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .latency import InternalCheckError, LatencyKernel, latency_kernel
from .properbasis import column_reduce_at_infinity, extend_to_proper_basis
from .rational import ORD_INF, Poly, RatFun, poly_lcm
from .transfer import TransferMatrix


@dataclass(frozen=True)
class FactorOutcome:
    decision: bool
    g: TransferMatrix | None = None
    witness: tuple | None = None


def causal_factor(f: TransferMatrix, h: TransferMatrix,
                  kernel: LatencyKernel | None = None) -> FactorOutcome:
    """Decide h = g*f with g causal; construct g or a witness input.

    f must be injective; h may be any finite-order map with the same input
    dimension.  The decision is containment of f's latency kernel in h's,
    tested by properness of h applied to each kernel basis column.  On
    failure the returned witness u has f(u) proper of order 0 while h(u)
    is improper.
    """
    if f.cols != h.cols:
        raise ValueError("factor candidates need the same input dimension")
    k = kernel if kernel is not None else latency_kernel(f)
    bad = None
    for j in range(k.generator.cols):
        d = k.generator.column(j)
        image = h.apply(d)
        if not all(e.is_causal for e in image):
            bad = d
            break
    if bad is not None:
        shift = min(e.order() for e in f.apply(bad) if not e.is_zero)
        scale = RatFun.zpow(shift)
        witness = tuple(scale * e for e in bad)
        return FactorOutcome(False, witness=witness)

    pb, w = column_reduce_at_infinity(f)
    completion = extend_to_proper_basis(pb, f.rows)
    basis = pb.columns
    target = h * w
    if completion is not None:
        basis = basis.hstack(completion)
        target = target.hstack(TransferMatrix.zero(h.rows, completion.cols))
    g = target * basis.inverse()
    if g * f != h:
        raise InternalCheckError("causal factor reconstruction failed")
    if not g.classify().causal:
        raise InternalCheckError("constructed factor is not causal")
    return FactorOutcome(True, g=g)


def bicausal_postequivalence(f1: TransferMatrix, f2: TransferMatrix):
    from .latency import compensation_equivalence
    return compensation_equivalence(f1, f2, "post")


def bicausal_preequivalence(f1: TransferMatrix, f2: TransferMatrix):
    from .latency import compensation_equivalence
    return compensation_equivalence(f1, f2, "pre")


def static_factor(f: TransferMatrix, h: TransferMatrix):
    """Constant g with h = g*f, or None.

    Linear equations over K in the entries of g, obtained by matching
    Laurent coefficients columnwise on the window from the minimum order
    up to the degree of the column's common denominator: a nonzero
    rational over that denominator has order at most that degree, so
    vanishing across the whole window forces the zero function.
    """
    if f.cols != h.cols:
        raise ValueError("factor candidates need the same input dimension")
    p, m, q = f.rows, f.cols, h.rows
    if f.is_zero:
        return TransferMatrix.zero(q, p) if h.is_zero else None

    rows_a = []
    rhs_cols = [[] for _ in range(q)]
    for j in range(m):
        den = Poly.one()
        for i in range(p):
            den = poly_lcm(den, f.entry(i, j).den)
        for i in range(q):
            den = poly_lcm(den, h.entry(i, j).den)
        orders = ([f.entry(i, j).order() for i in range(p)]
                  + [h.entry(i, j).order() for i in range(q)])
        finite = [o for o in orders if o != ORD_INF]
        if not finite:
            continue
        t_lo = min(finite)
        for t in range(t_lo, den.degree + 1):
            rows_a.append([f.entry(k, j).laurent_coeff(t) for k in range(p)])
            for i in range(q):
                rhs_cols[i].append(h.entry(i, j).laurent_coeff(t))
    if not rows_a:
        return TransferMatrix.zero(q, p)

    g_rows = []
    for i in range(q):
        sol = linalg.solve(rows_a, rhs_cols[i])
        if sol is None:
            return None
        g_rows.append(sol)
    g = TransferMatrix.from_constant(g_rows)
    if g * f != h:
        return None
    return g


def constant_matrix(g: TransferMatrix):
    """View a static transfer matrix as a grid of Fractions."""
    out = []
    for row in g.entries:
        vals = []
        for e in row:
            if not e.is_polynomial or e.num.degree > 0:
                raise ValueError("matrix is not static")
            vals.append(e.num.coeff(0) if not e.is_zero else Fraction(0))
        out.append(tuple(vals))
    return tuple(out)
