"""Newton-Hensel solvers over truncated Witt rings.

Three constructions: lifting a simple polynomial root to full precision,
building an isotropic vector w = u + p a v from a near-isotropic u with a
unit pairing, and orthogonalizing a vector against a target with a single
linear solve.  Each returns exact data at precision n; failed preconditions
raise typed errors instead of producing approximate output.
"""

from __future__ import annotations

from .errors import (
    BadPairing,
    ContextMismatch,
    NonSimpleRoot,
    NonUnitPivot,
    NotNearIsotropic,
)
from .lattice import QuadLattice
from .linalg import RingVec
from .witt import PadicScalar, RingContext


def poly_eval(ctx: RingContext, coeffs, x: PadicScalar) -> PadicScalar:
    """Evaluate sum coeffs[k] x^k (ascending degree) by Horner."""
    acc = ctx.zero()
    for c in reversed([ctx.scalar(c) for c in coeffs]):
        acc = acc * x + c
    return acc


def poly_derivative(ctx: RingContext, coeffs) -> list[PadicScalar]:
    scalars = [ctx.scalar(c) for c in coeffs]
    return [ctx.scalar(k) * scalars[k] for k in range(1, len(scalars))]


def hensel_root(ctx: RingContext, coeffs, x0) -> PadicScalar:
    """Unique root of f congruent to x0 mod p, for a simple residue root.

    coeffs lists f in ascending degree.  Requires f(x0) = 0 mod p and
    f'(x0) a unit; Newton doubles the precision each step, so
    ceil(log2(n)) + 1 steps always suffice.
    """
    x = ctx.scalar(x0)
    fprime = poly_derivative(ctx, coeffs)
    d0 = poly_eval(ctx, fprime, x)
    if not d0.is_unit():
        raise NonSimpleRoot("derivative at the initial point is not a unit")
    if poly_eval(ctx, coeffs, x).valuation() < 1:
        raise NonSimpleRoot("initial point is not a root modulo p")
    steps = max(1, (ctx.n - 1).bit_length()) + 1
    for _ in range(steps):
        fx = poly_eval(ctx, coeffs, x)
        if fx.is_zero():
            break
        x = x - fx * poly_eval(ctx, fprime, x).inverse()
    assert poly_eval(ctx, coeffs, x).is_zero()
    return x


def isotropic_combination(
    lattice: QuadLattice, u: RingVec, v: RingVec
) -> tuple[PadicScalar, RingVec]:
    """Isotropic vector w = u + p a v from a near-isotropic u.

    Requires p | u.u and u.v a unit.  With s = (u.u)/p the scalar a solves
    s + 2a(u.v) + p a^2 (v.v) = 0, a quadratic whose derivative 2(u.v) is a
    unit since p is odd; the chosen root is the one with
    a = -s / (2 u.v) mod p.  Returns (a, w) with w.w = 0 mod p^n and
    w = u mod p, so the reduced line through u is unchanged.
    """
    ctx = lattice.ring
    if ctx is None:
        raise ContextMismatch("isotropic combinations need a ring lattice")
    uu = lattice.pairing(u, u)
    uv = lattice.pairing(u, v)
    vv = lattice.pairing(v, v)
    if not uv.is_unit():
        raise BadPairing("u.v must be a unit")
    if uu.valuation() < 1:
        raise NotNearIsotropic("u.u must be divisible by p")
    if ctx.n == 1:
        return ctx.zero(), u
    low = ctx.with_precision(ctx.n - 1)
    s = low.scalar(uu.exact_div_p(1).coeffs)
    uv_l = low.scalar(uv.coeffs)
    vv_l = low.scalar(vv.coeffs)
    quad = [s, uv_l + uv_l, low.scalar(ctx.p) * vv_l]
    # residue-level root: a = -s / (2 u.v) mod p, lifted canonically
    res = low.residue_context()
    a0_res = (res.zero() - res.scalar(s.coeffs)) * (
        res.scalar(2) * res.scalar(uv.coeffs)
    ).inverse()
    a_low = hensel_root(low, quad, low.scalar(a0_res.coeffs))
    a = ctx.scalar(a_low.coeffs)
    w = u + v.scale(a * ctx.scalar(ctx.p))
    assert lattice.pairing(w, w).is_zero()
    return a, w


def orthogonalize_against(
    lattice: QuadLattice, target: RingVec, v: RingVec, u: RingVec
) -> RingVec:
    """v + a u with (v + a u).target = 0, where a = -(v.target)/(u.target).

    A single linear solve; requires u.target to be a unit."""
    _, out = orthogonalize_with_coefficient(lattice, target, v, u)
    return out


def orthogonalize_with_coefficient(
    lattice: QuadLattice, target: RingVec, v: RingVec, u: RingVec
) -> tuple[PadicScalar, RingVec]:
    """Same as orthogonalize_against but also returns the coefficient a."""
    ctx = lattice.ring
    if ctx is None:
        raise ContextMismatch("orthogonalization needs a ring lattice")
    uc = lattice.pairing(u, target)
    if not uc.is_unit():
        raise NonUnitPivot("u.target must be a unit")
    vc = lattice.pairing(v, target)
    a = (ctx.zero() - vc) * uc.inverse()
    out = v + u.scale(a)
    assert lattice.pairing(out, target).is_zero()
    return a, out
