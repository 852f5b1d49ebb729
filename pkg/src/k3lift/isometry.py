"""Isometries of quadratic lattices and tame eigenspace decompositions.

An isometry of order N prime to p splits the lattice over a large enough
Witt ring into a direct sum of free eigenspace summands, one per N-th root
of unity.  The split is computed from exact averaging projectors

    e_zeta = (1/N) sum_i zeta^(-i) A^i

which satisfy the idempotent, orthogonality, and completeness identities on
the nose, not merely modulo an error term.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    ContextMismatch,
    DimensionMismatch,
    InputError,
    NotEigenvector,
    NotTame,
    OrderViolation,
    ProjectionCollapse,
)
from .lattice import QuadLattice
from .linalg import RingMat, RingVec, independent_columns, is_unimodular
from .witt import PadicScalar, RingContext

DEFAULT_ORDER_BOUND = 256


class Isometry:
    """A lattice automorphism preserving the pairing: A^T G A = G.

    A declared order, when given, is validated as the exact multiplicative
    order: A^N = 1 and A^(N/q) != 1 for every prime q | N.
    """

    __slots__ = ("lattice", "matrix", "declared_order")

    def __init__(
        self, lattice: QuadLattice, matrix, check: bool = True, order: int | None = None
    ):
        self.lattice = lattice
        if lattice.ring is None:
            m = np.array(
                [[int(x) for x in row] for row in matrix], dtype=object
            )
            if m.shape != (lattice.rank, lattice.rank):
                raise DimensionMismatch("matrix shape must match lattice rank")
            self.matrix = m
        else:
            if isinstance(matrix, RingMat):
                if matrix.ctx != lattice.ring:
                    raise ContextMismatch("matrix context differs from lattice")
                m = matrix
            else:
                m = RingMat.from_rows(lattice.ring, matrix)
            if m.rows != lattice.rank or m.cols != lattice.rank:
                raise DimensionMismatch("matrix shape must match lattice rank")
            self.matrix = m
        if check and not self.verify():
            raise InputError("matrix does not preserve the pairing")
        self.declared_order = order
        if order is not None:
            if order < 1:
                raise OrderViolation("declared order must be positive")
            if not self._is_identity_power(order):
                raise OrderViolation(f"matrix^{order} is not the identity")
            q, rest = 2, order
            while rest > 1:
                if rest % q == 0:
                    if self._is_identity_power(order // q):
                        raise OrderViolation(
                            f"declared order {order} is not exact: matrix^{order // q} = 1"
                        )
                    while rest % q == 0:
                        rest //= q
                q += 1

    def _is_identity_power(self, k: int) -> bool:
        power = self.power(k).matrix
        if self.lattice.ring is None:
            return bool((power == np.eye(self.lattice.rank, dtype=object)).all())
        return power == RingMat.identity(self.lattice.ring, self.lattice.rank)

    def verify(self) -> bool:
        g, a = self.lattice.gram, self.matrix
        if self.lattice.ring is None:
            return bool((a.T @ g @ a == g).all())
        return (a.transpose() @ g @ a) == g

    def order(self, bound: int = DEFAULT_ORDER_BOUND) -> int:
        """Smallest N >= 1 with A^N = identity; OrderViolation past the bound."""
        if self.lattice.ring is None:
            ident = np.eye(self.lattice.rank, dtype=object)
            power = self.matrix.copy()
            for k in range(1, bound + 1):
                if (power == ident).all():
                    return k
                power = power @ self.matrix
            raise OrderViolation(f"order exceeds {bound}")
        ident = RingMat.identity(self.lattice.ring, self.lattice.rank)
        power = self.matrix
        for k in range(1, bound + 1):
            if power == ident:
                return k
            power = power @ self.matrix
        raise OrderViolation(f"order exceeds {bound}")

    def power(self, k: int) -> "Isometry":
        if self.lattice.ring is None:
            if k < 0:
                raise InputError("negative powers need a ring isometry")
            out = np.eye(self.lattice.rank, dtype=object)
            base = self.matrix
            e = k
            while e:
                if e & 1:
                    out = out @ base
                base = base @ base
                e >>= 1
            return Isometry(self.lattice, out, check=False)
        return Isometry(self.lattice, self.matrix**k, check=False)

    def change_ring(self, ctx: RingContext) -> "Isometry":
        """Base change a Z-isometry into a ring context."""
        if self.lattice.ring is not None:
            raise InputError("change_ring starts from a Z-isometry")
        lat = self.lattice.change_ring(ctx)
        rows = [[int(x) % ctx.pn for x in row] for row in self.matrix]
        return Isometry(lat, rows, check=False)

    def reduce_mod_p(self) -> "Isometry":
        if self.lattice.ring is None:
            raise InputError("reduce_mod_p needs a ring isometry")
        res = self.lattice.ring.residue_context()
        lat = QuadLattice(res, self.lattice.gram.reduce_mod_p())
        return Isometry(lat, self.matrix.reduce_mod_p(), check=False)

    def char_poly(self) -> list:
        """Characteristic polynomial coefficients, leading term first."""
        if self.lattice.ring is None:
            rows = [[int(x) for x in row] for row in self.matrix]
            return char_poly_coeffs(rows, 0, 1)
        ctx = self.lattice.ring
        rows = [
            [self.matrix.entry(i, j) for j in range(self.lattice.rank)]
            for i in range(self.lattice.rank)
        ]
        return char_poly_coeffs(rows, ctx.zero(), ctx.one())

    def to_json(self) -> dict:
        mat = (
            [[int(x) for x in row] for row in self.matrix]
            if self.lattice.ring is None
            else self.matrix.to_json()
        )
        out = {"lattice": self.lattice.to_json(), "matrix": mat}
        if self.declared_order is not None:
            out["order"] = self.declared_order
        return out

    def __repr__(self) -> str:
        return f"Isometry(rank={self.lattice.rank})"


def char_poly_coeffs(rows: list, zero, one) -> list:
    """Division-free characteristic polynomial (Berkowitz), descending degree.

    Works over any commutative ring whose elements support + and *; iterates
    over trailing principal submatrices, applying the Toeplitz column vector
    t = (1, -a, -RC, -RAC, ...) as a truncated convolution.
    """
    r = len(rows)
    if r == 0:
        return [one]
    vec = [one, zero - rows[r - 1][r - 1]]
    for k in range(2, r + 1):
        i0 = r - k
        a = rows[i0][i0]
        rvec = rows[i0][i0 + 1 :]
        cvec = [rows[i][i0] for i in range(i0 + 1, r)]
        sub = [row[i0 + 1 :] for row in rows[i0 + 1 :]]
        t = [one, zero - a]
        w = list(cvec)
        for step in range(k - 1):
            s = zero
            for x, y in zip(rvec, w):
                s = s + x * y
            t.append(zero - s)
            if step < k - 2:
                w = [
                    _dot_row(sub[i], w, zero) for i in range(k - 1)
                ]
        new = []
        for i in range(k + 1):
            s = zero
            lo = max(0, i - (len(t) - 1))
            for j in range(lo, min(i, k - 1) + 1):
                s = s + t[i - j] * vec[j]
            new.append(s)
        vec = new
    return vec


def _dot_row(row, w, zero):
    s = zero
    for x, y in zip(row, w):
        s = s + x * y
    return s


def centered_coefficients(coeffs: list) -> list:
    """Center prime-subring coefficients into (-p^n/2, p^n/2] for display;
    entries outside the prime subring stay as coefficient tuples."""
    out = []
    for c in coeffs:
        if isinstance(c, PadicScalar):
            cc = c.centered()
            out.append(cc if cc is not None else list(c.coeffs))
        else:
            out.append(int(c))
    return out


class EigenComponent:
    """One eigenvalue summand of a tame splitting."""

    __slots__ = ("zeta", "index", "projector", "basis")

    def __init__(self, zeta: PadicScalar, index: int, projector: RingMat, basis: list):
        self.zeta = zeta
        self.index = index
        self.projector = projector
        self.basis = basis

    @property
    def rank(self) -> int:
        return len(self.basis)

    def basis_matrix(self) -> RingMat | None:
        if not self.basis:
            return None
        return RingMat.from_columns(self.zeta.ctx, self.basis)

    def contains(self, v: RingVec) -> bool:
        return (self.projector @ v) == v

    def to_json(self) -> dict:
        return {
            "eigenvalue": self.zeta.to_json(),
            "index": self.index,
            "rank": self.rank,
            "basis": [b.to_json() for b in self.basis],
        }

    def __repr__(self) -> str:
        return f"EigenComponent(index={self.index}, rank={self.rank})"


class EigenSplit:
    """Complete eigenspace decomposition of a tame isometry.

    components[i] belongs to roots[i] = zeta^i where zeta is the chosen
    primitive N-th root; every component is kept, including rank-zero ones,
    so that the completeness identity sums over all of them.
    """

    __slots__ = ("isometry", "order", "roots", "components")

    def __init__(self, isometry: Isometry, order: int, roots: list, components: list):
        self.isometry = isometry
        self.order = order
        self.roots = roots
        self.components = components

    @property
    def ctx(self) -> RingContext:
        return self.isometry.lattice.ring

    def component(self, index: int) -> EigenComponent:
        return self.components[index % self.order]

    def component_for(self, zeta: PadicScalar) -> EigenComponent:
        for comp in self.components:
            if comp.zeta == zeta:
                return comp
        raise InputError("scalar is not among the N-th roots of this split")

    def ranks(self) -> list[int]:
        return [c.rank for c in self.components]

    def verify_identities(self) -> dict:
        """Exact structural identities of the projector family."""
        ctx = self.ctx
        r = self.isometry.lattice.rank
        a = self.isometry.matrix
        total = RingMat.zeros(ctx, r, r)
        idempotent = True
        eigen_relation = True
        orthogonal = True
        for i, comp in enumerate(self.components):
            e = comp.projector
            total = total + e
            if (e @ e) != e:
                idempotent = False
            if (a @ e) != e.scale(comp.zeta):
                eigen_relation = False
            for j in range(i + 1, self.order):
                f = self.components[j].projector
                if not (e @ f).is_zero() or not (f @ e).is_zero():
                    orthogonal = False
        sum_is_identity = total == RingMat.identity(ctx, r)
        basis_cols = [b for c in self.components for b in c.basis]
        spans = (
            len(basis_cols) == r
            and is_unimodular(RingMat.from_columns(ctx, basis_cols))
        )
        return {
            "sum_is_identity": sum_is_identity,
            "idempotent": idempotent,
            "orthogonal": orthogonal,
            "eigen_relation": eigen_relation,
            "direct_sum": spans,
        }

    def pairing_orthogonality(self) -> bool:
        """<L_zeta, L_xi> = 0 whenever zeta * xi != 1, checked exactly."""
        gram = self.isometry.lattice.gram
        one = self.ctx.one()
        for i, ci in enumerate(self.components):
            bi = ci.basis_matrix()
            if bi is None:
                continue
            for j in range(i, self.order):
                cj = self.components[j]
                bj = cj.basis_matrix()
                if bj is None or ci.zeta * cj.zeta == one:
                    continue
                if not (bi.transpose() @ gram @ bj).is_zero():
                    return False
        return True

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "ranks": self.ranks(),
            "components": [c.to_json() for c in self.components if c.rank > 0],
        }

    def __repr__(self) -> str:
        return f"EigenSplit(order={self.order}, ranks={self.ranks()})"


def eigen_split(isometry: Isometry, order: int) -> EigenSplit:
    """Split a tame ring isometry into eigenspace summands.

    Requires gcd(order, p) = 1 and A^order = identity exactly; the residue
    field must contain the needed roots of unity (order | q - 1), otherwise
    InsufficientResidueField propagates from the root search.
    """
    lat = isometry.lattice
    ctx = lat.ring
    if ctx is None:
        raise InputError("eigenspace splitting needs a ring isometry")
    if order < 1:
        raise InputError("order must be a positive integer")
    if order % ctx.p == 0:
        raise NotTame(f"order {order} is divisible by p = {ctx.p}")
    a = isometry.matrix
    r = lat.rank
    powers = [RingMat.identity(ctx, r)]
    for _ in range(order - 1):
        powers.append(powers[-1] @ a)
    if (powers[-1] @ a) != powers[0]:
        raise OrderViolation(f"A^{order} is not the identity")
    roots = ctx.nth_roots_of_unity(order)
    inv_n = ctx.scalar(order).inverse()
    components = []
    for i in range(order):
        acc = RingMat.zeros(ctx, r, r)
        for k in range(order):
            # zeta^(-ik) = roots[(-i*k) mod order]
            acc = acc + powers[k].scale(roots[(-i * k) % order])
        proj = acc.scale(inv_n)
        cols = independent_columns(proj)
        basis = [proj.column(j) for j in cols]
        components.append(EigenComponent(roots[i], i, proj, basis))
    return EigenSplit(isometry, order, roots, components)


def lift_eigenvector(split: EigenSplit, index: int, vbar: RingVec) -> RingVec:
    """Lift a residue eigenvector into the eigenspace summand at full
    precision, with reduction exactly the input."""
    ctx = split.ctx
    comp = split.component(index)
    res = ctx.residue_context()
    if vbar.ctx != res:
        raise ContextMismatch("eigenvector must live over the residue field")
    if vbar.is_zero():
        raise NotEigenvector("zero vector cannot be an eigenvector")
    abar = split.isometry.matrix.reduce_mod_p()
    zbar = ctx.reduce(comp.zeta)
    if (abar @ vbar) != vbar.scale(zbar):
        raise NotEigenvector("input is not a residue eigenvector for this root")
    w = comp.projector @ vbar.lift_to(ctx)
    if w.reduce_mod_p() != vbar:
        raise ProjectionCollapse("projector did not preserve the residue vector")
    return w
