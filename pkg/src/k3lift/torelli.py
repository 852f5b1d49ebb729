"""Local Torelli correspondence for constant-connection crystal families.

The model: a period frame together with d = r - 2 commuting connection
matrices D_i, compatible with the pairing (D_i^T G + G D_i = 0) and adapted
to the frame (D_i v1 = v_{i+1}).  Parallel transport to the point
(pa_1, ..., pa_d) is the divided-power series

    transport(g, y) = sum over multi-indices m of
                      gamma_{m_1}(pa_1) ... gamma_{m_d}(pa_d) D^m y

truncated at total degree M(n, p), beyond which every term has valuation
at least n.  Reading frame coordinates off the transported Hodge generator
gives the period map; its inverse is a fixed-point iteration contracting by
a factor of p per step.
"""

from __future__ import annotations

from .errors import (
    ContextMismatch,
    DegenerateForm,
    DimensionMismatch,
    InputError,
    NoConvergence,
    ValuationViolation,
)
from .lattice import QuadLattice
from .linalg import RingMat, RingVec, inverse, is_unimodular
from .period import PeriodFrame, PeriodLine, from_generator
from .witt import PadicScalar, RingContext


def truncation_degree(n: int, p: int) -> int:
    """Least M with M - floor((M-1)/(p-1)) >= n.

    A term of total degree k in the transport series has valuation at least
    k - v_p(k!) >= k - floor((k-1)/(p-1)), so all terms of degree >= M
    vanish at precision n and the series stops at degree M - 1.
    """
    m = 1
    while m - (m - 1) // (p - 1) < n:
        m += 1
    return m


class DeformationPoint:
    """Coordinate tuple (pa_1, ..., pa_d), every entry in pW."""

    __slots__ = ("ctx", "entries")

    def __init__(self, ctx: RingContext, entries):
        self.ctx = ctx
        scalars = tuple(ctx.scalar(e) for e in entries)
        for e in scalars:
            if e.valuation() < 1:
                raise ValuationViolation("deformation entries must lie in pW")
        self.entries = scalars

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DeformationPoint)
            and other.ctx == self.ctx
            and other.entries == self.entries
        )

    def __repr__(self) -> str:
        return f"DeformationPoint({list(self.entries)})"

    def to_json(self) -> dict:
        return {"entries": [e.to_json() for e in self.entries]}


class ConnectionData:
    """Frame plus adapted commuting connection matrices.

    validate() enforces three exact identities:
      - commutativity D_i D_j = D_j D_i,
      - pairing compatibility D_i^T G + G D_i = 0 (so transport is an
        isometry and moves isotropic lines to isotropic lines),
      - adaptation D_i v1 = v_{i+1}, which pins the first-order behaviour
        of the period map to h_i = pa_i + O(p^2).
    Matrices that are merely transversal can be brought to this form with
    adapt().
    """

    __slots__ = ("frame", "matrices")

    def __init__(self, frame: PeriodFrame, matrices, check: bool = True):
        self.frame = frame
        ctx = frame.ctx
        mats = []
        for mat in matrices:
            if isinstance(mat, RingMat):
                if mat.ctx != ctx:
                    raise ContextMismatch("connection matrix context differs from frame")
                mats.append(mat)
            else:
                mats.append(RingMat.from_rows(ctx, mat))
        self.matrices = tuple(mats)
        if len(self.matrices) != frame.parameter_count:
            raise DimensionMismatch(
                f"need {frame.parameter_count} connection matrices, got {len(self.matrices)}"
            )
        for mat in self.matrices:
            if mat.rows != frame.rank or mat.cols != frame.rank:
                raise DimensionMismatch("connection matrices must match frame rank")
        if check:
            self.validate()

    @property
    def ctx(self) -> RingContext:
        return self.frame.ctx

    @property
    def dimension(self) -> int:
        return len(self.matrices)

    def validate(self) -> None:
        ctx = self.ctx
        r = self.frame.rank
        g = self.frame.lattice.gram
        for i, di in enumerate(self.matrices):
            for dj in self.matrices[i + 1 :]:
                if (di @ dj) != (dj @ di):
                    raise InputError("connection matrices must commute")
            if not ((di.transpose() @ g) + (g @ di)).is_zero():
                raise InputError("connection must be compatible with the pairing")
        e1 = RingVec.basis_vector(ctx, r, 0)
        for i, di in enumerate(self.matrices):
            if (di @ e1) != RingVec.basis_vector(ctx, r, i + 1):
                raise InputError(
                    "connection is not adapted to the frame (D_i v1 != v_{i+1}); "
                    "use ConnectionData.adapt"
                )

    @classmethod
    def adapt(cls, frame: PeriodFrame, matrices) -> "ConnectionData":
        """Re-frame transversal connection matrices into adapted form.

        Requires commutativity and pairing compatibility; the images D_i v1
        must be residually independent from v1 (the transversality witness).
        Rebuilds the middle basis as w_{i+1} = D_i v1 (their v_r components
        vanish by compatibility), conjugates everything by that change of
        basis, and returns an equivalent adapted ConnectionData on the new
        frame.
        """
        raw = cls(frame, matrices, check=False)
        ctx = frame.ctx
        r = frame.rank
        g = frame.lattice.gram
        for i, di in enumerate(raw.matrices):
            for dj in raw.matrices[i + 1 :]:
                if (di @ dj) != (dj @ di):
                    raise InputError("connection matrices must commute")
            if not ((di.transpose() @ g) + (g @ di)).is_zero():
                raise InputError("connection must be compatible with the pairing")
        e1 = RingVec.basis_vector(ctx, r, 0)
        cols = [e1]
        cols.extend(di @ e1 for di in raw.matrices)
        cols.append(RingVec.basis_vector(ctx, r, r - 1))
        change = RingMat.from_columns(ctx, cols)
        if not is_unimodular(change):
            raise DegenerateForm(
                "transversality failure: D_i v1 do not span the middle directions"
            )
        change_inv = inverse(change)
        new_gram = change.transpose() @ g @ change
        new_frame = PeriodFrame(QuadLattice(ctx, new_gram))
        new_mats = [change_inv @ di @ change for di in raw.matrices]
        return cls(new_frame, new_mats)

    def to_json(self) -> dict:
        return {
            "frame": self.frame.to_json(),
            "matrices": [m.to_json() for m in self.matrices],
        }

    def __repr__(self) -> str:
        return f"ConnectionData(rank={self.frame.rank}, dimension={self.dimension})"


def quadric_connection(frame: PeriodFrame) -> ConnectionData:
    """The canonical adapted connection on a split frame.

    Needs v_r isotropic and orthogonal to the middle block, so the Gram is
    [[0,0,1],[0,Q,0],[1,0,0]].  Then D_i v1 = v_{i+1},
    D_i v_{j+1} = -Q_{ij} v_r, D_i v_r = 0 is commuting, compatible, and
    adapted; the transported generator is exact at degree 2 with
    h_r = -Q(pa)/2.
    """
    ctx = frame.ctx
    r = frame.rank
    g = frame.lattice.gram
    if not g.entry(r - 1, r - 1).is_zero():
        raise InputError("split frame needs v_r isotropic")
    for j in range(1, r - 1):
        if not g.entry(j, r - 1).is_zero():
            raise InputError("split frame needs the middle block orthogonal to v_r")
    mats = []
    for i in range(1, r - 1):
        d = RingMat.zeros(ctx, r, r)
        d.arr[:, i, 0] = ctx.one().coeffs
        for j in range(1, r - 1):
            q = ctx.zero() - g.entry(i, j)
            d.arr[:, r - 1, j] = q.coeffs
        mats.append(d)
    return ConnectionData(frame, mats)


def transport(conn: ConnectionData, point: DeformationPoint, y: RingVec) -> RingVec:
    """Divided-power parallel transport of y to the deformation point.

    Exact at precision n: gamma_k(pa) = p^(k - e) a^k / (k! / p^e) with
    e = v_p(k!) is computed by unit division, and the series is truncated
    at total degree M(n, p) where all further terms vanish.
    """
    ctx = conn.ctx
    if point.ctx != ctx or y.ctx != ctx:
        raise ContextMismatch("transport inputs must share the connection's context")
    if len(point) != conn.dimension:
        raise DimensionMismatch("deformation point dimension differs from connection")
    bound = truncation_degree(ctx.n, ctx.p)
    d = conn.dimension
    gammas = []
    for pa in point.entries:
        a = pa.exact_div_p(1)
        row = [ctx.one()]
        apow = ctx.one()
        for k in range(1, bound):
            apow = apow * a
            row.append(ctx.divided_power_factor(k) * apow)
        gammas.append(row)
    total = RingVec.zeros(ctx, y.rank)

    def accumulate(i: int, vec: RingVec, budget: int, coeff: PadicScalar) -> None:
        nonlocal total
        if i == d:
            total = total + vec.scale(coeff)
            return
        cur = vec
        for k in range(budget + 1):
            if k:
                cur = conn.matrices[i] @ cur
            c = coeff * gammas[i][k]
            if c.is_zero():
                continue
            accumulate(i + 1, cur, budget - k, c)

    accumulate(0, y, bound - 1, ctx.one())
    return total


def phi_map(conn: ConnectionData, point: DeformationPoint) -> tuple:
    """Period coordinates of the transported Hodge generator.

    transport moves v1 to sum h_i v_i with h_1 = 1 + p^2 k_1 a unit; the
    map returns h_1^{-1} (h_2, ..., h_{r-1}), and the first-order law
    phi(g)_i = pa_i mod p^2 holds for adapted connections.
    """
    ctx = conn.ctx
    r = conn.frame.rank
    h = transport(conn, point, RingVec.basis_vector(ctx, r, 0))
    h1 = h.entry(0)
    assert h1.is_unit(), "transported generator lost its Hodge component"
    inv_h1 = h1.inverse()
    return tuple(h.entry(i) * inv_h1 for i in range(1, r - 1))


def phi_line(conn: ConnectionData, point: DeformationPoint) -> PeriodLine:
    """Full period line of the transported Hodge generator."""
    ctx = conn.ctx
    r = conn.frame.rank
    h = transport(conn, point, RingVec.basis_vector(ctx, r, 0))
    return from_generator(conn.frame, h)


def phi_invert(conn: ConnectionData, target, max_iterations: int | None = None) -> DeformationPoint:
    """The unique deformation point mapping to the target coordinates.

    Fixed-point iteration u <- u + (target - phi(u)): the correction map
    contracts by a factor of p, so the error valuation climbs by one per
    step and at most n iterations are needed.  NoConvergence signals
    connection data violating the adapted invariants.
    """
    ctx = conn.ctx
    goal = tuple(ctx.scalar(t) for t in target)
    if len(goal) != conn.dimension:
        raise DimensionMismatch("target length differs from connection dimension")
    for t in goal:
        if t.valuation() < 1:
            raise ValuationViolation("target coordinates must lie in pW")
    limit = max_iterations if max_iterations is not None else ctx.n + 2
    current = list(goal)
    for _ in range(limit):
        image = phi_map(conn, DeformationPoint(ctx, current))
        if all(c == t for c, t in zip(image, goal)):
            return DeformationPoint(ctx, current)
        current = [u + (t - c) for u, c, t in zip(current, image, goal)]
    raise NoConvergence(f"no fixed point within {limit} iterations")
