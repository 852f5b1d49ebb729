"""Finite-precision period domain: isotropic lines through a marked frame.

A frame fixes a rank-r lattice with a distinguished basis in standard
position: v1 isotropic, v1 . v_r = 1, v1 orthogonal to the middle basis
vectors, perfect Gram form.  A period line is the span of

    v_M = v1 + a_2 v_2 + ... + a_{r-1} v_{r-1} + a_r v_r

with middle coordinates in pW; the last coordinate a_r is forced by
isotropy, lands in p^2 W, and is found by a Hensel solve whose linear
coefficient 2(v1 . v_r) = 2 is a unit.  This realizes the coordinate
bijection between such lines and (pW)^(r-2) at precision n.
"""

from __future__ import annotations

from .errors import (
    ContextMismatch,
    DegenerateForm,
    DimensionMismatch,
    InputError,
    ProjectionCollapse,
    ValuationViolation,
)
from .hensel import hensel_root
from .lattice import QuadLattice
from .linalg import RingMat, RingVec, is_unimodular
from .witt import PadicScalar, RingContext


class PeriodFrame:
    """Marked lattice whose Gram matrix is in standard frame position.

    Required shape (0-indexed): G[0][0] = 0, G[0][j] = 0 for 0 < j < r-1,
    G[0][r-1] = 1, G symmetric and unimodular, rank r >= 3.  The middle
    orthogonality G[0][j] = 0 is what forces the derived last coordinate
    into p^2 W rather than just pW.
    """

    __slots__ = ("lattice",)

    def __init__(self, lattice: QuadLattice):
        if lattice.ring is None:
            raise InputError("a period frame needs a ring lattice")
        r = lattice.rank
        if r < 3:
            raise DimensionMismatch("frame rank must be at least 3")
        g = lattice.gram
        ctx = lattice.ring
        if not g.entry(0, 0).is_zero():
            raise InputError("v1 must be isotropic (corner Gram entry 0)")
        if g.entry(0, r - 1) != ctx.one():
            raise InputError("v1 . v_r must equal 1")
        for j in range(1, r - 1):
            if not g.entry(0, j).is_zero():
                raise InputError("v1 must pair to zero with the middle basis")
        if not is_unimodular(g):
            raise DegenerateForm("frame Gram form must be perfect")
        self.lattice = lattice

    @property
    def ctx(self) -> RingContext:
        return self.lattice.ring

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @property
    def parameter_count(self) -> int:
        return self.rank - 2

    def hodge_vector(self) -> RingVec:
        """Residue vector spanning the Hodge line (reduction of v1)."""
        res = self.ctx.residue_context()
        return RingVec.basis_vector(res, self.rank, 0)

    def to_json(self) -> dict:
        return {"ring": self.ctx.to_json(), "gram": self.lattice.gram.to_json()}

    @classmethod
    def from_json(cls, data: dict, ctx: RingContext | None = None) -> "PeriodFrame":
        if ctx is None:
            ctx = RingContext.from_json(data["ring"])
        return cls(QuadLattice(ctx, data["gram"]))

    def __eq__(self, other) -> bool:
        return isinstance(other, PeriodFrame) and other.lattice == self.lattice

    def __repr__(self) -> str:
        return f"PeriodFrame(rank={self.rank} over {self.ctx!r})"


class PeriodLine:
    """A valid line: frame, middle coordinates, derived last coordinate.

    Instances are produced by complete_period_line or from_generator, which
    validate; the constructor itself stores fields verbatim so tests can
    assemble deliberately broken lines for the condition checker.
    """

    __slots__ = ("frame", "coords", "last", "generator")

    def __init__(self, frame: PeriodFrame, coords, last: PadicScalar, generator: RingVec):
        self.frame = frame
        self.coords = tuple(coords)
        self.last = last
        self.generator = generator

    def coordinates(self) -> tuple:
        return self.coords

    def rescale(self, unit: PadicScalar) -> "PeriodLine":
        """Same line presented by a rescaled generator."""
        if not unit.is_unit():
            raise ValuationViolation("rescaling factor must be a unit")
        return from_generator(self.frame, self.generator.scale(unit))

    def to_json(self) -> dict:
        return {
            "frame": self.frame.to_json(),
            "coordinates": [a.to_json() for a in self.coords],
            "last_coordinate": self.last.to_json(),
            "generator": self.generator.to_json(),
        }

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PeriodLine)
            and other.frame == self.frame
            and other.coords == self.coords
            and other.last == self.last
        )

    def __repr__(self) -> str:
        return f"PeriodLine(coords={list(self.coords)}, last={self.last})"


def complete_period_line(frame: PeriodFrame, coords) -> PeriodLine:
    """Assemble the unique valid line with the given middle coordinates.

    Each coordinate must lie in pW.  The last coordinate solves
    Q(a) + 2 t (G[0,r-1] + sum a_i G[i,r-1]) + t^2 G[r-1,r-1] = 0,
    a simple Hensel root at t = 0 since the linear coefficient is a unit;
    it automatically lands in p^2 W.
    """
    ctx = frame.ctx
    r = frame.rank
    scalars = [ctx.scalar(a) for a in coords]
    if len(scalars) != r - 2:
        raise DimensionMismatch(f"expected {r - 2} coordinates")
    for a in scalars:
        if a.valuation() < 1:
            raise ValuationViolation("middle coordinates must lie in pW")
    g = frame.lattice.gram
    # constant term: Q(a) over the middle block
    c0 = ctx.zero()
    for i in range(1, r - 1):
        for j in range(1, r - 1):
            c0 = c0 + scalars[i - 1] * scalars[j - 1] * g.entry(i, j)
    # linear term: 2 (v1 . v_r + sum a_i (v_i . v_r))
    lin = g.entry(0, r - 1)
    for i in range(1, r - 1):
        lin = lin + scalars[i - 1] * g.entry(i, r - 1)
    c1 = lin + lin
    c2 = g.entry(r - 1, r - 1)
    last = hensel_root(ctx, [c0, c1, c2], ctx.zero())
    # an exact zero is a member of p^2 W at every precision, including n = 1
    if not last.is_zero() and last.valuation() < 2:
        raise ValuationViolation("derived coordinate left p^2 W; frame is not standard")
    entries = [ctx.one()] + scalars + [last]
    generator = RingVec.from_entries(ctx, [e.coeffs for e in entries])
    assert frame.lattice.pairing(generator, generator).is_zero()
    return PeriodLine(frame, scalars, last, generator)


def from_generator(frame: PeriodFrame, vector: RingVec) -> PeriodLine:
    """Normalize a generating vector to coefficient 1 on v1 and validate.

    Two generators of the same line yield identical coordinates, which is
    the scaling invariance behind the coordinate bijection.
    """
    ctx = frame.ctx
    if vector.ctx != ctx:
        raise ContextMismatch("generator context differs from frame")
    if vector.rank != frame.rank:
        raise DimensionMismatch("generator length differs from frame rank")
    lead = vector.entry(0)
    if not lead.is_unit():
        raise ProjectionCollapse("generator does not reduce into the Hodge line")
    unit = lead.inverse()
    norm = vector.scale(unit)
    coords = [norm.entry(i) for i in range(1, frame.rank - 1)]
    for a in coords:
        if a.valuation() < 1:
            raise ValuationViolation("middle coordinates must lie in pW")
    last = norm.entry(frame.rank - 1)
    if not last.is_zero() and last.valuation() < 2:
        raise ValuationViolation("last coordinate must lie in p^2 W")
    if not frame.lattice.pairing(norm, norm).is_zero():
        raise InputError("generator is not isotropic at this precision")
    return PeriodLine(frame, coords, last, norm)


def coordinates_of(line: PeriodLine) -> tuple:
    """Middle coordinates of the canonical generator (the bijection readout)."""
    return line.coordinates()


class FrobeniusStructure:
    """Semilinear Frobenius on a frame: F(sum a_i v_i) = sum sigma(a_i) F(v_i),
    with the i-th column of the matrix giving F(v_i)."""

    __slots__ = ("frame", "matrix")

    def __init__(self, frame: PeriodFrame, matrix: RingMat):
        if matrix.ctx != frame.ctx:
            raise ContextMismatch("Frobenius context differs from frame")
        if matrix.rows != frame.rank or matrix.cols != frame.rank:
            raise DimensionMismatch("Frobenius matrix must match frame rank")
        self.frame = frame
        self.matrix = matrix

    def apply(self, v: RingVec) -> RingVec:
        return self.matrix @ v.frobenius()

    def to_json(self) -> dict:
        return {"matrix": self.matrix.to_json()}


def check_conditions(line: PeriodLine, frobenius: FrobeniusStructure | None = None) -> dict:
    """Report on the defining conditions of a line, recomputed from scratch.

    condition1: the generator reduces mod p to the Hodge line's vector.
    condition2: the generator is isotropic at precision n.
    condition3: with a Frobenius structure, F(v_M) has valuation exactly 2;
      without one it is reported as not checked (automatic for lines built
      under a standard frame).
    """
    frame = line.frame
    ctx = frame.ctx
    gen = line.generator
    cond1 = gen.reduce_mod_p() == frame.hodge_vector()
    cond2 = frame.lattice.pairing(gen, gen).is_zero()
    report = {
        "condition1_hodge_reduction": bool(cond1),
        "condition2_isotropy": bool(cond2),
    }
    if frobenius is None:
        report["condition3_frobenius"] = None
        report["condition3_note"] = "not checked: no Frobenius supplied (automatic for standard frames)"
    else:
        image = frobenius.apply(gen)
        val = image.valuation()
        report["condition3_frobenius"] = bool(val == 2)
        if ctx.n < 3:
            report["condition3_note"] = "precision below 3: the upper valuation bound is not visible"
    report["valid"] = bool(
        report["condition1_hodge_reduction"]
        and report["condition2_isotropy"]
        and report["condition3_frobenius"] is not False
    )
    return report
