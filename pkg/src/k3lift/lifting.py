"""Liftability certificates: the three constructive search branches.

A certificate packages a generator m, its eigenvalue, and a transcript of
claims (isotropy, reduction line, orthogonality pairings, membership,
valuations), all re-checkable from the triple (m, isometry, Gram) alone.
The three builders realize the proof branches: finite height (eigenvector
in the top slope piece), supersingular non-symplectic (eigenvector lift or
the u + p a v construction at eigenvalue -1), and supersingular symplectic
(orthogonalization against the fixed ample class, then the isotropic
combination inside its complement).
"""

from __future__ import annotations

from .constraints import euler_phi
from .errors import (
    ContextMismatch,
    DimensionMismatch,
    HodgeLineNotEigen,
    IndependenceFailure,
    InputError,
    NotTame,
    NotWeaklyTame,
    NoUnitPartner,
    OrderViolation,
    PreconditionError,
    RankTooSmall,
    SymplecticInput,
    NotSymplectic,
)
from .hensel import isotropic_combination, orthogonalize_with_coefficient
from .isometry import Isometry, eigen_split, lift_eigenvector
from .lattice import QuadLattice
from .linalg import RingMat, RingVec, residue_rank, solve_in_span
from .witt import PadicScalar, RingContext


class SlopeDecomposition:
    """Ambient lattice split into sub-bases of slopes below, at, above 1.

    Validated invariants: the three sub-bases concatenate to a basis; the
    outer pieces are isotropic, mutually dual, and orthogonal to the middle
    piece; the middle piece carries a unimodular form.
    """

    __slots__ = ("lattice", "low", "middle", "high", "frobenius")

    def __init__(self, lattice: QuadLattice, low, middle, high, frobenius=None):
        ctx = lattice.ring
        if ctx is None:
            raise InputError("slope decompositions need a ring lattice")
        self.lattice = lattice
        self.low = [lattice.vector(v) for v in low]
        self.middle = [lattice.vector(v) for v in middle]
        self.high = [lattice.vector(v) for v in high]
        if len(self.low) != len(self.high) or not self.high:
            raise DimensionMismatch("outer slope pieces must have equal positive rank")
        if len(self.low) + len(self.middle) + len(self.high) != lattice.rank:
            raise DimensionMismatch("sub-bases must concatenate to the ambient rank")
        if isinstance(frobenius, RingMat) or frobenius is None:
            self.frobenius = frobenius
        else:
            self.frobenius = RingMat.from_rows(ctx, frobenius)
        self._validate()

    def _validate(self) -> None:
        ctx = self.lattice.ring
        full = RingMat.from_columns(ctx, self.low + self.middle + self.high)
        if residue_rank(full) != self.lattice.rank:
            raise InputError("slope sub-bases do not form an ambient basis")
        pair = self.lattice.pairing
        for name, piece in (("low", self.low), ("high", self.high)):
            for a in piece:
                for b in piece:
                    if not pair(a, b).is_zero():
                        raise InputError(f"{name} slope piece must be isotropic")
        for a in self.low + self.high:
            for b in self.middle:
                if not pair(a, b).is_zero():
                    raise InputError("middle slope piece must be orthogonal to the outer pieces")
        h = len(self.high)
        duality = RingMat.from_rows(
            ctx,
            [[pair(self.low[i], self.high[j]).coeffs for j in range(h)] for i in range(h)],
        )
        if residue_rank(duality) != h:
            raise InputError("outer slope pieces must be dual (unit pairing matrix)")
        mid = len(self.middle)
        if mid:
            midgram = RingMat.from_rows(
                ctx,
                [
                    [pair(self.middle[i], self.middle[j]).coeffs for j in range(mid)]
                    for i in range(mid)
                ],
            )
            if residue_rank(midgram) != mid:
                raise InputError("middle slope piece must be unimodular")

    @property
    def ctx(self) -> RingContext:
        return self.lattice.ring

    @property
    def height_rank(self) -> int:
        return len(self.high)

    def to_json(self) -> dict:
        out = {
            "ring": self.ctx.to_json(),
            "gram": self.lattice.gram.to_json(),
            "low": [v.to_json() for v in self.low],
            "middle": [v.to_json() for v in self.middle],
            "high": [v.to_json() for v in self.high],
        }
        if self.frobenius is not None:
            out["frobenius"] = self.frobenius.to_json()
        return out

    @classmethod
    def from_json(cls, data: dict, ctx: RingContext | None = None) -> "SlopeDecomposition":
        if ctx is None:
            ctx = RingContext.from_json(data["ring"])
        lat = QuadLattice(ctx, data["gram"])
        return cls(
            lat,
            data.get("low", []),
            data.get("middle", []),
            data.get("high", []),
            data.get("frobenius"),
        )


class SupersingularInput:
    """Lattice with isometry, residue Hodge vector, and optional ample class.

    The Gram form may be degenerate (toy inputs probe the failure modes);
    validation only requires that the matrix preserves the pairing and
    fixes the ample class when one is supplied.
    """

    __slots__ = ("lattice", "matrix", "hodge_line", "ample", "artin_invariant")

    def __init__(self, lattice: QuadLattice, matrix, hodge_line, ample=None, artin_invariant=None):
        ctx = lattice.ring
        if ctx is None:
            raise InputError("supersingular inputs need a ring lattice")
        self.lattice = lattice
        self.matrix = matrix if isinstance(matrix, RingMat) else RingMat.from_rows(ctx, matrix)
        if self.matrix.rows != lattice.rank or self.matrix.cols != lattice.rank:
            raise DimensionMismatch("isometry shape must match lattice rank")
        if (self.matrix.transpose() @ lattice.gram @ self.matrix) != lattice.gram:
            raise InputError("matrix does not preserve the pairing")
        res = ctx.residue_context()
        if isinstance(hodge_line, RingVec):
            if hodge_line.ctx == ctx:
                hodge_line = hodge_line.reduce_mod_p()
            elif hodge_line.ctx != res:
                raise ContextMismatch("hodge line must live over the residue field")
            self.hodge_line = hodge_line
        else:
            self.hodge_line = RingVec.from_entries(res, hodge_line)
        if self.hodge_line.rank != lattice.rank:
            raise DimensionMismatch("hodge line length must match lattice rank")
        if self.hodge_line.is_zero():
            raise InputError("hodge line vector must be nonzero")
        if ample is None:
            self.ample = None
        else:
            self.ample = lattice.vector(ample)
            if (self.matrix @ self.ample) != self.ample:
                raise InputError("isometry must fix the ample class")
        self.artin_invariant = artin_invariant

    @property
    def ctx(self) -> RingContext:
        return self.lattice.ring

    def residue_eigenvalue(self) -> PadicScalar:
        """Eigenvalue of the reduced isometry on the Hodge line."""
        return _residue_eigenvalue(self.matrix, self.hodge_line)

    @property
    def symplectic(self) -> bool:
        return self.residue_eigenvalue() == self.ctx.residue_context().one()

    def to_json(self) -> dict:
        out = {
            "ring": self.ctx.to_json(),
            "gram": self.lattice.gram.to_json(),
            "matrix": self.matrix.to_json(),
            "hodge_line": self.hodge_line.to_json(),
        }
        if self.ample is not None:
            out["ample"] = self.ample.to_json()
        if self.artin_invariant is not None:
            out["artin_invariant"] = self.artin_invariant
        return out

    @classmethod
    def from_json(cls, data: dict, ctx: RingContext | None = None) -> "SupersingularInput":
        if ctx is None:
            ctx = RingContext.from_json(data["ring"])
        lat = QuadLattice(ctx, data["gram"])
        return cls(
            lat,
            data["matrix"],
            data["hodge_line"],
            data.get("ample"),
            data.get("artin_invariant"),
        )


def _residue_eigenvalue(matrix: RingMat, vbar: RingVec) -> PadicScalar:
    """lambda with (A mod p) vbar = lambda vbar; HodgeLineNotEigen otherwise."""
    abar = matrix.reduce_mod_p()
    image = abar @ vbar
    pivot = next((i for i in range(vbar.rank) if vbar.entry(i).is_unit()), None)
    if pivot is None:
        raise HodgeLineNotEigen("hodge vector is zero modulo p")
    lam = image.entry(pivot) * vbar.entry(pivot).inverse()
    if image != vbar.scale(lam):
        raise HodgeLineNotEigen("hodge line is not an eigenline of the reduced isometry")
    return lam


# ---------------------------------------------------------------------------
# certificates


class LiftingCertificate:
    """Self-contained witness: (m, A, Gram) plus a re-checkable transcript."""

    __slots__ = (
        "ctx",
        "branch",
        "order",
        "gram",
        "matrix",
        "generator",
        "eigenvalue",
        "hodge_line",
        "transcript",
    )

    def __init__(self, ctx, branch, order, gram, matrix, generator, eigenvalue, hodge_line, transcript):
        self.ctx = ctx
        self.branch = branch
        self.order = int(order)
        self.gram = gram
        self.matrix = matrix
        self.generator = generator
        self.eigenvalue = eigenvalue
        self.hodge_line = hodge_line
        self.transcript = list(transcript)

    def lattice(self) -> QuadLattice:
        return QuadLattice(self.ctx, self.gram)

    def to_json(self) -> dict:
        return {
            "ring": self.ctx.to_json(),
            "branch": self.branch,
            "order": self.order,
            "gram": self.gram.to_json(),
            "matrix": self.matrix.to_json(),
            "generator": self.generator.to_json(),
            "eigenvalue": self.eigenvalue.to_json(),
            "hodge_line": self.hodge_line.to_json(),
            "transcript": self.transcript,
        }

    @classmethod
    def from_json(cls, data: dict, ctx: RingContext | None = None) -> "LiftingCertificate":
        if ctx is None:
            ctx = RingContext.from_json(data["ring"])
        res = ctx.residue_context()
        return cls(
            ctx,
            str(data["branch"]),
            int(data["order"]),
            RingMat.from_rows(ctx, data["gram"]),
            RingMat.from_rows(ctx, data["matrix"]),
            RingVec.from_entries(ctx, data["generator"]),
            ctx.scalar(data["eigenvalue"]),
            RingVec.from_entries(res, data["hodge_line"]),
            data.get("transcript", []),
        )

    def __repr__(self) -> str:
        return f"LiftingCertificate(branch={self.branch!r}, order={self.order})"


def _entry_orthogonality(vec: RingVec, label: str) -> dict:
    return {"claim": "orthogonality", "vector": vec.to_json(), "label": label}


def _entry_membership(basis, label: str) -> dict:
    return {"claim": "membership", "basis": [b.to_json() for b in basis], "label": label}


def _entry_valuation(value: PadicScalar, minimum: int, label: str) -> dict:
    return {"claim": "valuation", "value": value.to_json(), "minimum": minimum, "label": label}


def _entry_pairing_unit(left: RingVec, right: RingVec, value: PadicScalar, label: str) -> dict:
    return {
        "claim": "pairing-unit",
        "left": left.to_json(),
        "right": right.to_json(),
        "value": value.to_json(),
        "label": label,
    }


class VerificationReport:
    """Outcome of re-verifying a certificate, check by check."""

    __slots__ = ("checks",)

    def __init__(self, checks):
        self.checks = list(checks)

    @property
    def valid(self) -> bool:
        return all(c["ok"] for c in self.checks)

    @property
    def failures(self) -> list[dict]:
        return [c for c in self.checks if not c["ok"]]

    def to_json(self) -> dict:
        return {"valid": self.valid, "checks": self.checks}

    def __repr__(self) -> str:
        state = "valid" if self.valid else f"{len(self.failures)} failures"
        return f"VerificationReport({state})"


def verify_certificate(cert: LiftingCertificate) -> VerificationReport:
    """Recompute every claim from (m, A, Gram); nothing is trusted.

    Core checks always run: the matrix preserves the form, A m = lambda m,
    lambda^N = 1, m is isotropic, and m reduces into the declared Hodge
    line (as a line, so unit rescalings of m verify identically).  The
    transcript entries are then re-verified one by one.
    """
    ctx = cert.ctx
    lat = cert.lattice()
    a, m, lam = cert.matrix, cert.generator, cert.eigenvalue
    checks = []

    def record(claim: str, ok: bool, detail: str = "") -> None:
        entry = {"claim": claim, "ok": bool(ok)}
        if detail:
            entry["detail"] = detail
        checks.append(entry)

    record(
        "core:isometry",
        (a.transpose() @ cert.gram @ a) == cert.gram,
        "matrix preserves the pairing",
    )
    record("core:eigen-relation", (a @ m) == m.scale(lam), "A m = lambda m")
    record("core:eigenvalue-order", lam ** cert.order == ctx.one(), "lambda^N = 1")
    record("core:isotropy", lat.pairing(m, m).is_zero(), "m . m = 0")
    mbar = m.reduce_mod_p()
    line_ok = (
        not mbar.is_zero()
        and not cert.hodge_line.is_zero()
        and residue_rank(RingMat.from_columns(ctx.residue_context(), [mbar, cert.hodge_line])) == 1
    )
    record("core:reduction-line", line_ok, "m mod p spans the hodge line")

    for entry in cert.transcript:
        claim = entry.get("claim")
        label = entry.get("label", "")
        try:
            if claim == "orthogonality":
                w = RingVec.from_entries(ctx, entry["vector"])
                record("orthogonality", lat.pairing(m, w).is_zero(), label)
            elif claim == "membership":
                basis = [RingVec.from_entries(ctx, b) for b in entry["basis"]]
                coords = solve_in_span(basis, m)
                record("membership", coords is not None, label)
            elif claim == "valuation":
                val = ctx.scalar(entry["value"]).valuation()
                record("valuation", val >= int(entry["minimum"]), label)
            elif claim == "pairing-unit":
                left = RingVec.from_entries(ctx, entry["left"])
                right = RingVec.from_entries(ctx, entry["right"])
                value = ctx.scalar(entry["value"])
                ok = lat.pairing(left, right) == value and value.is_unit()
                record("pairing-unit", ok, label)
            else:
                record("unknown-claim", False, f"unrecognized claim {claim!r}")
        except (InputError, PreconditionError) as exc:
            record(str(claim), False, f"re-verification error: {exc}")
    return VerificationReport(checks)


# ---------------------------------------------------------------------------
# branch builders


def lift_finite_height(
    sd: SlopeDecomposition, isometry, order: int, hodge_line: RingVec
) -> LiftingCertificate:
    """Finite-height branch: an eigenvector line in the top slope piece.

    The isometry must preserve each slope piece and have the declared tame
    order on the top piece; the Hodge line (ambient residue coordinates)
    must reduce into the top piece.  The certificate generator is the
    eigenvector lift there, isotropic for free because the piece is, and
    orthogonal to the middle piece by the slope pairing.
    """
    ctx = sd.ctx
    if order < 1:
        raise InputError("order must be a positive integer")
    if order % ctx.p == 0:
        raise NotWeaklyTame(f"order {order} is divisible by p = {ctx.p}")
    a = isometry.matrix if isinstance(isometry, Isometry) else isometry
    if not isinstance(a, RingMat):
        a = RingMat.from_rows(ctx, a)
    if (a.transpose() @ sd.lattice.gram @ a) != sd.lattice.gram:
        raise InputError("matrix does not preserve the pairing")
    # restrict to the top piece; the isometry must stabilize every piece
    restricted = {}
    for name, piece in (("low", sd.low), ("middle", sd.middle), ("high", sd.high)):
        if not piece:
            continue
        cols = []
        for b in piece:
            coords = solve_in_span(piece, a @ b)
            if coords is None:
                raise PreconditionError(
                    f"isometry does not preserve the {name} slope piece"
                )
            cols.append(RingVec.from_entries(ctx, [c.coeffs for c in coords]))
        restricted[name] = RingMat.from_columns(ctx, cols)
    high_mat = restricted["high"]
    h = sd.height_rank
    ident = RingMat.identity(ctx, h)
    power = ident
    for _ in range(order):
        power = power @ high_mat
    if power != ident:
        raise OrderViolation(f"restricted action does not have order dividing {order}")
    # express the hodge line in the top piece's residue coordinates
    res = ctx.residue_context()
    if hodge_line.ctx != res:
        raise ContextMismatch("hodge line must live over the residue field")
    high_res = [b.reduce_mod_p() for b in sd.high]
    coords_bar = solve_in_span(high_res, hodge_line)
    if coords_bar is None:
        raise HodgeLineNotEigen("hodge line does not reduce into the top slope piece")
    xbar = RingVec.from_entries(res, [c.coeffs for c in coords_bar])
    high_lat = QuadLattice(ctx, RingMat.zeros(ctx, h, h))
    split = eigen_split(Isometry(high_lat, high_mat, check=False), order)
    lam_bar = _residue_eigenvalue(high_mat, xbar)
    index = next(
        (i for i, root in enumerate(split.roots) if ctx.reduce(root) == lam_bar), None
    )
    if index is None:
        raise HodgeLineNotEigen("hodge eigenvalue is not an N-th root of unity")
    w = lift_eigenvector(split, index, xbar)
    m = RingVec.zeros(ctx, sd.lattice.rank)
    for j, b in enumerate(sd.high):
        m = m + b.scale(w.entry(j))
    lam = split.roots[index]
    transcript = [_entry_membership(sd.high, "generator lies in the top slope piece")]
    transcript.extend(
        _entry_orthogonality(b, f"orthogonal to middle sub-basis vector {j}")
        for j, b in enumerate(sd.middle)
    )
    return LiftingCertificate(
        ctx,
        "finite-height",
        order,
        sd.lattice.gram,
        a,
        m,
        lam,
        hodge_line,
        transcript,
    )


def lift_ss_nonsymplectic(inp: SupersingularInput, order: int) -> LiftingCertificate:
    """Supersingular branch for an action nontrivial on the Hodge quotient.

    Splits off the eigenvalue zeta0 seen on the Hodge line mod p.  For
    zeta0 not a square root of unity the eigenvector lift is already
    isotropic (its eigenspace pairs to zero with itself); for zeta0 = -1
    the lift is corrected to u + p a v with a partner v of unit pairing
    from the same eigenspace.
    """
    ctx = inp.ctx
    if order < 1:
        raise InputError("order must be a positive integer")
    if order % ctx.p == 0:
        raise NotTame(f"order {order} is divisible by p = {ctx.p}")
    lam_bar = inp.residue_eigenvalue()
    res = ctx.residue_context()
    if lam_bar == res.one():
        raise SymplecticInput("the action fixes the Hodge line mod p")
    iso = Isometry(inp.lattice, inp.matrix, check=False)
    split = eigen_split(iso, order)
    index = next(
        (i for i, root in enumerate(split.roots) if ctx.reduce(root) == lam_bar), None
    )
    if index is None:
        raise HodgeLineNotEigen("hodge eigenvalue is not an N-th root of unity")
    zeta = split.roots[index]
    u = lift_eigenvector(split, index, inp.hodge_line)
    minus_one = ctx.zero() - ctx.one()
    transcript = []
    if zeta == minus_one:
        comp = split.component(index)
        partner = next(
            (b for b in comp.basis if inp.lattice.pairing(u, b).is_unit()), None
        )
        if partner is None:
            raise NoUnitPartner(
                "no unit pairing against the lifted Hodge vector in the -1 eigenspace"
            )
        a, m = isotropic_combination(inp.lattice, u, partner)
        transcript.append(
            _entry_pairing_unit(
                u, partner, inp.lattice.pairing(u, partner), "partner pairing u . v"
            )
        )
        transcript.append(_entry_valuation(a, 0, "isotropic correction scalar a"))
        transcript.append(_entry_membership(comp.basis, "generator lies in the -1 eigenspace"))
    else:
        m = u
        transcript.append(
            _entry_membership(split.component(index).basis, "generator lies in the zeta0 eigenspace")
        )
    if inp.ample is not None:
        transcript.append(
            _entry_orthogonality(inp.ample, "orthogonal to the fixed ample class")
        )
    return LiftingCertificate(
        ctx,
        "ss-nonsymplectic",
        order,
        inp.lattice.gram,
        inp.matrix,
        m,
        zeta,
        inp.hodge_line,
        transcript,
    )


def lift_ss_symplectic(inp: SupersingularInput, order: int) -> LiftingCertificate:
    """Supersingular branch for an action trivial on the Hodge quotient.

    Everything happens in the fixed eigenspace L1, orthogonally to the
    fixed ample class c.  When c . c is a unit the complement of c in L1
    is split off directly; when p | c . c two orthogonalizations against a
    unit-pairing helper are needed first.  Both paths end with the
    isotropic combination and a generator fixed by the isometry.
    """
    ctx = inp.ctx
    if order < 1:
        raise InputError("order must be a positive integer")
    if order % ctx.p == 0:
        raise NotTame(f"order {order} is divisible by p = {ctx.p}")
    if inp.ample is None:
        raise InputError("the symplectic branch needs an ample class")
    lam_bar = inp.residue_eigenvalue()
    res = ctx.residue_context()
    if lam_bar != res.one():
        raise NotSymplectic("the action moves the Hodge line mod p")
    c = inp.ample
    cbar = c.reduce_mod_p()
    pair_mat = RingMat.from_columns(res, [inp.hodge_line, cbar])
    if residue_rank(pair_mat) < 2:
        raise IndependenceFailure(
            "hodge vector and ample class are dependent mod p"
        )
    xc = inp.lattice.pairing(
        inp.hodge_line.lift_to(ctx), c
    )
    if xc.valuation() < 1:
        raise PreconditionError(
            "the Hodge line must pair to zero with the ample class mod p"
        )
    iso = Isometry(inp.lattice, inp.matrix, check=False)
    split = eigen_split(iso, order)
    fixed = split.component(0)
    u0 = lift_eigenvector(split, 0, inp.hodge_line)
    cc = inp.lattice.pairing(c, c)
    transcript = []
    if cc.is_unit():
        coeff, u1 = orthogonalize_with_coefficient(inp.lattice, c, u0, c)
        transcript.append(
            _entry_valuation(coeff, 1, "correction along c keeps the reduction line")
        )
        cc_inv = cc.inverse()
        candidates = []
        for b in fixed.basis:
            proj = b - c.scale(inp.lattice.pairing(b, c) * cc_inv)
            candidates.append(proj)
        partner = next(
            (w for w in candidates if inp.lattice.pairing(u1, w).is_unit()), None
        )
        if partner is None:
            raise RankTooSmall(
                "the complement of c in the fixed eigenspace cannot host the configuration"
            )
        a, m = isotropic_combination(inp.lattice, u1, partner)
        transcript.append(
            _entry_pairing_unit(u1, partner, inp.lattice.pairing(u1, partner), "partner pairing")
        )
        transcript.append(_entry_valuation(a, 0, "isotropic correction scalar a"))
    else:
        helper = next(
            (b for b in fixed.basis if inp.lattice.pairing(b, c).is_unit()), None
        )
        if helper is None:
            raise RankTooSmall("no unit pairing against the ample class in the fixed eigenspace")
        coeff, v1 = orthogonalize_with_coefficient(inp.lattice, c, u0, helper)
        if coeff.valuation() < 1:
            raise PreconditionError("orthogonalization coefficient left pW")
        transcript.append(
            _entry_valuation(coeff, 1, "first orthogonalization coefficient lies in pW")
        )
        partner = None
        for b in fixed.basis:
            _, w1 = orthogonalize_with_coefficient(inp.lattice, c, b, helper)
            if inp.lattice.pairing(v1, w1).is_unit():
                partner = w1
                break
        if partner is None:
            raise RankTooSmall(
                "the complement of c in the fixed eigenspace cannot host the configuration"
            )
        a, m = isotropic_combination(inp.lattice, v1, partner)
        transcript.append(
            _entry_pairing_unit(v1, partner, inp.lattice.pairing(v1, partner), "partner pairing")
        )
        transcript.append(_entry_valuation(a, 0, "isotropic correction scalar a"))
    transcript.append(_entry_orthogonality(c, "orthogonal to the ample class"))
    transcript.append(_entry_membership(fixed.basis, "generator lies in the fixed eigenspace"))
    return LiftingCertificate(
        ctx,
        "ss-symplectic",
        order,
        inp.lattice.gram,
        inp.matrix,
        m,
        ctx.one(),
        inp.hodge_line,
        transcript,
    )


# ---------------------------------------------------------------------------
# stable lines and rank gates


def universal_line(
    sd: SlopeDecomposition,
    isometry,
    order: int,
    hodge_line: RingVec,
    others,
) -> tuple[LiftingCertificate, list[dict]]:
    """Certificate for the generating isometry plus line-stability reports.

    Each extra isometry is tested for whether it maps the certified line
    into itself (beta m = mu m for some scalar mu); commuting powers of the
    generator always pass, and a report entry records the factor found.
    """
    cert = lift_finite_height(sd, isometry, order, hodge_line)
    ctx = cert.ctx
    m = cert.generator
    pivot = next(i for i in range(m.rank) if m.entry(i).is_unit())
    reports = []
    for k, beta in enumerate(others):
        b = beta.matrix if isinstance(beta, Isometry) else beta
        if not isinstance(b, RingMat):
            b = RingMat.from_rows(ctx, b)
        image = b @ m
        factor = image.entry(pivot) * m.entry(pivot).inverse()
        stabilizes = image == m.scale(factor)
        entry = {
            "index": k,
            "preserves_pairing": (b.transpose() @ cert.gram @ b) == cert.gram,
            "stabilizes": bool(stabilizes),
        }
        if stabilizes:
            entry["factor"] = factor.to_json()
        reports.append(entry)
    return cert, reports


def phi_rank_check(transcendental_rank: int, order: int) -> dict:
    """Euler-phi divisibility gate on the transcendental rank.

    The order of a purely non-symplectic tame action forces phi(order) to
    divide the transcendental rank; the weaker bound phi(order) <= rank is
    reported alongside.
    """
    t = int(transcendental_rank)
    n = int(order)
    if t < 1 or n < 1:
        raise InputError("rank and order must be positive")
    phi = euler_phi(n)
    return {
        "order": n,
        "transcendental_rank": t,
        "phi": phi,
        "divides": t % phi == 0,
        "bound_ok": phi <= t,
    }
