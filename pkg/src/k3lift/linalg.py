"""Exact matrices and vectors over a truncated Witt ring.

A matrix over W(F_{p^m})/p^n is stored as a numpy object array of shape
(m, rows, cols): slice d holds the degree-d coefficient matrix of the
polynomial representative.  All entries are Python ints reduced mod p^n, so
every operation is exact; numpy supplies the shape bookkeeping and the
integer matrix products.

Gaussian elimination only ever divides by units.  Over the residue field
(precision 1) every nonzero scalar is a unit, so the same sweep computes
ranks and kernels there.  At precision n a row with no unit entry is a
"defect" row: all of its entries have positive valuation, and a nonzero
defect row means the answer depends on digits beyond the working precision.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    ContextMismatch,
    DimensionMismatch,
    InputError,
    NonUnitPivot,
    PrecisionLoss,
)
from .witt import PadicScalar, RingContext

# ---------------------------------------------------------------------------
# coefficient-array kernels


def _poly_reduce(ctx: RingContext, conv: np.ndarray) -> np.ndarray:
    """Reduce a degree-indexed array (2m-1, ...) modulo (modulus, p^n)."""
    m = ctx.m
    if m == 1:
        return conv[:1] % ctx.pn
    out = conv[:m].copy()
    for k in range(m, 2 * m - 1):
        red = ctx._xpow[k]
        blk = conv[k]
        for j in range(m):
            if red[j]:
                out[j] = out[j] + red[j] * blk
    return out % ctx.pn


def _mul_arrays(ctx: RingContext, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of (m, r, k) and (m, k, c) coefficient arrays."""
    m = ctx.m
    if m == 1:
        return (np.dot(a[0], b[0]) % ctx.pn)[None, ...]
    conv = np.zeros((2 * m - 1,) + (a.shape[1], b.shape[2]), dtype=object)
    for i in range(m):
        for j in range(m):
            conv[i + j] = conv[i + j] + np.dot(a[i], b[j])
    return _poly_reduce(ctx, conv)


def _matvec_arrays(ctx: RingContext, a: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Product of (m, r, k) and (m, k) coefficient arrays."""
    m = ctx.m
    if m == 1:
        return (np.dot(a[0], v[0]) % ctx.pn)[None, ...]
    conv = np.zeros((2 * m - 1, a.shape[1]), dtype=object)
    for i in range(m):
        for j in range(m):
            conv[i + j] = conv[i + j] + np.dot(a[i], v[j])
    return _poly_reduce(ctx, conv)


def _scal_arrays(ctx: RingContext, s: tuple[int, ...], a: np.ndarray) -> np.ndarray:
    """Scalar (coefficient tuple) times a degree-indexed array (m, ...)."""
    m = ctx.m
    if m == 1:
        return (a * s[0]) % ctx.pn
    conv = np.zeros((2 * m - 1,) + a.shape[1:], dtype=object)
    for i in range(m):
        if s[i]:
            for j in range(m):
                conv[i + j] = conv[i + j] + s[i] * a[j]
    return _poly_reduce(ctx, conv)


def _frobenius_array(ctx: RingContext, a: np.ndarray) -> np.ndarray:
    if ctx.m == 1:
        return a.copy()
    cols = ctx.frobenius_matrix()
    out = np.zeros_like(a)
    for j in range(ctx.m):
        col = cols[j]
        for i in range(ctx.m):
            if col[i]:
                out[i] = out[i] + col[i] * a[j]
    return out % ctx.pn


def _entry(ctx: RingContext, arr: np.ndarray, index) -> PadicScalar:
    return PadicScalar(ctx, tuple(int(c) for c in arr[(slice(None),) + index]))


# ---------------------------------------------------------------------------
# public containers


class RingVec:
    """Vector over a ring context; thin wrapper on a (m, r) object array."""

    __slots__ = ("ctx", "arr")

    def __init__(self, ctx: RingContext, arr: np.ndarray):
        self.ctx = ctx
        self.arr = arr

    @classmethod
    def from_entries(cls, ctx: RingContext, entries) -> "RingVec":
        scalars = [ctx.scalar(e) for e in entries]
        arr = np.zeros((ctx.m, len(scalars)), dtype=object)
        for i, s in enumerate(scalars):
            for d in range(ctx.m):
                arr[d, i] = s.coeffs[d]
        return cls(ctx, arr)

    @classmethod
    def zeros(cls, ctx: RingContext, r: int) -> "RingVec":
        return cls(ctx, np.zeros((ctx.m, r), dtype=object))

    @classmethod
    def basis_vector(cls, ctx: RingContext, r: int, i: int) -> "RingVec":
        v = cls.zeros(ctx, r)
        v.arr[0, i] = 1
        return v

    @property
    def rank(self) -> int:
        return self.arr.shape[1]

    def entry(self, i: int) -> PadicScalar:
        return _entry(self.ctx, self.arr, (i,))

    def entries(self) -> list[PadicScalar]:
        return [self.entry(i) for i in range(self.rank)]

    def _check(self, other: "RingVec") -> None:
        if not isinstance(other, RingVec):
            raise InputError("expected a RingVec")
        if other.ctx != self.ctx:
            raise ContextMismatch(f"{other.ctx!r} vs {self.ctx!r}")
        if other.rank != self.rank:
            raise DimensionMismatch(f"rank {other.rank} vs {self.rank}")

    def __add__(self, other: "RingVec") -> "RingVec":
        self._check(other)
        return RingVec(self.ctx, (self.arr + other.arr) % self.ctx.pn)

    def __sub__(self, other: "RingVec") -> "RingVec":
        self._check(other)
        return RingVec(self.ctx, (self.arr - other.arr) % self.ctx.pn)

    def __neg__(self) -> "RingVec":
        return RingVec(self.ctx, (-self.arr) % self.ctx.pn)

    def scale(self, s) -> "RingVec":
        s = self.ctx.scalar(s)
        return RingVec(self.ctx, _scal_arrays(self.ctx, s.coeffs, self.arr))

    def __rmul__(self, s) -> "RingVec":
        return self.scale(s)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RingVec)
            and other.ctx == self.ctx
            and other.arr.shape == self.arr.shape
            and bool((other.arr == self.arr).all())
        )

    def __repr__(self) -> str:
        return f"RingVec({[s.coeffs if self.ctx.m > 1 else s.coeffs[0] for s in self.entries()]})"

    def is_zero(self) -> bool:
        return bool((self.arr == 0).all())

    def valuation(self) -> int:
        """Minimum valuation over the entries (n for the zero vector)."""
        return min((e.valuation() for e in self.entries()), default=self.ctx.n)

    def reduce_mod_p(self) -> "RingVec":
        res = self.ctx.residue_context()
        return RingVec(res, self.arr % self.ctx.p)

    def lift_to(self, ctx: RingContext) -> "RingVec":
        if ctx.p != self.ctx.p or ctx.m != self.ctx.m:
            raise ContextMismatch("lift across incompatible contexts")
        return RingVec(ctx, self.arr % ctx.pn)

    def frobenius(self) -> "RingVec":
        return RingVec(self.ctx, _frobenius_array(self.ctx, self.arr))

    def to_json(self) -> list[list[int]]:
        return [list(s.coeffs) for s in self.entries()]


class RingMat:
    """Matrix over a ring context; wraps a (m, rows, cols) object array."""

    __slots__ = ("ctx", "arr")

    def __init__(self, ctx: RingContext, arr: np.ndarray):
        self.ctx = ctx
        self.arr = arr

    @classmethod
    def from_rows(cls, ctx: RingContext, rows) -> "RingMat":
        rows = [[ctx.scalar(e) for e in row] for row in rows]
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise DimensionMismatch("ragged matrix rows")
        arr = np.zeros((ctx.m, r, c), dtype=object)
        for i, row in enumerate(rows):
            for j, s in enumerate(row):
                for d in range(ctx.m):
                    arr[d, i, j] = s.coeffs[d]
        return cls(ctx, arr)

    @classmethod
    def identity(cls, ctx: RingContext, r: int) -> "RingMat":
        arr = np.zeros((ctx.m, r, r), dtype=object)
        for i in range(r):
            arr[0, i, i] = 1
        return cls(ctx, arr)

    @classmethod
    def zeros(cls, ctx: RingContext, r: int, c: int) -> "RingMat":
        return cls(ctx, np.zeros((ctx.m, r, c), dtype=object))

    @classmethod
    def from_columns(cls, ctx: RingContext, vecs: list[RingVec]) -> "RingMat":
        if not vecs:
            raise InputError("need at least one column")
        r = vecs[0].rank
        arr = np.zeros((ctx.m, r, len(vecs)), dtype=object)
        for j, v in enumerate(vecs):
            if v.ctx != ctx or v.rank != r:
                raise ContextMismatch("column context/rank mismatch")
            arr[:, :, j] = v.arr
        return cls(ctx, arr)

    @property
    def rows(self) -> int:
        return self.arr.shape[1]

    @property
    def cols(self) -> int:
        return self.arr.shape[2]

    def entry(self, i: int, j: int) -> PadicScalar:
        return _entry(self.ctx, self.arr, (i, j))

    def column(self, j: int) -> RingVec:
        return RingVec(self.ctx, self.arr[:, :, j].copy())

    def row(self, i: int) -> RingVec:
        return RingVec(self.ctx, self.arr[:, i, :].copy())

    def _check(self, other: "RingMat") -> None:
        if not isinstance(other, RingMat):
            raise InputError("expected a RingMat")
        if other.ctx != self.ctx:
            raise ContextMismatch(f"{other.ctx!r} vs {self.ctx!r}")

    def __add__(self, other: "RingMat") -> "RingMat":
        self._check(other)
        if other.arr.shape != self.arr.shape:
            raise DimensionMismatch("matrix shapes differ")
        return RingMat(self.ctx, (self.arr + other.arr) % self.ctx.pn)

    def __sub__(self, other: "RingMat") -> "RingMat":
        self._check(other)
        if other.arr.shape != self.arr.shape:
            raise DimensionMismatch("matrix shapes differ")
        return RingMat(self.ctx, (self.arr - other.arr) % self.ctx.pn)

    def __neg__(self) -> "RingMat":
        return RingMat(self.ctx, (-self.arr) % self.ctx.pn)

    def __matmul__(self, other):
        if isinstance(other, RingMat):
            self._check(other)
            if self.cols != other.rows:
                raise DimensionMismatch(f"{self.cols} vs {other.rows}")
            return RingMat(self.ctx, _mul_arrays(self.ctx, self.arr, other.arr))
        if isinstance(other, RingVec):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"{other.ctx!r} vs {self.ctx!r}")
            if self.cols != other.rank:
                raise DimensionMismatch(f"{self.cols} vs {other.rank}")
            return RingVec(self.ctx, _matvec_arrays(self.ctx, self.arr, other.arr))
        return NotImplemented

    def scale(self, s) -> "RingMat":
        s = self.ctx.scalar(s)
        return RingMat(self.ctx, _scal_arrays(self.ctx, s.coeffs, self.arr))

    def __rmul__(self, s) -> "RingMat":
        return self.scale(s)

    def __pow__(self, e: int) -> "RingMat":
        if self.rows != self.cols:
            raise DimensionMismatch("powers need a square matrix")
        if e < 0:
            return inverse(self) ** (-e)
        result = RingMat.identity(self.ctx, self.rows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RingMat)
            and other.ctx == self.ctx
            and other.arr.shape == self.arr.shape
            and bool((other.arr == self.arr).all())
        )

    def __repr__(self) -> str:
        return f"RingMat({self.rows}x{self.cols} over {self.ctx!r})"

    def transpose(self) -> "RingMat":
        return RingMat(self.ctx, self.arr.transpose(0, 2, 1).copy())

    def is_zero(self) -> bool:
        return bool((self.arr == 0).all())

    def is_symmetric(self) -> bool:
        return bool((self.arr == self.arr.transpose(0, 2, 1)).all())

    def reduce_mod_p(self) -> "RingMat":
        res = self.ctx.residue_context()
        return RingMat(res, self.arr % self.ctx.p)

    def lift_to(self, ctx: RingContext) -> "RingMat":
        if ctx.p != self.ctx.p or ctx.m != self.ctx.m:
            raise ContextMismatch("lift across incompatible contexts")
        return RingMat(ctx, self.arr % ctx.pn)

    def frobenius(self) -> "RingMat":
        return RingMat(self.ctx, _frobenius_array(self.ctx, self.arr))

    def to_json(self) -> list[list[list[int]]]:
        return [
            [list(self.entry(i, j).coeffs) for j in range(self.cols)]
            for i in range(self.rows)
        ]


# ---------------------------------------------------------------------------
# elimination


def _rref_unit(ctx: RingContext, work: np.ndarray) -> tuple[list[int], int]:
    """In-place Gauss-Jordan sweep using unit pivots only.

    Returns (pivot column list, number of pivot rows).  Rows beyond the pivot
    count end with every entry of positive valuation.
    """
    _, r, c = work.shape
    p, pn = ctx.p, ctx.pn
    pivots: list[int] = []
    cur = 0
    for col in range(c):
        piv = None
        for row in range(cur, r):
            ent = work[:, row, col]
            if any(int(e) % p for e in ent):
                piv = row
                break
        if piv is None:
            continue
        if piv != cur:
            work[:, [cur, piv], :] = work[:, [piv, cur], :]
        inv = _entry(ctx, work, (cur, col)).inverse().coeffs
        work[:, cur, :] = _scal_arrays(ctx, inv, work[:, cur, :].copy())
        for row in range(r):
            if row == cur:
                continue
            f = tuple(int(e) for e in work[:, row, col])
            if any(f):
                work[:, row, :] = (
                    work[:, row, :] - _scal_arrays(ctx, f, work[:, cur, :])
                ) % pn
        pivots.append(col)
        cur += 1
        if cur == r:
            break
    return pivots, cur


def residue_rank(mat: RingMat) -> int:
    """Rank of the reduction mod p."""
    red = mat.reduce_mod_p()
    work = red.arr.copy()
    pivots, _ = _rref_unit(red.ctx, work)
    return len(pivots)


def is_unimodular(mat: RingMat) -> bool:
    """True when a square matrix is invertible over the local ring, i.e. its
    reduction mod p has full rank."""
    return mat.rows == mat.cols and residue_rank(mat) == mat.rows


def solve(a: RingMat, b):
    """Solve a X = b for an invertible square a; raises NonUnitPivot.
    b may be a RingMat or a RingVec (then the result is a RingVec)."""
    vec = isinstance(b, RingVec)
    rhs = RingMat.from_columns(a.ctx, [b]) if vec else b
    a._check(rhs)
    if a.rows != a.cols or rhs.rows != a.rows:
        raise DimensionMismatch("solve needs square a with matching b")
    r, k = a.rows, rhs.cols
    work = np.concatenate([a.arr, rhs.arr], axis=2).copy()
    pivots, _ = _rref_unit(a.ctx, work)
    if pivots != list(range(r)):
        raise NonUnitPivot("matrix is not invertible over the local ring")
    out = RingMat(a.ctx, work[:, :, r : r + k].copy())
    return out.column(0) if vec else out


def inverse(a: RingMat) -> RingMat:
    return solve(a, RingMat.identity(a.ctx, a.rows))


def kernel(mat: RingMat) -> list[RingVec]:
    """Basis of the kernel at precision n.

    Only defined when elimination terminates with unit pivots and exactly
    zero defect rows; otherwise the kernel rank depends on digits beyond the
    precision and PrecisionLoss is raised.
    """
    work = mat.arr.copy()
    pivots, nrows = _rref_unit(mat.ctx, work)
    if not bool((work[:, nrows:, :] == 0).all()):
        raise PrecisionLoss(
            "kernel is not determined at this precision: "
            "a nonzero relation row has no unit entry"
        )
    free = [j for j in range(mat.cols) if j not in pivots]
    basis = []
    for f in free:
        v = RingVec.zeros(mat.ctx, mat.cols)
        v.arr[0, f] = 1
        for i, pcol in enumerate(pivots):
            v.arr[:, pcol] = (-work[:, i, f]) % mat.ctx.pn
        basis.append(v)
    return basis


def solve_in_span(basis: list[RingVec], target: RingVec) -> list[PadicScalar] | None:
    """Coordinates of target in the span of a residually independent basis,
    or None when target is outside the span at this precision."""
    if not basis:
        return None if not target.is_zero() else []
    ctx = target.ctx
    bmat = RingMat.from_columns(ctx, basis)
    if residue_rank(bmat) != len(basis):
        raise PrecisionLoss("span basis must be residually independent")
    work = np.concatenate([bmat.arr, target.arr[:, :, None]], axis=2).copy()
    pivots, nrows = _rref_unit(ctx, work)
    k = len(basis)
    if any(pc >= k for pc in pivots):
        return None
    if not bool((work[:, nrows:, :] == 0).all()):
        return None
    coords = [ctx.zero()] * k
    for i, pc in enumerate(pivots):
        coords[pc] = _entry(ctx, work, (i, k))
    return coords


def independent_columns(mat: RingMat) -> list[int]:
    """Indices of a maximal residually independent set of columns
    (lexicographically first, hence deterministic)."""
    red = mat.reduce_mod_p()
    work = red.arr.copy()
    pivots, _ = _rref_unit(red.ctx, work)
    return pivots


def matrix_valuation(mat: RingMat) -> int:
    """Minimum valuation over all entries (n for the zero matrix)."""
    v = mat.ctx.n
    for i in range(mat.rows):
        for j in range(mat.cols):
            v = min(v, mat.entry(i, j).valuation())
            if v == 0:
                return 0
    return v
