"""Quadratic lattices over Z and over truncated Witt rings.

A lattice is a free module with a symmetric Gram matrix.  Integer lattices
support discriminant groups (via Smith normal form), saturated orthogonal
complements, exact signatures, and base change into a ring context.  Ring
lattices support pairings, isotropy tests, and orthogonal complements when
the relevant elimination has unit pivots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    ContextMismatch,
    DegenerateForm,
    DimensionMismatch,
    InputError,
)
from .linalg import RingMat, RingVec, kernel, residue_rank
from .witt import RingContext

# ---------------------------------------------------------------------------
# integer matrix utilities


def smith_normal_form(mat) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Smith normal form with transforms: returns (d, u, v) with u @ mat @ v = d,
    u and v unimodular, and d diagonal with d[i] | d[i+1]."""
    a = np.array(mat, dtype=object).copy()
    if a.ndim != 2:
        raise InputError("need a 2-d integer matrix")
    rows, cols = a.shape
    u = np.eye(rows, dtype=object)
    v = np.eye(cols, dtype=object)

    def pivot_position(t):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i, j] != 0 and (best is None or abs(a[i, j]) < abs(a[best[0], best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(rows, cols):
        pos = pivot_position(t)
        if pos is None:
            break
        i, j = pos
        if i != t:
            a[[t, i], :] = a[[i, t], :]
            u[[t, i], :] = u[[i, t], :]
        if j != t:
            a[:, [t, j]] = a[:, [j, t]]
            v[:, [t, j]] = v[:, [j, t]]
        # clear row and column t by Euclidean steps
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, rows):
                if a[i, t]:
                    q = a[i, t] // a[t, t]
                    a[i, :] -= q * a[t, :]
                    u[i, :] -= q * u[t, :]
                    if a[i, t]:
                        a[[t, i], :] = a[[i, t], :]
                        u[[t, i], :] = u[[i, t], :]
                        dirty = True
            for j in range(t + 1, cols):
                if a[t, j]:
                    q = a[t, j] // a[t, t]
                    a[:, j] -= q * a[:, t]
                    v[:, j] -= q * v[:, t]
                    if a[t, j]:
                        a[:, [t, j]] = a[:, [j, t]]
                        v[:, [t, j]] = v[:, [j, t]]
                        dirty = True
        t += 1

    # enforce the divisibility chain
    k = min(rows, cols)
    changed = True
    while changed:
        changed = False
        for i in range(k - 1):
            if a[i + 1, i + 1] == 0 and a[i, i] == 0:
                continue
            if a[i, i] == 0 or (a[i + 1, i + 1] != 0 and a[i + 1, i + 1] % a[i, i] != 0):
                # fold entry i+1 into row i and rediagonalize the 2x2 block
                a[:, i] += a[:, i + 1]
                v[:, i] += v[:, i + 1]
                x, y = a[i, i], a[i + 1, i]
                while y:
                    q = x // y
                    a[i, :], a[i + 1, :] = a[i + 1, :], a[i, :] - q * a[i + 1, :]
                    u[i, :], u[i + 1, :] = u[i + 1, :], u[i, :] - q * u[i + 1, :]
                    x, y = a[i, i], a[i + 1, i]
                q = a[i, i + 1] // a[i, i]
                a[:, i + 1] -= q * a[:, i]
                v[:, i + 1] -= q * v[:, i]
                changed = True
    for i in range(k):
        if a[i, i] < 0:
            a[i, :] = -a[i, :]
            u[i, :] = -u[i, :]
    return a, u, v


def integer_kernel(mat) -> np.ndarray:
    """Z-basis of {x : mat @ x = 0}; rows of the result span a saturated
    sublattice because kernels of integer maps are saturated."""
    a = np.array(mat, dtype=object)
    d, _, v = smith_normal_form(a)
    rows, cols = a.shape
    rank = sum(1 for i in range(min(rows, cols)) if d[i, i] != 0)
    return v[:, rank:].T.copy()


def bareiss_determinant(mat) -> int:
    """Exact integer determinant (fraction-free elimination)."""
    a = np.array(mat, dtype=object).copy()
    r = a.shape[0]
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch("determinant needs a square matrix")
    sign, prev = 1, 1
    for k in range(r - 1):
        if a[k, k] == 0:
            swap = next((i for i in range(k + 1, r) if a[i, k] != 0), None)
            if swap is None:
                return 0
            a[[k, swap], :] = a[[swap, k], :]
            sign = -sign
        for i in range(k + 1, r):
            for j in range(k + 1, r):
                a[i, j] = (a[i, j] * a[k, k] - a[i, k] * a[k, j]) // prev
        prev = a[k, k]
    return sign * int(a[r - 1, r - 1])


def signature(mat) -> tuple[int, int, int]:
    """Exact inertia (positive, negative, zero) of a rational symmetric matrix."""
    a = [[Fraction(int(x)) for x in row] for row in np.array(mat, dtype=object)]
    r = len(a)
    pos = neg = zero = 0
    live = list(range(r))
    while live:
        piv = next((i for i in live if a[i][i] != 0), None)
        if piv is None:
            off = None
            for i in live:
                for j in live:
                    if i != j and a[i][j] != 0:
                        off = (i, j)
                        break
                if off:
                    break
            if off is None:
                zero += len(live)
                break
            i, j = off
            # make a nonzero diagonal entry: e_i <- e_i + e_j
            for k in range(r):
                a[i][k] += a[j][k]
            for k in range(r):
                a[k][i] += a[k][j]
            piv = i
        d = a[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        live.remove(piv)
        for i in live:
            f = a[i][piv] / d
            if f:
                for j in live:
                    a[i][j] -= f * a[piv][j]
                a[i][piv] = Fraction(0)
                a[piv][i] = Fraction(0)
    return pos, neg, zero


# ---------------------------------------------------------------------------
# lattices


class QuadLattice:
    """Free quadratic lattice over Z (ring=None) or over a ring context."""

    __slots__ = ("ring", "rank", "gram", "_even")

    def __init__(self, ring: RingContext | None, gram, even: bool | None = None):
        self.ring = ring
        if ring is None:
            g = np.array(
                [[int(x) for x in row] for row in _rows_of(gram)], dtype=object
            )
            if g.ndim != 2 or g.shape[0] != g.shape[1]:
                raise DimensionMismatch("Gram matrix must be square")
            if not (g == g.T).all():
                raise InputError("Gram matrix must be symmetric")
            self.gram = g
            self.rank = g.shape[0]
            diag_even = all(g[i, i] % 2 == 0 for i in range(self.rank))
            if even is not None and even and not diag_even:
                raise InputError("lattice flagged even has an odd diagonal entry")
            self._even = diag_even if even is None else even
        else:
            if isinstance(gram, RingMat):
                if gram.ctx != ring:
                    raise ContextMismatch("Gram context differs from lattice ring")
                g = gram
            else:
                g = RingMat.from_rows(ring, _rows_of(gram))
            if g.rows != g.cols:
                raise DimensionMismatch("Gram matrix must be square")
            if not g.is_symmetric():
                raise InputError("Gram matrix must be symmetric")
            self.gram = g
            self.rank = g.rows
            self._even = even

    # -- basic structure -----------------------------------------------------

    @property
    def is_integral(self) -> bool:
        return self.ring is None

    @property
    def even(self) -> bool | None:
        return self._even

    def vector(self, entries) -> RingVec | np.ndarray:
        if self.ring is None:
            v = np.array([int(x) for x in entries], dtype=object)
            if v.shape != (self.rank,):
                raise DimensionMismatch(f"vector length must be {self.rank}")
            return v
        if isinstance(entries, RingVec):
            if entries.ctx != self.ring or entries.rank != self.rank:
                raise ContextMismatch("vector does not match lattice")
            return entries
        v = RingVec.from_entries(self.ring, entries)
        if v.rank != self.rank:
            raise DimensionMismatch(f"vector length must be {self.rank}")
        return v

    def pairing(self, u, v):
        """Bilinear pairing u . v (an int over Z, a scalar over a ring)."""
        u, v = self.vector(u), self.vector(v)
        if self.ring is None:
            return int(np.dot(u, np.dot(self.gram, v)))
        gv = self.gram @ v
        acc = self.ring.zero()
        for i in range(self.rank):
            acc = acc + u.entry(i) * gv.entry(i)
        return acc

    def norm(self, v):
        return self.pairing(v, v)

    def is_isotropic_vector(self, v) -> bool:
        """True when v . v = 0 at the working precision (exactly 0 over Z)."""
        nv = self.norm(v)
        return nv == 0 if self.ring is None else nv.is_zero()

    def determinant(self) -> int:
        if self.ring is not None:
            raise InputError("integer determinant is defined for Z-lattices")
        return bareiss_determinant(self.gram)

    def signature(self) -> tuple[int, int, int]:
        if self.ring is not None:
            raise InputError("signature is defined for Z-lattices")
        return signature(self.gram)

    def is_unimodular(self) -> bool:
        if self.ring is None:
            return abs(self.determinant()) == 1
        return residue_rank(self.gram) == self.rank

    def change_ring(self, ctx: RingContext) -> "QuadLattice":
        """Base change a Z-lattice into a ring context."""
        if self.ring is not None:
            if self.ring == ctx:
                return self
            raise InputError("change_ring starts from a Z-lattice")
        rows = [[int(x) % ctx.pn for x in row] for row in self.gram]
        return QuadLattice(ctx, rows)

    def direct_sum(self, other: "QuadLattice") -> "QuadLattice":
        if (self.ring is None) != (other.ring is None):
            raise ContextMismatch("cannot sum Z and ring lattices")
        if self.ring is None:
            r1, r2 = self.rank, other.rank
            g = np.zeros((r1 + r2, r1 + r2), dtype=object)
            g[:r1, :r1] = self.gram
            g[r1:, r1:] = other.gram
            return QuadLattice(None, g)
        if other.ring != self.ring:
            raise ContextMismatch("ring contexts differ")
        r1, r2 = self.rank, other.rank
        arr = np.zeros((self.ring.m, r1 + r2, r1 + r2), dtype=object)
        arr[:, :r1, :r1] = self.gram.arr
        arr[:, r1:, r1:] = other.gram.arr
        return QuadLattice(self.ring, RingMat(self.ring, arr))

    # -- derived structure -----------------------------------------------------

    def discriminant_group(self) -> "DiscriminantGroup":
        if self.ring is not None:
            raise InputError("discriminant groups are computed over Z")
        det = self.determinant()
        if det == 0:
            raise DegenerateForm("Gram matrix is singular over Q")
        d, _, _ = smith_normal_form(self.gram)
        invariants = tuple(
            int(d[i, i]) for i in range(self.rank) if abs(d[i, i]) > 1
        )
        return DiscriminantGroup(invariants)

    def orthogonal_complement(self, vectors) -> list:
        """Basis of {x : x . s = 0 for all s in vectors}.

        Over Z the result is a basis of a saturated sublattice.  Over a ring
        it requires the pairing rows to eliminate with unit pivots; otherwise
        the kernel is precision-dependent and PrecisionLoss is raised.
        """
        vecs = [self.vector(s) for s in vectors]
        if self.ring is None:
            if not vecs:
                return [self.vector([1 if i == j else 0 for j in range(self.rank)]) for i in range(self.rank)]
            pair_rows = np.array([np.dot(self.gram, s) for s in vecs], dtype=object)
            return [row.copy() for row in integer_kernel(pair_rows)]
        if not vecs:
            return [RingVec.basis_vector(self.ring, self.rank, i) for i in range(self.rank)]
        rows = [self.gram @ s for s in vecs]
        mat = RingMat.from_columns(self.ring, rows).transpose()
        return kernel(mat)

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> dict:
        if self.ring is None:
            return {
                "ring": "Z",
                "rank": self.rank,
                "gram": [[int(x) for x in row] for row in self.gram],
            }
        return {
            "ring": self.ring.to_json(),
            "rank": self.rank,
            "gram": self.gram.to_json(),
        }

    def __repr__(self) -> str:
        base = "Z" if self.ring is None else repr(self.ring)
        return f"QuadLattice(rank={self.rank} over {base})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuadLattice) or other.rank != self.rank:
            return False
        if (other.ring is None) != (self.ring is None):
            return False
        if self.ring is None:
            return bool((other.gram == self.gram).all())
        return other.ring == self.ring and other.gram == self.gram


def _rows_of(gram):
    """Accept nested rows or a flat row-major list."""
    if isinstance(gram, np.ndarray):
        return gram.tolist()
    gram = list(gram)
    if gram and not isinstance(gram[0], (list, tuple, np.ndarray)):
        r = int(round(len(gram) ** 0.5))
        if r * r != len(gram):
            raise DimensionMismatch("flat Gram array must have square length")
        return [gram[i * r : (i + 1) * r] for i in range(r)]
    return gram


@dataclass(frozen=True)
class DiscriminantGroup:
    """Finite abelian group L*/L in invariant-factor form d1 | d2 | ... ."""

    invariants: tuple[int, ...]

    def __post_init__(self):
        for a, b in zip(self.invariants, self.invariants[1:]):
            if b % a != 0:
                raise InputError("invariant factors must form a divisibility chain")

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariants:
            out *= d
        return out

    @property
    def is_trivial(self) -> bool:
        return not self.invariants

    def artin_invariant(self, p: int) -> int | None:
        """Half the length when the group is (Z/p)^(2*sigma); None otherwise."""
        if self.invariants and all(d == p for d in self.invariants):
            if len(self.invariants) % 2 == 0:
                return len(self.invariants) // 2
        return None

    def to_json(self) -> dict:
        return {"invariants": list(self.invariants), "order": self.order}


# ---------------------------------------------------------------------------
# standard lattices


def _e8_gram() -> list[list[int]]:
    """Negative definite even unimodular E8 (negated Cartan matrix, Bourbaki
    node order: chain 1-3-4-5-6-7-8 with node 2 attached to node 4)."""
    edges = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]
    g = [[0] * 8 for _ in range(8)]
    for i in range(8):
        g[i][i] = -2
    for a, b in edges:
        g[a - 1][b - 1] = 1
        g[b - 1][a - 1] = 1
    return g


def standard_lattice(name: str) -> QuadLattice:
    """The hyperbolic plane U, the even unimodular E8 (negative definite), or
    the K3 lattice U^3 + E8 + E8 of rank 22 and signature (3, 19)."""
    key = name.strip().upper()
    if key == "U":
        return QuadLattice(None, [[0, 1], [1, 0]])
    if key == "E8":
        return QuadLattice(None, _e8_gram())
    if key == "K3":
        u = standard_lattice("U")
        e8 = standard_lattice("E8")
        out = u
        for piece in (u, u, e8, e8):
            out = out.direct_sum(piece)
        return out
    raise InputError(f"unknown standard lattice {name!r} (use U, E8, K3)")


def discriminant_group(lattice: QuadLattice) -> DiscriminantGroup:
    return lattice.discriminant_group()


def orthogonal_complement(lattice: QuadLattice, vectors) -> list:
    return lattice.orthogonal_complement(vectors)
