"""Truncated Witt-vector arithmetic W(F_{p^m}) / p^n for odd primes p.

The unramified extension is modeled as (Z/p^n)[x] / (f) for a monic degree-m
modulus f whose reduction mod p is irreducible.  Scalars are coefficient
tuples in that quotient; every public value is an exact integer, never a
float.  The residue field F_{p^m} is the same ring at precision n = 1, so
reduction mod p is just a change of context.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

from .errors import (
    ContextMismatch,
    InputError,
    InsufficientResidueField,
    NonUnit,
    NotTame,
    PreconditionError,
)

# ---------------------------------------------------------------------------
# small F_p[x] helpers used only for modulus generation


def _fp_polymod(poly: list[int], f: list[int], p: int) -> list[int]:
    """Reduce poly modulo the monic polynomial f over F_p."""
    poly = [c % p for c in poly]
    m = len(f) - 1
    for i in range(len(poly) - 1, m - 1, -1):
        c = poly[i]
        if c:
            for j in range(m + 1):
                poly[i - m + j] = (poly[i - m + j] - c * f[j]) % p
    del poly[m:]
    while len(poly) < m:
        poly.append(0)
    return poly


def _fp_polymulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _fp_polymod(prod, f, p)


def _fp_polypowmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1] + [0] * (len(f) - 2)
    base = _fp_polymod(list(a), f, p)
    while e:
        if e & 1:
            result = _fp_polymulmod(result, base, f, p)
        base = _fp_polymulmod(base, base, f, p)
        e >>= 1
    return result


def _fp_polygcd(a: list[int], b: list[int], p: int) -> list[int]:
    def trim(u):
        while u and u[-1] == 0:
            u.pop()
        return u

    a, b = trim([c % p for c in a]), trim([c % p for c in b])
    while b:
        inv_lead = pow(b[-1], -1, p)
        b_monic = [(c * inv_lead) % p for c in b]
        r = list(a)
        while len(r) >= len(b_monic) and trim(r):
            shift = len(r) - len(b_monic)
            c = r[-1]
            for j, fj in enumerate(b_monic):
                r[shift + j] = (r[shift + j] - c * fj) % p
            r = trim(r)
        a, b = b, r
    return a


def _is_irreducible_mod_p(f: list[int], p: int) -> bool:
    """Rabin test: f monic of degree m is irreducible over F_p."""
    m = len(f) - 1
    if m == 1:
        return True
    x = [0, 1]
    xq = _fp_polypowmod(x, p**m, f, p)
    if xq != _fp_polymod(list(x), f, p):
        return False
    for ell in _prime_factors(m):
        h = _fp_polypowmod(x, p ** (m // ell), f, p)
        diff = [(h[i] - (1 if i == 1 else 0)) % p for i in range(m)]
        g = _fp_polygcd(diff, f, p)
        if len(g) - 1 != 0:
            return False
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """First monic degree-m polynomial (lex order on low coefficients)
    irreducible mod p.  Degree 1 always yields x itself."""
    if m == 1:
        return (0, 1)
    for idx in range(p**m):
        coeffs, k = [], idx
        for _ in range(m):
            coeffs.append(k % p)
            k //= p
        f = coeffs + [1]
        if _is_irreducible_mod_p(f, p):
            return tuple(f)
    raise InputError(f"no irreducible polynomial of degree {m} over F_{p} found")


def required_extension_degree(p: int, n_roots: int) -> int:
    """Least m with n_roots | p^m - 1, i.e. the multiplicative order of p mod n_roots."""
    if n_roots <= 0:
        raise InputError("root count must be positive")
    if gcd(p, n_roots) != 1:
        raise NotTame(f"p = {p} divides N = {n_roots}")
    m, acc = 1, p % n_roots
    while acc != 1:
        acc = (acc * p) % n_roots
        m += 1
    return m


class RingContext:
    """Arithmetic context for W(F_{p^m}) / p^n.

    Fields: odd prime p, precision n >= 1, residue degree m >= 1, and a monic
    modulus of degree m over Z/p^n whose reduction mod p is irreducible.
    Instances cache derived data (reduction tables, Frobenius action, roots
    of unity) and are immutable.
    """

    __slots__ = (
        "p",
        "n",
        "m",
        "modulus",
        "pn",
        "q",
        "_xpow",
        "_residue",
        "_frob_matrix",
        "_teich_unit_cache",
        "_root_cache",
        "_gamma_cache",
        "_generator",
    )

    def __init__(self, p: int, n: int, m: int = 1, modulus=None):
        if p < 3 or not _is_prime(p):
            raise InputError(f"p must be an odd prime, got {p}")
        if n < 1:
            raise InputError(f"precision n must be >= 1, got {n}")
        if m < 1:
            raise InputError(f"residue degree m must be >= 1, got {m}")
        self.p, self.n, self.m = p, n, m
        self.pn = p**n
        self.q = p**m
        if modulus is None:
            modulus = default_modulus(p, m)
        modulus = tuple(int(c) % self.pn for c in modulus)
        if len(modulus) != m + 1 or modulus[m] != 1:
            raise InputError("modulus must be monic of degree m")
        if not _is_irreducible_mod_p([c % p for c in modulus], p):
            raise InputError("modulus must be irreducible mod p")
        self.modulus = modulus
        self._xpow = self._reduction_table()
        self._residue = None
        self._frob_matrix = None
        self._teich_unit_cache = {}
        self._root_cache = {}
        self._gamma_cache = {}
        self._generator = None

    # -- identity ----------------------------------------------------------

    def key(self) -> tuple:
        return (self.p, self.n, self.m, self.modulus)

    def __eq__(self, other) -> bool:
        return isinstance(other, RingContext) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"RingContext(p={self.p}, n={self.n}, m={self.m})"

    def _reduction_table(self) -> list[tuple[int, ...]]:
        """Coefficient vectors of x^k mod (modulus, p^n) for k = 0 .. 2m-2."""
        table = []
        cur = [1] + [0] * (self.m - 1)
        for _ in range(2 * self.m - 1):
            table.append(tuple(cur))
            # multiply by x
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                for j in range(self.m):
                    cur[j] = (cur[j] - top * self.modulus[j]) % self.pn
        return table

    # -- constructors ------------------------------------------------------

    def scalar(self, coeffs) -> "PadicScalar":
        """Coerce an int, an iterable of ints, or a PadicScalar of this context."""
        if isinstance(coeffs, PadicScalar):
            if coeffs.ctx != self:
                raise ContextMismatch(f"{coeffs.ctx!r} vs {self!r}")
            return coeffs
        if isinstance(coeffs, int):
            c = [coeffs % self.pn] + [0] * (self.m - 1)
            return PadicScalar(self, tuple(c))
        coeffs = [int(c) % self.pn for c in coeffs]
        if len(coeffs) > self.m:
            raise InputError(f"scalar needs at most {self.m} coefficients")
        coeffs += [0] * (self.m - len(coeffs))
        return PadicScalar(self, tuple(coeffs))

    def zero(self) -> "PadicScalar":
        return self.scalar(0)

    def one(self) -> "PadicScalar":
        return self.scalar(1)

    def generator(self) -> "PadicScalar":
        """The class of x, a lift of a generator of the residue extension."""
        return self.scalar([0, 1] + [0] * (self.m - 2)) if self.m > 1 else self.one()

    def elements(self):
        """Iterate every element (q^n of them); intended for small contexts."""
        total = self.pn**self.m
        for idx in range(total):
            coeffs, k = [], idx
            for _ in range(self.m):
                coeffs.append(k % self.pn)
                k //= self.pn
            yield PadicScalar(self, tuple(coeffs))

    # -- context derivation -------------------------------------------------

    def residue_context(self) -> "RingContext":
        """The same extension at precision 1, i.e. the residue field F_q."""
        if self._residue is None:
            if self.n == 1:
                self._residue = self
            else:
                self._residue = RingContext(
                    self.p, 1, self.m, tuple(c % self.p for c in self.modulus)
                )
        return self._residue

    def with_precision(self, n: int) -> "RingContext":
        if n == self.n:
            return self
        return RingContext(self.p, n, self.m, tuple(c % self.p**n for c in self.modulus))

    def reduce(self, a: "PadicScalar") -> "PadicScalar":
        """Image in the residue field."""
        a = self.scalar(a)
        res = self.residue_context()
        return res.scalar([c % self.p for c in a.coeffs])

    def lift(self, r: "PadicScalar") -> "PadicScalar":
        """Canonical coefficient-wise lift from the residue field (or any
        lower precision) back to this context."""
        if isinstance(r, PadicScalar):
            if r.ctx.p != self.p or r.ctx.m != self.m:
                raise ContextMismatch("lift across incompatible contexts")
            return self.scalar([c % self.pn for c in r.coeffs])
        return self.scalar(r)

    # -- arithmetic core ----------------------------------------------------

    def _mul_coeffs(self, a: tuple, b: tuple) -> tuple:
        m, pn = self.m, self.pn
        if m == 1:
            return ((a[0] * b[0]) % pn,)
        conv = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    conv[i + j] += ai * bj
        out = list(conv[:m])
        for k in range(m, 2 * m - 1):
            ck = conv[k]
            if ck:
                red = self._xpow[k]
                for j in range(m):
                    out[j] += ck * red[j]
        return tuple(c % pn for c in out)

    def teichmuller(self, r) -> "PadicScalar":
        """Multiplicative lift of a residue-field element.

        Satisfies t^q = t exactly; nonzero inputs give (q-1)-st roots of unity.
        """
        res = self.residue_context()
        if isinstance(r, PadicScalar):
            if r.ctx == self:
                rbar = self.reduce(r)
            elif r.ctx == res:
                rbar = r
            else:
                raise ContextMismatch("teichmuller input from a foreign context")
        else:
            rbar = res.scalar(r)
        key = rbar.coeffs
        cached = self._teich_unit_cache.get(key)
        if cached is not None:
            return cached
        y = self.lift(rbar)
        for _ in range(self.n - 1):
            y = y**self.q
        self._teich_unit_cache[key] = y
        return y

    def frobenius_matrix(self) -> list[tuple[int, ...]]:
        """Matrix of the Frobenius lift on coefficient vectors (column j is
        sigma(x)^j).  Sigma is the unique ring endomorphism reducing to the
        p-power map; on the class of x it is the Hensel root of the modulus
        through x^p."""
        if self._frob_matrix is None:
            if self.m == 1:
                self._frob_matrix = [(1,)]
            else:
                sigma_x = self._frobenius_generator_image()
                cols = []
                power = self.one()
                for _ in range(self.m):
                    cols.append(power.coeffs)
                    power = power * sigma_x
                self._frob_matrix = cols
        return self._frob_matrix

    def _frobenius_generator_image(self) -> "PadicScalar":
        # Newton-lift the root of the modulus that reduces to x^p.
        f = [self.scalar(c) for c in self.modulus]
        fprime = [self.scalar((j + 1) * self.modulus[j + 1]) for j in range(self.m)]
        y = self.generator() ** self.p

        def ev(poly, t):
            acc = self.zero()
            for c in reversed(poly):
                acc = acc * t + c
            return acc

        for _ in range(max(1, self.n.bit_length() + 1)):
            fy = ev(f, y)
            if fy.is_zero():
                break
            y = y - fy * ev(fprime, y).inverse()
        assert ev(f, y).is_zero()
        return y

    def frobenius(self, a: "PadicScalar") -> "PadicScalar":
        """The canonical Frobenius lift applied to a scalar."""
        a = self.scalar(a)
        if self.m == 1:
            return a
        cols = self.frobenius_matrix()
        out = [0] * self.m
        for j, aj in enumerate(a.coeffs):
            if aj:
                col = cols[j]
                for i in range(self.m):
                    out[i] += aj * col[i]
        return self.scalar(out)

    def _residue_generator(self) -> "PadicScalar":
        """Deterministic generator of F_q^* (smallest by coefficient index)."""
        if self._generator is not None:
            return self._generator
        res = self.residue_context()
        order = self.q - 1
        factors = _prime_factors(order) if order > 1 else []
        idx = 1
        while True:
            idx += 1
            coeffs, k = [], idx
            for _ in range(self.m):
                coeffs.append(k % self.p)
                k //= self.p
            if idx >= self.q:
                raise InputError("failed to find residue-field generator")
            g = res.scalar(coeffs)
            if g.is_zero():
                continue
            if all((g ** (order // ell)).coeffs != res.one().coeffs for ell in factors):
                self._generator = g
                return g

    def nth_roots_of_unity(self, n_roots: int) -> list["PadicScalar"]:
        """All N-th roots of unity as Teichmuller lifts, in power order
        [1, z, z^2, ...].  Requires gcd(N, p) = 1 and N | q - 1."""
        if n_roots < 1:
            raise InputError("N must be positive")
        if gcd(n_roots, self.p) != 1:
            raise NotTame(f"p = {self.p} divides N = {n_roots}")
        cached = self._root_cache.get(n_roots)
        if cached is not None:
            return list(cached)
        if (self.q - 1) % n_roots != 0:
            need = required_extension_degree(self.p, n_roots)
            raise InsufficientResidueField(
                f"N = {n_roots} does not divide q - 1 = {self.q - 1}; "
                f"use residue degree m divisible by {need}"
            )
        if n_roots == 1:
            roots = [self.one()]
        else:
            g = self._residue_generator()
            zbar = g ** ((self.q - 1) // n_roots)
            zeta = self.teichmuller(zbar)
            roots, cur = [self.one()], self.one()
            for _ in range(n_roots - 1):
                cur = cur * zeta
                roots.append(cur)
        self._root_cache[n_roots] = tuple(roots)
        return list(roots)

    def divided_power_factor(self, k: int) -> "PadicScalar":
        """The scalar p^k / k! in W_n, exact: with e = v_p(k!) and
        k! = p^e u, this is p^(k-e) * u^(-1)."""
        if k < 0:
            raise InputError("k must be nonnegative")
        cached = self._gamma_cache.get(k)
        if cached is None:
            e, fact = 0, 1
            for i in range(2, k + 1):
                fact *= i
            while fact % self.p == 0 and fact > 1:
                # exact p-adic valuation of k!
                e += 1
                fact //= self.p
            if k - e >= self.n:
                cached = self.zero()
            else:
                unit_inv = pow(fact % self.pn, -1, self.pn)
                cached = self.scalar((self.p ** (k - e)) * unit_inv)
            self._gamma_cache[k] = cached
        return cached

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "m": self.m, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> "RingContext":
        try:
            return cls(
                int(obj["p"]),
                int(obj["n"]),
                int(obj.get("m", 1)),
                obj.get("modulus"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad ring context: {exc}") from exc


class PadicScalar:
    """An element of W(F_{p^m}) / p^n as a coefficient tuple over Z/p^n."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: RingContext, coeffs: tuple[int, ...]):
        self.ctx = ctx
        self.coeffs = coeffs

    def _coerce(self, other) -> "PadicScalar":
        if isinstance(other, PadicScalar):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"{other.ctx!r} vs {self.ctx!r}")
            return other
        if isinstance(other, int):
            return self.ctx.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        pn = self.ctx.pn
        return PadicScalar(
            self.ctx, tuple((a + b) % pn for a, b in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        pn = self.ctx.pn
        return PadicScalar(self.ctx, tuple((-a) % pn for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        pn = self.ctx.pn
        return PadicScalar(
            self.ctx, tuple((a - b) % pn for a, b in zip(self.coeffs, other.coeffs))
        )

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return PadicScalar(self.ctx, self.ctx._mul_coeffs(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ctx.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ctx.scalar(other)
        return (
            isinstance(other, PadicScalar)
            and other.ctx == self.ctx
            and other.coeffs == self.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.ctx.key(), self.coeffs))

    def __repr__(self) -> str:
        if self.ctx.m == 1:
            return f"W({self.coeffs[0]} mod {self.ctx.p}^{self.ctx.n})"
        return f"W({list(self.coeffs)} mod {self.ctx.p}^{self.ctx.n})"

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_unit(self) -> bool:
        return any(c % self.ctx.p != 0 for c in self.coeffs)

    def valuation(self) -> int:
        """Largest e <= n with p^e dividing this element; the zero element
        returns n, to be read as "at least n" at this precision."""
        if self.is_zero():
            return self.ctx.n
        v = self.ctx.n
        for c in self.coeffs:
            if c:
                e = 0
                while c % self.ctx.p == 0:
                    c //= self.ctx.p
                    e += 1
                v = min(v, e)
        return v

    def inverse(self) -> "PadicScalar":
        """Newton inversion from the residue-field inverse."""
        if not self.is_unit():
            raise NonUnit(f"{self!r} has positive valuation")
        ctx = self.ctx
        res = ctx.residue_context()
        rbar = ctx.reduce(self) if ctx.n > 1 else self
        b = ctx.lift(rbar ** (ctx.q - 2)) if ctx.q > 2 else ctx.one()
        # each step doubles the number of correct digits
        steps = max(1, (ctx.n - 1).bit_length() + 1)
        two = ctx.scalar(2)
        for _ in range(steps):
            b = b * (two - self * b)
        assert (self * b) == ctx.one()
        return b

    def exact_div_p(self, k: int = 1) -> "PadicScalar":
        """Divide the canonical representative by p^k.

        Requires valuation >= k.  The result is canonical mod p^(n-k); it is
        returned in the same context with the representative-level quotient.
        """
        if k == 0:
            return self
        pk = self.ctx.p**k
        if any(c % pk for c in self.coeffs):
            raise ValueError(f"element has valuation < {k}")
        return PadicScalar(self.ctx, tuple(c // pk for c in self.coeffs))

    def frobenius(self) -> "PadicScalar":
        return self.ctx.frobenius(self)

    def reduce(self) -> "PadicScalar":
        return self.ctx.reduce(self)

    def centered(self) -> int | None:
        """Unique representative in (-p^n/2, p^n/2] when the element lies in
        the prime subring Z/p^n; None otherwise."""
        if any(c for c in self.coeffs[1:]):
            return None
        c, pn = self.coeffs[0], self.ctx.pn
        return c if c <= pn // 2 else c - pn

    def to_json(self) -> list[int]:
        return list(self.coeffs)


@lru_cache(maxsize=None)
def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True
