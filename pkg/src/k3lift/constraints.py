"""Arithmetic gates: Euler phi, tameness, uniqueness orders, prime scans.

Pure integer arithmetic with no ring-context dependencies.  The uniqueness
set lists the eleven automorphism orders for which a purely non-symplectic
action pins down the surface uniquely; the scan checks the bound
phi(p + 1) > 21 for primes p > 60 over a finite range rather than assuming
it.
"""

from __future__ import annotations

from .errors import InputError

UNIQUENESS_ORDERS = (13, 17, 19, 25, 27, 32, 33, 40, 44, 50, 66)

TAME_THRESHOLD = 11        # p > 11: every finite-order automorphism is tame
WEAKLY_TAME_THRESHOLD = 23  # p >= 23: finite height implies weakly tame


def euler_phi(n: int) -> int:
    """Euler totient by trial-division factorization."""
    n = int(n)
    if n < 1:
        raise InputError("euler_phi needs a positive integer")
    out = 1
    rest = n
    d = 2
    while d * d <= rest:
        if rest % d == 0:
            power = 1
            while rest % d == 0:
                rest //= d
                power *= d
            out *= power - power // d
        d += 1 if d == 2 else 2
    if rest > 1:
        out *= rest - 1
    return out


def is_prime(n: int) -> bool:
    n = int(n)
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_up_to(limit: int) -> list[int]:
    """Primes <= limit by sieve."""
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, flag in enumerate(sieve) if flag]


def tameness(p: int, n: int) -> str:
    """"tame" when p does not divide the order N, else "wild"."""
    if not is_prime(p) or p == 2:
        raise InputError("p must be an odd prime")
    if n < 1:
        raise InputError("order must be a positive integer")
    return "tame" if n % p != 0 else "wild"


def surface_thresholds(p: int) -> dict:
    """The two prime thresholds controlling tameness of K3 automorphisms.

    For p > 11 every finite-order automorphism is tame (an order divisible
    by p would force phi(p) = p - 1 > 21 to fit in a rank-21 action); for
    p >= 23 every finite-height surface is weakly tame.
    """
    if not is_prime(p) or p == 2:
        raise InputError("p must be an odd prime")
    return {
        "p": p,
        "all_automorphisms_tame": p > TAME_THRESHOLD,
        "finite_height_weakly_tame": p >= WEAKLY_TAME_THRESHOLD,
    }


def unique_order_check(n: int, p: int) -> dict:
    """Membership of N in the uniqueness set plus the good-reduction gate.

    The uniqueness statement transfers to characteristic p when p does not
    divide 2N.  Order 66 additionally admits a direct uniqueness statement
    for every p outside {2, 3}, noted separately.
    """
    n = int(n)
    p = int(p)
    if n < 1 or not is_prime(p):
        raise InputError("need a positive order and a prime p")
    member = n in UNIQUENESS_ORDERS
    good = (2 * n) % p != 0
    report = {
        "order": n,
        "p": p,
        "member": member,
        "phi": euler_phi(n),
        "good_reduction": good,
        "uniqueness_applies": member and good,
    }
    if n == 66:
        report["order_66_direct"] = p not in (2, 3)
    return report


def phi_bound_scan(p_max: int) -> list[dict]:
    """phi(p + 1) for every prime p <= p_max, flagged against the bound 21.

    Primes at most 60 are included for contrast (phi(60) = 16 at p = 59);
    the claim under scan is that phi(p + 1) > 21 for every prime p > 60.
    """
    if p_max < 61:
        raise InputError("scan range must reach past 60")
    return [
        {"p": p, "phi_p_plus_1": euler_phi(p + 1), "exceeds_21": euler_phi(p + 1) > 21}
        for p in primes_up_to(p_max)
    ]
