"""Elementary arithmetic helpers: primes, prime powers, Legendre symbols,
and the explicit divisor-function majorant used for Dirichlet tail bounds.
"""

from __future__ import annotations

import math
from functools import lru_cache


def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit, by a byte sieve."""
    if limit < 2:
        return []
    sieve = bytearray(b"\x01") * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, int(limit**0.5) + 1):
        if sieve[p]:
            start = p * p
            sieve[start : limit + 1 : p] = b"\x00" * ((limit - start) // p + 1)
    return [i for i, flag in enumerate(sieve) if flag]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power_decomposition(n: int) -> tuple[int, int] | None:
    """Return (p, e) with n = p**e, or None if n is not a prime power."""
    if n < 2:
        return None
    for p in range(2, int(n**0.5) + 1):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            return (p, e) if n == 1 else None
    return (n, 1)  # n itself prime


def prime_powers(limit: int) -> list[int]:
    """All prime powers p**e <= limit in increasing order."""
    out = []
    for p in sieve_primes(limit):
        q = p
        while q <= limit:
            out.append(q)
            q *= p
    out.sort()
    return out


def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol (a|p) for an odd prime p, via Euler's criterion."""
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


@lru_cache(maxsize=None)
def divisor_bound_constant(r: int, eps: float = 0.25) -> float:
    """Explicit C with d_r(n) <= C * n**eps for all n >= 1.

    d_r is multiplicative with d_r(p**e) = binom(e+r-1, r-1), so
    C = prod_p max(1, sup_e binom(e+r-1, r-1) * p**(-e*eps)); each local
    factor is 1 once p**eps outgrows the polynomial, and factors decrease
    in p, so the product is finite and the loop below terminates.
    """
    if r < 1:
        raise ValueError("r must be a positive integer")
    c = 1.0
    p = 2
    while True:
        best = 0.0
        e = 1
        # The local sup: polynomial growth against p**(e*eps); scan until the
        # terms have clearly turned over, with a hard cap as a safety net.
        falling = 0
        while e < 10000:
            term = math.comb(e + r - 1, r - 1) * p ** (-e * eps)
            if term > best:
                best = term
                falling = 0
            else:
                falling += 1
                if falling > 8 * r:
                    break
            e += 1
        if best <= 1.0:
            break
        c *= best
        p += 1
        while not is_prime(p):
            p += 1
    return c
