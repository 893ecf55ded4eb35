"""Exact modular arithmetic on word-sized primes.

Everything here is a pure function; Python integers keep the arithmetic
exact, and primes are capped below 2**62 so downstream numba kernels can
rely on 64-bit squares never being needed above p < 2**31.
"""

from __future__ import annotations

from math import gcd, isqrt

import numpy as np

PRIME_CAP = 1 << 62

# Deterministic Miller-Rabin witness set, exact for all n < 3.3e24
# (covers the full 64-bit range).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(m: int) -> bool:
    """Deterministic primality test, exact for all 64-bit inputs."""
    if m < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if m % q == 0:
            return m == q
    d = m - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, m)
        if x == 1 or x == m - 1:
            continue
        for _ in range(r - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


def require_odd_prime(p: int) -> int:
    """Validate p as an odd prime below the 2**62 cap; returns p."""
    if not isinstance(p, (int, np.integer)):
        raise TypeError(f"prime must be an int, got {type(p).__name__}")
    p = int(p)
    if p <= 2 or p >= PRIME_CAP or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime below 2**62")
    return p


def mod_pow(base: int, exp: int, p: int) -> int:
    """base**exp mod p for 0 <= base < p, exp >= 0. mod_pow(0, 0, p) == 1."""
    if exp < 0:
        raise ValueError("negative exponent; use mod_inv")
    return pow(base, exp, p)


def mod_inv(a: int, p: int) -> int:
    """Inverse of a mod p; rejects a == 0 mod p."""
    a %= p
    if a == 0:
        raise ValueError("0 has no inverse")
    return pow(a, -1, p)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a|p) in {-1, 0, +1} via the Euler criterion."""
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return -1 if r == p - 1 else 1


def legendre_table(p: int) -> np.ndarray:
    """int8 array chi of length p with chi[x] = (x|p), chi[0] = 0.

    Built by marking squares, O(p); preferred over per-element Euler
    powering whenever a full table is consumed (run censuses).
    """
    chi = np.full(p, -1, dtype=np.int8)
    chi[0] = 0
    x = np.arange(1, (p - 1) // 2 + 1, dtype=np.int64)
    chi[(x * x) % p] = 1
    return chi


def abs_least_residue(a: int, p: int) -> int:
    """The representative of a mod p in the open interval (-p/2, p/2)."""
    r = a % p
    return r - p if 2 * r > p else r


def primes_up_to(limit: int) -> list[int]:
    """All primes <= limit (ascending)."""
    if limit < 2:
        return []
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return [int(v) for v in np.flatnonzero(sieve)]


def primes_in(lo: int, hi: int) -> list[int]:
    """Primes p with lo <= p < hi."""
    return [p for p in primes_up_to(hi - 1) if p >= lo]


def factorize(m: int) -> dict[int, int]:
    """Prime factorization by trial division (adequate for m <= ~10**12)."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def primitive_root(p: int) -> int:
    """Least primitive root mod p."""
    if p == 2:
        return 1
    qs = list(factorize(p - 1))
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise ArithmeticError(f"no primitive root found for {p}")  # unreachable for prime p


def iroot(x: int, r: int) -> int:
    """floor(x ** (1/r)) for nonnegative integer x, exact at any size."""
    if x < 0:
        raise ValueError("negative radicand")
    if x < 2:
        return x
    # Newton iteration on integers from a bit-length upper bound.
    guess = 1 << (-(-x.bit_length() // r))
    while True:
        nxt = ((r - 1) * guess + x // guess ** (r - 1)) // r
        if nxt >= guess:
            break
        guess = nxt
    while guess**r > x:
        guess -= 1
    while (guess + 1) ** r <= x:
        guess += 1
    return guess


__all__ = [
    "PRIME_CAP",
    "abs_least_residue",
    "factorize",
    "gcd",
    "iroot",
    "is_prime",
    "legendre",
    "legendre_table",
    "mod_inv",
    "mod_pow",
    "primes_in",
    "primes_up_to",
    "primitive_root",
    "require_odd_prime",
]
