import random

import numpy as np
import pytest

from resmap.modarith import (
    abs_least_residue,
    factorize,
    iroot,
    is_prime,
    legendre,
    legendre_table,
    mod_inv,
    mod_pow,
    primes_in,
    primes_up_to,
    primitive_root,
    require_odd_prime,
)


def test_mod_pow_examples():
    assert mod_pow(3, 5, 7) == 5
    assert mod_pow(11, 1, 13) == 11
    assert mod_pow(6, 5, 7) == 6  # 6 = -1 mod 7, odd power
    assert mod_pow(0, 0, 7) == 1


def test_mod_pow_rejects_negative_exponent():
    with pytest.raises(ValueError):
        mod_pow(2, -1, 7)


def test_fermat_little_theorem_exhaustive():
    for p in (3, 7, 97, 499, 9973):
        assert all(mod_pow(a, p - 1, p) == 1 for a in range(1, p))


def test_mod_inv_examples():
    assert mod_inv(1, 11) == 1
    assert mod_inv(2, 13) == 7
    assert mod_inv(5, 29) == 6
    with pytest.raises(ValueError):
        mod_inv(0, 11)


def test_mod_inv_involution():
    rng = random.Random(7)
    for p in (13, 101, 4099):
        for _ in range(50):
            a = rng.randrange(1, p)
            assert mod_inv(mod_inv(a, p), p) == a


def test_legendre_examples():
    assert legendre(1, 23) == 1
    assert legendre(2, 29) == -1  # 29 = 5 mod 8
    for p in (5, 13, 29, 101):  # first supplement at p = 1 mod 4
        assert legendre(p - 1, p) == 1
    assert legendre(7, 7) == 0


def test_legendre_multiplicative_exhaustive():
    for p in primes_up_to(499):
        if p < 3:
            continue
        chi = legendre_table(p).astype(np.int64)
        a = np.arange(1, p, dtype=np.int64)
        prod = chi[np.outer(a, a) % p]
        assert np.array_equal(prod, np.outer(chi[a], chi[a]))


def test_legendre_table_matches_euler():
    for p in (7, 13, 101, 997):
        chi = legendre_table(p)
        assert chi[0] == 0
        for a in range(1, p):
            assert int(chi[a]) == legendre(a, p)


def test_abs_least_residue():
    assert abs_least_residue(12, 13) == -1
    assert abs_least_residue(6, 13) == 6
    assert abs_least_residue(-2, 5) == -2
    assert abs_least_residue(20, 13) == -6
    for p in (7, 13, 29):
        for a in range(-2 * p, 2 * p):
            r = abs_least_residue(a, p)
            assert (a - r) % p == 0 and 2 * abs(r) < p


def test_is_prime_table_values():
    assert is_prime(13381)
    assert is_prime(15461)
    assert not is_prime(1)
    assert is_prime(2) and is_prime(3)
    assert not is_prime(0)


def test_is_prime_vs_sieve():
    limit = 200000
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    for m in range(limit + 1):
        assert is_prime(m) == bool(sieve[m]), m


def test_is_prime_large_samples():
    # strong-pseudoprime trouble spots and large values
    for m in (3215031751, 3825123056546413051, 2**61 - 1, 2**62 - 57):
        trial = all(m % d for d in range(2, 10**6)) if m < 10**12 else None
        if trial is not None:
            assert is_prime(m) == trial
    assert is_prime(2**61 - 1)
    assert not is_prime(3215031751)  # pseudoprime to bases 2,3,5,7


def test_primes_ranges():
    assert primes_up_to(10) == [2, 3, 5, 7]
    assert primes_in(10, 20) == [11, 13, 17, 19]
    assert primes_up_to(1) == []


def test_require_odd_prime():
    assert require_odd_prime(13) == 13
    for bad in (2, 9, 1, -7, 2**62 + 1):
        with pytest.raises((ValueError, TypeError)):
            require_odd_prime(bad)


def test_factorize_and_primitive_root():
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert primitive_root(7) == 3
    assert primitive_root(41) == 6
    for p in (5, 13, 101, 12289):
        g = primitive_root(p)
        seen = set()
        acc = 1
        for _ in range(p - 1):
            seen.add(acc)
            acc = acc * g % p
        assert len(seen) == p - 1


def test_iroot_exact():
    assert iroot(27, 3) == 3
    assert iroot(26, 3) == 2
    big = 729 * 10**102 * 2**92
    r = iroot(big, 3)
    assert r**3 <= big < (r + 1) ** 3
    for x in (0, 1, 63, 64, 65, 10**30):
        r = iroot(x, 2)
        assert r * r <= x < (r + 1) ** 2
