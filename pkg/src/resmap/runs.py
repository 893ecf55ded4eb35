"""Censuses of consecutive-character runs mod p.

A "run" is a maximal interval [a, a+t) inside 1..p-1 on which the
Legendre symbol (or the cubic power x^((p-1)/3) mod p) is constant.
Long runs are the raw material for the x^((p+1)/2) map families.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .modarith import legendre, legendre_table, primes_up_to, require_odd_prime


@dataclass(frozen=True)
class RunRecord:
    """Maximal interval [a, a+t) of constant character value mod p."""

    p: int
    a: int
    t: int
    value: int

    @property
    def stop(self) -> int:
        return self.a + self.t


def qr_runs(p: int) -> list[RunRecord]:
    """All maximal Legendre runs; disjoint and covering 1..p-1 in order."""
    p = require_odd_prime(p)
    _, recs = kernels.legendre_runs_fast(p, 1)
    return [RunRecord(p, a, t, v) for a, t, v in recs]


def longest_run(p: int) -> RunRecord:
    p = require_odd_prime(p)
    _, recs = kernels.legendre_runs_fast(p, 1)
    a, t, v = max(recs, key=lambda r: r[1])
    return RunRecord(p, a, t, v)


def central_run(p: int) -> int:
    """Half-length T of the symmetric constant run around p/2.

    Requires p = 1 mod 4 (so reflection x -> p-x preserves the symbol and
    the two middle elements share it).  Largest T with the symbol constant
    on [(p+1)/2 - T, (p-1)/2 + T].
    """
    p = require_odd_prime(p)
    if p % 4 != 1:
        raise ValueError(f"p={p} is not 1 mod 4")
    chi = legendre_table(p)
    mid = (p - 1) // 2
    v = chi[mid]
    T = 1
    while mid - T >= 1 and chi[mid - T] == v:
        T += 1
    return T


def central_run_by_primes(p: int) -> int:
    """T via the equivalent condition: (q|p) = 1 for all odd primes q <= 2T-1."""
    p = require_odd_prime(p)
    if p % 4 != 1:
        raise ValueError(f"p={p} is not 1 mod 4")
    for q in primes_up_to(max(100, 4 * p.bit_length() ** 2))[1:]:
        if legendre(q, p) != 1:
            return (q - 1) // 2
    raise AssertionError("no small nonresidue prime found")  # unreachable in range


def third_runs(p: int) -> tuple[int, int, int]:
    """(T1, T2, delta) for the constant run around p/3.

    delta is 1 when p = 1 mod 3, else 2.  T1 is the largest m with
    (3j+delta | p) = 1 for 0 <= j < m; T2 the largest m with
    (3j-delta | p) = 1 for 1 <= j <= m.  The run itself (value (3|p))
    covers [(p-delta)/3 - (T1-1), (p-delta)/3 + T2].
    """
    p = require_odd_prime(p)
    if p % 4 != 1:
        raise ValueError(f"p={p} is not 1 mod 4")
    delta = 1 if p % 3 == 1 else 2
    t1 = 0
    while legendre(3 * t1 + delta, p) == 1:
        t1 += 1
    t2 = 0
    while legendre(3 * (t2 + 1) - delta, p) == 1:
        t2 += 1
    return t1, t2, delta


def third_run_interval_check(p: int) -> bool:
    """Cross-check third_runs against the direct interval definition."""
    t1, t2, delta = third_runs(p)
    c = (p - delta) // 3
    chi3 = legendre(3, p)
    chi = legendre_table(p)
    lo, hi = c - (t1 - 1), c + t2
    if t1 == 0:
        # value at the anchor already differs; the T2-side alone must match
        side = all(chi[c + m] == chi3 for m in range(1, t2 + 1))
        return side and (t2 == 0 or chi[c + t2 + 1] != chi3 if c + t2 + 1 < p else True)
    if any(chi[x] != chi3 for x in range(lo, hi + 1)):
        return False
    left_max = lo - 1 < 1 or chi[lo - 1] != chi3
    right_max = hi + 1 >= p or chi[hi + 1] != chi3
    return left_max and right_max


def cubic_value_table(p: int) -> np.ndarray:
    """x^((p-1)/3) mod p for x = 0..p-1 (requires p = 1 mod 3)."""
    p = require_odd_prime(p)
    if p % 3 != 1:
        raise ValueError(f"p={p} is not 1 mod 3")
    e = (p - 1) // 3
    base = np.arange(p, dtype=np.int64)
    out = np.ones(p, dtype=np.int64)
    out[0] = 0
    b = base.copy()
    while e:
        if e & 1:
            out[1:] = out[1:] * b[1:] % p
        b[1:] = b[1:] * b[1:] % p
        e >>= 1
    return out


def cubic_runs(p: int) -> list[RunRecord]:
    """Maximal runs of constant x^((p-1)/3) mod p over 1..p-1."""
    vals = cubic_value_table(p)[1:]
    change = np.flatnonzero(vals[1:] != vals[:-1])
    starts = np.concatenate(([0], change + 1))
    ends = np.concatenate((change, [p - 2]))
    return [
        RunRecord(p, int(s) + 1, int(e - s + 1), int(vals[s]))
        for s, e in zip(starts, ends)
    ]


def cubic_central_run(p: int) -> int:
    """Half-length T of the constant cubic-power run around p/2."""
    vals = cubic_value_table(p)
    mid = (p - 1) // 2
    v = vals[mid]
    T = 1
    while mid - T >= 1 and vals[mid - T] == v:
        T += 1
    return T


def run_census(
    p_limit: int,
    t_min: int,
    residue_mod4: int | None = None,
    dedup: bool = True,
) -> list[RunRecord]:
    """All runs of length >= t_min over odd primes p < p_limit.

    With dedup=True only the copy with a < p/2 is kept; the reflected
    interval (p-a-t, p-a] always exists with the same length (same value
    for p = 1 mod 4, opposite value for p = 3 mod 4) and is omitted.
    residue_mod4 restricts the prime sweep (the bundled t >= 25 reference
    table covers p = 1 mod 4, where the square-root map families live).
    """
    out = []
    for p in primes_up_to(p_limit - 1):
        if p < 3:
            continue
        if residue_mod4 is not None and p % 4 != residue_mod4:
            continue
        _, recs = kernels.legendre_runs_fast(p, t_min)
        for a, t, v in recs:
            if dedup and 2 * a >= p:
                continue
            out.append(RunRecord(p, a, t, v))
    return out


def hummel_exceptions(p_limit: int) -> list[tuple[int, int]]:
    """(p, longest_t) for primes with a run of length t >= sqrt(p).

    Consecutive constant-character stretches are shorter than sqrt(p)
    for every prime except p = 13, whose four nonresidues 5..8 exceed
    sqrt(13); the sweep makes that boundary explicit.
    """
    bad = []
    for p in primes_up_to(p_limit - 1):
        if p < 3:
            continue
        longest, _ = kernels.legendre_runs_fast(p, p)  # records not needed
        if longest * longest >= p:
            bad.append((p, longest))
    return bad


__all__ = [
    "RunRecord",
    "central_run",
    "central_run_by_primes",
    "cubic_central_run",
    "cubic_runs",
    "cubic_value_table",
    "hummel_exceptions",
    "longest_run",
    "qr_runs",
    "run_census",
    "third_runs",
    "third_run_interval_check",
]
