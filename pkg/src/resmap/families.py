"""Constructive families of one-class and class-permuting maps.

Each predictor turns run/pattern data for a prime into explicit claims
about a map A*x^k mod p: that it sends a class into a single class, is
the pointwise identity on a class, fixes a class as a set, or permutes
all classes.  Predictors never verify themselves: `verify` replays every
claim through the exact classifier machinery, which knows nothing about
the construction formulas.

Family ids: EX13 (square-root maps, generic two-class behavior), T22
(coefficient-2 maps at pattern primes), T23 (runs starting at 1), T24
(central runs), T25 (runs around p/3), T26 (general runs), T27 (cubic
runs), T28 (near-n primes with a symmetric symbol condition).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import gcd

from .classmap import PowerMap, apply, classify, partition
from .modarith import (
    abs_least_residue,
    legendre,
    legendre_table,
    mod_inv,
    primes_up_to,
    require_odd_prime,
)
from .runs import central_run, cubic_central_run, third_runs

CLAIM_ONE_CLASS = "one_class"  # f(I_i) subset of I_j
CLAIM_IDENTITY = "identity"  # f(x) = x on I_i
CLAIM_SET_FIX = "set_fix"  # f(I_i) = I_i
CLAIM_CLASS_PERM = "class_perm"  # f permutes the classes
CLAIM_TWO_CLASSES = "two_classes"  # f(I_i) meets exactly {i, p-i mod n}


@dataclass(frozen=True)
class Claim:
    kind: str
    a: int
    k: int
    i: int | None = None
    j: int | None = None


@dataclass(frozen=True)
class FamilyInstance:
    family: str
    p: int
    n: int
    params: tuple[tuple[str, int], ...]
    claims: tuple[Claim, ...]
    verified: bool | None = None
    notes: tuple[str, ...] = ()

    def param(self, name: str) -> int:
        for key, val in self.params:
            if key == name:
                return val
        raise KeyError(name)


def _check_claim(claim: Claim, p: int, n: int) -> bool:
    f = PowerMap(p, claim.a, claim.k)
    part = partition(p, n)
    if claim.kind == CLAIM_IDENTITY:
        return all(apply(f, x) == x for x in part.elements(claim.i))
    if claim.kind == CLAIM_ONE_CLASS:
        return all(apply(f, x) % n == claim.j for x in part.elements(claim.i))
    if claim.kind == CLAIM_SET_FIX:
        return all(apply(f, x) % n == claim.i for x in part.elements(claim.i))
    if claim.kind == CLAIM_TWO_CLASSES:
        seen = {apply(f, x) % n for x in part.elements(claim.i)}
        return seen == {claim.i % n, (p - claim.i) % n} and len(seen) == 2
    if claim.kind == CLAIM_CLASS_PERM:
        return classify(f, n).is_type_iia
    raise ValueError(f"unknown claim kind {claim.kind!r}")


def verify(instance: FamilyInstance) -> FamilyInstance:
    """Replay every claim through the classifier; returns a verified copy."""
    ok = all(_check_claim(c, instance.p, instance.n) for c in instance.claims)
    return replace(instance, verified=ok)


# ---------------------------------------------------------------------------
# EX13: f = ±x^((p+1)/2) hits I_i and its reflection, fixing one class
# when n is odd.


def ex13_predict(p: int, n: int, sign: int = 1) -> FamilyInstance:
    """Square-root-map class behavior: one fixed class (n odd) and, for
    p > (n+1)^2, exactly two target classes everywhere else."""
    p = require_odd_prime(p)
    if sign not in (1, -1):
        raise ValueError("sign must be +-1")
    if p % 4 != 1:
        raise ValueError(f"p={p} is not 1 mod 4")
    if not 2 <= n < p:
        raise ValueError(f"modulus n={n} out of range")
    k = (p + 1) // 2
    claims = []
    fixed = None
    if n % 2 == 1:
        fixed = mod_inv(2, n) * p % n
        claims.append(Claim(CLAIM_SET_FIX, sign, k, i=fixed))
    if p > (n + 1) ** 2:
        for i in range(n):
            if i == fixed:
                continue
            claims.append(Claim(CLAIM_TWO_CLASSES, sign, k, i=i))
    if not claims:
        raise ValueError(
            f"p={p} <= (n+1)^2 with n even: no claim available at this size"
        )
    return FamilyInstance(
        "EX13", p, n, (("sign", sign),), tuple(claims)
    )


# ---------------------------------------------------------------------------
# T22: f = 2x^((p+1)/2) at primes whose symbol at every small prime q
# matches the sign of q mod 4.


def pattern_check_22(p: int, t: int) -> bool:
    """True iff (p|q) = +1 for q = 1 mod 4 and -1 for q = 3 mod 4,
    for every prime 3 <= q <= 4t-1."""
    p = require_odd_prime(p)
    if p % 4 != 1:
        raise ValueError(f"p={p} is not 1 mod 4")
    for q in primes_up_to(4 * t - 1)[1:]:
        want = 1 if q % 4 == 1 else -1
        if legendre(p, q) != want:
            return False
    return True


def pattern_t_max(p: int) -> int:
    """Largest t with the mod-4 symbol pattern holding up to 4t-1."""
    for q in primes_up_to(4000)[1:]:
        want = 1 if q % 4 == 1 else -1
        if legendre(p, q) != want:
            return (q - 1) // 4
    raise AssertionError(f"pattern unbroken below 4000 for p={p}")


def find_pattern_primes(p_limit: int, t_min: int) -> list[tuple[int, int]]:
    """All p = 1 mod 4 below p_limit whose maximal pattern t is >= t_min."""
    out = []
    for p in primes_up_to(p_limit - 1):
        if p % 4 != 1 or p < 5:
            continue
        t = pattern_t_max(p)
        if t >= t_min:
            out.append((p, t))
    return out


def t22_range(p: int, t: int) -> tuple[float, float]:
    """Admissible modulus interval [2p/(4t+1), 2p/(4t-1)) for t22."""
    return 2 * p / (4 * t + 1), 2 * p / (4 * t - 1)


def t22_smallest_n(p: int, t: int) -> int:
    """Smallest n = 2 mod 4 in the admissible interval."""
    lo, hi = t22_range(p, t)
    n = int(lo)
    while n < lo or n % 4 != 2:
        n += 1
    if n >= hi:
        raise ValueError(f"no n = 2 mod 4 in [{lo}, {hi}) for p={p}, t={t}")
    return n


def t22_predict(p: int, t: int, n: int) -> FamilyInstance:
    """Two one-class claims for f = 2x^((p+1)/2) at a pattern prime."""
    p = require_odd_prime(p)
    if not pattern_check_22(p, t):
        raise ValueError(f"p={p} lacks the symbol pattern up to 4t-1={4 * t - 1}")
    if n % 4 != 2:
        raise ValueError(f"n={n} must be 2 mod 4")
    lo, hi = t22_range(p, t)
    if not lo <= n < hi:
        raise ValueError(f"n={n} outside [{lo:.3f}, {hi:.3f})")
    k = (p + 1) // 2
    chi_n = legendre(n, p)
    claims = []
    for c, first_branch_doubles in ((4 * t - 1, True), (4 * t - 3, False)):
        num = 2 * p - c * n
        if num % 4 != 0:  # cannot happen for n = 2 mod 4; guard anyway
            raise ArithmeticError("non-integral class index")
        i = num // 4
        doubles = (chi_n == -1) if first_branch_doubles else (chi_n == 1)
        j = (2 * i) % n if doubles else (p - 2 * i) % n
        claims.append(Claim(CLAIM_ONE_CLASS, 2, k, i=i, j=j))
    return FamilyInstance("T22", p, n, (("t", t), ("chi_n", chi_n)), tuple(claims))


# ---------------------------------------------------------------------------
# T23: a run of residues starting at 1 makes chi(n|p) x^((p+1)/2) the
# identity on I_0 for every large enough modulus.


def t23_predict(p: int, t: int, n: int) -> FamilyInstance:
    p = require_odd_prime(p)
    if p % 8 != 1:
        raise ValueError(f"p={p} is not 1 mod 8")
    if not 2 <= n < p:
        raise ValueError(f"n={n} out of range (need n < p)")
    for q in primes_up_to(t)[1:]:
        if legendre(q, p) != 1:
            raise ValueError(f"(q|p) != 1 at q={q} <= t={t}")
    if n <= (p - 1) / (t + 1):
        raise ValueError(f"n={n} not above (p-1)/(t+1) = {(p - 1) / (t + 1):.3f}")
    a = legendre(n, p)
    return FamilyInstance(
        "T23", p, n, (("t", t),),
        (Claim(CLAIM_IDENTITY, a, (p + 1) // 2, i=0),),
    )


# ---------------------------------------------------------------------------
# T24: symmetric run of length t = 2T around p/2.


def t24_predict(p: int, T: int, n: int) -> FamilyInstance:
    p = require_odd_prime(p)
    if central_run(p) < T:
        raise ValueError(f"central run of p={p} is shorter than T={T}")
    t = 2 * T
    a = (p + 1) // 2 - T
    if n % 2 == 0:
        if not 2 * p / (t + 1) < n < 2 * p / (t - 1):
            raise ValueError(f"even n={n} outside (2p/(t+1), 2p/(t-1))")
        i = a * n - (n // 2 - 1) * p
    else:
        if not p / (t + 1) < n < p / (t - 1):
            raise ValueError(f"odd n={n} outside (p/(t+1), p/(t-1))")
        i = a * n - ((n - 1) // 2) * p
    if not 0 <= i < n:
        raise ValueError(f"derived class index {i} outside 0..{n - 1}")
    coeff = legendre(2 * n, p)
    return FamilyInstance(
        "T24", p, n, (("T", T), ("a", a)),
        (Claim(CLAIM_IDENTITY, coeff, (p + 1) // 2, i=i),),
    )


# ---------------------------------------------------------------------------
# T25: run around p/3 (and its reflection around 2p/3).


def t25_predict(p: int, t1: int, t2: int, n: int) -> FamilyInstance:
    """All admitted branch claims for f = chi(3n|p) x^((p+1)/2).

    Branch selection depends on n mod 3 and on how T1 compares with T2;
    when a comparison is an equality both branches are emitted.
    """
    p = require_odd_prime(p)
    real_t1, real_t2, delta = third_runs(p)
    if real_t1 < t1 or real_t2 < t2:
        raise ValueError(f"run around p/3 of p={p} shorter than ({t1},{t2})")
    a1 = (p - delta) // 3 - (t1 - 1)
    a2 = (2 * p + delta) // 3 - t2
    k = (p + 1) // 2
    coeff = legendre(3 * n, p)
    branches = []
    m = n % 3
    if m == 0:
        if 3 * p / (3 * t1 + delta) < n < 3 * p / (3 * t1 + delta - 3):
            branches.append(("a1", a1 * n - (n // 3 - 1) * p))
        if 3 * p / (3 * t2 + 3 - delta) < n < 3 * p / (3 * t2 - delta):
            branches.append(("a2", a2 * n - (2 * n // 3 - 1) * p))
    elif m == 2:
        if t1 <= 2 * t2 + 2 - delta and 2 * p / (3 * t1 + delta) < n < 2 * p / (3 * t1 + delta - 3):
            branches.append(("a1", a1 * n - ((n - 2) // 3) * p))
        if t1 >= 2 * t2 + 2 - delta and p / (3 * t2 + 3 - delta) < n < p / (3 * t2 - delta):
            branches.append(("a2", a2 * n - ((2 * n - 1) // 3) * p))
    else:
        if t2 >= 2 * t1 - 1 + delta and p / (3 * t1 + delta) < n < p / (3 * t1 + delta - 3):
            branches.append(("a1", a1 * n - ((n - 1) // 3) * p))
        if t2 <= 2 * t1 - 1 + delta and 2 * p / (3 * t2 + 3 - delta) < n < 2 * p / (3 * t2 - delta):
            branches.append(("a2", a2 * n - ((2 * n - 2) // 3) * p))
    claims = []
    notes = []
    for tag, i in branches:
        if not 0 <= i < n:
            raise ValueError(f"branch {tag}: derived index {i} outside 0..{n - 1}")
        claims.append(Claim(CLAIM_IDENTITY, coeff, k, i=i))
        notes.append(f"branch {tag}: i={i}")
    if not claims:
        raise ValueError(f"no branch admits n={n} for p={p} (T1={t1}, T2={t2})")
    return FamilyInstance(
        "T25", p, n,
        (("T1", t1), ("T2", t2), ("delta", delta), ("a1", a1), ("a2", a2)),
        tuple(claims), notes=tuple(notes),
    )


# ---------------------------------------------------------------------------
# T26: any run [a, a+t) with a >= 2.


def t26_u_range(a: int, t: int) -> tuple[float, float]:
    s, r = divmod(a, t)
    return s + 1 - (a + t) / 2, (s + 1 - r) / (t + 1)  # open interval (lo, hi)


def t26_predict(p: int, a: int, t: int, u: int, n: int) -> FamilyInstance:
    """Identity-on-I_i claims from a general run; both read-offs of the
    admissible interval are emitted when they admit n."""
    p = require_odd_prime(p)
    if a < 2:
        raise ValueError("run must start at a >= 2")
    chi = legendre_table(p)
    if a + t - 1 >= p or len({int(chi[x]) for x in range(a, a + t)}) != 1:
        raise ValueError(f"[{a}, {a + t}) is not a constant-symbol interval mod {p}")
    s, r = divmod(a, t)
    lo_u, hi_u = t26_u_range(a, t)
    if not lo_u < u < hi_u:
        raise ValueError(f"u={u} outside ({lo_u:.3f}, {hi_u:.3f})")
    su = s - u
    k = (p + 1) // 2
    coeff = legendre(a * n % p, p)
    claims = []
    notes = []
    if max((su + 1) * p / (a + t), su * p / a) <= n <= su * p / (a - 1):
        i = n * a - su * p
        i = i % n if i == n else i
        if not 0 <= i < n:
            raise ValueError(f"first read-off gives index {i} outside 0..{n - 1}")
        claims.append(Claim(CLAIM_IDENTITY, coeff, k, i=i))
        notes.append(f"start read-off: i={i}")
    if (su + 1) * p / (a + t) <= n <= min(su / (a - 1), (su + 1) / (a + t - 1)) * p:
        i = (su + 1) * p - n * (a + t - 1)
        i = i % n if i == n else i
        if not 0 <= i < n:
            raise ValueError(f"end read-off gives index {i} outside 0..{n - 1}")
        claims.append(Claim(CLAIM_IDENTITY, coeff, k, i=i))
        notes.append(f"end read-off: i={i}")
    if not claims:
        raise ValueError(f"n={n} outside both admissible intervals")
    return FamilyInstance(
        "T26", p, n, (("a", a), ("t", t), ("u", u), ("s", s), ("r", r)),
        tuple(claims), notes=tuple(notes),
    )


# ---------------------------------------------------------------------------
# T27: central run of the cubic power x^((p-1)/3).


def t27_predict(p: int, T: int, n: int, j_filter: tuple[int, ...] | None = None) -> FamilyInstance:
    """Exponent-shifted identity/set-fix claims from a central cubic run.

    k = j(p-1)/3 + 1 (j = 1, 2) gives the identity on I_i; for odd n,
    k = j(p-1)/6 + 1 (j = 1, 5) fixes I_i as a set.  Exponents sharing a
    factor with p-1 are skipped with a note.
    """
    p = require_odd_prime(p)
    if p % 3 != 1:
        raise ValueError(f"p={p} is not 1 mod 3")
    if cubic_central_run(p) < T:
        raise ValueError(f"central cubic run of p={p} shorter than T={T}")
    t = 2 * T
    a = (p + 1) // 2 - T
    if n % 2 == 0:
        if not 2 * p / (t + 1) < n < 2 * p / (t - 1):
            raise ValueError(f"even n={n} outside (2p/(t+1), 2p/(t-1))")
        i = a * n - (n // 2 - 1) * p
    else:
        if not p / (t + 1) < n < p / (t - 1):
            raise ValueError(f"odd n={n} outside (p/(t+1), p/(t-1))")
        i = a * n - ((n - 1) // 2) * p
    if not 0 <= i < n:
        raise ValueError(f"derived class index {i} outside 0..{n - 1}")
    an = a * n % p
    claims = []
    notes = []
    specs = [((p - 1) // 3, (1, 2), CLAIM_IDENTITY)]
    if n % 2 == 1:
        specs.append(((p - 1) // 6, (1, 5), CLAIM_SET_FIX))
    for unit, js, kind in specs:
        for j in js:
            if j_filter is not None and j not in j_filter:
                continue
            k = j * unit + 1
            if gcd(k, p - 1) != 1:
                notes.append(f"k={k} skipped: gcd(k, p-1) > 1")
                continue
            coeff = abs_least_residue(pow(an, (2 * (k - 1)) % (p - 1), p), p)
            claims.append(Claim(kind, coeff, k, i=i))
    if not claims:
        raise ValueError("every candidate exponent shares a factor with p-1")
    return FamilyInstance(
        "T27", p, n, (("T", T), ("a", a), ("i", i)), tuple(claims), notes=tuple(notes)
    )


# ---------------------------------------------------------------------------
# T28: class permutations for primes just above the modulus.


def t28_check(p: int, n: int) -> bool:
    """True iff p = n + w (2 <= w < n), p = 1 mod 4, and the symbol is
    symmetric on the two-element classes: (y|p) = (w-y|p) for 1 <= y < w/2."""
    p = require_odd_prime(p)
    w = p - n
    if not 2 <= w < n:
        raise ValueError(f"need p = n + w with 2 <= w < n; got w={w}")
    if p % 4 != 1:
        return False
    return all(legendre(y, p) == legendre(w - y, p) for y in range(1, (w + 1) // 2))


def t28_extra_exponents(p: int, n: int) -> tuple[int, ...]:
    """Quarter-power exponents that also permute the classes for special w.

    For p = 1 mod 24 with w = 4 (when 3^((p-1)/4) = 1) or w = 5 (when
    2^((p-1)/4) = 3^((p-1)/4)), x^((p+3)/4) and x^((3p+1)/4) join in.
    """
    w = p - n
    if p % 24 != 1 or w not in (4, 5):
        return ()
    e = (p - 1) // 4
    hold = pow(3, e, p) == 1 if w == 4 else pow(2, e, p) == pow(3, e, p)
    if not hold:
        return ()
    return tuple(
        k for k in ((p + 3) // 4, (3 * p + 1) // 4) if gcd(k, p - 1) == 1
    )


def t28_predict(p: int, n: int) -> FamilyInstance:
    if not t28_check(p, n):
        raise ValueError(f"(p={p}, n={n}) fails the symmetric-symbol condition")
    ks = ((p + 1) // 2,) + t28_extra_exponents(p, n)
    claims = tuple(Claim(CLAIM_CLASS_PERM, 1, k) for k in ks)
    notes = ()
    if len(ks) > 1:
        notes = (f"extra exponents {ks[1:]}",)
    return FamilyInstance("T28", p, n, (("w", p - n),), claims, notes=notes)


def t28_scan(n_lo: int, n_hi: int, w_min: int = 2) -> list[FamilyInstance]:
    """Verified class-permutation instances over n in [n_lo, n_hi].

    w_min=4 reproduces the bundled near-n reference table, which leaves
    out the always-present p = n+2 and p = n+3 cases.
    """
    out = []
    for n in range(n_lo, n_hi + 1):
        for p in primes_up_to(2 * n - 1):
            if p < n + max(2, w_min) or p % 4 != 1:
                continue
            if t28_check(p, n):
                out.append(verify(t28_predict(p, n)))
    return out


__all__ = [
    "CLAIM_CLASS_PERM",
    "CLAIM_IDENTITY",
    "CLAIM_ONE_CLASS",
    "CLAIM_SET_FIX",
    "CLAIM_TWO_CLASSES",
    "Claim",
    "FamilyInstance",
    "ex13_predict",
    "find_pattern_primes",
    "pattern_check_22",
    "pattern_t_max",
    "t22_predict",
    "t22_range",
    "t22_smallest_n",
    "t23_predict",
    "t24_predict",
    "t25_predict",
    "t26_predict",
    "t26_u_range",
    "t27_predict",
    "t28_check",
    "t28_extra_exponents",
    "t28_predict",
    "t28_scan",
    "verify",
]
