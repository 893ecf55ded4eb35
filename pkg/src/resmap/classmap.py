"""Monomial permutations of the reduced residues and their class behavior.

A map f(x) = A*x^k mod p acts on I = {1, ..., p-1}; splitting I into the
residue classes I_0..I_{n-1} mod n, `classify` records which classes each
class can reach and derives the exceptional patterns:

  one_class_all   every class lands exactly on itself            ("i")
  class_perm      the classes are permuted                       ("iia")
  fixed_class     some class is mapped onto itself               ("iib")
  one_class       some class lands inside a single class         ("iii")
  missed_class    some (source, target) class pair never occurs  ("iv")
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .modarith import abs_least_residue, legendre, mod_inv, require_odd_prime

TYPE_I = "i"
TYPE_IIA = "iia"
TYPE_IIB = "iib"
TYPE_III = "iii"
TYPE_IV = "iv"


@dataclass(frozen=True)
class PowerMap:
    """The permutation x -> a * x^k mod p of I = {1, ..., p-1}.

    `a` is signed with |a| < p/2; `k` is stored in canonical form
    1 <= k < p-1 with gcd(k, p-1) = 1.  A signed exponent (|k| < (p-1)/2,
    negative k meaning inverse powers) may be passed to the constructor
    and is normalized mod p-1.
    """

    p: int
    a: int
    k: int

    def __post_init__(self):
        p = require_odd_prime(self.p)
        if self.a % p == 0:
            raise ValueError("coefficient divisible by p")
        a = abs_least_residue(self.a, p)
        k = self.k % (p - 1)
        if gcd(k, p - 1) != 1:
            raise ValueError(f"exponent {self.k} shares a factor with p-1={p - 1}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "k", k)

    @property
    def k_signed(self) -> int:
        """Exponent representative with |k| < (p-1)/2."""
        return abs_least_residue(self.k, self.p - 1)

    @property
    def d(self) -> int:
        """gcd(k-1, p-1); controls how evenly the map distributes classes."""
        return gcd(self.k - 1, self.p - 1)

    @property
    def level(self) -> int:
        """L = (p-1)/d, the order of the character group attached to the map."""
        return (self.p - 1) // self.d

    def __call__(self, x: int) -> int:
        return apply(self, x)

    def negated(self) -> "PowerMap":
        """The map with a replaced by -a."""
        return PowerMap(self.p, -self.a, self.k)

    def compose(self, other: "PowerMap") -> "PowerMap":
        """self after other: x -> self(other(x))."""
        if self.p != other.p:
            raise ValueError("maps live over different primes")
        p = self.p
        a = self.a * pow(other.a, self.k, p) % p
        return PowerMap(p, abs_least_residue(a, p), self.k * other.k % (p - 1))

    def power_table(self) -> list[int]:
        """x^k mod p for x = 0..p-1."""
        p, k = self.p, self.k
        return [pow(x, k, p) for x in range(p)]


def apply(f: PowerMap, x: int) -> int:
    """f(x) for 1 <= x < p."""
    if not 1 <= x < f.p:
        raise ValueError(f"x={x} outside 1..p-1")
    return f.a * pow(x, f.k, f.p) % f.p


@dataclass(frozen=True)
class ClassPartition:
    """The residue classes I_j = {x in 1..p-1 : x = j mod n}, j = 0..n-1."""

    p: int
    n: int
    sizes: tuple[int, ...]

    def size(self, j: int) -> int:
        return self.sizes[j]

    def elements(self, j: int):
        """Ascending iterator over I_j."""
        if not 0 <= j < self.n:
            raise IndexError(f"class index {j} outside 0..{self.n - 1}")
        x = j if j > 0 else self.n
        while x < self.p:
            yield x
            x += self.n

    def class_of(self, x: int) -> int:
        if not 1 <= x < self.p:
            raise ValueError(f"x={x} outside 1..p-1")
        return x % self.n

    def __contains__(self, pair) -> bool:
        j, x = pair
        return 1 <= x < self.p and x % self.n == j


def partition(p: int, n: int) -> ClassPartition:
    """Class partition of {1..p-1} mod n; requires 2 <= n < p."""
    p = require_odd_prime(p)
    if not 2 <= n < p:
        raise ValueError(f"modulus n={n} must satisfy 2 <= n < p={p}")
    sizes = tuple(
        p // n if j == 0 else (p - 1 + n - j) // n for j in range(n)
    )
    return ClassPartition(p, n, sizes)


@dataclass(frozen=True)
class ClassificationResult:
    """Exact class-to-class reachability of a PowerMap mod n."""

    map: PowerMap
    n: int
    targets: tuple[frozenset[int], ...]
    is_type_i: bool
    is_type_iia: bool
    type_iib_witnesses: tuple[int, ...]
    type_iii_witnesses: tuple[tuple[int, int], ...]
    type_iv_witnesses: tuple[tuple[int, int], ...]
    sigma: tuple[int, ...] | None

    def has_type(self, t: str) -> bool:
        if t == TYPE_I:
            return self.is_type_i
        if t == TYPE_IIA:
            return self.is_type_iia
        if t == TYPE_IIB:
            return bool(self.type_iib_witnesses)
        if t == TYPE_III:
            return bool(self.type_iii_witnesses)
        if t == TYPE_IV:
            return bool(self.type_iv_witnesses)
        raise ValueError(f"unknown type {t!r}")

    def witness_sources(self) -> tuple[int, ...]:
        """Sorted source classes i appearing in one-class witnesses."""
        return tuple(sorted({i for i, _ in self.type_iii_witnesses}))


def classify(f: PowerMap, n: int, power_table: list[int] | None = None) -> ClassificationResult:
    """Exact classification: one full pass over x = 1..p-1, no sampling."""
    p = f.p
    if not 2 <= n < p:
        raise ValueError(f"modulus n={n} must satisfy 2 <= n < p={p}")
    pw = power_table if power_table is not None else f.power_table()
    a = f.a % p
    targets = [set() for _ in range(n)]
    for x in range(1, p):
        targets[x % n].add(a * pw[x] % p % n)

    iii = tuple(
        (i, next(iter(t))) for i, t in enumerate(targets) if len(t) == 1
    )
    iib = tuple(i for i, j in iii if i == j)
    all_singleton = len(iii) == n
    sigma = tuple(j for _, j in iii) if all_singleton else None
    is_iia = all_singleton and len(set(sigma)) == n
    if all_singleton and not is_iia:  # bijectivity of f forces sigma injective
        raise AssertionError("singleton targets must induce a class permutation")
    is_i = is_iia and all(i == j for i, j in enumerate(sigma))
    iv = tuple(
        (i, j) for i in range(n) for j in range(n) if j not in targets[i]
    )
    return ClassificationResult(
        map=f,
        n=n,
        targets=tuple(frozenset(t) for t in targets),
        is_type_i=is_i,
        is_type_iia=is_iia,
        type_iib_witnesses=iib,
        type_iii_witnesses=iii,
        type_iv_witnesses=iv,
        sigma=sigma,
    )


def has_one_class_image(f: PowerMap, n: int, power_table: list[int] | None = None) -> bool:
    """Early-exit one-class ("iii") detector.

    Stops scanning a class as soon as it has reached two distinct target
    classes; agrees with `classify(...).has_type("iii")` on every map.
    """
    p = f.p
    if not 2 <= n < p:
        raise ValueError(f"modulus n={n} must satisfy 2 <= n < p={p}")
    pw = power_table if power_table is not None else f.power_table()
    a = f.a % p
    for i in range(n):
        x = i if i > 0 else n
        first = -1
        while x < p:
            c = a * pw[x] % p % n
            if first < 0:
                first = c
            elif c != first:
                break
            x += n
        else:
            if first >= 0:
                return True
    return False


def intersection_count(f: PowerMap, n: int, i: int, j: int) -> int:
    """|f(I_i) ∩ I_j|, exact."""
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"class indices ({i},{j}) outside 0..{n - 1}")
    part = partition(f.p, n)
    return sum(1 for x in part.elements(i) if apply(f, x) % n == j)


@dataclass(frozen=True)
class SymmetryImage:
    """A map related to another by a witness-preserving transformation."""

    map: PowerMap
    name: str  # "negate" or "invert"

    def transform_witness(self, pair: tuple[int, int], n: int) -> tuple[int, int]:
        i, j = pair
        if self.name == "negate":
            return (i, (self.map.p - j) % n)
        if self.name == "invert":
            return (j, i)
        raise ValueError(self.name)


def symmetry_orbit(f: PowerMap, n: int) -> list[SymmetryImage]:
    """Maps sharing f's one-class behavior up to a witness transformation.

    Always contains the negated map (witnesses reflect in the target index).
    For k = (p+1)/2 the compositional inverse (A|p) * A^{-1} * x^{(p+1)/2}
    is included as well (witnesses swap roles where class sizes allow).
    """
    out = [SymmetryImage(f.negated(), "negate")]
    p = f.p
    if f.k == (p + 1) // 2:
        a_inv = legendre(f.a, p) * mod_inv(f.a, p) % p
        out.append(SymmetryImage(PowerMap(p, abs_least_residue(a_inv, p), f.k), "invert"))
    return out


__all__ = [
    "ClassPartition",
    "ClassificationResult",
    "PowerMap",
    "SymmetryImage",
    "TYPE_I",
    "TYPE_IIA",
    "TYPE_IIB",
    "TYPE_III",
    "TYPE_IV",
    "apply",
    "classify",
    "has_one_class_image",
    "intersection_count",
    "partition",
    "symmetry_orbit",
]
