"""Symmetry-reduced exhaustive search over (p, A, k, n) space.

Work is sharded by prime: each shard owns every (A, k, n) combination for
its p, shares one running power table across exponents, and reports
candidate triples from the early-exit kernels.  Candidates are then
re-classified exactly in Python, so a kernel false positive would be
filtered (and a miss would show up in the oracle-equivalence tests).
Shard results merge into one deterministic, fully sorted hit list.

Coefficients are enumerated with A > 0 only; class behavior of -A follows
by reflecting target classes (j -> p - j mod n).  Hits whose pattern lives
on the negated map (a class-permuting map whose permutation is the
reflection, say) are reported with the negative coefficient, so the
identity-like census outputs carry signed coefficients.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import gcd

from . import kernels
from .classmap import PowerMap, classify
from .modarith import primes_up_to

CHECKPOINT_VERSION = 1

TYPES_ONE_CLASS = frozenset({"iii", "iib"})
TYPES_PERM = frozenset({"i", "iia"})
TYPES_MISS = frozenset({"iv"})


@dataclass(frozen=True)
class SearchSpec:
    """A fully resolved search: per-modulus prime windows plus filters.

    windows: (n, p_min, p_max) with p_min inclusive, p_max exclusive.
    k_mode: "all" (every admissible exponent), "halfp" (k = (p+1)/2),
            or "signed" (the exponents listed in k_signed, interpreted
            mod p-1).
    target_types: subset of {"i", "iia", "iib", "iii", "iv"}.
    exclude_unit_maps skips x -> +-x; exclude_sqrt_unit_odd_n skips
    x -> +-x^((p+1)/2) at odd moduli (both are the standing conventions
    for the bundled reference tables).
    ratio_above: keep only hits with p/n strictly above this.
    """

    windows: tuple[tuple[int, int, int], ...]
    k_mode: str = "all"
    k_signed: tuple[int, ...] = ()
    target_types: frozenset = frozenset({"iii"})
    exclude_unit_maps: bool = True
    exclude_sqrt_unit_odd_n: bool = True
    ratio_above: float | None = None

    def __post_init__(self):
        if self.k_mode not in ("all", "halfp", "signed"):
            raise ValueError(f"unknown k_mode {self.k_mode!r}")
        if self.k_mode == "signed" and not self.k_signed:
            raise ValueError("signed k_mode needs k_signed values")
        bad = set(self.target_types) - {"i", "iia", "iib", "iii", "iv"}
        if bad:
            raise ValueError(f"unknown target types {sorted(bad)}")
        object.__setattr__(self, "windows", tuple(sorted(self.windows)))
        object.__setattr__(self, "target_types", frozenset(self.target_types))

    def spec_hash(self) -> str:
        payload = json.dumps(
            {
                "windows": list(self.windows),
                "k_mode": self.k_mode,
                "k_signed": list(self.k_signed),
                "target_types": sorted(self.target_types),
                "exclude_unit_maps": self.exclude_unit_maps,
                "exclude_sqrt_unit_odd_n": self.exclude_sqrt_unit_odd_n,
                "ratio_above": self.ratio_above,
            },
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def primes(self) -> list[int]:
        if not self.windows:
            return []
        hi = max(w[2] for w in self.windows)
        lo = min(w[1] for w in self.windows)
        return [
            p
            for p in primes_up_to(hi - 1)
            if p >= max(3, lo) and self.moduli_for(p)
        ]

    def moduli_for(self, p: int) -> list[int]:
        return sorted({n for (n, lo, hi) in self.windows if lo <= p < hi and n < p})


def windows_linear(
    n_lo: int,
    n_hi: int,
    p_lo_mult: int = 0,
    p_lo_add: int = 0,
    p_hi_mult: int = 0,
    p_hi_add: int = 0,
    p_lo_strict: bool = True,
    p_hi_strict: bool = True,
) -> tuple[tuple[int, int, int], ...]:
    """Windows with bounds linear in n:  p_lo_mult*n + p_lo_add  <(=)  p
    <(=)  p_hi_mult*n + p_hi_add.  Returned as inclusive/exclusive ints."""
    out = []
    for n in range(n_lo, n_hi + 1):
        lo = p_lo_mult * n + p_lo_add + (1 if p_lo_strict else 0)
        hi = p_hi_mult * n + p_hi_add + (0 if p_hi_strict else 1)
        if hi > lo:
            out.append((n, lo, hi))
    return tuple(out)


@dataclass(frozen=True)
class SearchHit:
    """One matched map at one modulus.

    `a` is the signed coefficient whose map exhibits `type`; |a| < p/2 and
    a > 0 except where only the negated enumeration partner matches.
    Witness payload: (i, j) pairs for one-class and missed-cell hits,
    fixed classes for "iib", the class permutation image for "iia"/"i".
    """

    n: int
    p: int
    a: int
    k: int
    type: str
    witnesses: tuple = ()
    sigma: tuple[int, ...] | None = None

    @property
    def ratio(self) -> float:
        return self.p / self.n

    def sort_key(self):
        return (self.n, self.p, abs(self.a), self.a < 0, self.k, self.type)


def enumerate_maps(p: int, k_mode: str = "all", k_signed: tuple[int, ...] = ()):
    """Admissible (a, k) pairs with 0 < a < p/2, grouped by exponent."""
    pm1 = p - 1
    if k_mode == "all":
        ks = [k for k in range(1, pm1) if gcd(k, pm1) == 1]
    elif k_mode == "halfp":
        ks = [(p + 1) // 2] if gcd((p + 1) // 2, pm1) == 1 else []
    else:
        ks = sorted({k % pm1 for k in k_signed if gcd(k % pm1, pm1) == 1})
    for k in ks:
        for a in range(1, (p + 1) // 2):
            yield a, k


def _ks_for(spec: SearchSpec, p: int):
    """Kernel exponent request: None means incremental all-k."""
    if spec.k_mode == "all":
        return None
    if spec.k_mode == "halfp":
        k = (p + 1) // 2
        return [k] if gcd(k, p - 1) == 1 else []
    return sorted({k % (p - 1) for k in spec.k_signed})


def _hits_for_prime(spec: SearchSpec, p: int) -> list[SearchHit]:
    ns = spec.moduli_for(p)
    if not ns:
        return []
    ks = _ks_for(spec, p)
    if ks is not None and not ks:
        return []
    want = spec.target_types
    candidates: set[tuple[int, int, int]] = set()
    if want & TYPES_ONE_CLASS:
        candidates.update(
            kernels.scan_maps(
                p, ks, ns, kernels.MODE_ONE_CLASS,
                spec.exclude_unit_maps, spec.exclude_sqrt_unit_odd_n,
            )
        )
    if want & TYPES_PERM:
        candidates.update(
            kernels.scan_maps(
                p, ks, ns, kernels.MODE_CLASS_PERM,
                spec.exclude_unit_maps, spec.exclude_sqrt_unit_odd_n,
            )
        )
    if want & TYPES_MISS:
        candidates.update(
            kernels.scan_maps(
                p, ks, ns, kernels.MODE_MISSED_CELL,
                spec.exclude_unit_maps, spec.exclude_sqrt_unit_odd_n,
            )
        )
    hits = []
    tables: dict[int, list[int]] = {}
    for k, a, n in sorted(candidates):
        if spec.ratio_above is not None and p / n <= spec.ratio_above:
            continue
        pw = tables.get(k)
        if pw is None:
            pw = tables[k] = PowerMap(p, 1, k).power_table()
        res = classify(PowerMap(p, a, k), n, power_table=pw)
        hits.extend(_hits_from_result(res, want))
    return hits


def _hits_from_result(res, want) -> list[SearchHit]:
    """Expand an exact classification (of the +A map) into typed hits,
    resolving which signed coefficient carries each pattern."""
    f, n, p = res.map, res.n, res.map.p
    reflect = [(p - j) % n for j in range(n)]
    out = []
    if "iii" in want and res.type_iii_witnesses:
        out.append(
            SearchHit(n, p, f.a, f.k, "iii", witnesses=res.type_iii_witnesses)
        )
    if "iib" in want:
        if res.type_iib_witnesses:
            out.append(SearchHit(n, p, f.a, f.k, "iib", witnesses=res.type_iib_witnesses))
        neg = tuple(i for i, j in res.type_iii_witnesses if reflect[j] == i)
        if neg:
            out.append(SearchHit(n, p, -f.a, f.k, "iib", witnesses=neg))
    if "iv" in want and res.type_iv_witnesses:
        out.append(SearchHit(n, p, f.a, f.k, "iv", witnesses=res.type_iv_witnesses))
    if want & TYPES_PERM and res.is_type_iia:
        sigma = res.sigma
        sigma_neg = tuple(reflect[j] for j in sigma)
        if "iia" in want:
            out.append(SearchHit(n, p, f.a, f.k, "iia", sigma=sigma))
        if "i" in want:
            if all(j == i for i, j in enumerate(sigma)):
                out.append(SearchHit(n, p, f.a, f.k, "i", sigma=sigma))
            if all(j == i for i, j in enumerate(sigma_neg)):
                out.append(SearchHit(n, p, -f.a, f.k, "i", sigma=sigma_neg))
    return out


class SearchAborted(RuntimeError):
    """Raised when a resource limit interrupts a search; distinguishes an
    aborted sweep from one that completed and found nothing."""

    def __init__(self, message, checkpoint_path=None):
        super().__init__(message)
        self.checkpoint_path = checkpoint_path


def run_search(
    spec: SearchSpec,
    threads: int | None = None,
    checkpoint_path: str | None = None,
    max_primes: int | None = None,
) -> list[SearchHit]:
    """Classify every admissible map in the spec; sorted hit list.

    `checkpoint_path` persists completed shards after every prime; a rerun
    with the same spec resumes.  `max_primes` bounds the number of shards
    processed in this call and raises SearchAborted (with the checkpoint
    written) when work remains.
    """
    all_primes = spec.primes()
    done_hits: list[SearchHit] = []
    done_ps: set[int] = set()
    if checkpoint_path and os.path.exists(checkpoint_path):
        done_ps, done_hits = _load_checkpoint(checkpoint_path, spec)
    todo = [p for p in all_primes if p not in done_ps]
    if max_primes is not None and len(todo) > max_primes:
        batch, rest = todo[:max_primes], todo[max_primes:]
    else:
        batch, rest = todo, []

    hits = list(done_hits)
    n_threads = threads or thread_count()
    if n_threads > 1 and kernels.HAVE_NUMBA and len(batch) > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            for p, result in zip(batch, pool.map(lambda q: _hits_for_prime(spec, q), batch)):
                hits.extend(result)
                done_ps.add(p)
    else:
        for p in batch:
            hits.extend(_hits_for_prime(spec, p))
            done_ps.add(p)
            if checkpoint_path:
                _save_checkpoint(checkpoint_path, spec, done_ps, hits)
    if checkpoint_path:
        _save_checkpoint(checkpoint_path, spec, done_ps, hits)
    if rest:
        raise SearchAborted(
            f"{len(rest)} prime shards remain (resource limit)", checkpoint_path
        )
    return sorted(hits, key=SearchHit.sort_key)


def thread_count() -> int:
    env = os.environ.get("RESMAP_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def largest_hits(spec: SearchSpec, count: int, threads: int | None = None) -> list[SearchHit]:
    """Hits restricted, per modulus, to the `count` largest primes with any hit."""
    if count <= 0:
        return []
    hits = run_search(spec, threads=threads)
    by_n: dict[int, set[int]] = {}
    for h in hits:
        by_n.setdefault(h.n, set()).add(h.p)
    keep = {
        n: set(sorted(ps, reverse=True)[:count]) for n, ps in by_n.items()
    }
    return [h for h in hits if h.p in keep[h.n]]


# ---------------------------------------------------------------------------
# Checkpoints


def _hit_to_json(h: SearchHit) -> dict:
    return {
        "n": h.n, "p": h.p, "a": h.a, "k": h.k, "type": h.type,
        "witnesses": [list(w) if isinstance(w, tuple) else w for w in h.witnesses],
        "sigma": list(h.sigma) if h.sigma is not None else None,
    }


def _hit_from_json(d: dict) -> SearchHit:
    wit = tuple(tuple(w) if isinstance(w, list) else w for w in d["witnesses"])
    sigma = tuple(d["sigma"]) if d["sigma"] is not None else None
    return SearchHit(d["n"], d["p"], d["a"], d["k"], d["type"], wit, sigma)


def _save_checkpoint(path: str, spec: SearchSpec, done_ps: set[int], hits: list[SearchHit]):
    payload = {
        "version": CHECKPOINT_VERSION,
        "spec_hash": spec.spec_hash(),
        "completed_p": sorted(done_ps),
        "hits": [_hit_to_json(h) for h in sorted(hits, key=SearchHit.sort_key)],
    }
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(os.path.abspath(path)) or ".")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(payload, fh)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_checkpoint(path: str, spec: SearchSpec) -> tuple[set[int], list[SearchHit]]:
    with open(path) as fh:
        payload = json.load(fh)
    if payload.get("version") != CHECKPOINT_VERSION:
        raise ValueError(f"checkpoint version {payload.get('version')} unsupported")
    if payload.get("spec_hash") != spec.spec_hash():
        raise ValueError("checkpoint was written for a different spec")
    return set(payload["completed_p"]), [_hit_from_json(d) for d in payload["hits"]]


__all__ = [
    "CHECKPOINT_VERSION",
    "SearchAborted",
    "SearchHit",
    "SearchSpec",
    "enumerate_maps",
    "largest_hits",
    "run_search",
    "thread_count",
    "windows_linear",
]
