"""Hot loops for the exhaustive searches, jitted with numba.

Every kernel works on int64 with p < 2**31 so products stay in range.
The kernels only *detect* candidate (k, A, n) triples with early exits;
hits are rare and are re-classified exactly in Python, which keeps the
early-exit logic honest (see the oracle-equivalence tests).

If numba is unavailable the module falls back to pure-Python versions
with identical semantics (much slower; fine for spot use).
"""

from __future__ import annotations

import numpy as np

KERNEL_P_CAP = 1 << 31

MODE_ONE_CLASS = 1  # some class lands in a single class        ("iii"/"iib")
MODE_CLASS_PERM = 2  # every class lands in a single class       ("i"/"iia")
MODE_MISSED_CELL = 3  # some (source, target) class pair missed  ("iv")

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap


@njit(cache=True, nogil=True)
def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@njit(cache=True, nogil=True)
def _fill_power_table(pw, p, k):
    pw[0] = 0
    for x in range(1, p):
        b = x
        e = k
        r = 1
        while e > 0:
            if e & 1:
                r = r * b % p
            b = b * b % p
            e >>= 1
        pw[x] = r


@njit(cache=True, nogil=True)
def _scan_one_map(p, pw, A, n, mode, stamp, epoch):
    """True if the map A*pw[.] matches `mode` at modulus n."""
    if mode == MODE_ONE_CLASS:
        for i in range(n):
            x = i if i > 0 else n
            first = -1
            ok = True
            while x < p:
                c = (A * pw[x]) % p % n
                if first < 0:
                    first = c
                elif c != first:
                    ok = False
                    break
                x += n
            if ok and first >= 0:
                return True
        return False
    elif mode == MODE_CLASS_PERM:
        for i in range(n):
            x = i if i > 0 else n
            first = -1
            while x < p:
                c = (A * pw[x]) % p % n
                if first < 0:
                    first = c
                elif c != first:
                    return False
                x += n
            if first < 0:
                return False
            if stamp[first] == epoch:  # two classes with the same image class
                return False
            stamp[first] = epoch
        return True
    else:  # MODE_MISSED_CELL
        covered = 0
        total = n * n
        for x in range(1, p):
            cell = (x % n) * n + (A * pw[x]) % p % n
            if stamp[cell] != epoch:
                stamp[cell] = epoch
                covered += 1
                if covered == total:
                    return False
        return True


@njit(cache=True, nogil=True)
def _scan_kernel(p, ks, incremental, ns, mode, excl_unit, excl_sqrt_odd, out):
    """Scan all A in 1..(p-1)/2 for the given exponents and moduli.

    incremental=True ignores `ks` and sweeps every admissible k < p-1,
    maintaining the power table with one multiply per entry per step.
    Returns the number of (k, A, n) hits; rows beyond out's capacity are
    counted but not stored.
    """
    pm1 = p - 1
    halfp = (p + 1) // 2
    nmax = 0
    for ni in range(ns.shape[0]):
        if ns[ni] > nmax:
            nmax = ns[ni]
    stamp = np.full(nmax * nmax, -1, dtype=np.int64)
    epoch = 0
    pw = np.ones(p, dtype=np.int64)
    pw[0] = 0
    cnt = 0
    n_steps = pm1 - 1 if incremental else ks.shape[0]
    for step in range(n_steps):
        if incremental:
            k = step + 1
            for x in range(1, p):
                pw[x] = pw[x] * x % p
            if _gcd(k, pm1) != 1:
                continue
        else:
            k = ks[step]
            if _gcd(k, pm1) != 1:
                continue
            _fill_power_table(pw, p, k)
        for A in range(1, halfp):
            for ni in range(ns.shape[0]):
                n = ns[ni]
                if excl_unit and A == 1 and k == 1:
                    continue
                if excl_sqrt_odd and (n & 1) == 1 and A == 1 and k == halfp:
                    continue
                epoch += 1
                if _scan_one_map(p, pw, A, n, mode, stamp, epoch):
                    if cnt < out.shape[0]:
                        out[cnt, 0] = k
                        out[cnt, 1] = A
                        out[cnt, 2] = n
                    cnt += 1
    return cnt


@njit(cache=True, nogil=True)
def _probe_kernel(p, a, k, n):
    """Bitmask for one signed-coefficient map: 1=one-class, 2=class-perm, 4=missed-cell."""
    pw = np.empty(p, dtype=np.int64)
    _fill_power_table(pw, p, k)
    A = a % p
    stamp = np.full(n * n, -1, dtype=np.int64)
    flags = 0
    if _scan_one_map(p, pw, A, n, MODE_ONE_CLASS, stamp, 0):
        flags |= 1
    if _scan_one_map(p, pw, A, n, MODE_CLASS_PERM, stamp, 1):
        flags |= 2
    if _scan_one_map(p, pw, A, n, MODE_MISSED_CELL, stamp, 2):
        flags |= 4
    return flags


@njit(cache=True, nogil=True)
def _runs_kernel(p, t_min, out):
    """Maximal Legendre runs on 1..p-1.

    Returns (longest_t, count of runs with t >= t_min); runs are written
    to `out` as (a, t, value) rows while capacity lasts.
    """
    chi = np.full(p, np.int8(-1))
    chi[0] = 0
    half = (p - 1) // 2
    for x in range(1, half + 1):
        chi[x * x % p] = 1
    longest = 0
    cnt = 0
    a = 1
    cur = chi[1]
    for x in range(2, p + 1):
        v = chi[x] if x < p else np.int8(0)
        if x == p or v != cur:
            t = x - a
            if t > longest:
                longest = t
            if t >= t_min:
                if cnt < out.shape[0]:
                    out[cnt, 0] = a
                    out[cnt, 1] = t
                    out[cnt, 2] = cur
                cnt += 1
            a = x
            cur = v
    return longest, cnt


# ---------------------------------------------------------------------------
# Pure-Python fallbacks (same contracts, used when numba is missing and in
# the cross-validation tests).


def scan_maps_py(p, ks, incremental, ns, mode, excl_unit, excl_sqrt_odd):
    """Reference implementation of `_scan_kernel`; returns hit list."""
    pm1 = p - 1
    halfp = (p + 1) // 2
    hits = []
    if incremental:
        k_iter = range(1, pm1)
    else:
        k_iter = list(ks)
    pw = [0] + [1] * (p - 1)
    for k in k_iter:
        if incremental:
            for x in range(1, p):
                pw[x] = pw[x] * x % p
            if _gcd_py(k, pm1) != 1:
                continue
            table = pw
        else:
            if _gcd_py(k, pm1) != 1:
                continue
            table = [pow(x, k, p) for x in range(p)]
        for A in range(1, halfp):
            for n in ns:
                if excl_unit and A == 1 and k == 1:
                    continue
                if excl_sqrt_odd and n % 2 == 1 and A == 1 and k == halfp:
                    continue
                if _scan_one_map_py(p, table, A, n, mode):
                    hits.append((k, A, n))
    return hits


def _gcd_py(a, b):
    while b:
        a, b = b, a % b
    return a


def _scan_one_map_py(p, pw, A, n, mode):
    if mode == MODE_ONE_CLASS:
        for i in range(n):
            x = i if i > 0 else n
            first = -1
            ok = True
            while x < p:
                c = A * pw[x] % p % n
                if first < 0:
                    first = c
                elif c != first:
                    ok = False
                    break
                x += n
            if ok and first >= 0:
                return True
        return False
    if mode == MODE_CLASS_PERM:
        seen = set()
        for i in range(n):
            x = i if i > 0 else n
            first = -1
            while x < p:
                c = A * pw[x] % p % n
                if first < 0:
                    first = c
                elif c != first:
                    return False
                x += n
            if first < 0 or first in seen:
                return False
            seen.add(first)
        return True
    covered = set()
    total = n * n
    for x in range(1, p):
        covered.add((x % n) * n + A * pw[x] % p % n)
        if len(covered) == total:
            return False
    return True


def probe_map_py(p, a, k, n):
    table = [pow(x, k, p) for x in range(p)]
    A = a % p
    flags = 0
    if _scan_one_map_py(p, table, A, n, MODE_ONE_CLASS):
        flags |= 1
    if _scan_one_map_py(p, table, A, n, MODE_CLASS_PERM):
        flags |= 2
    if _scan_one_map_py(p, table, A, n, MODE_MISSED_CELL):
        flags |= 4
    return flags


# ---------------------------------------------------------------------------
# Wrappers


def scan_maps(p, ks, ns, mode, excl_unit=True, excl_sqrt_odd=True, incremental=None):
    """All (k, A, n) with A in 1..(p-1)/2 matching `mode`; sorted.

    `ks=None` sweeps every admissible exponent 1 <= k < p-1.
    """
    if p >= KERNEL_P_CAP:
        raise ValueError(f"p={p} beyond kernel cap 2**31")
    if incremental is None:
        incremental = ks is None
    ks_arr = np.asarray([] if ks is None else list(ks), dtype=np.int64)
    ns_arr = np.asarray(sorted(ns), dtype=np.int64)
    if ns_arr.size == 0:
        return []
    if not HAVE_NUMBA:
        hits = scan_maps_py(p, ks_arr, incremental, ns_arr, mode, excl_unit, excl_sqrt_odd)
        return sorted(hits)
    cap = 4096
    while True:
        out = np.empty((cap, 3), dtype=np.int64)
        cnt = _scan_kernel(
            np.int64(p), ks_arr, incremental, ns_arr, np.int64(mode),
            excl_unit, excl_sqrt_odd, out,
        )
        if cnt <= cap:
            return sorted((int(k), int(a), int(n)) for k, a, n in out[:cnt])
        cap = cnt + 16


def probe_map(p, a, k, n):
    """(one_class, class_perm, missed_cell) booleans for a single map."""
    if p >= KERNEL_P_CAP or not HAVE_NUMBA:
        flags = probe_map_py(p, a, k, n)
    else:
        flags = int(_probe_kernel(np.int64(p), np.int64(a), np.int64(k), np.int64(n)))
    return bool(flags & 1), bool(flags & 2), bool(flags & 4)


def legendre_runs_fast(p, t_min):
    """(longest_t, [(a, t, value), ...]) with t >= t_min, via one O(p) pass."""
    if not HAVE_NUMBA or p >= KERNEL_P_CAP:
        return _legendre_runs_numpy(p, t_min)
    cap = 64
    while True:
        out = np.empty((cap, 3), dtype=np.int64)
        longest, cnt = _runs_kernel(np.int64(p), np.int64(t_min), out)
        if cnt <= cap:
            return int(longest), [(int(a), int(t), int(v)) for a, t, v in out[:cnt]]
        cap = cnt + 16


def _legendre_runs_numpy(p, t_min):
    chi = np.full(p, -1, dtype=np.int8)
    chi[0] = 0
    x = np.arange(1, (p - 1) // 2 + 1, dtype=np.int64)
    chi[(x * x) % p] = 1
    vals = chi[1:p]
    change = np.flatnonzero(vals[1:] != vals[:-1])
    starts = np.concatenate(([0], change + 1))
    ends = np.concatenate((change, [p - 2]))
    longest = int((ends - starts + 1).max()) if len(starts) else 0
    recs = [
        (int(s) + 1, int(e - s + 1), int(vals[s]))
        for s, e in zip(starts, ends)
        if e - s + 1 >= t_min
    ]
    return longest, recs


def warm_up():
    """Trigger jit compilation of all kernels (a few seconds, cached)."""
    if not HAVE_NUMBA:
        return
    scan_maps(11, None, [3], MODE_ONE_CLASS)
    scan_maps(11, [3], [3], MODE_CLASS_PERM)
    scan_maps(11, [3], [2], MODE_MISSED_CELL)
    probe_map(11, 2, 3, 3)
    legendre_runs_fast(11, 2)


__all__ = [
    "HAVE_NUMBA",
    "KERNEL_P_CAP",
    "MODE_CLASS_PERM",
    "MODE_MISSED_CELL",
    "MODE_ONE_CLASS",
    "legendre_runs_fast",
    "probe_map",
    "probe_map_py",
    "scan_maps",
    "scan_maps_py",
    "warm_up",
]
