"""Acceptance gate: one test per criterion, one printed line each.

Run with `pytest tests/test_acceptance.py -v -s`.  Criterion 11 is known
to fail: the sweep finds the one genuine sub-sqrt exception (the four
consecutive nonresidues 5..8 mod 13), so the zero-violation claim cannot
hold as stated; see the README note.  Every other criterion passes at its
stated tolerance.
"""

import math
import random

import numpy as np
import pytest

from resmap import bounds, families, kernels, tables
from resmap.classmap import PowerMap, classify, has_one_class_image, intersection_count, partition
from resmap.modarith import legendre_table, mod_inv, primes_in, primes_up_to
from resmap.runs import hummel_exceptions, qr_runs
from resmap.search import SearchSpec, run_search

TOL_SQRT = 1e-6


def report(num, ok, detail=""):
    print(f"\n[criterion {num:02d}] {'PASS' if ok else 'FAIL'} {detail}")
    return ok


def test_c01_row_verification():
    """Every bundled table row reproduces its type, witnesses, and sigma."""
    bad = []
    for r in tables.load_t1():
        ok, msg = tables.verify_map_row(r)
        if not ok:
            bad.append(("T1", msg))
    for r in tables.load_t2():
        ok, msg = tables.verify_map_row(r, check_fix=False)
        if not ok:
            bad.append(("T2", msg))
    for r in tables.load_t3():
        ok, msg = tables.verify_map_row(r, check_fix=False)
        if not ok:
            bad.append(("T3", msg))
    for p, t, n in tables.load_t4():
        ok, msg = tables.verify_t4_row(p, t, n)
        if not ok:
            bad.append(("T4", msg))
    for p, t, a in tables.load_t5_census():
        recs = {(rec.a, rec.t) for rec in qr_runs(p) if 2 * rec.a < p}
        if (a, t) not in recs:
            bad.append(("T5", f"(p={p}, t={t}, a={a}) not among runs"))
    for row in tables.load_t5_families():
        ok, msg = tables.verify_t5_family_row(row)
        if not ok:
            bad.append(("T5F", msg))
    for n, p, a, k, sigma in tables.load_t6_perm():
        ok, msg = tables.verify_t6_perm_row(n, p, a, k, sigma)
        if not ok:
            bad.append(("T6P", msg))
    for n, p, a, k in tables.load_t6_extra():
        if not classify(PowerMap(p, a, k), n).is_type_iia:
            bad.append(("T6X", f"(n={n}, p={p}, a={a}, k={k}) not class-permuting"))
    for p, a, k in tables.load_gk():
        ok, msg = tables.verify_gk_row(p, a, k)
        if not ok:
            bad.append(("GK", msg))
    assert report(1, not bad, f"{len(bad)} row mismatches"), bad


def test_c02_table3_full_reproduction():
    """Exhaustive square-root-map census for n=3..12 matches exactly."""
    missing, extra, total = tables.reproduce("T3")
    got_ns = {r.n for r in tables.compute_t3()}
    absent_ok = got_ns.isdisjoint({3, 4, 7, 9})
    ok = not missing and not extra and absent_ok
    assert report(
        2, ok,
        f"{total} rows exact; no rows at n in {{3,4,7,9}}: {absent_ok}",
    ), (missing, extra)


def test_c03_table4_full_reproduction():
    missing, extra, total = tables.reproduce("T4")
    got = tables.compute_t4()
    ok = not missing and not extra
    assert report(3, ok, f"pattern primes {[(p, t) for p, t, _ in got]}"), (missing, extra)


def test_c04_table5_full_reproduction(census_rows):
    got = {(r.p, r.t, r.a) for r in census_rows}
    want = set(tables.load_t5_census())
    fam_bad = []
    for row in tables.load_t5_families():
        ok, msg = tables.verify_t5_family_row(row)
        if not ok:
            fam_bad.append(msg)
    ok = got == want and not fam_bad
    assert report(
        4, ok,
        f"census rows {len(got)}/{len(want)} exact; "
        f"{25 - len(fam_bad)}/25 family instances verify",
    ), (sorted(want - got), sorted(got - want), fam_bad)


def test_c05_parity_preserving_fixture():
    got = set(tables.compute_gk(3, 14))
    ident = {(p, 1, 1) for p in (3, 5, 7, 11, 13)}
    six = set(tables.load_gk())
    part_a = got == ident | six

    spec = SearchSpec(
        windows=((2, 14, 2000),), k_mode="all", target_types=frozenset({"i"}),
        exclude_unit_maps=True,
    )
    beyond = run_search(spec)
    ok = part_a and not beyond
    assert report(
        5, ok,
        f"p<=13: identity + {len(six)} known cases; 13<p<2000: {len(beyond)} hits",
    ), (sorted(got - ident - six), beyond)


def test_c06_desk_scale_exceptional_sweep():
    spec = SearchSpec(
        windows=tuple((n, 2 * n + 1, 1000) for n in range(3, 13)),
        k_mode="all", target_types=frozenset({"iii"}),
    )
    hits = run_search(spec)
    bound = tables.load_largest_hit_primes()
    beyond = [h for h in hits if h.p > bound[h.n]]
    assert report(
        6, not beyond,
        f"{len(hits)} one-class hits, none beyond the per-modulus frontier",
    ), f"frontier counterexamples found: {beyond}"


def test_c07_linear_maps_never_one_class():
    spec = SearchSpec(
        windows=tuple((n, 2 * n + 1, 2000) for n in range(2, 21)),
        k_mode="signed", k_signed=(1,),
        target_types=frozenset({"iii"}), exclude_unit_maps=True,
    )
    hits = run_search(spec)
    assert report(7, not hits, "linear maps, p<2000, n<=20: zero one-class witnesses"), hits


def test_c08_inverse_map_thresholds():
    bad = []
    for n in (2, 3):
        lim = 37 * 4 * n * n
        hits = run_search(SearchSpec(
            windows=((n, lim + 1, 10000),), k_mode="signed", k_signed=(-1,),
            target_types=frozenset({"iii"}), exclude_unit_maps=False,
        ))
        if hits:
            bad.append(("one_class", n, hits[:3]))
    for n in (2, 3):
        lim = math.ceil(16.2 * 4 * n**4)
        hits = run_search(SearchSpec(
            windows=((n, lim, 10000),), k_mode="signed", k_signed=(-1,),
            target_types=frozenset({"iv"}), exclude_unit_maps=False,
        ))
        if hits:
            bad.append(("missed_cell", n, hits[:3]))
    assert report(
        8, not bad,
        "inverse maps: no one-class beyond 148n^2, no missed cell beyond 64.8n^4",
    ), bad


def test_c09_square_root_map_property():
    viol = []
    for p in primes_up_to(4999):
        if p % 4 != 1 or p < 13:
            continue
        chi = legendre_table(p).astype(np.int64)
        x = np.arange(p, dtype=np.int64)
        for sign in (1, -1):
            f = (sign * chi * x) % p
            cls_all = f[1:]
            for n in range(2, 13):
                if p <= (n + 1) ** 2:
                    continue
                fixed = mod_inv(2, n) * p % n if n % 2 == 1 else None
                cls = cls_all % n
                src = x[1:] % n
                for i in range(n):
                    t = set(np.unique(cls[src == i]).tolist())
                    if i == fixed:
                        if t != {i}:
                            viol.append((p, sign, n, i, t))
                    elif t != {i, (p - i) % n} or len(t) != 2:
                        viol.append((p, sign, n, i, t))
    assert report(
        9, not viol, "fixed-class and exactly-two-classes hold exhaustively"
    ), viol[:5]


def test_c10_bound_suites():
    details = []

    kl_bad = [p for p in primes_up_to(499)[1:] if not bounds.kloosterman_max(p).holds]
    details.append(f"(i) inverse-map sums: {'ok' if not kl_bad else kl_bad}")

    bin_bad = []
    for p in primes_up_to(101)[1:]:
        for k in range(2, p - 1):
            if math.gcd(k, p - 1) != 1:
                continue
            if not bounds.binomial_sum_max(p, k).holds:
                bin_bad.append((p, k))
    details.append(f"(ii) binomial sums: {'ok' if not bin_bad else bin_bad}")

    fr_bad = []
    for p in primes_up_to(2003):
        if p < 7:
            continue
        sizes = set()
        for n in range(2, p):
            sizes.add(p // n)
            sizes.add((p - 2) // n + 1)
            sizes.add((p - n) // n + 1)
        b_half = bounds.LOG_COEFF * math.log(p) + 0.5
        b_381 = bounds.LOG_COEFF * math.log(p) + 0.381
        for size in sizes:
            l1 = bounds.l1_tail_closed_form(p, size)
            if l1 > b_half + 1e-9:
                fr_bad.append((p, size, "half"))
            if p > 607 and l1 > b_381 + 1e-9:
                fr_bad.append((p, size, "381"))
    details.append(f"(iii) indicator spectra: {'ok' if not fr_bad else fr_bad[:3]}")

    mij_bad = []
    for p in primes_up_to(499):
        if p < 7:
            continue
        _, violations = bounds.mij_sweep_max(p)
        mij_bad.extend(violations)
    details.append(f"(iv) linear cell counts: {'ok' if not mij_bad else mij_bad[:3]}")

    rng = random.Random(2026)
    cell_bad = []
    candidates = primes_in(7, 3000)
    for _ in range(200):
        p = rng.choice(candidates)
        n = rng.randrange(2, min(p, 40))
        k = rng.randrange(1, p - 1)
        try:
            f = PowerMap(p, rng.randrange(1, (p + 1) // 2), k)
        except ValueError:
            continue
        rep = bounds.intersection_error(f, n)
        if not rep.holds or not rep.details["main_term_window_ok"]:
            cell_bad.append((p, f.a, f.k, n))
    details.append(f"(v) cell errors: {'ok' if not cell_bad else cell_bad}")

    ok = not (kl_bad or bin_bad or fr_bad or mij_bad or cell_bad)
    assert report(10, ok, "; ".join(details))


def test_c11_hummel_sweep():
    """Longest run below sqrt(p) for every p < 100000 -- fails at p = 13.

    The four consecutive nonresidues 5, 6, 7, 8 mod 13 have length
    4 > sqrt(13); every other prime below 100000 satisfies the bound.
    The sweep is kept as stated so the one exception stays visible.
    """
    exceptions = hummel_exceptions(100000)
    assert report(
        11, not exceptions,
        f"violations: {exceptions} (the mod-13 nonresidue block)",
    ), exceptions


def test_c12_oracle_equivalence():
    rng = random.Random(424242)
    candidates = primes_in(5, 300)

    mismatch = 0
    maps = []
    while len(maps) < 100000:
        p = rng.choice(candidates)
        n = rng.randrange(2, min(p, 24))
        k = rng.randrange(1, p - 1)
        a = rng.randrange(1, (p + 1) // 2)
        if math.gcd(k, p - 1) != 1:
            continue
        maps.append((p, a, k, n))
    for p, a, k, n in maps:
        f = PowerMap(p, a, k)
        res = classify(f, n)
        one, perm, miss = kernels.probe_map(p, a, k, n)
        if one != bool(res.type_iii_witnesses) or perm != res.is_type_iia or miss != bool(res.type_iv_witnesses):
            mismatch += 1
    for p, a, k, n in maps[:10000]:
        f = PowerMap(p, a, k)
        if has_one_class_image(f, n) != bool(classify(f, n).type_iii_witnesses):
            mismatch += 1

    mij_mismatch = 0
    for _ in range(2000):
        p = rng.choice(candidates)
        if p < 11:
            continue
        c = rng.randrange(2, (p - 1) // 2)
        n = rng.randrange(3, min(p // 2, 20))
        i, j = rng.randrange(n), rng.randrange(n)
        if bounds.mij_count(p, c, n, i, j).count != intersection_count(PowerMap(p, c, 1), n, i, j):
            mij_mismatch += 1

    dft_mismatch = 0
    for _ in range(300):
        p = rng.choice(primes_in(7, 700))
        n = rng.randrange(2, min(p, 30))
        j = rng.randrange(n)
        prof = bounds.fourier_profile(p, n, j)
        size = partition(p, n).size(j)
        for u in rng.sample(range(p), min(8, p)):
            if abs(abs(prof.coefficients[u]) - bounds.coefficient_magnitude(p, n, size, u)) > 1e-9:
                dft_mismatch += 1
    ok = mismatch == 0 and mij_mismatch == 0 and dft_mismatch == 0
    assert report(
        12, ok,
        f"{len(maps)} maps kernel==exact, early-exit==exact on 10k; "
        f"mij==linear-intersection on 2k; spectra match closed form",
    ), (mismatch, mij_mismatch, dft_mismatch)
