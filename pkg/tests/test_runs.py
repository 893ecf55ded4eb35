import pytest

from resmap.modarith import legendre, primes_in, primes_up_to
from resmap.runs import (
    central_run,
    central_run_by_primes,
    cubic_central_run,
    cubic_runs,
    hummel_exceptions,
    longest_run,
    qr_runs,
    run_census,
    third_run_interval_check,
    third_runs,
)


def test_qr_runs_small():
    recs = qr_runs(5)
    assert [(r.a, r.t, r.value) for r in recs] == [(1, 1, 1), (2, 2, -1), (4, 1, 1)]


def test_qr_runs_cover_and_maximal():
    for p in (7, 13, 101, 997):
        recs = qr_runs(p)
        assert recs[0].a == 1 and recs[-1].stop == p
        for prev, cur in zip(recs, recs[1:]):
            assert prev.stop == cur.a
            assert prev.value != cur.value
        for r in recs:
            assert all(legendre(x, p) == r.value for x in range(r.a, r.stop))


def test_longest_runs_at_table_primes():
    assert (longest_run(13381).a, longest_run(13381).t) == (6677, 28)
    recs = [r for r in qr_runs(87481) if r.t == 28]
    assert {(r.a, r.t) for r in recs} >= {(1, 28), (43727, 28)}
    assert (longest_run(82021).a, longest_run(82021).t) == (40996, 30)


def test_run_reflection_symmetry():
    for p in primes_in(3, 2000):
        recs = {(r.a, r.t): r.value for r in qr_runs(p)}
        sign = 1 if p % 4 == 1 else -1
        for (a, t), v in recs.items():
            twin = (p - a - t + 1, t)
            assert recs[twin] == sign * v


def test_central_run_values():
    assert central_run(13381) == 14
    assert central_run(82021) == 15
    assert central_run(5) == 1
    with pytest.raises(ValueError):
        central_run(7)  # 7 = 3 mod 4


def test_central_run_equivalence():
    for p in primes_up_to(99999):
        if p % 4 != 1:
            continue
        assert central_run(p) == central_run_by_primes(p), p


def test_third_runs_values():
    assert third_runs(52361)[:2] == (17, 12)
    assert third_runs(65129)[:2] == (17, 10)
    assert third_runs(277) == (10, 0, 1)  # empty right side is allowed
    with pytest.raises(ValueError):
        third_runs(7)


def test_third_runs_interval_equivalence():
    for p in primes_in(5, 3000):
        if p % 4 != 1:
            continue
        assert third_run_interval_check(p), p


def test_cubic_runs():
    recs = cubic_runs(7)
    assert [(r.a, r.t) for r in recs] == [(1, 1), (2, 1), (3, 2), (5, 1), (6, 1)]
    assert cubic_central_run(853) == 5
    assert any((r.a, r.t) == (422, 10) for r in cubic_runs(853))
    assert cubic_central_run(367) == 5
    assert any((r.a, r.t) == (179, 10) for r in cubic_runs(367))
    with pytest.raises(ValueError):
        cubic_runs(29)  # 2 mod 3 has no cubic cosets


def test_run_census_against_direct_oracle():
    got = {(r.p, r.a, r.t, r.value) for r in run_census(600, 5, dedup=False)}
    want = set()
    for p in primes_up_to(599):
        if p < 3:
            continue
        a = 1
        prev = legendre(1, p)
        for x in range(2, p + 1):
            v = legendre(x, p) if x < p else 0
            if x == p or v != prev:
                if x - a >= 5:
                    want.add((p, a, x - a, prev))
                a, prev = x, v
    assert got == want


def test_run_census_dedup_and_filters():
    assert run_census(100, 50) == []
    all_runs = run_census(3000, 10, dedup=False)
    kept = run_census(3000, 10, dedup=True)
    assert {(r.p, r.a) for r in kept} == {
        (r.p, r.a) for r in all_runs if 2 * r.a < r.p
    }
    only1 = run_census(3000, 10, residue_mod4=1)
    assert all(r.p % 4 == 1 for r in only1)


def test_hummel_boundary():
    # the single sub-sqrt exception: four consecutive nonresidues mod 13
    assert hummel_exceptions(100) == [(13, 4)]
    assert all(r.t**2 < 13381 for r in qr_runs(13381))
