import pytest

from resmap.classmap import PowerMap, classify
from resmap.search import (
    SearchAborted,
    SearchSpec,
    enumerate_maps,
    largest_hits,
    run_search,
    windows_linear,
)


def test_enumerate_maps():
    pairs7 = list(enumerate_maps(7))
    assert {k for _, k in pairs7} == {1, 5}
    assert all(1 <= a <= 3 for a, _ in pairs7)

    pairs13 = list(enumerate_maps(13, k_mode="halfp"))
    assert {k for _, k in pairs13} == {7}
    assert [a for a, _ in pairs13] == [1, 2, 3, 4, 5, 6]

    pairs11 = list(enumerate_maps(11))
    assert {k for _, k in pairs11} == {1, 3, 7, 9}
    assert len(pairs11) == 20

    assert list(enumerate_maps(11, k_mode="halfp")) == []  # 11 = 3 mod 4


def test_windows_linear():
    w = dict((n, (lo, hi)) for n, lo, hi in windows_linear(3, 4, p_lo_mult=2, p_hi_add=100))
    assert w == {3: (7, 100), 4: (9, 100)}
    w = windows_linear(5, 5, p_lo_mult=5, p_hi_mult=15, p_lo_strict=False, p_hi_strict=False)
    assert w == ((5, 25, 76),)


def test_spec_validation():
    with pytest.raises(ValueError):
        SearchSpec(windows=((3, 7, 100),), k_mode="weird")
    with pytest.raises(ValueError):
        SearchSpec(windows=((3, 7, 100),), target_types=frozenset({"x"}))
    with pytest.raises(ValueError):
        SearchSpec(windows=((3, 7, 100),), k_mode="signed")


def test_search_one_class_small_window():
    spec = SearchSpec(
        windows=((3, 7, 20),), k_mode="all", target_types=frozenset({"iii"})
    )
    hits = run_search(spec)
    keys = {(h.p, h.a, h.k) for h in hits}
    assert (7, 3, 5) in keys and (11, 4, 9) in keys and (13, 3, 5) in keys
    for h in hits:
        res = classify(PowerMap(h.p, h.a, h.k), h.n)
        assert tuple(sorted(res.type_iii_witnesses)) == tuple(sorted(h.witnesses))


def test_search_all_classes_fixed_signed_results():
    # the square-root-map exclusion is a one-class-census convention; the
    # all-classes-fixed census keeps those maps ((5,-1,3) is one of them)
    spec = SearchSpec(
        windows=((3, 7, 500),), k_mode="all", target_types=frozenset({"i"}),
        exclude_sqrt_unit_odd_n=False,
    )
    hits = run_search(spec)
    assert {(h.p, h.a, h.k) for h in hits} == {(7, -3, 5)}
    spec_small = SearchSpec(
        windows=((3, 4, 500),), k_mode="all", target_types=frozenset({"i"}),
        exclude_sqrt_unit_odd_n=False,
    )
    hits = run_search(spec_small)
    assert {(h.p, h.a, h.k) for h in hits} == {(5, -1, 3), (7, -3, 5)}


def test_search_determinism():
    spec = SearchSpec(
        windows=tuple((n, 2 * n + 1, 150) for n in (3, 4, 5)),
        k_mode="all",
        target_types=frozenset({"iii", "iib"}),
    )
    a = run_search(spec)
    b = run_search(spec)
    assert a == b
    assert repr(a) == repr(b)


def test_negated_fixed_class_hits():
    # x -> 4 x^9 mod 11 sends class 1 into class (11-1) mod 3: the negated
    # map fixes class 1 setwise
    spec = SearchSpec(windows=((3, 11, 12),), target_types=frozenset({"iib"}))
    hits = run_search(spec)
    assert any(h.a == 4 and h.witnesses == (1,) for h in hits)


def test_largest_hits():
    spec = SearchSpec(
        windows=((5, 11, 20000),), k_mode="all", target_types=frozenset({"iii"})
    )
    hits5 = largest_hits(
        SearchSpec(windows=((5, 11, 1000),), target_types=frozenset({"iii"})), 5
    )
    assert {h.p for h in hits5} == {19, 23, 29, 31, 43}
    assert largest_hits(spec, 0) == []

    hits10 = largest_hits(
        SearchSpec(windows=((10, 21, 1000),), target_types=frozenset({"iii"})), 5
    )
    wit = {(h.p, h.a, h.k): h.witnesses for h in hits10}
    assert {i for i, _ in wit[(47, 11, 17)]} == {8, 9}


def test_ratio_filter():
    base = SearchSpec(windows=((3, 7, 60),), target_types=frozenset({"iii"}))
    all_hits = run_search(base)
    filt = run_search(
        SearchSpec(windows=((3, 7, 60),), target_types=frozenset({"iii"}),
                   ratio_above=4.0)
    )
    assert {h.p for h in filt} == {h.p for h in all_hits if h.p / 3 > 4}


def test_checkpoint_resume(tmp_path):
    spec = SearchSpec(
        windows=((3, 7, 500),), k_mode="all", target_types=frozenset({"iii"})
    )
    full = run_search(spec)

    ck = str(tmp_path / "state.json")
    collected = None
    for _ in range(100):
        try:
            collected = run_search(spec, checkpoint_path=ck, max_primes=5)
            break
        except SearchAborted:
            continue
    assert collected == full

    # a different spec must refuse the same checkpoint
    other = SearchSpec(
        windows=((3, 7, 501),), k_mode="all", target_types=frozenset({"iii"})
    )
    with pytest.raises(ValueError):
        run_search(other, checkpoint_path=ck)


def test_checkpoint_empty_state_is_fresh_run(tmp_path):
    spec = SearchSpec(windows=((4, 9, 60),), target_types=frozenset({"iii"}))
    ck = str(tmp_path / "none.json")
    assert run_search(spec, checkpoint_path=ck) == run_search(spec)


def test_thread_partition_consistency():
    spec = SearchSpec(
        windows=tuple((n, 2 * n + 1, 300) for n in (3, 4)),
        target_types=frozenset({"iii"}),
    )
    assert run_search(spec, threads=1) == run_search(spec, threads=3)


def test_search_aborted_reports_distinctly(tmp_path):
    spec = SearchSpec(windows=((3, 7, 500),), target_types=frozenset({"iii"}))
    with pytest.raises(SearchAborted):
        run_search(spec, checkpoint_path=str(tmp_path / "c.json"), max_primes=2)
