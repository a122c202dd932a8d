import json
import math
import random

import pytest

from lilguard import entropy as en
from lilguard.lz77 import WindowConfig

from reference import brute_sigma_count


def test_golden_mean_small_counts():
    assert en.enumerate_sigma(en.GOLDEN_MEAN, 3) == 5  # 000 001 010 100 101
    assert en.enumerate_sigma(en.GOLDEN_MEAN, 8) == 55
    assert en.enumerate_sigma(en.GOLDEN_MEAN, 7) == 34


def test_unconstrained_counts_are_powers():
    assert en.enumerate_sigma(en.UNCONSTRAINED_BINARY, 10) == 1024
    for k in (1, 3, 6, 12):
        assert en.enumerate_sigma(en.UNCONSTRAINED_BINARY, k) == 2**k
    abc = en.ConstrainedSource(alphabet=("a", "b", "c"))
    for k in (1, 2, 5, 9):
        assert en.enumerate_sigma(abc, k) == 3**k


@pytest.mark.parametrize("k", range(1, 11))
def test_enumeration_matches_brute_force(k):
    for source in (
        en.GOLDEN_MEAN,
        en.ConstrainedSource(("a", "b"), frozenset({"aba"})),
        en.ConstrainedSource(("a", "b", "c"), frozenset({"ab", "cc"})),
    ):
        got = en.enumerate_sigma(source, k)
        want = brute_sigma_count(source.alphabet, source.forbidden, k)
        assert got == want


def test_golden_mean_fibonacci_recurrence():
    counts = {k: en.enumerate_sigma(en.GOLDEN_MEAN, k) for k in range(1, 21)}
    assert counts[1] == 2 and counts[2] == 3
    for k in range(3, 21):
        assert counts[k] == counts[k - 1] + counts[k - 2]


def test_enumeration_guard():
    with pytest.raises(en.EnumerationTooLargeError):
        en.enumerate_sigma(en.UNCONSTRAINED_BINARY, 25)


def test_per_symbol_entropy_values():
    for k in (1, 4, 9):
        assert en.per_symbol_entropy(en.UNCONSTRAINED_BINARY, k).h == pytest.approx(1.0)
    est = en.per_symbol_entropy(en.GOLDEN_MEAN, 8)
    assert est.count == 55
    assert est.h == pytest.approx(math.log2(55) / 8)
    assert est.h == pytest.approx(0.7227, abs=1e-4)


def test_entropy_of_empty_sigma_raises():
    dead = en.ConstrainedSource(("a", "b"), frozenset({"a", "b"}))
    with pytest.raises(en.EmptySigmaError):
        en.per_symbol_entropy(dead, 3)


def test_entropy_non_increasing_for_extension_closed_source():
    values = [en.per_symbol_entropy(en.GOLDEN_MEAN, k).h for k in range(1, 13)]
    for a, b in zip(values, values[1:]):
        assert b <= a + 1e-12
    assert en.extension_closed(en.GOLDEN_MEAN, 6)
    assert not en.extension_closed(en.ConstrainedSource(("a", "b"), frozenset({"aa", "ab"})), 2)


def test_epsilon_values():
    assert en.epsilon(2, 2) == pytest.approx(3.0)
    assert en.epsilon(2, 10) == pytest.approx(3.0)
    assert en.epsilon(9, 2) == pytest.approx((3 + 9 + math.log2(4.5)) / 8)
    assert en.epsilon(9, 2) == pytest.approx(1.77124, abs=1e-5)
    with pytest.raises(ValueError):
        en.epsilon(1, 2)


def test_epsilon_strictly_decreasing_from_four():
    prev = en.epsilon(4, 2)
    ls = 5
    while ls <= 2**16:
        cur = en.epsilon(ls, 2)
        assert cur < prev
        prev = cur
        ls = ls * 2 if ls >= 64 else ls + 1


# Hand evaluation of the displayed window formula, unconstrained binary,
# lookahead 3: l = 2, |sigma{2}| = 4, lam = 2,
#   n = (1*2 + 2*4) + (1*2 + 2*4) + 3*((1*2 + 0*4) + (1*2 + 0*4) + 1) = 35
def test_recommended_window_golden_values():
    assert en.recommended_window(en.UNCONSTRAINED_BINARY, 3) == 35
    # golden mean, lookahead 4: l = 3, |sigma{3}| = 5, lam = 3, counts 2, 3, 5:
    #   (2 + 8 + 24) + (2 + 6 + 15) + 4*((4 + 4 + 0) + (4 + 3 + 0) + 1) = 121
    assert en.recommended_window(en.GOLDEN_MEAN, 4) == 121


def test_recommended_window_smallest_lookahead():
    assert en.recommended_window(en.UNCONSTRAINED_BINARY, 2) > 2
    assert en.recommended_window(en.GOLDEN_MEAN, 2) > 2


def test_sampler_produces_members():
    rng = random.Random(0)
    for _ in range(20):
        s = en.sample_member(en.GOLDEN_MEAN, 200, rng)
        assert len(s) == 200
        assert "11" not in s


def test_sampler_budget_error():
    rng = random.Random(0)
    dead = en.ConstrainedSource(("a", "b"), frozenset({"aa", "ab", "ba", "bb"}))
    with pytest.raises(en.SamplingError):
        en.sample_member(dead, 5, rng, budget=1000)


def test_bound_unconstrained_reduces_to_one_plus_epsilon():
    report = en.verify_entropy_bound(en.UNCONSTRAINED_BINARY, 3, samples=50, seed=9)
    assert report.h == pytest.approx(1.0)
    assert report.upper_bound_holds
    assert report.rho_max <= 1.0 + report.epsilon


def test_bound_golden_mean_holds_per_sample():
    report = en.verify_entropy_bound(en.GOLDEN_MEAN, 8, samples=100, seed=123)
    assert report.n == 3760
    assert report.h == pytest.approx(math.log2(34) / 7)
    assert report.upper_bound_holds
    assert report.rho_max <= report.h + report.epsilon


def test_bound_loose_for_all_zero_member():
    n = en.recommended_window(en.GOLDEN_MEAN, 8)
    config = WindowConfig(window_len=n, lookahead_len=8)
    rho = en.member_ratio(en.GOLDEN_MEAN, "0" * (n - 8), config)
    bound = en.per_symbol_entropy(en.GOLDEN_MEAN, 7).h + en.epsilon(8, 2)
    assert rho <= bound - 0.5


def test_bound_report_json_keys():
    report = en.verify_entropy_bound(en.GOLDEN_MEAN, 4, samples=5, seed=2)
    payload = json.loads(report.to_json())
    assert list(payload) == [
        "source", "alphabet_size", "lookahead_len", "n", "h", "epsilon",
        "rho_min", "rho_mean", "rho_max", "upper_bound_holds",
    ]
    assert payload["alphabet_size"] == 2
    assert payload["upper_bound_holds"] is True


def test_verification_is_deterministic():
    a = en.verify_entropy_bound(en.GOLDEN_MEAN, 6, samples=10, seed=7)
    b = en.verify_entropy_bound(en.GOLDEN_MEAN, 6, samples=10, seed=7)
    assert a == b


def test_source_validation():
    with pytest.raises(ValueError):
        en.ConstrainedSource(("a",))
    with pytest.raises(ValueError):
        en.ConstrainedSource(("a", "b"), frozenset({""}))
    with pytest.raises(ValueError):
        en.ConstrainedSource(("a", "b"), frozenset({"ac"}))
