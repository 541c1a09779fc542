import math
from itertools import combinations

import pytest

from kneser_chroma.errors import CapacityError
from kneser_chroma.setfam import (
    KSubset,
    binomial_exact,
    enumerate_ksubsets,
    enumerate_stable_ksubsets,
    is_stable,
    ln_binomial,
    mask_is_stable,
    rank_mask,
    stable_count,
    unrank_ksubset,
)


def brute_stable(elements, n):
    """Independent cyclic-adjacency check on 1-based element tuples."""
    es = set(elements)
    for i in es:
        succ = i % n + 1
        if succ != i and succ in es:
            return False
    return True


def brute_stable_sets(n, k):
    return sorted(
        tuple(c) for c in combinations(range(1, n + 1), k) if brute_stable(c, n)
    )


class TestEnumeration:
    def test_colex_4_2(self):
        subs = enumerate_ksubsets(4, 2)
        assert len(subs) == 6
        assert subs[0].elements() == (1, 2)
        assert subs[-1].elements() == (3, 4)

    def test_single_empty(self):
        subs = enumerate_ksubsets(5, 0)
        assert len(subs) == 1
        assert subs[0].mask == 0

    def test_count_and_distinct_10_3(self):
        subs = enumerate_ksubsets(10, 3)
        assert len(subs) == binomial_exact(10, 3) == 120
        assert len({s.mask for s in subs}) == 120

    def test_positions_are_ranks(self):
        for n, k in [(6, 3), (9, 2), (10, 5)]:
            for pos, s in enumerate(enumerate_ksubsets(n, k)):
                assert s.rank == pos == rank_mask(s.mask)

    def test_colex_order_is_sorted_by_reversed_tuple(self):
        subs = enumerate_ksubsets(7, 3)
        keys = [tuple(reversed(s.elements())) for s in subs]
        assert keys == sorted(keys)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            enumerate_ksubsets(4, 5)
        with pytest.raises(CapacityError):
            enumerate_ksubsets(65, 2)

    def test_rank_unrank_roundtrip_exhaustive(self):
        for n in range(0, 17):
            for k in range(0, n + 1):
                total = math.comb(n, k)
                for r in range(total):
                    s = unrank_ksubset(n, k, r)
                    assert s.rank == r
                    assert rank_mask(s.mask) == r

    def test_unrank_range_checks(self):
        with pytest.raises(ValueError):
            unrank_ksubset(5, 2, 10)
        with pytest.raises(ValueError):
            unrank_ksubset(5, 6, 0)


class TestStability:
    def test_gap_pair_on_c5(self):
        assert is_stable(KSubset.from_elements([1, 3], 5))

    @pytest.mark.parametrize("n", [3, 4, 7, 12])
    def test_wraparound_pair_unstable(self, n):
        assert not is_stable(KSubset.from_elements([1, n], n))

    def test_examples(self):
        assert is_stable(KSubset.from_elements([2, 4, 6], 7))
        assert is_stable(KSubset.from_elements([2, 4, 6], 6))
        assert not is_stable(KSubset.from_elements([1, 3, 6], 6))

    def test_empty_and_singletons_stable(self):
        assert mask_is_stable(0, 5)
        for n in range(1, 8):
            for i in range(1, n + 1):
                assert is_stable(KSubset.from_elements([i], n))

    def test_matches_bruteforce(self):
        for n in range(2, 13):
            for k in range(0, n + 1):
                for s in enumerate_ksubsets(n, k):
                    assert is_stable(s) == brute_stable(s.elements(), n)

    def test_subsets_of_stable_are_stable(self):
        # exhaustively for n <= 12: closure under taking subsets
        for n in range(2, 13):
            for k in range(1, n // 2 + 1):
                for s in enumerate_stable_ksubsets(n, k):
                    sub = s.mask
                    while True:
                        assert mask_is_stable(sub, n)
                        if sub == 0:
                            break
                        sub = (sub - 1) & s.mask


class TestStableEnumeration:
    def test_5_2(self):
        got = [set(s.elements()) for s in enumerate_stable_ksubsets(5, 2)]
        assert got == [{1, 3}, {1, 4}, {2, 4}, {2, 5}, {3, 5}]

    def test_counts(self):
        assert len(enumerate_stable_ksubsets(6, 2)) == 9
        got = [set(s.elements()) for s in enumerate_stable_ksubsets(4, 2)]
        assert got == [{1, 3}, {2, 4}]

    def test_matches_bruteforce_filter(self):
        for n in range(2, 13):
            for k in range(0, n // 2 + 1):
                got = [s.elements() for s in enumerate_stable_ksubsets(n, k)]
                assert sorted(got) == brute_stable_sets(n, k)
                ranks = [rank_mask(sum(1 << (e - 1) for e in t)) for t in got]
                assert ranks == sorted(ranks)

    def test_count_identity(self):
        # (n/(n-k)) C(n-k,k) against the brute-force filter
        for n in range(3, 21):
            for k in range(1, (n - 1) // 2 + 1):
                expected = n * math.comb(n - k, k) // (n - k)
                assert len(enumerate_stable_ksubsets(n, k)) == expected
                assert stable_count(n, k) == expected


class TestBinomials:
    def test_exact_values(self):
        assert binomial_exact(4, 2) == 6
        assert binomial_exact(202, 2) == 202 * 201 // 2 == 20301
        assert binomial_exact(10, 11) == 0

    def test_exact_rejects_negative(self):
        with pytest.raises(ValueError):
            binomial_exact(-1, 0)

    def test_ln_small(self):
        assert ln_binomial(4, 2) == pytest.approx(math.log(6), rel=1e-12)
        for a in (0, 1, 7, 100, 10**9):
            assert ln_binomial(a, 0) == 0.0

    def test_ln_matches_exact_all_small(self):
        for a in range(0, 65):
            for b in range(0, a + 1):
                expected = math.log(math.comb(a, b)) if math.comb(a, b) > 1 else 0.0
                got = ln_binomial(a, b)
                if expected == 0.0:
                    assert got == 0.0
                else:
                    assert got == pytest.approx(expected, rel=1e-9)

    def test_ln_large_against_exact(self):
        for a, b in [(10**6, 3), (10**6, 17), (10**9, 2), (12345678, 1000)]:
            expected = math.log(math.comb(a, b))
            assert ln_binomial(a, b) == pytest.approx(expected, rel=1e-9)

    def test_ln_huge_min_part(self):
        # high-precision gamma oracle; exact comb at this size is impractical
        import mpmath

        mpmath.mp.dps = 40
        for a, b in [(10**7, 10**6), (10**9, 10**5), (10**9, 5 * 10**8)]:
            expected = float(mpmath.log(mpmath.binomial(a, b)))
            assert ln_binomial(a, b) == pytest.approx(expected, rel=1e-9)

    def test_ln_domain(self):
        with pytest.raises(ValueError):
            ln_binomial(10, 11)
