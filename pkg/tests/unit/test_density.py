"""Unit tests for finite-horizon density functionals"""

from fractions import Fraction

import pytest

from src.density import (
    MAX_PROGRESSIONS,
    IndexSet,
    banach_profile,
    banach_window,
    density_profile,
    empirical_bounds,
    exact_ap_density,
    upper_banach_estimate,
)
from src.errors import MalformedInputError, TooManyProgressionsError


@pytest.fixture
def fives():
    """Multiples of 5 observed on [0, 999]"""
    return IndexSet.from_progressions([(0, 5)], 999)


class TestIndexSet:
    """Construction and membership"""

    def test_from_indices_dedupes(self):
        """Duplicates collapse, horizon defaults to the maximum"""
        A = IndexSet.from_indices([5, 1, 5, 3])
        assert A.elements == (1, 3, 5)
        assert A.horizon == 5
        assert 3 in A and 4 not in A

    def test_unsorted_rejected(self):
        """Direct construction requires sorted distinct elements"""
        with pytest.raises(MalformedInputError):
            IndexSet((3, 1), 10)

    def test_elements_within_horizon(self):
        """Elements beyond the horizon are malformed"""
        with pytest.raises(MalformedInputError):
            IndexSet((1, 11), 10)

    def test_structure_must_match(self):
        """Declared progressions must reproduce the elements"""
        with pytest.raises(MalformedInputError):
            IndexSet((0, 4, 8), 10, structure=((0, 4), (0, 6)))

    def test_progression_union(self):
        """Multiples of 4 or 6 below 120 give 40 elements"""
        A = IndexSet.from_progressions([(0, 4), (0, 6)], 119)
        assert len(A) == 40
        assert A.count_between(0, 11) == 4

    def test_bad_progression(self):
        """Step must be positive"""
        with pytest.raises(MalformedInputError):
            IndexSet.from_progressions([(0, 0)], 10)


class TestProfile:
    """Exact prefix densities"""

    def test_multiples_of_3(self):
        """34 multiples of 3 in [0, 99]"""
        assert density_profile(IndexSet.from_progressions([(0, 3)], 99))[99] == Fraction(17, 50)

    def test_bounds_ordering(self, fives):
        """lower ≤ upper ≤ Banach estimate"""
        lower, upper = empirical_bounds(fives)
        assert lower <= upper <= upper_banach_estimate(fives)
        assert upper == Fraction(101, 501)

    def test_tail_start_checked(self, fives):
        """tail_start lies inside [0, H]"""
        with pytest.raises(MalformedInputError):
            empirical_bounds(fives, tail_start=1000)
        with pytest.raises(MalformedInputError):
            upper_banach_estimate(fives, tail_start=-1)

    def test_empty_set(self):
        """The empty set has density 0 everywhere"""
        A = IndexSet((), 50)
        assert empirical_bounds(A) == (0, 0)
        assert upper_banach_estimate(A) == 0


class TestBanach:
    """Sliding window maxima"""

    def test_multiples_of_5(self, fives):
        """Any 100 consecutive integers hold 20 multiples of 5"""
        assert banach_window(fives, 100) == (20, Fraction(1, 5))

    def test_clustered_set(self):
        """A run of 10 fills a window of 10"""
        assert banach_window(IndexSet.from_indices(range(100, 110)), 10) == (10, Fraction(1))

    def test_window_range(self, fives):
        """1 ≤ N ≤ H + 1"""
        with pytest.raises(MalformedInputError):
            banach_window(fives, 0)
        with pytest.raises(MalformedInputError):
            banach_window(fives, 1001)
        assert banach_window(fives, 1000) == (200, Fraction(1, 5))

    def test_superset_monotone(self, fives):
        """A ⊇ B gives a_N(A) ≥ a_N(B)"""
        bigger = IndexSet.from_progressions([(0, 5), (1, 5)], 999)
        assert bigger.is_superset(fives)
        for N in (1, 7, 50, 333):
            assert banach_window(bigger, N)[0] >= banach_window(fives, N)[0]

    def test_profile_rows(self, fives):
        """banach_profile lists (N, a_N, ratio)"""
        assert banach_profile(fives, [1, 5]) == [(1, 1, Fraction(1)), (5, 1, Fraction(1, 5))]


class TestExactDensity:
    """Inclusion-exclusion over progressions"""

    def test_multiples_of_4_or_6(self):
        """1/4 + 1/6 - 1/12 = 1/3"""
        assert exact_ap_density([(0, 4), (0, 6)]) == Fraction(1, 3)

    def test_disjoint_classes(self):
        """Evens and 1 mod 4 never meet"""
        assert exact_ap_density([(0, 2), (1, 4)]) == Fraction(3, 4)

    def test_complementary_classes(self):
        """Evens and odds cover everything"""
        assert exact_ap_density([(0, 2), (1, 2)]) == 1

    def test_empty_union(self):
        """No progressions, density 0"""
        assert exact_ap_density([]) == 0

    def test_too_many(self):
        """Inclusion-exclusion is capped"""
        with pytest.raises(TooManyProgressionsError):
            exact_ap_density([(0, d) for d in range(2, MAX_PROGRESSIONS + 3)])

    def test_agrees_with_long_profile(self):
        """Profile at a multiple of the lcm matches the exact density"""
        A = IndexSet.from_progressions([(0, 4), (0, 6)], 1199)
        assert density_profile(A)[1199] == Fraction(400, 1200)
