"""Unit tests for lower-block bounds and the block fraction bound"""

from fractions import Fraction

import pytest

from src.dyadic import ZERO, Dyadic, pow2
from src.errors import MalformedInputError, ScheduleConditionError
from src.seqspace import SUP, SparseVec
from src.verify.block_bounds import (
    count_periodic,
    exclusion_set,
    exclusion_violations,
    fhc0_check,
    fhc1_check,
    fhc2_bound,
    fhc2_fraction,
    fhc2_sweep,
    lower_block_profile,
    phi_chain_length,
)


class TestExclusionSet:
    """Windows I_i of a block"""

    def test_single_interval(self, small2):
        """i ≥ δ_1 = 14 gives one interval of length δ_1"""
        window = exclusion_set(1, 20, small2)
        assert window.intervals == ((76, 90),)
        assert window.length == 14
        assert 80 in window and 90 not in window

    def test_split_interval(self, small2):
        """i < δ_l wraps around to the block start"""
        window = exclusion_set(1, 4, small2)
        assert window.intervals == ((92, 96), (32, 42))
        assert window.length == 14

    def test_block0_empty(self, small2):
        """δ_0 = 0 gives no intervals"""
        assert exclusion_set(0, 3, small2).intervals == ()

    def test_offset_range(self, small2):
        """i lies in [0, b_{l+1} - b_l)"""
        with pytest.raises(MalformedInputError):
            exclusion_set(1, 64, small2)


class TestLowerBlocks:
    """fhc0 and fhc1"""

    def test_fhc0_basis_equality(self, small2):
        """e_32: the sup meets the bound 2^14/2^4 exactly"""
        report = fhc0_check(SparseVec.basis(32), 0, 1, small2)
        assert report.ok, report.summary()
        assert report["sup"] == Dyadic.of(1024)
        assert report["bound"] == Dyadic.of(1024)
        assert report["chain_length"] == 1

    def test_fhc0_not_in_chain(self, small2):
        """φ(2) = 0 skips block 1, so nothing from block 2 reaches it first"""
        assert phi_chain_length(1, 2, small2) is None
        report = fhc0_check(SparseVec.basis(96), 1, 2, small2)
        assert report.ok
        assert report["chain_length"] == "not in chain"
        assert report["sup"] == ZERO

    def test_fhc0_outside_chain_of_block_3(self, small2):
        """φ(3) = 1 and φ(1) = 0: block 2 never sees mass from block 3"""
        assert phi_chain_length(2, 3, small2) is None
        assert phi_chain_length(0, 3, small2) == 2
        lo, _ = small2.block_bounds(3)
        x = SparseVec.basis(lo) + SparseVec.basis(lo + 5, Dyadic.parse("-3/4"))
        report = fhc0_check(x, 2, 3, small2)
        assert report.ok, report.summary()
        assert report["sup"] == ZERO
        assert report["chain_length"] == "not in chain"

    def test_fhc1_wrap_vector(self, small2):
        """e_95 drops 1/16 into block 0 at the first step"""
        report = fhc1_check(SparseVec.basis(95), 0, 1, small2)
        assert report.ok, report.summary()
        assert report["max"] == pow2(-4)
        assert report["argmax"] == 1
        assert report["steps"] == 51

    def test_block_order_checked(self, small2):
        """n < l"""
        with pytest.raises(MalformedInputError):
            fhc0_check(SparseVec.basis(32), 1, 1, small2)

    def test_sup_norm_needs_41(self, small2, small41):
        """SMALL-2 fails (41), SMALL-41 supports the sup version"""
        with pytest.raises(ScheduleConditionError):
            fhc0_check(SparseVec.basis(32), 0, 1, small2, SUP)
        assert fhc0_check(SparseVec.basis(32), 0, 1, small41, SUP).ok

    def test_profile_shape(self, small2):
        """One dict of lower-block norms per step"""
        profile = lower_block_profile(SparseVec.basis(95), 1, 3, small2)
        assert len(profile) == 3
        assert profile[0][0].is_zero()
        assert profile[1][0].value == pow2(-4)


class TestBlockFraction:
    """fhc2 on one block"""

    def test_basis_fraction(self, small2):
        """102 of the 128 steps keep ‖P_1 T^j e_32‖ ≥ 2^13"""
        report = fhc2_fraction(SparseVec.basis(32), 1, 127, small2)
        assert report.ok
        assert report["fraction"] == Fraction(51, 64)
        assert report["bound"] == Fraction(11, 32)
        assert report["count"] == 102

    def test_bound_formula(self, small2):
        """1 - 2δ_l/(k+1) - 2δ_l/(b_{l+1}-b_l)"""
        assert fhc2_bound(1, 127, small2) == Fraction(44, 128)
        assert fhc2_bound(2, 0, small2) < 0

    def test_sweep(self, small2):
        """No horizon up to 1000 violates the bound"""
        report = fhc2_sweep(SparseVec.basis(32), 1, 1000, small2)
        assert report.ok
        assert report["violations"] == 0

    def test_negative_horizon(self, small2):
        """k ≥ 0"""
        with pytest.raises(MalformedInputError):
            fhc2_fraction(SparseVec.basis(32), 1, -1, small2)

    def test_count_periodic(self):
        """Periodic flags extend exactly"""
        flags = [True, False, True]
        assert count_periodic(flags, 0) == 1
        assert count_periodic(flags, 5) == 4
        assert count_periodic(flags, 6) == 5

    def test_exclusion_violations_clean(self, small2):
        """The window inequality holds along the orbit of e_32"""
        assert exclusion_violations(SparseVec.basis(32), 1, 255, small2) == []
