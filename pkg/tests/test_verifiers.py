"""Verifier kinds, the four checks and their simulations through CHECK."""

import pytest
from hypothesis import given, strategies as st

from core.language import BOTTOM, EMPTY, UNIVERSE, AllAbove, Finite, Pow2AtLeast, UpTo
from families.corpus import catalog_pairs, filter_tractable, pb_tractable_pairs
from verifiers.adapters import BudgetExhausted, cb_filter_via_check, mincheck_via_check, pb_filter_via_check
from verifiers.checks import apply_verifier, bcheck, check, hcheck, max_positive, mincheck
from verifiers.kinds import (
    Arbitrary,
    Ascending,
    ConstantBounded,
    DescendingCapped,
    Minimal,
    PositiveBounded,
    SeededRandom,
    Simulated,
    UnknownVerifier,
    is_complete,
    is_stateless,
    parse_strategy,
    parse_verifier,
)

strategy = st.sampled_from([Ascending(), DescendingCapped(), DescendingCapped(8), SeededRandom(0), SeededRandom(42)])
pair = st.sampled_from(catalog_pairs(quick=True))
cb_pair = st.sampled_from(filter_tractable(catalog_pairs(quick=True), 8))
pb_triple = st.sampled_from(pb_tractable_pairs(catalog_pairs(quick=True)))


class TestChecks:
    def test_check_strategies(self):
        assert check(Pow2AtLeast(0), UNIVERSE, Ascending()) == 0
        assert check(Pow2AtLeast(0), UNIVERSE, DescendingCapped()) == 63
        assert check(Pow2AtLeast(0), UNIVERSE, DescendingCapped(6)) == 6

    def test_descending_falls_back_to_least_above_cap(self):
        assert check(EMPTY, AllAbove(100), DescendingCapped(64)) == 101

    def test_random_check_is_reproducible_witness(self):
        first = check(Pow2AtLeast(0), UNIVERSE, SeededRandom(5))
        assert first == check(Pow2AtLeast(0), UNIVERSE, SeededRandom(5))
        assert UNIVERSE.contains(first) and not Pow2AtLeast(0).contains(first)

    def test_check_bottom_on_subset(self):
        assert check(UpTo(5), UpTo(3), SeededRandom(1)) is BOTTOM

    def test_mincheck(self):
        assert mincheck(UpTo(3), UpTo(5)) == 4
        assert mincheck(UpTo(5), UpTo(3)) is BOTTOM

    def test_bcheck_bound_is_strict(self):
        assert bcheck(4, UpTo(3), UpTo(5)) is BOTTOM
        assert bcheck(5, UpTo(3), UpTo(5)) == 4

    def test_hcheck_below_largest_positive(self):
        assert hcheck(Finite((9, 12)), Finite((0, 9)), [9]) == 0
        assert hcheck(UpTo(3), UpTo(5), [0, 1, 2, 3]) is BOTTOM
        assert hcheck(Finite((9, 12)), Finite((0, 9)), []) is BOTTOM
        assert hcheck(Finite((9, 12)), Finite((0, 9)), [BOTTOM]) is BOTTOM

    def test_max_positive(self):
        assert max_positive([3, BOTTOM, 7]) == 7
        assert max_positive([BOTTOM]) is BOTTOM

    def test_apply_verifier_dispatch(self):
        assert apply_verifier(Arbitrary(), UpTo(3), UpTo(5)) == 4
        assert apply_verifier(Minimal(), UpTo(3), UpTo(5)) == 4
        assert apply_verifier(ConstantBounded(4), UpTo(3), UpTo(5)) is BOTTOM
        assert apply_verifier(PositiveBounded(), UpTo(3), UpTo(5), [0, 1]) is BOTTOM
        assert apply_verifier(Simulated(Minimal(), DescendingCapped()), UpTo(3), UNIVERSE) == 4


class TestKinds:
    def test_parse_verifier(self):
        assert parse_verifier("check") == Arbitrary()
        assert parse_verifier("mincheck") == Minimal()
        assert parse_verifier("bcheck:8") == ConstantBounded(8)
        assert parse_verifier("hcheck") == PositiveBounded()
        assert parse_verifier("mincheck~check", DescendingCapped()) == Simulated(Minimal(), DescendingCapped())

    @pytest.mark.parametrize("text", ["foo", "bcheck:x", "check~check", "hcheck~mincheck", "bcheck:-1"])
    def test_parse_errors(self, text):
        with pytest.raises(UnknownVerifier):
            parse_verifier(text)

    def test_parse_strategy(self):
        assert parse_strategy(None) == Ascending()
        assert parse_strategy("descending:16") == DescendingCapped(16)
        assert parse_strategy("random:3") == SeededRandom(3)
        with pytest.raises(UnknownVerifier):
            parse_strategy("sideways")

    def test_rendering(self):
        assert str(Arbitrary()) == "check(ascending)"
        assert str(Simulated(ConstantBounded(8))) == "bcheck:8~check(ascending)"
        assert str(Simulated(PositiveBounded(), SeededRandom(2))) == "hcheck~check(random:2)"

    def test_completeness_and_memo(self):
        assert is_complete(Arbitrary()) and is_complete(Minimal())
        assert is_complete(Simulated(Minimal()))
        assert not is_complete(ConstantBounded(8)) and not is_complete(PositiveBounded())
        assert is_stateless(Simulated(ConstantBounded(8)))
        assert not is_stateless(PositiveBounded())
        assert not is_stateless(Simulated(PositiveBounded()))


class TestAdapters:
    """Simulations through CHECK answer exactly like the verifiers they stand for."""

    @given(p=pair, s=strategy)
    def test_mincheck_via_check(self, p, s):
        target, candidate = p
        assert mincheck_via_check(target, candidate, s) == mincheck(target, candidate)

    @given(p=cb_pair, s=strategy)
    def test_cb_filter(self, p, s):
        target, candidate = p
        assert cb_filter_via_check(8, target, candidate, s) == bcheck(8, target, candidate)

    @given(t=pb_triple, s=strategy)
    def test_pb_filter(self, t, s):
        target, candidate, seen = t
        assert pb_filter_via_check(target, candidate, seen, s) == hcheck(target, candidate, seen)

    def test_pb_filter_threshold_zero(self):
        assert pb_filter_via_check(UpTo(3), UNIVERSE, [0]) is BOTTOM
        assert pb_filter_via_check(UpTo(3), UNIVERSE, []) is BOTTOM

    def test_excision_budget(self):
        with pytest.raises(BudgetExhausted):
            cb_filter_via_check(8, EMPTY, AllAbove(20), budget=5)
