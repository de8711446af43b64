"""Parsing and exact minimization of linear-fractional objectives."""

from fractions import Fraction as F

import pytest

from zetalab import (
    DomainError,
    EmptyResultError,
    ExponentPair,
    ParseError,
    SEED_PAIRS,
    enumerate_pairs,
    eval_objective,
    optimize,
    parse_constraint,
    parse_objective,
)
from zetalab.objectives import shuffled

H32 = SEED_PAIRS["huxley32"]


class TestParseObjective:
    def test_plain_linear(self):
        obj = parse_objective("l - k")
        assert (obj.a, obj.b, obj.c) == (F(-1), F(1), F(0))
        assert (obj.d, obj.e, obj.f) == (F(0), F(0), F(1))

    def test_ratio_with_parens(self):
        obj = parse_objective("(5k + l)/(4k + 1)")
        assert (obj.a, obj.b, obj.c) == (F(5), F(1), F(0))
        assert (obj.d, obj.e, obj.f) == (F(4), F(0), F(1))

    def test_rational_coefficients(self):
        obj = parse_objective("(1/2 + 6k)/(1 + 4k)")
        assert (obj.a, obj.b, obj.c) == (F(6), F(0), F(1, 2))
        assert (obj.d, obj.e, obj.f) == (F(4), F(0), F(1))

    def test_explicit_star_and_case(self):
        obj = parse_objective("2*K + 3*L - 1")
        assert (obj.a, obj.b, obj.c) == (F(2), F(3), F(-1))

    def test_top_level_slash_is_the_ratio_split(self):
        # Outside parentheses '/' divides objective parts, not coefficients.
        obj = parse_objective("11/8 k")
        assert (obj.a, obj.b, obj.c) == (F(0), F(0), F(11))
        assert (obj.d, obj.e, obj.f) == (F(8), F(0), F(0))

    def test_repeated_terms_accumulate(self):
        obj = parse_objective("k + k + 1 - 2k")
        assert (obj.a, obj.c) == (F(0), F(1))

    @pytest.mark.parametrize(
        "bad",
        ["", "   ", "k*l", "k^2", "(k", "k)", "k/(l)/(1)", "q + 1", "1//2", "k 2"],
    )
    def test_rejects_malformed(self, bad):
        with pytest.raises(ParseError):
            parse_objective(bad)

    def test_zero_denominator_rejected(self):
        with pytest.raises(ParseError):
            parse_objective("(k)/(0)")

    def test_error_carries_position(self):
        with pytest.raises(ParseError) as info:
            parse_objective("(5k + l")
        assert info.value.position == 7

    def test_str_round_trips_semantics(self):
        obj = parse_objective("(5k + l)/(4k + 1)")
        again = parse_objective(str(obj))
        assert again == obj


class TestEvalObjective:
    def test_threshold_form_at_huxley(self):
        obj = parse_objective("(5k + l)/(4k + 1)")
        assert eval_objective(obj, H32) == F(589, 666)

    def test_vanishing_denominator_is_domain_error(self):
        obj = parse_objective("(k + 1)/(k)")
        with pytest.raises(DomainError):
            eval_objective(obj, SEED_PAIRS["trivial"])


class TestParseConstraint:
    def test_simple(self):
        c = parse_constraint("k + l < 1")
        assert c.op == "<"
        assert c.satisfied(H32)
        assert not c.satisfied(ExponentPair(F(1, 2), F(1, 2)))

    def test_both_sides_linear(self):
        c = parse_constraint("3k + l <= k + 1/2")
        assert c.satisfied(ExponentPair(F(0), F(1, 2)))
        assert not c.satisfied(ExponentPair(F(1, 2), F(1)))

    def test_equality(self):
        c = parse_constraint("l = k + 1/2")
        assert c.satisfied(H32)
        assert not c.satisfied(SEED_PAIRS["trivial"])

    def test_no_comparator(self):
        with pytest.raises(ParseError):
            parse_constraint("k + l")


class TestOptimize:
    def test_minimizes_exactly(self):
        pairs = enumerate_pairs(list(SEED_PAIRS.values()), 4)
        obj = parse_objective("(5k + l)/(4k + 1)")
        gate = parse_constraint("k + l < 1")
        best, value = optimize(obj, pairs, gate)
        for p in pairs:
            if gate.satisfied(p):
                assert eval_objective(obj, p) >= value

    def test_order_invariant(self):
        pairs = list(enumerate_pairs(list(SEED_PAIRS.values()), 4))
        obj = parse_objective("(5k + l)/(4k + 1)")
        base = optimize(obj, pairs)
        for seed in (1, 2, 3):
            assert optimize(obj, shuffled(pairs, seed)) == base

    def test_tie_breaks_lexicographically(self):
        a = ExponentPair(F(0), F(1))
        b = ExponentPair(F(1, 2), F(1, 2))
        best, value = optimize(parse_objective("k + l"), [b, a])
        assert value == F(1)
        assert best.key() == (F(0), F(1))

    def test_empty_result(self):
        with pytest.raises(EmptyResultError):
            optimize(
                parse_objective("k"),
                [SEED_PAIRS["trivial"]],
                parse_constraint("k >= 2"),
            )

    def test_domain_violations_skipped(self):
        # denominator k vanishes at the trivial pair; the other survives
        best, value = optimize(
            parse_objective("(l)/(k)"), [SEED_PAIRS["trivial"], H32]
        )
        assert best.key() == H32.key()
        assert value == F(269, 410) / F(32, 205)
