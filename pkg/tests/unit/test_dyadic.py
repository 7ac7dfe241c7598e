"""Unit tests for exact dyadic arithmetic"""

from fractions import Fraction

import pytest

from src.dyadic import ONE, ZERO, Dyadic, Ordering, arith, compare, dyadic_sum, pow2
from src.errors import DyadicOverflowError, MalformedInputError


class TestCanonicalForm:
    """Structural equality relies on a unique representation"""

    def test_of_strips_trailing_zero_bits(self):
        """12·2^0 normalizes to 3·2^2"""
        x = Dyadic.of(12)
        assert (x.sign, x.mantissa, x.exponent) == (1, 3, 2)

    def test_zero_is_unique(self):
        """Any zero numerator gives the ZERO constant"""
        assert Dyadic.of(0, 17) == ZERO
        assert (ZERO.sign, ZERO.mantissa, ZERO.exponent) == (0, 0, 0)

    def test_non_canonical_fields_rejected(self):
        """Even mantissas cannot be constructed directly"""
        with pytest.raises(MalformedInputError):
            Dyadic(1, 4, 0)

    def test_exponent_range_checked(self):
        """Exponents outside signed 64 bits overflow"""
        with pytest.raises(DyadicOverflowError):
            pow2(2 ** 63)
        with pytest.raises(DyadicOverflowError):
            pow2(2 ** 62).shift(2 ** 62)

    def test_equal_values_compare_equal(self):
        """1/2 built three ways is one value"""
        assert Dyadic.of(1, -1) == Dyadic.parse("0.5") == Dyadic.from_fraction(Fraction(2, 4))


class TestArithmetic:
    """Exact +, -, *, powers and shifts"""

    def test_quarter_plus_quarter(self):
        """1/4 + 1/4 = 1/2"""
        assert Dyadic.parse("1/4") + Dyadic.parse("1/4") == Dyadic.of(1, -1)

    def test_operator_weights(self):
        """2^-4 · 2^14 = 1024, the wrap weight meeting the doubling gain"""
        assert pow2(-4) * pow2(14) == Dyadic.of(1024)

    def test_cancellation_to_zero(self):
        """x - x is ZERO"""
        x = Dyadic.parse("-3*2^-100")
        assert (x - x).is_zero()

    def test_mixed_int_and_fraction(self):
        """ints and dyadic Fractions mix in both directions"""
        x = Dyadic.parse("3/4")
        assert x + 1 == Dyadic.parse("7/4")
        assert 1 - x == Dyadic.parse("1/4")
        assert x * Fraction(1, 2) == Dyadic.parse("3/8")

    def test_power_and_sign(self):
        """(-3/2)^3 = -27/8"""
        assert Dyadic.parse("-3/2") ** 3 == Dyadic.parse("-27/8")
        assert Dyadic.parse("-3/2") ** 0 == ONE

    def test_shift_is_multiplication_by_power_of_two(self):
        """shift(e) equals multiplying by 2^e"""
        x = Dyadic.parse("5/8")
        assert x.shift(-80) == x * pow2(-80)

    def test_huge_mantissas_stay_exact(self):
        """1 + 2^-5000 - 1 recovers 2^-5000 exactly"""
        tiny = pow2(-5000)
        assert (ONE + tiny) - ONE == tiny

    def test_named_entry_point(self):
        """arith dispatches the named operations"""
        a, b = Dyadic.parse("1/4"), Dyadic.parse("3/4")
        assert arith("add", a, b) == ONE
        assert arith("sub", a, b) == Dyadic.parse("-1/2")
        assert arith("mul", a, b) == Dyadic.parse("3/16")
        assert arith("neg", a) == Dyadic.parse("-1/4")
        assert arith("abs", -b) == b
        with pytest.raises(MalformedInputError):
            arith("div", a, b)

    def test_sum_of_empty_is_zero(self):
        """dyadic_sum of nothing is ZERO"""
        assert dyadic_sum([]) == ZERO
        assert dyadic_sum([pow2(-1), pow2(-2), pow2(-2)]) == ONE


class TestOrdering:
    """Exact three-way comparison"""

    def test_compare_values(self):
        """Ordering enum follows the sign of a - b"""
        assert compare(Dyadic.of(1), Dyadic.of(2)) is Ordering.LESS
        assert compare(Dyadic.of(2), Dyadic.of(2)) is Ordering.EQUAL
        assert compare(Dyadic.of(-1), Dyadic.of(-2)) is Ordering.GREATER

    def test_tiny_differences_are_seen(self):
        """1 + 2^-4000 > 1"""
        assert ONE + pow2(-4000) > ONE
        assert -(ONE + pow2(-4000)) < -ONE

    def test_compare_with_non_dyadic_fraction(self):
        """1/3 lies strictly between 5/16 and 3/8"""
        third = Fraction(1, 3)
        assert Dyadic.parse("5/16") < third
        assert Dyadic.parse("3/8") > third

    def test_compare_with_int(self):
        """Integers compare directly"""
        assert Dyadic.parse("1/2") < 1
        assert Dyadic.of(4) >= 4


class TestParseAndRender:
    """Text forms accepted on the command line"""

    @pytest.mark.parametrize("text,expected", [
        ("5", Dyadic.of(5)),
        ("-0.75", Dyadic.of(-3, -2)),
        ("3/4", Dyadic.of(3, -2)),
        ("-3*2^-100", Dyadic.of(-3, -100)),
        ("0", ZERO),
    ])
    def test_parse_forms(self, text, expected):
        """Integer, decimal, a/b and m*2^e forms"""
        assert Dyadic.parse(text) == expected

    @pytest.mark.parametrize("text", ["1/3", "0.1", "abc", "1/0", ""])
    def test_parse_rejects_non_dyadic(self, text):
        """Non-dyadic or non-numeric text fails with MalformedInputError"""
        with pytest.raises(MalformedInputError):
            Dyadic.parse(text)

    def test_render_switches_to_power_form(self):
        """Large exponents render as m*2^e"""
        assert Dyadic.parse("-3/4").render() == "-0.75"
        assert pow2(-78).render() == "1*2^-78"
        assert Dyadic.of(1024).render() == "1024"

    @pytest.mark.parametrize("value", ["-0.75", "3*2^-100", "1024", "0", "-5*2^70"])
    def test_parse_render_identity(self, value):
        """parse(render(x)) == x"""
        x = Dyadic.parse(value)
        assert Dyadic.parse(x.render()) == x

    def test_json_form(self):
        """JSON keeps the mantissa as a decimal string"""
        x = Dyadic.parse("-3*2^-80")
        assert x.to_json() == {"m": "3", "e": -80, "s": -1}
        assert Dyadic.from_json(x.to_json()) == x

    def test_long_mantissa_serializes(self):
        """A distance like 2^-80 + 2^-40000 has a 12000-digit mantissa"""
        x = pow2(-80) + pow2(-40000)
        data = x.to_json()
        assert len(data["m"]) > 12000
        assert Dyadic.from_json(data) == x
        assert Dyadic.parse(x.render()) == x

    def test_from_json_rejects_garbage(self):
        """Missing keys are malformed input"""
        with pytest.raises(MalformedInputError):
            Dyadic.from_json({"m": "3"})

    def test_from_fraction_requires_power_of_two(self):
        """1/3 is not dyadic"""
        with pytest.raises(MalformedInputError):
            Dyadic.from_fraction(Fraction(1, 3))

    def test_approx_never_uses_float(self):
        """2^-2000 is far below float range but still approximates"""
        text = pow2(-2000).approx(4)
        assert text.startswith("8.71") and text.endswith("e-603")
        assert Dyadic.parse("1/4").approx(3) == "2.50e-1"
