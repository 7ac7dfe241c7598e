"""Unit tests for Inequality and WitnessReport"""

from fractions import Fraction

import pytest

from src.dyadic import Dyadic, pow2
from src.errors import MalformedInputError
from src.seqspace import L1, SUP, NormValue, SparseVec
from src.verify.report import Inequality, WitnessReport, render_exact


class TestInequality:
    """holds is derived from the stored sides"""

    @pytest.mark.parametrize("relation,expected", [
        ("<", True), ("<=", True), ("==", False), (">=", False), (">", False),
    ])
    def test_relations(self, relation, expected):
        """2^-80 against 1/2"""
        assert Inequality("d", pow2(-80), relation, Dyadic.parse("1/2")).holds is expected

    def test_mixed_exact_types(self):
        """Dyadic, Fraction and int sides compare exactly"""
        assert Inequality("a", Fraction(51, 64), ">=", Fraction(11, 32)).holds
        assert Inequality("b", 3, "==", Dyadic.of(3)).holds
        assert Inequality("c", Fraction(1, 3), ">", Dyadic.parse("5/16")).holds

    def test_norm_sides(self):
        """Norms compare with norms of the same kind only"""
        assert Inequality("n", NormValue(L1, Dyadic.of(1)), "<=", NormValue(L1, Dyadic.of(2))).holds
        with pytest.raises(MalformedInputError):
            Inequality("n", NormValue(L1, Dyadic.of(1)), "<=", Dyadic.of(2)).holds
        with pytest.raises(MalformedInputError):
            Inequality("n", NormValue(L1, Dyadic.of(1)), "<=", NormValue(SUP, Dyadic.of(2))).holds

    def test_unknown_relation(self):
        """Only the five relations are accepted"""
        with pytest.raises(MalformedInputError):
            Inequality("x", 1, "!=", 2)

    def test_render_marks_failures(self):
        """FAILED appears only for violated inequalities"""
        assert Inequality("x", 1, "<", 2).render() == "[ok] x: 1 < 2"
        assert Inequality("x", 2, "<", 1).render().startswith("[FAILED]")


class TestWitnessReport:
    """Objects plus inequalities"""

    def test_ok_and_failed(self):
        """One failing inequality fails the report"""
        good = Inequality("good", 1, "<", 2)
        bad = Inequality("bad", 3, "<", 2)
        report = WitnessReport("demo", {"m": 7}, (good, bad))
        assert not report.ok
        assert report.failed() == (bad,)
        assert report["m"] == 7

    def test_empty_report_passes(self):
        """No inequalities, nothing failed"""
        assert WitnessReport("demo").ok

    def test_summary_renders_exact_values(self):
        """Objects render in their exact text forms"""
        report = WitnessReport(
            "demo",
            {"z": Dyadic.parse("1/4"), "v": SparseVec.basis(3, 2), "r": Fraction(1, 3)},
            (Inequality("small", pow2(-80), "<", 1),),
            notes=("just a note",),
        )
        text = report.summary()
        assert text.splitlines()[0] == "demo: PASS"
        assert "  z = 0.25" in text
        assert "  v = 2*e_3" in text
        assert "  r = 1/3" in text
        assert "note: just a note" in text

    def test_render_exact_lists(self):
        """Nested lists keep exact forms"""
        assert render_exact([[1088, 3]]) == "[[1088, 3]]"
