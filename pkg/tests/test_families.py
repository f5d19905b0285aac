from __future__ import annotations

from fractions import Fraction

import pytest

from sclcone.families import (
    CongruenceFit,
    ScanRow,
    ScanTable,
    detect_congruence_pattern,
    fit_rational_function,
    read_csv,
    scan,
    write_csv,
)
from sclcone.engine import formula_commutator, walker_reference

F = Fraction


def synthetic_table(values: list[tuple[int, Fraction]], order_b: int = 7) -> ScanTable:
    rows = [ScanRow(o, order_b, "finite", v.numerator, v.denominator, 0) for o, v in values]
    return ScanTable("synthetic", rows)


class TestScan:
    def test_commutator_grid(self):
        table = scan("[a,b]", [2, 3, 4], [2, 3], jobs=1)
        assert len(table.rows) == 6
        for r in table.rows:
            assert r.status == "finite"
            assert r.value == formula_commutator((r.order_a, r.order_b))

    def test_single_cell(self):
        table = scan("ab", [2], [3])
        assert table.rows[0].value == F(1, 12)

    def test_infinite_rows_recorded(self):
        table = scan("ab", [0], [3])
        assert table.rows[0].status == "infinite" and table.rows[0].value is None

    def test_parallel_matches_serial(self):
        t1 = scan("[a,b]", [2, 3, 5], [4], jobs=1)
        t2 = scan("[a,b]", [2, 3, 5], [4], jobs=2)
        strip = lambda t: [(r.order_a, r.order_b, r.status, r.num, r.den) for r in t.rows]
        assert strip(t1) == strip(t2)

    def test_rejects_bad_orders(self):
        with pytest.raises(ValueError):
            scan("ab", [1], [2])


class TestCsv(object):
    def test_round_trip(self, tmp_path):
        table = scan("ab", [2, 3], [3, 4])
        path = tmp_path / "t.csv"
        write_csv(table, str(path))
        back = read_csv(str(path))
        assert [(r.order_a, r.order_b, r.status, r.num, r.den) for r in back.rows] == [
            (r.order_a, r.order_b, r.status, r.num, r.den) for r in table.rows
        ]

    def test_header_checked(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("nope\n1\n")
        with pytest.raises(ValueError):
            read_csv(str(path))


class TestFitting:
    def test_exact_fit_half_minus_inverse(self):
        pts = [(o, F(1, 2) - F(1, o)) for o in range(2, 13)]
        fits = detect_congruence_pattern(synthetic_table(pts), "a", 3, 3)
        assert len(fits) == 1
        f = fits[0]
        assert f.period == 1
        for o in range(2, 30):
            assert f.evaluate(o) == F(1, 2) - F(1, o)
        # canonical monic-denominator form of (o-2)/(2o)
        assert f.numerator == (F(-1), F(1, 2))
        assert f.denominator == (F(0), F(1))

    def test_constant_table(self):
        pts = [(o, F(5, 14)) for o in range(2, 10)]
        fits = detect_congruence_pattern(synthetic_table(pts), "a", 3, 3)
        assert len(fits) == 1
        assert fits[0].period == 1
        assert fits[0].numerator == (F(5, 14),)
        assert fits[0].denominator == (F(1),)

    def test_counterexample_class_degree_2_2(self):
        # 1 - 3(o-1)/(o(o+1)) over o = 13, 19, 25, ... (the class 1 mod 6)
        pts = [(o, 1 - F(3 * (o - 1), o * (o + 1))) for o in range(13, 80, 6)]
        fits = detect_congruence_pattern(synthetic_table(pts), "a", 3, 3)
        assert len(fits) == 1
        f = fits[0]
        assert f.period == 1
        assert len(f.numerator) == 3 and len(f.denominator) == 3  # degree (2,2)
        for o, v in pts:
            assert f.evaluate(o) == v
        assert f.evaluate(103) == 1 - F(3 * 102, 103 * 104)

    def test_piecewise_commutator_scan_at_b7(self):
        # 1/2 - 1/min(o_a, 7): two fits with a breakpoint at o_a = 7
        table = scan("[a,b]", list(range(2, 13)), [7])
        fits = detect_congruence_pattern(table, "a", 4, 3)
        assert [f.period for f in fits] == [1, 1]
        head, tail = fits
        assert (head.o_min, head.o_max) == (2, 6)
        assert (tail.o_min, tail.o_max) == (7, 12)
        for o in range(2, 7):
            assert head.evaluate(o) == F(1, 2) - F(1, o)
        for o in range(7, 13):
            assert tail.evaluate(o) == F(5, 14)

    def test_true_congruence_period(self):
        # alternating values force period 2
        pts = [(o, F(1, 2) if o % 2 == 0 else F(1, 3)) for o in range(2, 14)]
        fits = detect_congruence_pattern(synthetic_table(pts), "a", 4, 2)
        assert {f.period for f in fits} == {2}
        assert len(fits) == 2

    def test_no_fit_within_caps_reports_empty(self):
        # "random" values with huge prime structure defeat low-degree fits
        pts = [(o, F(1, o * o + o + 1)) for o in range(2, 9)]
        fits = detect_congruence_pattern(synthetic_table(pts), "a", 1, 0, max_segments=1)
        assert fits == []

    def test_axis_validation(self):
        table = scan("[a,b]", [2, 3], [4, 5])
        with pytest.raises(ValueError):
            detect_congruence_pattern(table, "a", 2, 2)
        with pytest.raises(ValueError):
            detect_congruence_pattern(table, "c", 2, 2)

    def test_fit_rational_function_needs_surplus(self):
        pts = [(2, F(1)), (3, F(1))]
        assert fit_rational_function(pts, 1, 1, min_extra=1) is None

    def test_every_fit_reproduces_all_rows(self):
        table = scan("aba^-3b^-3", list(range(8, 13)), [9])
        fits = detect_congruence_pattern(table, "a", 6, 3)
        assert fits
        for f in fits:
            for r in table.rows:
                o = r.order_a
                if o % f.period == f.residue and f.o_min <= o <= f.o_max:
                    assert f.evaluate(o) == r.value


def test_walker_f2_scan_matches_formula_off_the_bad_class(tmp_path):
    table = scan("aba^-3b^-3", [8, 9, 11, 12], [9])
    for r in table.rows:
        expected = walker_reference("F2", (r.order_a, 9))
        assert r.value == expected
