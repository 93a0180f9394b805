"""Tests for export/generators.py."""

from torsioncert.curves2.x173 import X173Report
from torsioncert.export import ExceptionListGenerator, MdTableGenerator, X173ReportGenerator


class TestMdTableGenerator:
    def test_rows_and_blocks(self):
        rows = [(d, 29 + d, d != 5) for d in range(3, 18)]
        text = MdTableGenerator(rows).generate()
        assert text.count("d   |") == 2
        assert "d=3 M=32 PASS" in text
        assert "d=5 M=34 FAIL" in text

    def test_search_column(self):
        text = MdTableGenerator([(3, 29, True)], searched={3: 23}).generate()
        assert "least_M=23" in text
        assert "may differ from table" in text


def test_exception_list():
    text = ExceptionListGenerator(2, 300, {6: [29, 31], 4: []}).generate()
    lines = text.splitlines()
    assert "l = 2" in lines
    assert lines.index("d=4 exceptions=none") < lines.index("d=6 exceptions=29,31")


def test_x173_report_text():
    report = X173Report(
        modulus=0b1011011,
        parameters=[5, 7],
        sextic_roots_match=True,
        orbits=[(5,), (7,)],
        orbit_polynomials=[0b111, 0b1011],
        diamond=10,
        permutation=(1, 0),
        point_counts={5: 73, 7: 73},
        trace=-8,
        frobenius_polynomial=(1, 8, 64),
        notes=["sign differs"],
    )
    text = X173ReportGenerator(report).generate()
    assert "count = 2" in text
    assert "cycle_type = 2" in text
    assert "transitive = True" in text
    assert "orders = 73" in text
    assert "discrepancy = True" in text
    assert "note = sign differs" in text
