"""Verification suites for the sl(3,R) fields, matrices, and the scheme."""

from fractions import Fraction

import pytest

from liesuper.algebra import (
    PRINTED_SL3_TABLE,
    Matrix3,
    NotClosed,
    builtin_fields,
    matrix_bracket,
    sl3_matrices,
    structure_constants,
    verify_isomorphism,
    verify_paper_table,
    verify_scheme,
)
from liesuper.exactpoly import Polynomial, VectorField, lie_bracket


class TestStructureConstants:
    def test_closed_and_matches_reference_table(self):
        table = structure_constants(builtin_fields("sl3-family"))
        assert len(table) == 28
        for pair, expected in PRINTED_SL3_TABLE.items():
            computed = table[pair]
            for i, c in enumerate(computed):
                assert c == expected.get(i + 1, 0), f"[X{pair[0]},X{pair[1]}]"

    def test_not_closed_raises(self):
        fields = builtin_fields("sl3-family")
        coords = fields[0].coords
        x = Polynomial.variable("x", coords)
        bad = VectorField([Polynomial.zero(coords), x**4], coords)
        with pytest.raises(NotClosed):
            structure_constants(fields + [bad])


class TestReports:
    def test_paper_table_report_passes(self):
        report = verify_paper_table()
        assert report.passed
        assert len(report.records) == 28

    def test_isomorphism_report_passes(self):
        report = verify_isomorphism()
        assert report.passed
        # 8 traces + 1 rank + 28 bracket comparisons
        assert len(report.records) == 37

    def test_scheme_report_passes(self):
        report = verify_scheme()
        assert report.passed
        names = [r.name for r in report.records]
        assert "[Y2,Y8]" in names
        assert "ad_Y3^2(Y6) outside span{Y1..Y8}" in names

    def test_mutated_field_fails(self):
        fields = builtin_fields("sl3-family")
        coords = fields[0].coords
        bump = Polynomial(coords, {(1, 0): Fraction(1)})
        x5 = fields[4]
        fields[4] = VectorField(
            [x5.components[0] + bump, x5.components[1]], coords
        )
        report = verify_paper_table(fields=fields)
        assert not report.passed
        failing = [r.name for r in report.records if r.status == "FAIL"]
        assert failing, "mutation must surface as named failing pairs"
        # the failing record names a concrete bracket pair
        assert all(name.startswith("[X") for name in failing)


class TestMatrices:
    def test_traceless_and_independent(self):
        mats = sl3_matrices()
        assert all(M.trace() == 0 for M in mats)

    def test_commutator_example(self):
        # [M1, M8] = -2 M1 mirrors [X1, X8] = -2 X1
        mats = sl3_matrices()
        assert matrix_bracket(mats[0], mats[7]) == mats[0].scale(-2)
        X = builtin_fields("sl3-family")
        assert lie_bracket(X[0], X[7]) == X[0].scale(-2)

    def test_matrix3_immutable(self):
        M = Matrix3([[1, 0, 0], [0, -1, 0], [0, 0, 0]])
        with pytest.raises(AttributeError):
            M.rows = ()
