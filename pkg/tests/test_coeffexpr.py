"""Expression trees: evaluation, exact differentiation, and the parser."""

import math

import pytest
from hypothesis import given, strategies as st

from liesuper.coeffexpr import (
    Const,
    DomainError,
    ParseError,
    Sqrt,
    TimeVar,
    parse_expr,
)

CASES = [
    ("0", lambda t: 0.0),
    ("1 + 2*t", lambda t: 1 + 2 * t),
    ("sin(t)*cos(t)", lambda t: math.sin(t) * math.cos(t)),
    ("exp(-t^2)", lambda t: math.exp(-(t**2))),
    ("sqrt(1 + t^2)", lambda t: math.sqrt(1 + t**2)),
    ("3/4 - t/2", lambda t: 0.75 - t / 2),
    ("(1 + 0.1*sin(t))^2", lambda t: (1 + 0.1 * math.sin(t)) ** 2),
    ("t^-2", lambda t: t**-2.0),
    ("2 ^ 3 * t", lambda t: 8.0 * t),
    ("-t + - 2", lambda t: -t - 2),
]


class TestEval:
    @pytest.mark.parametrize("text,ref", CASES)
    def test_matches_reference(self, text, ref):
        e = parse_expr(text)
        for t in (0.3, 1.0, 2.7):
            assert e.eval(t) == pytest.approx(ref(t), rel=1e-14, abs=1e-14)

    def test_whitespace_insensitive(self):
        assert parse_expr(" 1+2 * t ").eval(3.0) == parse_expr("1+2*t").eval(3.0)

    def test_decimal_literals_exact(self):
        # 0.1 parses as the rational 1/10, not the nearest double
        e = parse_expr("0.1 * 10 - 1")
        assert e.eval(0.0) == 0.0


class TestDiff:
    @pytest.mark.parametrize(
        "text",
        [c[0] for c in CASES if "t^-" not in c[0]],
    )
    def test_against_central_differences(self, text):
        e = parse_expr(text)
        d = e.diff()
        h = 1e-6
        for t in (0.4, 1.1, 2.2):
            fd = (e.eval(t + h) - e.eval(t - h)) / (2 * h)
            assert d.eval(t) == pytest.approx(fd, rel=1e-6, abs=1e-6)

    def test_sqrt_diff_exact_form(self):
        # d/dt sqrt(1+t^2) = t / sqrt(1+t^2)
        d = Sqrt(Const(1) + TimeVar() ** 2).diff()
        for t in (0.0, 1.0, 3.0):
            assert d.eval(t) == pytest.approx(t / math.sqrt(1 + t**2), rel=1e-14)

    @given(st.floats(min_value=-3, max_value=3, allow_nan=False))
    def test_polynomial_diff_everywhere(self, t):
        e = parse_expr("1 - 2*t + 3*t^2 - t^3")
        assert e.diff().eval(t) == pytest.approx(-2 + 6 * t - 3 * t**2, rel=1e-12, abs=1e-12)


class TestDomain:
    def test_sqrt_negative(self):
        with pytest.raises(DomainError) as exc:
            parse_expr("sqrt(t - 1)").eval(0.0)
        assert exc.value.t == 0.0

    def test_division_by_zero(self):
        with pytest.raises(DomainError):
            parse_expr("1/t").eval(0.0)

    def test_negative_power_at_zero(self):
        with pytest.raises(DomainError):
            parse_expr("t^-1").eval(0.0)


class TestParser:
    @pytest.mark.parametrize(
        "text",
        ["sin(", "1 +", "t t", "foo(t)", "1..2", "()", "t ^ x", "2 ** 3"],
    )
    def test_rejects_with_position(self, text):
        with pytest.raises(ParseError) as exc:
            parse_expr(text)
        assert isinstance(exc.value.pos, int)
        assert str(exc.value.pos) in str(exc.value) or "position" in str(exc.value)

    def test_error_position_is_meaningful(self):
        with pytest.raises(ParseError) as exc:
            parse_expr("sin(")
        assert exc.value.pos == 4

    def test_fractional_power_rejected(self):
        with pytest.raises(ParseError):
            parse_expr("t^(1/2)")
