"""Exact rational-function arithmetic: ring laws, calculus, degree facts."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from agdeform.exactalg import (
    DegreeInfo,
    MismatchedTables,
    PoleAtPoint,
    Polynomial,
    RationalFunction,
    UsageError,
    VariableTable,
    degree_info,
    fd_check,
    parse_rational,
    render_polynomial,
    render_rational_function,
)

TABLE = VariableTable(3)


def rf_var(i, j):
    return RationalFunction.variable(TABLE, TABLE.x_index(i, j))


def q_rf():
    out = rf_var(1, 2) * rf_var(1, 2)
    for i in range(1, 4):
        out = out + rf_var(i, 1) * rf_var(i, 1)
    return out


def random_polynomial(rng, max_terms=4, max_degree=3):
    coeffs = {}
    nvars = len(TABLE.names)
    for _ in range(rng.randint(0, max_terms)):
        mono = [0] * nvars
        for _ in range(rng.randint(0, max_degree)):
            mono[rng.randrange(nvars)] += 1
        coeffs[tuple(mono)] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return Polynomial(TABLE, coeffs)


def random_rational(rng):
    num = random_polynomial(rng)
    den = random_polynomial(rng)
    while den.is_zero():
        den = random_polynomial(rng)
    return RationalFunction.from_polynomial(num) / RationalFunction.from_polynomial(den)


def test_parse_rational():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-7") == Fraction(-7)
    assert parse_rational(" 2/6 ") == Fraction(1, 3)
    with pytest.raises(UsageError):
        parse_rational("zzz")
    with pytest.raises(UsageError):
        parse_rational("1/0")


def test_variable_table_layout():
    table = VariableTable(3)
    assert table.x_index(1, 1) == 0
    assert table.x_index(1, 2) == 1
    assert table.x_index(3, 2) == 5
    assert table.t_index == 6
    assert table.s_index == 7
    assert table.c_index(2) == 8
    assert table.c_index(3) == 9
    assert [table.render(i) for i in range(6)] == [
        "x11", "x12", "x21", "x22", "x31", "x32",
    ]
    assert table.is_chart(0) and not table.is_chart(table.t_index)


def test_mismatched_tables_rejected():
    other = VariableTable(4)
    with pytest.raises(MismatchedTables):
        RationalFunction.variable(TABLE, 0) + RationalFunction.variable(other, 0)


def test_ring_laws_randomized():
    rng = random.Random(7)
    for _ in range(60):
        a, b, c = (random_rational(rng) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a - a == RationalFunction.zero(TABLE)


def test_cross_multiplied_equality_randomized():
    """p/q == (p f)/(q f) for a thousand random triples."""
    rng = random.Random(11)
    checked = 0
    while checked < 1000:
        p = random_polynomial(rng)
        q = random_polynomial(rng)
        f = random_polynomial(rng)
        if q.is_zero() or f.is_zero():
            continue
        lhs = RationalFunction.from_polynomial(p) / RationalFunction.from_polynomial(q)
        rhs = RationalFunction.from_polynomial(p * f) / RationalFunction.from_polynomial(
            q * f
        )
        assert lhs == rhs
        checked += 1


def test_inverse_and_division():
    rng = random.Random(3)
    one = RationalFunction.constant(TABLE, 1)
    for _ in range(40):
        a = random_rational(rng)
        if a.is_zero():
            continue
        assert a * a.inverse() == one
        assert (one / a) * a == one
    with pytest.raises(ZeroDivisionError):
        RationalFunction.zero(TABLE).inverse()


def test_power():
    x = rf_var(1, 1)
    assert x ** 3 == x * x * x
    assert x ** 0 == RationalFunction.constant(TABLE, 1)
    assert (x ** -2) * (x ** 2) == RationalFunction.constant(TABLE, 1)


def test_quotient_rule_displayed_example():
    """d/dx11 of x12 x11 x21 x21 / q via the quotient rule, checked exactly."""
    q = q_rf()
    x11, x12, x21 = rf_var(1, 1), rf_var(1, 2), rf_var(2, 1)
    f = x12 * x11 * x21 * x21 / q
    got = f.differentiate("x11")
    expected = (x12 * x21 * x21 * q - RationalFunction.constant(TABLE, 2) * x11 * x11 * x12 * x21 * x21) / (q * q)
    assert got == expected


def test_derivative_rules_randomized():
    rng = random.Random(23)
    for _ in range(25):
        a = random_rational(rng)
        b = random_rational(rng)
        var = rng.randrange(len(TABLE.names))
        da, db = a.differentiate(var), b.differentiate(var)
        assert (a * b).differentiate(var) == da * b + a * db
        assert (a + b).differentiate(var) == da + db


def test_mixed_partials_commute():
    rng = random.Random(5)
    for _ in range(15):
        f = random_rational(rng)
        v1 = rng.randrange(len(TABLE.names))
        v2 = rng.randrange(len(TABLE.names))
        assert f.differentiate(v1).differentiate(v2) == f.differentiate(v2).differentiate(v1)


def test_differentiate_by_name_matches_index():
    f = q_rf()
    assert f.differentiate("x21") == f.differentiate(TABLE.x_index(2, 1))
    with pytest.raises(UsageError):
        f.differentiate("nope")


def test_evaluate_commutes_with_arithmetic():
    rng = random.Random(41)
    for _ in range(25):
        a = random_rational(rng)
        b = random_rational(rng)
        point = tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in TABLE.names)
        try:
            va, vb = a.evaluate(point), b.evaluate(point)
            vsum = (a + b).evaluate(point)
            vprod = (a * b).evaluate(point)
        except PoleAtPoint:
            continue
        assert vsum == va + vb
        assert vprod == va * vb


def test_substitution_composes_with_evaluation():
    rng = random.Random(19)
    x11 = rf_var(1, 1)
    sub = {TABLE.x_index(1, 1): x11 * x11 + RationalFunction.constant(TABLE, 1)}
    for _ in range(10):
        f = random_rational(rng)
        point = tuple(Fraction(rng.randint(-2, 2)) for _ in TABLE.names)
        moved = list(point)
        moved[TABLE.x_index(1, 1)] = point[TABLE.x_index(1, 1)] ** 2 + 1
        try:
            lhs = f.substitute(sub).evaluate(point)
            rhs = f.evaluate(tuple(moved))
        except PoleAtPoint:
            continue
        assert lhs == rhs


def test_pole_at_point():
    q = q_rf()
    f = RationalFunction.constant(TABLE, 1) / q
    origin = tuple(Fraction(0) for _ in TABLE.names)
    with pytest.raises(PoleAtPoint) as err:
        f.evaluate(origin)
    assert "x11^2 + x12^2 + x21^2 + x31^2" in str(err.value)


def test_degree_info():
    q = q_rf()
    info = degree_info(q)
    assert info == DegreeInfo(2, True, 2, 2)
    inv = RationalFunction.constant(TABLE, 1) / q
    assert degree_info(inv).net_degree == -2
    zero = degree_info(RationalFunction.zero(TABLE))
    assert zero.net_degree == math.inf and zero.min_net_degree == math.inf
    t = RationalFunction.variable(TABLE, TABLE.t_index)
    mixed = t * rf_var(1, 1) + rf_var(1, 2)
    # parameters carry chart weight zero
    assert degree_info(mixed).numerator_total_degree == 1


def test_degree_info_inhomogeneous():
    f = rf_var(1, 1) + rf_var(1, 2) * rf_var(2, 1)
    info = degree_info(f)
    assert not info.is_numerator_homogeneous
    assert info.net_degree == 2 and info.min_net_degree == 1


def test_fd_check_on_q():
    q = q_rf()
    point = list(Fraction(0) for _ in TABLE.names)
    point[TABLE.x_index(1, 1)] = Fraction(2)
    point[TABLE.x_index(1, 2)] = Fraction(1)
    result = fd_check(q, "x11", tuple(point), Fraction(1, 10_000))
    assert result.symbolic == Fraction(4)
    assert result.rel_error < 1e-6


def test_fd_check_constant():
    f = RationalFunction.constant(TABLE, 5)
    point = tuple(Fraction(1) for _ in TABLE.names)
    result = fd_check(f, "x11", point, Fraction(1, 100))
    assert result.symbolic == 0 and result.central_difference == 0.0


def test_fd_check_pole_in_stencil():
    q = q_rf()
    f = RationalFunction.constant(TABLE, 1) / q
    point = list(Fraction(0) for _ in TABLE.names)
    point[TABLE.x_index(1, 1)] = Fraction(1, 10_000)
    with pytest.raises(PoleAtPoint):
        fd_check(f, "x11", tuple(point), Fraction(1, 10_000))


def test_render_plain_and_latex():
    q = q_rf()
    assert render_polynomial(q.num) == "x11^2 + x12^2 + x21^2 + x31^2"
    f = RationalFunction.constant(TABLE, 1) / q
    assert render_rational_function(f) == "1/(x11^2 + x12^2 + x21^2 + x31^2)"
    latex = render_rational_function(f, latex=True)
    assert latex.startswith("\\frac{1}")
    assert "x_{11}^{2}" in latex


def test_scale_and_neg():
    q = q_rf()
    assert q.scale(Fraction(1, 2)) + q.scale(Fraction(1, 2)) == q
    assert -(-q) == q
    assert q.scale(0).is_zero()


@st.composite
def small_polys(draw):
    terms = draw(st.integers(0, 3))
    coeffs = {}
    nvars = len(TABLE.names)
    for _ in range(terms):
        mono = [0] * nvars
        for _ in range(draw(st.integers(0, 2))):
            mono[draw(st.integers(0, nvars - 1))] += 1
        coeffs[tuple(mono)] = Fraction(draw(st.integers(-4, 4)))
    return Polynomial(TABLE, coeffs)


@settings(max_examples=60, deadline=None)
@given(small_polys(), small_polys(), small_polys())
def test_polynomial_ring_laws_hypothesis(p, r, s):
    assert p * (r + s) == p * r + p * s
    assert p * r == r * p
    assert (p - p).is_zero()


@settings(max_examples=40, deadline=None)
@given(small_polys(), small_polys())
def test_product_rule_hypothesis(p, r):
    fp = RationalFunction.from_polynomial(p)
    fr = RationalFunction.from_polynomial(r)
    var = TABLE.x_index(1, 1)
    lhs = (fp * fr).differentiate(var)
    rhs = fp.differentiate(var) * fr + fp * fr.differentiate(var)
    assert lhs == rhs
